//! Maximal `t`-separated subsets.
//!
//! A set `S` is `t`-separated when all distinct members are at distance
//! `≥ t`, and maximal when no further point can be added, i.e. every point of
//! the space lies at distance `< t` from some member. On a finite space one
//! ascending-index pass builds such a set.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::metric::FiniteMetricSpace;

#[derive(Debug, Clone, PartialEq)]
pub struct SeparatedNet {
    pub t: f64,
    /// Seeds first, then the scanned points in ascending index order.
    pub indices: Vec<usize>,
    /// `max_x min_{s ∈ S} d(x, s)`.
    pub covering_radius: f64,
}

impl SeparatedNet {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// Greedy maximal `t`-separated subset containing `seeds`.
///
/// Candidates are committed strictly in ascending index order; a point is
/// taken when its distance to every current member is at least `t`.
pub fn greedy_maximal_separated(
    space: &FiniteMetricSpace,
    t: f64,
    seeds: &[usize],
) -> Result<SeparatedNet> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::InvalidSeparation(t));
    }
    let n = space.len();
    if n == 0 {
        return Err(Error::EmptySpace);
    }
    for &s in seeds {
        space.check_index(s)?;
    }
    for (a, &i) in seeds.iter().enumerate() {
        for &j in &seeds[a + 1..] {
            if space.dist(i, j) < t {
                return Err(Error::SeedsTooClose { i, j });
            }
        }
    }

    let mut nearest = vec![f64::INFINITY; n];
    let mut indices = Vec::with_capacity(seeds.len() + 1);
    let admit = |s: usize, nearest: &mut [f64], indices: &mut Vec<usize>| {
        indices.push(s);
        for (x, d) in space.row(s).iter().enumerate() {
            if *d < nearest[x] {
                nearest[x] = *d;
            }
        }
    };
    for &s in seeds {
        admit(s, &mut nearest, &mut indices);
    }
    for x in 0..n {
        if nearest[x] >= t {
            admit(x, &mut nearest, &mut indices);
        }
    }

    let covering_radius = nearest.iter().copied().fold(0.0, f64::max);
    Ok(SeparatedNet {
        t,
        indices,
        covering_radius,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct NetVerification {
    /// All distinct members are at distance `≥ t`.
    pub separation_ok: bool,
    /// Every point is at distance `< t` from some member.
    pub covering_ok: bool,
    /// Closest pair of distinct members, if the net has two or more.
    pub worst_pair: Option<(usize, usize)>,
    pub min_separation: f64,
    /// Point farthest from the net.
    pub worst_uncovered: Option<usize>,
    pub covering_radius: f64,
}

impl NetVerification {
    pub fn ok(&self) -> bool {
        self.separation_ok && self.covering_ok
    }
}

/// Recomputes separation and covering for `net` from the raw distances.
pub fn verify_net(space: &FiniteMetricSpace, net: &SeparatedNet) -> Result<NetVerification> {
    for &s in &net.indices {
        space.check_index(s)?;
    }

    let mut min_separation = f64::INFINITY;
    let mut worst_pair = None;
    for (a, &i) in net.indices.iter().enumerate() {
        for &j in &net.indices[a + 1..] {
            // a repeated index is a zero-distance pair
            let d = if i == j { 0.0 } else { space.dist(i, j) };
            if d < min_separation {
                min_separation = d;
                worst_pair = Some((i, j));
            }
        }
    }

    let mut covering_radius = if net.indices.is_empty() {
        f64::INFINITY
    } else {
        0.0
    };
    let mut worst_uncovered = None;
    for x in 0..space.len() {
        let row = space.row(x);
        let nearest = net
            .indices
            .iter()
            .map(|&s| row[s])
            .fold(f64::INFINITY, f64::min);
        if worst_uncovered.is_none() || nearest > covering_radius {
            covering_radius = nearest;
            worst_uncovered = Some(x);
        }
    }

    Ok(NetVerification {
        separation_ok: min_separation >= net.t,
        covering_ok: covering_radius < net.t,
        worst_pair,
        min_separation,
        worst_uncovered,
        covering_radius,
    })
}
