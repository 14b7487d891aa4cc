//! Seeded generators for spaces and sampled functions.

use lipcert_core::disk::random_disk_points;
use lipcert_core::{Complex64, FiniteMetricSpace, SampledFunction};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{CliError, Result};
use crate::files::SpaceFile;

/// Range of the random edge weights of `graph-random`.
const WEIGHT_RANGE: core::ops::Range<f64> = 0.1..1.0;

/// `n` points uniform in the unit cube `[0, 1)^dim`.
pub fn euclidean_random(n: usize, dim: usize, seed: u64) -> Result<SpaceFile> {
    if n == 0 || dim == 0 {
        return Err(CliError::BadParameters(format!(
            "need n >= 1 and dim >= 1, got n = {n}, dim = {dim}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coords = (0..n)
        .map(|_| (0..dim).map(|_| rng.gen::<f64>()).collect())
        .collect();
    Ok(SpaceFile::euclidean(coords))
}

/// The points `k / (n - 1)` of `[0, 1]`; a single point at 0 when `n = 1`.
pub fn grid_1d(n: usize) -> Result<SpaceFile> {
    if n == 0 {
        return Err(CliError::BadParameters("grid-1d needs n >= 1".into()));
    }
    let denom = (n.max(2) - 1) as f64;
    Ok(SpaceFile::euclidean(
        (0..n).map(|k| vec![k as f64 / denom]).collect(),
    ))
}

/// A random spanning tree topped up with uniformly random extra edges until
/// the average degree reaches `avg_degree`. Weights are uniform in
/// `[0.1, 1)`.
pub fn graph_random(n: usize, avg_degree: f64, seed: u64) -> Result<SpaceFile> {
    if n == 0 || !(avg_degree >= 0.0 && avg_degree.is_finite()) {
        return Err(CliError::BadParameters(format!(
            "need n >= 1 and a finite avg-degree >= 0, got n = {n}, avg-degree = {avg_degree}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut edges: Vec<(usize, usize, f64)> = (1..n)
        .map(|k| {
            (
                order[rng.gen_range(0..k)],
                order[k],
                rng.gen_range(WEIGHT_RANGE),
            )
        })
        .collect();
    let target = (avg_degree * n as f64 / 2.0).round() as usize;
    let max_edges = n * (n - 1) / 2;
    while edges.len() < target.min(max_edges) {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v {
            edges.push((u.min(v), u.max(v), rng.gen_range(WEIGHT_RANGE)));
        }
    }
    Ok(SpaceFile::graph(n, edges))
}

/// `n` points uniform by area in the open unit disk.
pub fn poincare_random(n: usize, scale: f64, seed: u64) -> Result<SpaceFile> {
    if n == 0 || !(scale > 0.0 && scale.is_finite()) {
        return Err(CliError::BadParameters(format!(
            "need n >= 1 and a positive finite scale, got n = {n}, scale = {scale}"
        )));
    }
    Ok(SpaceFile::poincare_disk(
        &random_disk_points(n, seed),
        scale,
    ))
}

/// Functions that `sample` can evaluate on any metric space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    /// `d(x, x_c)`, 1-Lipschitz.
    Dist,
    /// `√d(x, x_c)`, uniformly continuous but not Lipschitz near `x_c`.
    SqrtDist,
    /// `exp(i d(x, x_c))`, complex and 1-Lipschitz.
    CisDist,
    /// The constant `value`.
    Constant,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleSpec {
    pub shape: Shape,
    pub center: usize,
    pub value: f64,
    /// Each value moves by less than `noise`, in a seeded random direction.
    pub noise: f64,
    pub seed: u64,
}

pub fn sample_function(space: &FiniteMetricSpace, spec: &SampleSpec) -> Result<SampledFunction> {
    if spec.center >= space.len() {
        return Err(CliError::BadParameters(format!(
            "center {} is out of range for {} points",
            spec.center,
            space.len()
        )));
    }
    if !(spec.noise >= 0.0 && spec.noise.is_finite() && spec.value.is_finite()) {
        return Err(CliError::BadParameters(format!(
            "noise must be finite and >= 0 and value finite, got noise = {}, value = {}",
            spec.noise, spec.value
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let complex = spec.shape == Shape::CisDist;
    let values = (0..space.len())
        .map(|x| {
            let d = space.dist(x, spec.center);
            let clean = match spec.shape {
                Shape::Dist => Complex64::new(d, 0.0),
                Shape::SqrtDist => Complex64::new(d.sqrt(), 0.0),
                Shape::CisDist => Complex64::from_polar(1.0, d),
                Shape::Constant => Complex64::new(spec.value, 0.0),
            };
            if spec.noise == 0.0 {
                return clean;
            }
            let r = spec.noise * rng.gen::<f64>();
            let shift = if complex {
                Complex64::from_polar(r, rng.gen_range(0.0..core::f64::consts::TAU))
            } else if rng.gen::<bool>() {
                Complex64::new(r, 0.0)
            } else {
                Complex64::new(-r, 0.0)
            };
            clean + shift
        })
        .collect();
    Ok(SampledFunction::new(values)?)
}
