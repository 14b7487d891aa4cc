#![allow(dead_code)]

use lipcert_core::disk::DiskPoint;
use lipcert_core::{
    euclidean_space, graph_space, poincare_disk_space, Complex64, FiniteMetricSpace,
    SampledFunction,
};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_euclidean(rng: &mut StdRng, n: usize) -> FiniteMetricSpace {
    let dim = rng.gen_range(1..=3);
    let coords: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..dim).map(|_| rng.gen::<f64>()).collect())
        .collect();
    euclidean_space(&coords).unwrap()
}

/// Random spanning tree plus extra chords, so always connected.
pub fn random_graph(rng: &mut StdRng, n: usize) -> FiniteMetricSpace {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for k in 1..n {
        let parent = order[rng.gen_range(0..k)];
        edges.push((parent, order[k], rng.gen_range(0.1..1.0)));
    }
    for _ in 0..n {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        edges.push((u, v, rng.gen_range(0.1..1.0)));
    }
    graph_space(n, &edges).unwrap()
}

pub fn random_disk(rng: &mut StdRng, n: usize) -> FiniteMetricSpace {
    let points: Vec<DiskPoint> = (0..n).map(|_| DiskPoint::sample(rng)).collect();
    poincare_disk_space(&points, 1.0).unwrap()
}

/// Cycles through the three kinds of space.
pub fn random_space(rng: &mut StdRng, kind: usize, max_n: usize) -> FiniteMetricSpace {
    let n = rng.gen_range(2..=max_n);
    match kind % 3 {
        0 => random_euclidean(rng, n),
        1 => random_graph(rng, n),
        _ => random_disk(rng, n),
    }
}

/// A Lipschitz function built from distances to a few random centres.
/// Returns the samples and their measured Lipschitz constant bound
/// `sum |a_k|` (each `d(·, c_k)` is 1-Lipschitz).
pub fn random_lipschitz(
    rng: &mut StdRng,
    space: &FiniteMetricSpace,
    complex: bool,
) -> (Vec<Complex64>, f64) {
    let n = space.len();
    let centres: Vec<usize> = (0..3).map(|_| rng.gen_range(0..n)).collect();
    let coeffs: Vec<Complex64> = (0..3)
        .map(|_| {
            let im = if complex {
                rng.gen_range(-1.0..1.0)
            } else {
                0.0
            };
            Complex64::new(rng.gen_range(-1.0..1.0), im)
        })
        .collect();
    let offset = Complex64::new(rng.gen_range(-1.0..1.0), 0.0);
    let values = (0..n)
        .map(|x| {
            centres
                .iter()
                .zip(&coeffs)
                .map(|(&c, &a)| a * space.dist(x, c))
                .fold(offset, |acc, v| acc + v)
        })
        .collect();
    let bound = coeffs.iter().map(|a| a.norm()).sum();
    (values, bound)
}

/// Adds a perturbation of modulus below `radius` to each value.
pub fn perturb(
    rng: &mut StdRng,
    values: &[Complex64],
    radius: f64,
    complex: bool,
) -> Vec<Complex64> {
    values
        .iter()
        .map(|&v| {
            let r = radius * rng.gen::<f64>();
            let d = if complex {
                Complex64::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU))
            } else if rng.gen::<bool>() {
                Complex64::new(r, 0.0)
            } else {
                Complex64::new(-r, 0.0)
            };
            v + d
        })
        .collect()
}

pub fn grid(n: usize) -> FiniteMetricSpace {
    let coords: Vec<Vec<f64>> = (0..n).map(|k| vec![k as f64 / (n - 1) as f64]).collect();
    euclidean_space(&coords).unwrap()
}

pub fn sqrt_on_grid(n: usize) -> SampledFunction {
    SampledFunction::real((0..n).map(|k| (k as f64 / (n - 1) as f64).sqrt()).collect()).unwrap()
}

/// Brute-force Lipschitz constant straight from the pair definition.
pub fn pairwise_lipschitz(space: &FiniteMetricSpace, values: &[Complex64]) -> f64 {
    let mut best = 0.0f64;
    for i in 0..values.len() {
        for j in 0..values.len() {
            if i != j {
                best = best.max((values[i] - values[j]).norm() / space.dist(i, j));
            }
        }
    }
    best
}

pub fn random_subset(rng: &mut StdRng, n: usize) -> Vec<usize> {
    let k = rng.gen_range(1..=n);
    let mut all: Vec<usize> = (0..n).collect();
    all.shuffle(rng);
    all.truncate(k);
    all
}
