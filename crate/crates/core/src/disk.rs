//! The hyperbolic metric on the open unit disk.
//!
//! Distances use the normalization `β(z, w) = scale · artanh ρ(z, w)` where
//! `ρ(z, w) = |z − w| / |1 − z̄w|` is the pseudo-hyperbolic distance. With
//! `scale = 1` the curvature is −4; the Bergman metric of the disk is
//! `scale = 2`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::metric::{FiniteMetricSpace, OriginKind};

/// A point strictly inside the unit disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPoint {
    re: f64,
    im: f64,
}

impl DiskPoint {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        let p = Self { re, im };
        if re.is_finite() && im.is_finite() && p.norm_sqr() < 1.0 {
            Ok(p)
        } else {
            Err(Error::PointOnOrOutsideBoundary { re, im })
        }
    }

    pub fn origin() -> Self {
        Self { re: 0.0, im: 0.0 }
    }

    pub fn re(&self) -> f64 {
        self.re
    }

    pub fn im(&self) -> f64 {
        self.im
    }

    #[inline]
    fn norm_sqr(&self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    pub fn abs(&self) -> f64 {
        libm::hypot(self.re, self.im)
    }

    /// Draws a point uniformly by area, using `r = sqrt(u)` for the radius.
    pub fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let r = libm::sqrt(rng.gen::<f64>());
            let theta = 2.0 * PI * rng.gen::<f64>();
            let p = Self {
                re: r * libm::cos(theta),
                im: r * libm::sin(theta),
            };
            if p.norm_sqr() < 1.0 {
                return p;
            }
        }
    }
}

fn check_scale(scale: f64) -> Result<()> {
    if scale > 0.0 && scale.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidScale(scale))
    }
}

/// Hyperbolic distance between two disk points.
///
/// Evaluated as `scale/2 · ln(1 + 2B(A + B) / ((1 − |z|²)(1 − |w|²)))` with
/// `A = |1 − z̄w|` and `B = |z − w|`, which equals `scale · artanh(B / A)`
/// because `A² − B² = (1 − |z|²)(1 − |w|²)`. This form is exactly symmetric,
/// exactly zero on the diagonal, and keeps precision for nearby points.
pub fn hyperbolic_distance(z: DiskPoint, w: DiskPoint, scale: f64) -> Result<f64> {
    check_scale(scale)?;
    for p in [z, w] {
        if !(p.norm_sqr() < 1.0) {
            return Err(Error::PointOnOrOutsideBoundary { re: p.re, im: p.im });
        }
    }
    Ok(scale * raw_distance(z, w))
}

#[inline]
fn raw_distance(z: DiskPoint, w: DiskPoint) -> f64 {
    // 1 - conj(z) w
    let a_re = 1.0 - (z.re * w.re + z.im * w.im);
    let a_im = -(z.re * w.im - z.im * w.re);
    let a = libm::hypot(a_re, a_im);
    let b = libm::hypot(z.re - w.re, z.im - w.im);
    let p = (1.0 - z.norm_sqr()) * (1.0 - w.norm_sqr());
    0.5 * libm::log1p(2.0 * b * (a + b) / p)
}

/// Finite metric space of disk points under [`hyperbolic_distance`].
pub fn poincare_disk_space(points: &[DiskPoint], scale: f64) -> Result<FiniteMetricSpace> {
    check_scale(scale)?;
    let n = points.len();
    if n == 0 {
        return Err(Error::EmptySpace);
    }
    let mut rows = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = hyperbolic_distance(points[i], points[j], scale)?;
            if d == 0.0 {
                return Err(Error::DuplicatePoint { i, j });
            }
            rows[i][j] = d;
            rows[j][i] = d;
        }
    }
    let flat = rows.into_iter().flatten().collect();
    FiniteMetricSpace::from_parts(n, flat, OriginKind::PoincareDisk)
}

/// Sample mean of a Monte-Carlo estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentEstimate {
    pub p: f64,
    pub samples: usize,
    pub mean: f64,
    pub std_error: f64,
}

/// Monte-Carlo estimate of `∫ β(0, z)^p dA(z)` over the unit disk, with area
/// normalized to one and `scale = 1`.
///
/// Deterministic in `seed`. The exact value for `p = 1` is 1.
pub fn disk_moment_estimate(p: f64, n_samples: usize, seed: u64) -> Result<MomentEstimate> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::InvalidP(p));
    }
    if n_samples == 0 {
        return Err(Error::NoSamples);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Welford's running mean/variance, accumulated in sample order.
    let mut mean = 0.0;
    let mut m2 = 0.0;
    for k in 1..=n_samples {
        let z = DiskPoint::sample(&mut rng);
        let x = libm::pow(libm::atanh(z.abs().min(1.0 - f64::EPSILON / 2.0)), p);
        let delta = x - mean;
        mean += delta / k as f64;
        m2 += delta * (x - mean);
    }
    let std_error = if n_samples > 1 {
        libm::sqrt(m2 / (n_samples - 1) as f64 / n_samples as f64)
    } else {
        0.0
    };
    Ok(MomentEstimate {
        p,
        samples: n_samples,
        mean,
        std_error,
    })
}

/// Largest observed `|z − w| / β(z, w)` over random pairs (`scale = 1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonStats {
    pub pairs: usize,
    pub max_ratio: f64,
    pub witness: Option<(DiskPoint, DiskPoint)>,
}

/// Samples `n_pairs` independent uniform pairs and records the largest ratio
/// of Euclidean to hyperbolic distance. Analytically the ratio is below 2.
pub fn comparison_ratio(n_pairs: usize, seed: u64) -> ComparisonStats {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = ComparisonStats {
        pairs: 0,
        max_ratio: 0.0,
        witness: None,
    };
    for _ in 0..n_pairs {
        let z = DiskPoint::sample(&mut rng);
        let w = DiskPoint::sample(&mut rng);
        let beta = raw_distance(z, w);
        stats.pairs += 1;
        if beta > 0.0 {
            let ratio = libm::hypot(z.re - w.re, z.im - w.im) / beta;
            if ratio > stats.max_ratio {
                stats.max_ratio = ratio;
                stats.witness = Some((z, w));
            }
        }
    }
    stats
}

/// `n` uniform random disk points, deterministic in `seed`.
pub fn random_disk_points(n: usize, seed: u64) -> Vec<DiskPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| DiskPoint::sample(&mut rng)).collect()
}
