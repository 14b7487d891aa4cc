//! Moduli of a sampled function and the certified Lipschitz approximation
//! pipeline.
//!
//! A function `f` is a uniform limit of Lipschitz functions exactly when for
//! every `ε > 0` some `C(ε)` gives
//!
//! ```text
//! |f(x) − f(y)| ≤ ε + C(ε) d(x, y)   for all x, y.
//! ```
//!
//! [`star_modulus`] computes the smallest such constant on a finite space.
//! [`Pipeline`] turns it into an approximant: with `t = ε / C` it picks a
//! maximal `t`-separated net `S`, on which `f` is `2C`-Lipschitz, extends
//! `f|_S` with that constant, and certifies `sup |F − f| ≤ 6ε` (complex) or
//! `4ε` (real).

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::extension::{extend_complex, lipschitz_constant, mcshane_extend_real, SampledFunction};
use crate::metric::FiniteMetricSpace;
use crate::nets::{greedy_maximal_separated, SeparatedNet};

/// Absolute slack, relative to the data scale, for every non-strict check.
pub const CHECK_TOL: f64 = 1e-9;

/// Default relative margin added to `C*(ε)` before it is used.
pub const DEFAULT_MARGIN: f64 = 1e-6;

fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidEpsilon(epsilon))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StarModulus {
    pub epsilon: f64,
    /// Smallest `C` with `|Δf| ≤ ε + C d` on every pair.
    pub c_star: f64,
    /// Pair attaining `c_star`; `None` when `c_star = 0`.
    pub witness: Option<(usize, usize)>,
}

/// `C*(ε) = max over pairs of max(0, (|f(x) − f(y)| − ε) / d(x, y))`.
pub fn star_modulus(
    space: &FiniteMetricSpace,
    f: &SampledFunction,
    epsilon: f64,
) -> Result<StarModulus> {
    check_epsilon(epsilon)?;
    f.check_space(space)?;
    let v = f.values();
    let mut c_star = 0.0;
    let mut witness = None;
    for i in 0..v.len() {
        let row = space.row(i);
        for j in (i + 1)..v.len() {
            let c = ((v[i] - v[j]).norm() - epsilon) / row[j];
            if c > c_star {
                c_star = c;
                witness = Some((i, j));
            }
        }
    }
    Ok(StarModulus {
        epsilon,
        c_star,
        witness,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UcModulus {
    pub epsilon: f64,
    /// Closest distance at which `f` moves by at least `ε`, or the diameter
    /// when no pair does.
    pub delta: f64,
    pub no_violation: bool,
    pub witness: Option<(usize, usize)>,
}

/// Largest `δ` on the sample such that `d(x, y) < δ` forces `|Δf| < ε`.
pub fn uc_modulus(
    space: &FiniteMetricSpace,
    f: &SampledFunction,
    epsilon: f64,
) -> Result<UcModulus> {
    check_epsilon(epsilon)?;
    f.check_space(space)?;
    let v = f.values();
    let mut delta = f64::INFINITY;
    let mut witness = None;
    for i in 0..v.len() {
        let row = space.row(i);
        for j in (i + 1)..v.len() {
            if row[j] < delta && (v[i] - v[j]).norm() >= epsilon {
                delta = row[j];
                witness = Some((i, j));
            }
        }
    }
    Ok(match witness {
        Some(_) => UcModulus {
            epsilon,
            delta,
            no_violation: false,
            witness,
        },
        None => UcModulus {
            epsilon,
            delta: space.diameter(),
            no_violation: true,
            witness: None,
        },
    })
}

/// `C(ε) = ε / δ(ε)`, the constant obtained by subdividing a geodesic into
/// pieces shorter than `δ`.
pub fn prop2_constant(epsilon: f64, delta: f64) -> Result<f64> {
    if epsilon > 0.0 && delta > 0.0 && epsilon.is_finite() && delta.is_finite() {
        Ok(epsilon / delta)
    } else {
        Err(Error::NonpositiveInput { epsilon, delta })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModulusRow {
    pub star: StarModulus,
    pub uc: UcModulus,
}

/// Star and uniform-continuity moduli for several `ε`, sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct ModulusTable {
    pub rows: Vec<ModulusRow>,
}

impl ModulusTable {
    pub fn c_star_nonincreasing(&self) -> bool {
        self.rows
            .windows(2)
            .all(|w| w[1].star.c_star <= w[0].star.c_star)
    }

    pub fn delta_nondecreasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].uc.delta >= w[0].uc.delta)
    }

    pub fn is_monotone(&self) -> bool {
        self.c_star_nonincreasing() && self.delta_nondecreasing()
    }
}

pub fn star_modulus_table(
    space: &FiniteMetricSpace,
    f: &SampledFunction,
    epsilons: &[f64],
) -> Result<ModulusTable> {
    for &e in epsilons {
        check_epsilon(e)?;
    }
    let mut eps = epsilons.to_vec();
    eps.sort_by(f64::total_cmp);
    eps.dedup();
    let rows = eps
        .into_iter()
        .map(|e| {
            Ok(ModulusRow {
                star: star_modulus(space, f, e)?,
                uc: uc_modulus(space, f, e)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ModulusTable { rows })
}

#[derive(Debug, Clone, PartialEq)]
pub struct StarCheck {
    pub holds: bool,
    /// Pairs `i < j` with `|Δf| > ε + C d + tol`.
    pub violations: Vec<(usize, usize)>,
    /// `max(|Δf| − ε − C d)` over all pairs; `-ε` for a one-point space.
    pub worst_excess: f64,
    pub worst_pair: Option<(usize, usize)>,
}

/// Exhaustive check of `|f(x) − f(y)| ≤ ε + C d(x, y)`.
pub fn check_star(
    space: &FiniteMetricSpace,
    f: &SampledFunction,
    epsilon: f64,
    c: f64,
) -> Result<StarCheck> {
    check_epsilon(epsilon)?;
    if !(c >= 0.0 && c.is_finite()) {
        return Err(Error::InvalidConstant(c));
    }
    f.check_space(space)?;
    let tol = CHECK_TOL * f.magnitude();
    let v = f.values();
    let mut violations = Vec::new();
    let mut worst_excess = -epsilon;
    let mut worst_pair = None;
    for i in 0..v.len() {
        let row = space.row(i);
        for j in (i + 1)..v.len() {
            let excess = (v[i] - v[j]).norm() - epsilon - c * row[j];
            if worst_pair.is_none() || excess > worst_excess {
                worst_excess = excess;
                worst_pair = Some((i, j));
            }
            if excess > tol {
                violations.push((i, j));
            }
        }
    }
    Ok(StarCheck {
        holds: violations.is_empty(),
        violations,
        worst_excess,
        worst_pair,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthReport {
    pub holds: bool,
    /// `min_x ε + C d(a, x) − |f(x) − f(a)|`.
    pub worst_slack: f64,
    pub worst_index: usize,
}

/// Checks `|f(x) − f(a)| ≤ ε + C d(a, x)` for every `x`: `f` may grow no
/// faster than a multiple of the distance to a base point.
pub fn growth_bound_check(
    space: &FiniteMetricSpace,
    f: &SampledFunction,
    base: usize,
    epsilon: f64,
    c: f64,
) -> Result<GrowthReport> {
    check_epsilon(epsilon)?;
    if !(c >= 0.0 && c.is_finite()) {
        return Err(Error::InvalidConstant(c));
    }
    f.check_space(space)?;
    space.check_index(base)?;
    let v = f.values();
    let row = space.row(base);
    let (worst_index, worst_slack) = (0..v.len())
        .map(|x| (x, epsilon + c * row[x] - (v[x] - v[base]).norm()))
        .fold(
            (base, epsilon),
            |best, cur| if cur.1 < best.1 { cur } else { best },
        );
    Ok(GrowthReport {
        holds: worst_slack >= -CHECK_TOL * f.magnitude(),
        worst_slack,
        worst_index,
    })
}

/// Which extension the pipeline uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// McShane extension; needs real `f`, certified at `2C` and `4ε`.
    Real,
    /// Componentwise extension, certified at `4C` and `6ε`.
    Complex,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Real => "real",
            Mode::Complex => "complex",
        }
    }

    fn lipschitz_factor(self) -> f64 {
        match self {
            Mode::Real => 2.0,
            Mode::Complex => 4.0,
        }
    }

    fn error_factor(self) -> f64 {
        match self {
            Mode::Real => 4.0,
            Mode::Complex => 6.0,
        }
    }
}

/// Everything the pipeline claims about one run, next to what it measured.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproximationCertificate {
    pub epsilon: f64,
    pub mode: Mode,
    pub c_star: f64,
    /// The `C(ε)` the pipeline ran with.
    pub c_used: f64,
    pub t: f64,
    pub net: SeparatedNet,
    pub net_size: usize,
    /// Measured Lipschitz constant of `f` on the net.
    pub restriction_lip: f64,
    /// Constant the net values were extended with (`restriction_lip`).
    pub extension_constant: f64,
    pub extension_lip_bound: f64,
    pub proven_sup_error: f64,
    pub achieved_sup_error: f64,
    pub measured_extension_lip: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CertificateCheck {
    pub restriction_ok: bool,
    pub extension_ok: bool,
    pub error_ok: bool,
}

impl CertificateCheck {
    pub fn holds(&self) -> bool {
        self.restriction_ok && self.extension_ok && self.error_ok
    }
}

impl ApproximationCertificate {
    /// Compares the measured quantities with their proven bounds.
    pub fn check(&self) -> CertificateCheck {
        let within = |measured: f64, bound: f64| measured <= bound + CHECK_TOL * bound.max(1.0);
        CertificateCheck {
            restriction_ok: within(self.restriction_lip, 2.0 * self.c_used),
            extension_ok: within(self.measured_extension_lip, self.extension_lip_bound),
            error_ok: within(self.achieved_sup_error, self.proven_sup_error),
        }
    }

    pub fn holds(&self) -> bool {
        self.check().holds()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Approximant {
    pub values: SampledFunction,
    pub certificate: ApproximationCertificate,
}

/// Configuration for the net/restrict/extend pipeline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pipeline {
    epsilon: f64,
    mode: Mode,
    c_override: Option<f64>,
    margin: f64,
}

impl Pipeline {
    pub fn new(epsilon: f64) -> Self {
        Self {
            epsilon,
            mode: Mode::Complex,
            c_override: None,
            margin: DEFAULT_MARGIN,
        }
    }

    pub fn mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    /// Uses `c` instead of the computed constant. The run fails with
    /// [`Error::StarViolated`] if `c` does not satisfy the condition.
    pub fn c_override(mut self, c: Option<f64>) -> Self {
        self.c_override = c;
        self
    }

    pub fn margin(mut self, margin: f64) -> Self {
        self.margin = margin;
        self
    }

    /// Chooses `C(ε)`: the override if given, otherwise `C*(ε)(1 + margin)`
    /// raised above `ε / diameter` so that `t` stays below the diameter.
    fn constant(&self, space: &FiniteMetricSpace, f: &SampledFunction, c_star: f64) -> Result<f64> {
        if let Some(c) = self.c_override {
            if !(c > 0.0 && c.is_finite()) {
                return Err(Error::InvalidConstant(c));
            }
            let check = check_star(space, f, self.epsilon, c)?;
            if let (false, Some((i, j))) = (check.holds, check.worst_pair) {
                return Err(Error::StarViolated {
                    i,
                    j,
                    excess: check.worst_excess,
                });
            }
            return Ok(c);
        }
        let diameter = space.diameter();
        if diameter == 0.0 {
            // every constant works on one point
            return Ok(1.0);
        }
        let scale = 1.0 + self.margin;
        Ok((c_star * scale).max(self.epsilon / diameter * scale))
    }

    pub fn run(&self, space: &FiniteMetricSpace, f: &SampledFunction) -> Result<Approximant> {
        check_epsilon(self.epsilon)?;
        if !(self.margin >= 0.0 && self.margin.is_finite()) {
            return Err(Error::InvalidConstant(self.margin));
        }
        f.check_space(space)?;
        if self.mode == Mode::Real {
            if let Some(k) = f.values().iter().position(|v| v.im != 0.0) {
                return Err(Error::NotRealValued(k));
            }
        }
        let epsilon = self.epsilon;
        let c_star = star_modulus(space, f, epsilon)?.c_star;
        let c_used = self.constant(space, f, c_star)?;
        let t = epsilon / c_used;

        let net = greedy_maximal_separated(space, t, &[0])?;
        let restricted = f.restrict(&net.indices)?;
        let restriction_lip = lipschitz_constant(space, &restricted)?;

        // f|_S is extended with its own measured constant, which the
        // separation bound keeps at most 2C(ε).
        let extension_constant = restriction_lip;
        let values = if space.len() == 1 {
            f.clone()
        } else {
            match self.mode {
                Mode::Real => mcshane_extend_real(space, &restricted, extension_constant)?,
                Mode::Complex => extend_complex(space, &restricted, extension_constant)?,
            }
        };

        let certificate = ApproximationCertificate {
            epsilon,
            mode: self.mode,
            c_star,
            c_used,
            t,
            net_size: net.len(),
            net,
            restriction_lip,
            extension_constant,
            extension_lip_bound: self.mode.lipschitz_factor() * c_used,
            proven_sup_error: self.mode.error_factor() * epsilon,
            achieved_sup_error: values.sup_distance(f)?,
            measured_extension_lip: lipschitz_constant(space, &values)?,
        };
        Ok(Approximant {
            values,
            certificate,
        })
    }
}

/// Runs [`Pipeline`] with the default margin.
pub fn theorem1_approximant(
    space: &FiniteMetricSpace,
    f: &SampledFunction,
    epsilon: f64,
    c_override: Option<f64>,
    mode: Mode,
) -> Result<Approximant> {
    Pipeline::new(epsilon)
        .mode(mode)
        .c_override(c_override)
        .run(space, f)
}
