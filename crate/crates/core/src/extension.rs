//! McShane extension of Lipschitz functions from a subset to the whole space.
//!
//! For real `f` on `S` with constant `C`, the upper envelope
//! `F(x) = min_{s ∈ S} f(s) + C d(x, s)` is the greatest `C`-Lipschitz
//! extension and the lower envelope `G(x) = max_{s ∈ S} f(s) − C d(x, s)` the
//! least. Complex functions are extended componentwise, which gives a
//! constant of at most `√2 C`.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::metric::FiniteMetricSpace;

/// Relative tolerance used when comparing a supplied constant with a measured
/// one.
pub const CONSTANT_TOL: f64 = 1e-9;

/// Values of a function at every point of a space.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    values: Vec<Complex64>,
}

impl SampledFunction {
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        check_finite(&values)?;
        Ok(Self { values })
    }

    pub fn real(values: Vec<f64>) -> Result<Self> {
        Self::new(values.into_iter().map(|v| Complex64::new(v, 0.0)).collect())
    }

    /// Evaluates `f` at every index `0..n`.
    pub fn from_fn(n: usize, f: impl FnMut(usize) -> Complex64) -> Result<Self> {
        Self::new((0..n).map(f).collect())
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// True when every imaginary part is exactly zero.
    pub fn is_real(&self) -> bool {
        self.values.iter().all(|v| v.im == 0.0)
    }

    pub fn real_parts(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.re).collect()
    }

    pub fn restrict(&self, indices: &[usize]) -> Result<RestrictedFunction> {
        let values = indices
            .iter()
            .map(|&i| {
                self.values.get(i).copied().ok_or(Error::IndexOutOfRange {
                    index: i,
                    n: self.values.len(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        RestrictedFunction::new(indices.to_vec(), values)
    }

    /// `max_i |self_i − other_i|`.
    pub fn sup_distance(&self, other: &SampledFunction) -> Result<f64> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub(crate) fn check_space(&self, space: &FiniteMetricSpace) -> Result<()> {
        if self.values.len() != space.len() {
            return Err(Error::LengthMismatch {
                expected: space.len(),
                found: self.values.len(),
            });
        }
        Ok(())
    }

    /// Scale used for value comparisons: `max(1, max |f|)`.
    pub(crate) fn magnitude(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(1.0, f64::max)
    }
}

/// A function known only on a subset `S` of the points.
#[derive(Debug, Clone, PartialEq)]
pub struct RestrictedFunction {
    indices: Vec<usize>,
    values: Vec<Complex64>,
}

impl RestrictedFunction {
    pub fn new(indices: Vec<usize>, values: Vec<Complex64>) -> Result<Self> {
        if indices.len() != values.len() {
            return Err(Error::LengthMismatch {
                expected: indices.len(),
                found: values.len(),
            });
        }
        check_finite(&values)?;
        let mut sorted = indices.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::RepeatedIndex(w[0]));
        }
        Ok(Self { indices, values })
    }

    pub fn real(indices: Vec<usize>, values: Vec<f64>) -> Result<Self> {
        Self::new(
            indices,
            values.into_iter().map(|v| Complex64::new(v, 0.0)).collect(),
        )
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(|v| v.im == 0.0)
    }

    fn check_space(&self, space: &FiniteMetricSpace) -> Result<()> {
        for &i in &self.indices {
            space.check_index(i)?;
        }
        Ok(())
    }
}

fn check_finite(values: &[Complex64]) -> Result<()> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(k) => Err(Error::NonFiniteValue(k)),
        None => Ok(()),
    }
}

/// Anything that assigns values to some points of a space.
pub trait PointValues {
    fn point_count(&self) -> usize;
    fn point(&self, k: usize) -> usize;
    fn value(&self, k: usize) -> Complex64;
    fn validate(&self, space: &FiniteMetricSpace) -> Result<()>;
}

impl PointValues for SampledFunction {
    fn point_count(&self) -> usize {
        self.values.len()
    }
    fn point(&self, k: usize) -> usize {
        k
    }
    fn value(&self, k: usize) -> Complex64 {
        self.values[k]
    }
    fn validate(&self, space: &FiniteMetricSpace) -> Result<()> {
        self.check_space(space)
    }
}

impl PointValues for RestrictedFunction {
    fn point_count(&self) -> usize {
        self.indices.len()
    }
    fn point(&self, k: usize) -> usize {
        self.indices[k]
    }
    fn value(&self, k: usize) -> Complex64 {
        self.values[k]
    }
    fn validate(&self, space: &FiniteMetricSpace) -> Result<()> {
        self.check_space(space)
    }
}

/// `max |f(x) − f(y)| / d(x, y)` over distinct pairs; 0 for a single point.
pub fn lipschitz_constant<F: PointValues + ?Sized>(
    space: &FiniteMetricSpace,
    f: &F,
) -> Result<f64> {
    lipschitz_witness(space, f).map(|(lip, _)| lip)
}

/// Like [`lipschitz_constant`], also returning the pair of points attaining it.
pub fn lipschitz_witness<F: PointValues + ?Sized>(
    space: &FiniteMetricSpace,
    f: &F,
) -> Result<(f64, Option<(usize, usize)>)> {
    f.validate(space)?;
    let m = f.point_count();
    let mut best = 0.0;
    let mut witness = None;
    for a in 0..m {
        let (x, fx) = (f.point(a), f.value(a));
        let row = space.row(x);
        for b in (a + 1)..m {
            let y = f.point(b);
            let ratio = (fx - f.value(b)).norm() / row[y];
            if ratio > best {
                best = ratio;
                witness = Some((x, y));
            }
        }
    }
    Ok((best, witness))
}

fn check_constant(c: f64) -> Result<()> {
    if c >= 0.0 && c.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidConstant(c))
    }
}

fn check_extension_input(space: &FiniteMetricSpace, s: &RestrictedFunction, c: f64) -> Result<()> {
    check_constant(c)?;
    if s.is_empty() {
        return Err(Error::EmptySubset);
    }
    let lip = lipschitz_constant(space, s)?;
    if lip > c + CONSTANT_TOL * c.max(1.0) {
        return Err(Error::CTooSmall { c, lip });
    }
    Ok(())
}

fn require_real(s: &RestrictedFunction) -> Result<()> {
    match s.values.iter().position(|v| v.im != 0.0) {
        Some(k) => Err(Error::NotRealValued(k)),
        None => Ok(()),
    }
}

/// `min_k values[k] + c d(x, indices[k])` for every `x`.
///
/// On `S` itself the minimum is attained at `x` (that is the agreement
/// property), so the sampled value is written back to keep it exact under
/// rounding.
fn upper_envelope(
    space: &FiniteMetricSpace,
    indices: &[usize],
    values: &[f64],
    c: f64,
) -> Vec<f64> {
    let mut out: Vec<f64> = (0..space.len())
        .map(|x| {
            let row = space.row(x);
            indices
                .iter()
                .zip(values)
                .map(|(&s, &v)| v + c * row[s])
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    pin(&mut out, indices, values);
    out
}

/// `max_k values[k] − c d(x, indices[k])` for every `x`.
fn lower_envelope(
    space: &FiniteMetricSpace,
    indices: &[usize],
    values: &[f64],
    c: f64,
) -> Vec<f64> {
    let mut out: Vec<f64> = (0..space.len())
        .map(|x| {
            let row = space.row(x);
            indices
                .iter()
                .zip(values)
                .map(|(&s, &v)| v - c * row[s])
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect();
    pin(&mut out, indices, values);
    out
}

fn pin(out: &mut [f64], indices: &[usize], values: &[f64]) {
    for (&s, &v) in indices.iter().zip(values) {
        out[s] = v;
    }
}

/// Greatest `c`-Lipschitz extension of a real function on `S`.
///
/// Fails with [`Error::CTooSmall`] when `c` is below the measured constant of
/// `s`, because the result would then no longer agree with `s` on `S`.
pub fn mcshane_extend_real(
    space: &FiniteMetricSpace,
    s: &RestrictedFunction,
    c: f64,
) -> Result<SampledFunction> {
    require_real(s)?;
    check_extension_input(space, s, c)?;
    let re: Vec<f64> = s.values.iter().map(|v| v.re).collect();
    SampledFunction::real(upper_envelope(space, &s.indices, &re, c))
}

/// Least `c`-Lipschitz extension of a real function on `S`, the pointwise
/// lower bound for every other `c`-Lipschitz extension.
pub fn mcshane_extend_real_min(
    space: &FiniteMetricSpace,
    s: &RestrictedFunction,
    c: f64,
) -> Result<SampledFunction> {
    require_real(s)?;
    check_extension_input(space, s, c)?;
    let re: Vec<f64> = s.values.iter().map(|v| v.re).collect();
    SampledFunction::real(lower_envelope(space, &s.indices, &re, c))
}

/// Componentwise McShane extension of a complex function.
///
/// `c` must bound the complex Lipschitz constant of `s`; real and imaginary
/// parts are then `c`-Lipschitz and are each extended with `c`. An imaginary
/// part that vanishes on `S` is extended by zero, so real input yields
/// exactly [`mcshane_extend_real`].
pub fn extend_complex(
    space: &FiniteMetricSpace,
    s: &RestrictedFunction,
    c: f64,
) -> Result<SampledFunction> {
    check_extension_input(space, s, c)?;
    let re: Vec<f64> = s.values.iter().map(|v| v.re).collect();
    let re = upper_envelope(space, &s.indices, &re, c);
    let values = if s.is_real() {
        re.into_iter().map(|r| Complex64::new(r, 0.0)).collect()
    } else {
        let im: Vec<f64> = s.values.iter().map(|v| v.im).collect();
        let im = upper_envelope(space, &s.indices, &im, c);
        re.into_iter()
            .zip(im)
            .map(|(r, i)| Complex64::new(r, i))
            .collect()
    };
    SampledFunction::new(values)
}
