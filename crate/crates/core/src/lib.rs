//! Certified Lipschitz approximation on finite metric spaces.
//!
//! The crate is `no_std` (with `alloc`) so the algorithms can be embedded
//! anywhere; file formats and the command-line driver live in the `lipcert`
//! crate.
//!
//! The building blocks are:
//!
//! * [`metric`]: validated finite metric spaces (explicit matrices, Euclidean
//!   point clouds, weighted graphs) and [`disk`] for the hyperbolic unit disk.
//! * [`nets`]: greedy maximal `t`-separated subsets with covering checks.
//! * [`extension`]: McShane extension of real and complex functions.
//! * [`approx`]: the star modulus `C*(ε)`, the uniform-continuity modulus
//!   `δ(ε)`, and the net/restrict/extend pipeline that turns a function
//!   satisfying `|f(x) - f(y)| ≤ ε + C β(x, y)` into a Lipschitz function
//!   within a certified uniform distance of it.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod approx;
pub mod disk;
mod error;
pub mod extension;
pub mod metric;
pub mod nets;

pub use approx::{
    check_star, growth_bound_check, prop2_constant, star_modulus, star_modulus_table,
    theorem1_approximant, uc_modulus, Approximant, ApproximationCertificate, GrowthReport, Mode,
    ModulusRow, ModulusTable, Pipeline, StarCheck, StarModulus, UcModulus,
};
pub use disk::{disk_moment_estimate, hyperbolic_distance, poincare_disk_space, DiskPoint};
pub use error::{Error, Result};
pub use extension::{
    extend_complex, lipschitz_constant, mcshane_extend_real, mcshane_extend_real_min,
    RestrictedFunction, SampledFunction,
};
pub use metric::{
    diameter, euclidean_space, graph_space, validate_metric, FiniteMetricSpace, OriginKind,
    ValidationReport,
};
pub use nets::{greedy_maximal_separated, verify_net, NetVerification, SeparatedNet};

pub use num_complex::Complex64;
