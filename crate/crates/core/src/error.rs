use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("metric space must contain at least one point")]
    EmptySpace,
    #[error("distance matrix is not square: row {row} has {len} entries, expected {expected}")]
    NonSquareMatrix {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("distance ({i}, {j}) is not finite")]
    NonFiniteDistance { i: usize, j: usize },
    #[error("distance ({i}, {j}) = {value} is negative")]
    NegativeDistance { i: usize, j: usize, value: f64 },
    #[error("distance ({i}, {i}) = {value} must be zero")]
    NonzeroDiagonal { i: usize, value: f64 },
    #[error("distance matrix is asymmetric at ({i}, {j})")]
    AsymmetricMatrix { i: usize, j: usize },
    #[error("triangle inequality violated by {violation} at ({i}, {j}) via {k}")]
    TriangleViolation {
        i: usize,
        j: usize,
        k: usize,
        violation: f64,
    },
    #[error("points {i} and {j} coincide")]
    DuplicatePoint { i: usize, j: usize },
    #[error("point {index} has dimension {found}, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("coordinate of point {index} is not finite")]
    NonFiniteCoordinate { index: usize },
    #[error("graph is disconnected: node {node} is unreachable from node 0")]
    DisconnectedGraph { node: usize },
    #[error("edge ({u}, {v}) has non-positive or non-finite weight {weight}")]
    NonpositiveWeight { u: usize, v: usize, weight: f64 },
    #[error("point ({re}, {im}) is not strictly inside the unit disk")]
    PointOnOrOutsideBoundary { re: f64, im: f64 },
    #[error("hyperbolic scale must be positive and finite, got {0}")]
    InvalidScale(f64),
    #[error("exponent p must be positive and finite, got {0}")]
    InvalidP(f64),
    #[error("sample count must be at least one")]
    NoSamples,
    #[error("index {index} out of range for a space of {n} points")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("separation parameter t must be positive and finite, got {0}")]
    InvalidSeparation(f64),
    #[error("seeds {i} and {j} are closer than t")]
    SeedsTooClose { i: usize, j: usize },
    #[error("function has {found} values but the space has {expected} points")]
    LengthMismatch { expected: usize, found: usize },
    #[error("index {0} appears twice in the restricted function")]
    RepeatedIndex(usize),
    #[error("function value at position {0} is not finite")]
    NonFiniteValue(usize),
    #[error("function has a non-zero imaginary part at position {0}")]
    NotRealValued(usize),
    #[error("restricted function has no points")]
    EmptySubset,
    #[error("constant {c} is below the restriction's Lipschitz constant {lip}")]
    CTooSmall { c: f64, lip: f64 },
    #[error("Lipschitz constant must be non-negative and finite, got {0}")]
    InvalidConstant(f64),
    #[error("epsilon must be positive and finite, got {0}")]
    InvalidEpsilon(f64),
    #[error("expected positive finite inputs, got epsilon = {epsilon}, delta = {delta}")]
    NonpositiveInput { epsilon: f64, delta: f64 },
    #[error("condition |f(x) - f(y)| <= eps + C d(x, y) fails at ({i}, {j}) by {excess}")]
    StarViolated { i: usize, j: usize, excess: f64 },
}
