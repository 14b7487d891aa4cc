//! Finite metric spaces backed by a dense, validated distance matrix.

use alloc::collections::BinaryHeap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};

/// Relative tolerance for the triangle inequality, scaled by the diameter.
pub const DEFAULT_TOL_METRIC: f64 = 1e-9;

/// Where a space's distances came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OriginKind {
    Matrix,
    Euclidean,
    Graph,
    PoincareDisk,
}

impl OriginKind {
    pub fn as_str(self) -> &'static str {
        match self {
            OriginKind::Matrix => "matrix",
            OriginKind::Euclidean => "euclidean",
            OriginKind::Graph => "graph",
            OriginKind::PoincareDisk => "poincare_disk",
        }
    }
}

/// A finite set of points with a symmetric distance matrix.
///
/// Every constructor guarantees a zero diagonal, exact symmetry and strictly
/// positive off-diagonal entries. Distinct points at distance zero are
/// rejected rather than merged, since merging would silently discard samples
/// of any function defined on the space.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMetricSpace {
    n: usize,
    dist: Vec<f64>,
    labels: Option<Vec<String>>,
    origin: OriginKind,
}

impl FiniteMetricSpace {
    /// Builds a space from an explicit matrix, running the full validation.
    ///
    /// `tol` is an absolute tolerance for triangle violations; `None` uses
    /// [`DEFAULT_TOL_METRIC`] times the diameter.
    pub fn from_matrix(rows: &[Vec<f64>], tol: Option<f64>) -> Result<Self> {
        let n = rows.len();
        let tol = match tol {
            Some(t) => t,
            None => default_tolerance(max_entry(rows)),
        };
        let report = validate_metric(rows, tol)?;
        if let Some(&(i, j)) = report.duplicate_pairs.first() {
            return Err(Error::DuplicatePoint { i, j });
        }
        if !report.is_metric {
            let (i, j, k) = report.worst_triple.unwrap_or((0, 0, 0));
            return Err(Error::TriangleViolation {
                i,
                j,
                k,
                violation: report.worst_triangle_violation,
            });
        }
        let dist = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Ok(Self {
            n,
            dist,
            labels: None,
            origin: OriginKind::Matrix,
        })
    }

    /// Wraps a flat row-major matrix that the caller has already made
    /// symmetric with a zero diagonal.
    pub(crate) fn from_parts(n: usize, dist: Vec<f64>, origin: OriginKind) -> Result<Self> {
        debug_assert_eq!(dist.len(), n * n);
        for i in 0..n {
            for j in (i + 1)..n {
                if dist[i * n + j] <= 0.0 {
                    return Err(Error::DuplicatePoint { i, j });
                }
            }
        }
        Ok(Self {
            n,
            dist,
            labels: None,
            origin,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    /// Always false: empty spaces cannot be constructed.
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn dist(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.n + j]
    }

    /// Distances from point `i` to every point.
    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.dist[i * self.n..(i + 1) * self.n]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn origin(&self) -> OriginKind {
        self.origin
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.dist.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn diameter(&self) -> f64 {
        self.dist.iter().copied().fold(0.0, f64::max)
    }

    /// Absolute triangle tolerance for this space.
    pub fn tolerance(&self) -> f64 {
        default_tolerance(self.diameter())
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<()> {
        if index < self.n {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index, n: self.n })
        }
    }
}

/// Largest pairwise distance; zero for a one-point space.
pub fn diameter(space: &FiniteMetricSpace) -> f64 {
    space.diameter()
}

pub(crate) fn default_tolerance(diameter: f64) -> f64 {
    DEFAULT_TOL_METRIC * diameter
}

fn max_entry(rows: &[Vec<f64>]) -> f64 {
    rows.iter()
        .flat_map(|r| r.iter().copied())
        .filter(|v| v.is_finite())
        .fold(0.0, f64::max)
}

/// Outcome of [`validate_metric`].
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub is_metric: bool,
    /// `max(0, d(i,j) - d(i,k) - d(k,j))` over all triples.
    pub worst_triangle_violation: f64,
    /// `(i, j, k)`: the path `i -> j` beaten by the detour through `k`.
    pub worst_triple: Option<(usize, usize, usize)>,
    /// Pairs `i < j` at distance zero.
    pub duplicate_pairs: Vec<(usize, usize)>,
}

/// Checks that `rows` is a metric up to an absolute triangle tolerance.
///
/// Structural defects (shape, non-finite or negative entries, a non-zero
/// diagonal, asymmetry) are errors. Triangle violations and coincident points
/// are reported, not raised.
pub fn validate_metric(rows: &[Vec<f64>], tol: f64) -> Result<ValidationReport> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::EmptySpace);
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NonSquareMatrix {
                row: i,
                len: row.len(),
                expected: n,
            });
        }
        for (j, &v) in row.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFiniteDistance { i, j });
            }
            if v < 0.0 {
                return Err(Error::NegativeDistance { i, j, value: v });
            }
        }
    }
    for i in 0..n {
        if rows[i][i] != 0.0 {
            return Err(Error::NonzeroDiagonal {
                i,
                value: rows[i][i],
            });
        }
        for j in (i + 1)..n {
            if rows[i][j] != rows[j][i] {
                return Err(Error::AsymmetricMatrix { i, j });
            }
        }
    }

    let mut duplicate_pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rows[i][j] == 0.0 {
                duplicate_pairs.push((i, j));
            }
        }
    }

    let mut worst = 0.0;
    let mut worst_triple = None;
    for i in 0..n {
        for j in (i + 1)..n {
            let direct = rows[i][j];
            for k in 0..n {
                let excess = direct - rows[i][k] - rows[k][j];
                if excess > worst {
                    worst = excess;
                    worst_triple = Some((i, j, k));
                }
            }
        }
    }

    Ok(ValidationReport {
        is_metric: worst <= tol && duplicate_pairs.is_empty(),
        worst_triangle_violation: worst,
        worst_triple,
        duplicate_pairs,
    })
}

/// Euclidean distances between `d`-dimensional points.
pub fn euclidean_space(coords: &[Vec<f64>]) -> Result<FiniteMetricSpace> {
    let n = coords.len();
    if n == 0 {
        return Err(Error::EmptySpace);
    }
    let dim = coords[0].len();
    for (index, c) in coords.iter().enumerate() {
        if c.len() != dim {
            return Err(Error::DimensionMismatch {
                index,
                expected: dim,
                found: c.len(),
            });
        }
        if c.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteCoordinate { index });
        }
    }
    let mut dist = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let sq: f64 = coords[i]
                .iter()
                .zip(&coords[j])
                .map(|(a, b)| (a - b) * (a - b))
                .sum();
            let d = libm::sqrt(sq);
            dist[i * n + j] = d;
            dist[j * n + i] = d;
        }
    }
    FiniteMetricSpace::from_parts(n, dist, OriginKind::Euclidean)
}

#[derive(Clone, Copy)]
struct HeapEntry {
    cost: f64,
    node: usize,
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for HeapEntry {}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapEntry {
    // reversed: BinaryHeap is a max-heap
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .cost
            .total_cmp(&self.cost)
            .then_with(|| other.node.cmp(&self.node))
    }
}

/// Shortest-path metric of an undirected graph with positive edge weights.
///
/// Runs a binary-heap Dijkstra from every node. The two directions of each
/// pair are summed in different orders, so the smaller of the two is kept to
/// make the matrix exactly symmetric.
pub fn graph_space(n: usize, edges: &[(usize, usize, f64)]) -> Result<FiniteMetricSpace> {
    if n == 0 {
        return Err(Error::EmptySpace);
    }
    let mut adjacency: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    for &(u, v, weight) in edges {
        if u >= n {
            return Err(Error::IndexOutOfRange { index: u, n });
        }
        if v >= n {
            return Err(Error::IndexOutOfRange { index: v, n });
        }
        if !(weight > 0.0 && weight.is_finite()) {
            return Err(Error::NonpositiveWeight { u, v, weight });
        }
        if u != v {
            adjacency[u].push((v, weight));
            adjacency[v].push((u, weight));
        }
    }

    let mut dist = vec![f64::INFINITY; n * n];
    let mut heap = BinaryHeap::new();
    for source in 0..n {
        let row = &mut dist[source * n..(source + 1) * n];
        row[source] = 0.0;
        heap.push(HeapEntry {
            cost: 0.0,
            node: source,
        });
        while let Some(HeapEntry { cost, node }) = heap.pop() {
            if cost > row[node] {
                continue;
            }
            for &(next, w) in &adjacency[node] {
                let candidate = cost + w;
                if candidate < row[next] {
                    row[next] = candidate;
                    heap.push(HeapEntry {
                        cost: candidate,
                        node: next,
                    });
                }
            }
        }
        if let Some(node) = row.iter().position(|d| d.is_infinite()) {
            return Err(Error::DisconnectedGraph { node });
        }
    }

    for i in 0..n {
        for j in (i + 1)..n {
            let d = dist[i * n + j].min(dist[j * n + i]);
            dist[i * n + j] = d;
            dist[j * n + i] = d;
        }
    }
    FiniteMetricSpace::from_parts(n, dist, OriginKind::Graph)
}
