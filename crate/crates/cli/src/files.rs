//! JSON interchange files, CSV mirrors and atomic writes.
//!
//! Every record serializes its keys in declaration order and floats in
//! shortest round-trip form, so identical inputs give byte-identical files.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use lipcert_core::disk::DiskPoint;
use lipcert_core::{
    euclidean_space, graph_space, poincare_disk_space, ApproximationCertificate, Complex64,
    FiniteMetricSpace, ModulusRow, RestrictedFunction, SampledFunction, SeparatedNet,
};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// How the points of a space file are given.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceKind {
    Matrix,
    Euclidean,
    Graph,
    PoincareDisk,
}

/// A metric space on disk. Only the fields belonging to `kind` may be set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceFile {
    pub kind: SpaceKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distances: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<(usize, usize, f64)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<f64>,
}

impl SpaceFile {
    fn empty(kind: SpaceKind) -> Self {
        Self {
            kind,
            labels: None,
            distances: None,
            coords: None,
            edges: None,
            n: None,
            points: None,
            scale: None,
        }
    }

    pub fn matrix(distances: Vec<Vec<f64>>) -> Self {
        Self {
            distances: Some(distances),
            ..Self::empty(SpaceKind::Matrix)
        }
    }

    pub fn euclidean(coords: Vec<Vec<f64>>) -> Self {
        Self {
            coords: Some(coords),
            ..Self::empty(SpaceKind::Euclidean)
        }
    }

    pub fn graph(n: usize, edges: Vec<(usize, usize, f64)>) -> Self {
        Self {
            n: Some(n),
            edges: Some(edges),
            ..Self::empty(SpaceKind::Graph)
        }
    }

    pub fn poincare_disk(points: &[DiskPoint], scale: f64) -> Self {
        Self {
            points: Some(points.iter().map(|p| [p.re(), p.im()]).collect()),
            scale: Some(scale),
            ..Self::empty(SpaceKind::PoincareDisk)
        }
    }

    /// Names of the set fields that `kind` does not use, and of the
    /// required fields that are missing.
    fn field_problems(&self) -> (Vec<&'static str>, Vec<&'static str>) {
        let present = [
            ("distances", self.distances.is_some()),
            ("coords", self.coords.is_some()),
            ("edges", self.edges.is_some()),
            ("n", self.n.is_some()),
            ("points", self.points.is_some()),
            ("scale", self.scale.is_some()),
        ];
        let (required, optional): (&[&str], &[&str]) = match self.kind {
            SpaceKind::Matrix => (&["distances"], &[]),
            SpaceKind::Euclidean => (&["coords"], &[]),
            SpaceKind::Graph => (&["n", "edges"], &[]),
            SpaceKind::PoincareDisk => (&["points"], &["scale"]),
        };
        let extra = present
            .iter()
            .filter(|(name, set)| *set && !required.contains(name) && !optional.contains(name))
            .map(|(name, _)| *name)
            .collect();
        let missing = present
            .iter()
            .filter(|(name, set)| !*set && required.contains(name))
            .map(|(name, _)| *name)
            .collect();
        (extra, missing)
    }

    /// Builds and validates the metric space described by the file.
    pub fn to_space(&self, path: &Path) -> Result<FiniteMetricSpace> {
        let (extra, missing) = self.field_problems();
        if !extra.is_empty() || !missing.is_empty() {
            let kind = serde_json::to_string(&self.kind).unwrap_or_default();
            return Err(CliError::format(
                path,
                format!("kind {kind}: missing fields {missing:?}, unexpected fields {extra:?}"),
            ));
        }
        let space = match self.kind {
            SpaceKind::Matrix => {
                FiniteMetricSpace::from_matrix(self.distances.as_deref().unwrap_or_default(), None)?
            }
            SpaceKind::Euclidean => euclidean_space(self.coords.as_deref().unwrap_or_default())?,
            SpaceKind::Graph => graph_space(
                self.n.unwrap_or_default(),
                self.edges.as_deref().unwrap_or_default(),
            )?,
            SpaceKind::PoincareDisk => {
                let points = self
                    .points
                    .iter()
                    .flatten()
                    .map(|&[re, im]| DiskPoint::new(re, im))
                    .collect::<lipcert_core::Result<Vec<_>>>()?;
                poincare_disk_space(&points, self.scale.unwrap_or(1.0))?
            }
        };
        match &self.labels {
            Some(labels) => Ok(space.with_labels(labels.clone())?),
            None => Ok(space),
        }
    }
}

/// A function on every point, or with `indices` on a subset only.
/// `values_im` is omitted for real-valued data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionFile {
    pub values_re: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values_im: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub indices: Option<Vec<usize>>,
}

impl FunctionFile {
    fn from_values(values: &[Complex64], indices: Option<Vec<usize>>) -> Self {
        let real = values.iter().all(|v| v.im == 0.0);
        Self {
            values_re: values.iter().map(|v| v.re).collect(),
            values_im: (!real).then(|| values.iter().map(|v| v.im).collect()),
            indices,
        }
    }

    pub fn sampled(f: &SampledFunction) -> Self {
        Self::from_values(f.values(), None)
    }

    pub fn restricted(f: &RestrictedFunction) -> Self {
        Self::from_values(f.values(), Some(f.indices().to_vec()))
    }

    fn values(&self, path: &Path) -> Result<Vec<Complex64>> {
        match &self.values_im {
            None => Ok(self
                .values_re
                .iter()
                .map(|&re| Complex64::new(re, 0.0))
                .collect()),
            Some(im) if im.len() == self.values_re.len() => Ok(self
                .values_re
                .iter()
                .zip(im)
                .map(|(&re, &im)| Complex64::new(re, im))
                .collect()),
            Some(im) => Err(CliError::format(
                path,
                format!(
                    "values_re has {} entries but values_im has {}",
                    self.values_re.len(),
                    im.len()
                ),
            )),
        }
    }

    pub fn to_sampled(&self, path: &Path) -> Result<SampledFunction> {
        if self.indices.is_some() {
            return Err(CliError::format(
                path,
                "expected a function on every point, found indices",
            ));
        }
        Ok(SampledFunction::new(self.values(path)?)?)
    }

    pub fn to_restricted(&self, path: &Path) -> Result<RestrictedFunction> {
        let indices = self
            .indices
            .clone()
            .ok_or_else(|| CliError::format(path, "restricted function needs indices"))?;
        Ok(RestrictedFunction::new(indices, self.values(path)?)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetFile {
    pub t: f64,
    pub indices: Vec<usize>,
    pub covering_radius: f64,
}

impl From<&SeparatedNet> for NetFile {
    fn from(net: &SeparatedNet) -> Self {
        Self {
            t: net.t,
            indices: net.indices.clone(),
            covering_radius: net.covering_radius,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub restriction_ok: bool,
    pub extension_ok: bool,
    pub error_ok: bool,
}

/// One certificate of the approximation pipeline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateRecord {
    pub epsilon: f64,
    pub mode: String,
    pub c_star: f64,
    pub c_used: f64,
    pub t: f64,
    pub net_size: usize,
    pub restriction_lip: f64,
    pub extension_constant: f64,
    pub extension_lip_bound: f64,
    pub proven_sup_error: f64,
    pub achieved_sup_error: f64,
    pub measured_extension_lip: f64,
    pub checks: CheckRecord,
    pub holds: bool,
    pub net: NetFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<FunctionFile>,
}

impl CertificateRecord {
    pub fn new(cert: &ApproximationCertificate, values: Option<&SampledFunction>) -> Self {
        let check = cert.check();
        Self {
            epsilon: cert.epsilon,
            mode: cert.mode.as_str().to_owned(),
            c_star: cert.c_star,
            c_used: cert.c_used,
            t: cert.t,
            net_size: cert.net_size,
            restriction_lip: cert.restriction_lip,
            extension_constant: cert.extension_constant,
            extension_lip_bound: cert.extension_lip_bound,
            proven_sup_error: cert.proven_sup_error,
            achieved_sup_error: cert.achieved_sup_error,
            measured_extension_lip: cert.measured_extension_lip,
            checks: CheckRecord {
                restriction_ok: check.restriction_ok,
                extension_ok: check.extension_ok,
                error_ok: check.error_ok,
            },
            holds: check.holds(),
            net: NetFile::from(&cert.net),
            values: values.map(FunctionFile::sampled),
        }
    }
}

/// Plot-ready summary of a certificate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateCsvRow {
    pub epsilon: f64,
    pub c_used: f64,
    pub t: f64,
    pub net_size: usize,
    pub achieved_sup_error: f64,
    pub proven_sup_error: f64,
    pub measured_extension_lip: f64,
}

impl From<&CertificateRecord> for CertificateCsvRow {
    fn from(c: &CertificateRecord) -> Self {
        Self {
            epsilon: c.epsilon,
            c_used: c.c_used,
            t: c.t,
            net_size: c.net_size,
            achieved_sup_error: c.achieved_sup_error,
            proven_sup_error: c.proven_sup_error,
            measured_extension_lip: c.measured_extension_lip,
        }
    }
}

/// One row of a modulus table. `delta` is null when no pair of points
/// differs by at least `epsilon`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModulusRecord {
    pub epsilon: f64,
    pub c_star: f64,
    pub delta: Option<f64>,
    pub witness: Option<[usize; 2]>,
}

impl From<&ModulusRow> for ModulusRecord {
    fn from(row: &ModulusRow) -> Self {
        Self {
            epsilon: row.star.epsilon,
            c_star: row.star.c_star,
            delta: (!row.uc.no_violation).then_some(row.uc.delta),
            witness: row.star.witness.map(|(i, j)| [i, j]),
        }
    }
}

/// Reads and parses a JSON file, reporting the position of syntax errors.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// Writes `bytes` to a temporary file next to `path` and renames it into
/// place, so readers never see a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(dir, e))?;
    tmp.write_all(bytes)
        .map_err(|e| CliError::io(tmp.path(), e))?;
    tmp.as_file()
        .sync_all()
        .map_err(|e| CliError::io(tmp.path(), e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut bytes =
        serde_json::to_vec_pretty(value).map_err(|e| CliError::format(path, e.to_string()))?;
    bytes.push(b'\n');
    write_atomic(path, &bytes)
}

pub fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.serialize(row)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| CliError::io(path, e.into_error()))?;
    write_atomic(path, &bytes)
}

/// The CSV mirror of a JSON output: same path with a `.csv` extension.
pub fn csv_path(json_path: &Path) -> PathBuf {
    json_path.with_extension("csv")
}

/// Plot-ready modulus row; missing values are left empty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModulusCsvRow {
    pub epsilon: f64,
    pub c_star: f64,
    pub delta: Option<f64>,
    pub witness_i: Option<usize>,
    pub witness_j: Option<usize>,
}

impl From<&ModulusRecord> for ModulusCsvRow {
    fn from(r: &ModulusRecord) -> Self {
        Self {
            epsilon: r.epsilon,
            c_star: r.c_star,
            delta: r.delta,
            witness_i: r.witness.map(|w| w[0]),
            witness_j: r.witness.map(|w| w[1]),
        }
    }
}
