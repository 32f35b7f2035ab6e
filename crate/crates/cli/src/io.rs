//! On-disk formats: the state file read by `gap`/`certify` and the report
//! file every JSON-emitting command writes.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use ergokit::{
    validate_density, BipartiteSystem, BoundReport, ComplexMatrix, DimensionBound, GapReport,
    HamiltonianSpec, SeparableBound, Tolerances,
};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

fn unit_spacing() -> f64 {
    1.0
}

/// A bipartite state on disk. Matrices are lists of rows; `matrix_im` may be
/// omitted for real states.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub d1: usize,
    pub d2: usize,
    pub matrix_re: Vec<Vec<f64>>,
    #[serde(default)]
    pub matrix_im: Option<Vec<Vec<f64>>>,
    #[serde(default = "unit_spacing")]
    pub spacing_a: f64,
    #[serde(default = "unit_spacing")]
    pub spacing_b: f64,
}

impl StateFile {
    pub fn parse(bytes: &[u8]) -> Result<Self, CliError> {
        Ok(serde_json::from_slice(bytes)?)
    }

    /// Validates shapes and the density matrix and attaches linear ladders.
    pub fn into_system(self, tol: &Tolerances) -> Result<BipartiteSystem, CliError> {
        let n = self.d1 * self.d2;
        let re = flatten(&self.matrix_re, n, "matrix_re")?;
        let im = match &self.matrix_im {
            Some(rows) => flatten(rows, n, "matrix_im")?,
            None => vec![0.0; n * n],
        };
        let matrix = ComplexMatrix::from_re_im(n, n, &re, &im)?;
        let rho = validate_density(matrix, tol)?;
        let ham_a = HamiltonianSpec::linear(self.d1, self.spacing_a)?;
        let ham_b = HamiltonianSpec::linear(self.d2, self.spacing_b)?;
        Ok(BipartiteSystem::new(rho, ham_a, ham_b)?)
    }
}

fn flatten(rows: &[Vec<f64>], n: usize, field: &str) -> Result<Vec<f64>, CliError> {
    if rows.len() != n {
        return Err(shape_error(format!(
            "{field} has {} rows, expected {n}",
            rows.len()
        )));
    }
    if let Some((i, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(shape_error(format!(
            "{field} row {i} has {} entries, expected {n}",
            row.len()
        )));
    }
    Ok(rows.concat())
}

fn shape_error(msg: String) -> CliError {
    CliError::Validation(ergokit::Error::LengthError(msg))
}

/// Machine-readable result of `gap`, `certify` or `bound`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub tool: String,
    pub version: String,
    pub command: String,
    /// `sha256:<hex>` of the input file, or of the canonical argument string
    /// for commands without an input file.
    pub input_digest: String,
    pub tolerances: Tolerances,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d1: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d2: Option<usize>,
    /// Set when the input listed the larger factor first and the factors
    /// were exchanged before computing.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub swapped: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gap: Option<GapReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<BoundReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<SeparableBound>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimension_bound: Option<DimensionBound>,
}

impl ReportFile {
    pub fn new(command: &str, input_digest: String, tolerances: Tolerances) -> Self {
        ReportFile {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            input_digest,
            tolerances,
            d1: None,
            d2: None,
            swapped: None,
            gap: None,
            certificate: None,
            bound: None,
            dimension_bound: None,
        }
    }
}

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

pub fn read_input(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes `bytes` to `out`, or to stdout when no path is given.
pub fn emit(out: Option<&PathBuf>, bytes: &[u8]) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, bytes).map_err(|source| CliError::Write {
            path: path.clone(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(bytes)
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Write {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<Vec<u8>, CliError> {
    let mut bytes =
        serde_json::to_vec_pretty(value).map_err(|e| CliError::Encode(e.to_string()))?;
    bytes.push(b'\n');
    Ok(bytes)
}
