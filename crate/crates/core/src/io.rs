//! Density-matrix file format.
//!
//! ```json
//! {"dims": [2, 2], "matrix_re": [...], "matrix_im": [...]}
//! ```
//!
//! `matrix_re` / `matrix_im` hold `dim²` row-major entries. Numbers are
//! written with 17 significant digits so every `f64` survives a round trip
//! bit for bit.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize, Serializer};
use serde_json::value::RawValue;
use thiserror::Error;

use crate::linalg::{ComplexMatrix, HermitianOperator};
use crate::states::DensityMatrix;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot access {path}: {source}")]
    File {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed density matrix file: {0}")]
    Format(String),
    #[error(transparent)]
    Invalid(#[from] crate::error::Error),
}

fn serialize_exact<S: Serializer>(values: &[f64], serializer: S) -> Result<S::Ok, S::Error> {
    use serde::ser::{Error, SerializeSeq};
    let mut seq = serializer.serialize_seq(Some(values.len()))?;
    for v in values {
        if !v.is_finite() {
            return Err(S::Error::custom("non-finite matrix entry"));
        }
        let raw = RawValue::from_string(format_exact(*v)).map_err(S::Error::custom)?;
        seq.serialize_element(&raw)?;
    }
    seq.end()
}

/// 17 significant digits in exponent notation, e.g. `5.0000000000000000e-1`.
pub fn format_exact(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct DensityFile {
    dims: Vec<usize>,
    #[serde(serialize_with = "serialize_exact")]
    matrix_re: Vec<f64>,
    #[serde(serialize_with = "serialize_exact")]
    matrix_im: Vec<f64>,
}

pub fn density_to_json(rho: &DensityMatrix) -> String {
    let entries = rho.matrix().row_major();
    let file = DensityFile {
        dims: rho.local_dims().to_vec(),
        matrix_re: entries.iter().map(|z| z.re).collect(),
        matrix_im: entries.iter().map(|z| z.im).collect(),
    };
    serde_json::to_string_pretty(&file).expect("finite entries serialize")
}

/// Parses and validates a density matrix (Hermitian, PSD, unit trace).
pub fn density_from_json(text: &str) -> Result<DensityMatrix, IoError> {
    let file: DensityFile =
        serde_json::from_str(text).map_err(|e| IoError::Format(e.to_string()))?;
    if file.matrix_re.len() != file.matrix_im.len() {
        return Err(IoError::Format(format!(
            "matrix_re has {} entries but matrix_im has {}",
            file.matrix_re.len(),
            file.matrix_im.len()
        )));
    }
    let dim = file
        .dims
        .iter()
        .try_fold(1usize, |acc, &d| acc.checked_mul(d))
        .ok_or_else(|| IoError::Format("dims overflow".into()))?;
    if file.dims.is_empty() || dim == 0 {
        return Err(IoError::Format("dims must be a nonempty list of positive integers".into()));
    }
    if file.matrix_re.len() != dim * dim {
        return Err(IoError::Format(format!(
            "expected {} entries for dims {:?}, found {}",
            dim * dim,
            file.dims,
            file.matrix_re.len()
        )));
    }
    let entries: Vec<Complex64> = file
        .matrix_re
        .iter()
        .zip(&file.matrix_im)
        .map(|(&re, &im)| Complex64::new(re, im))
        .collect();
    // Matrices written by this module are exactly Hermitian, so the
    // symmetrization inside HermitianOperator leaves them bit-identical.
    let matrix = ComplexMatrix::from_row_major(dim, &entries)?;
    let operator = HermitianOperator::new(matrix)?;
    Ok(DensityMatrix::new(file.dims, operator)?)
}

pub fn save_density(path: &Path, rho: &DensityMatrix) -> Result<(), IoError> {
    std::fs::write(path, density_to_json(rho)).map_err(|source| IoError::File {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_density(path: &Path) -> Result<DensityMatrix, IoError> {
    let text = std::fs::read_to_string(path).map_err(|source| IoError::File {
        path: path.display().to_string(),
        source,
    })?;
    density_from_json(&text)
}
