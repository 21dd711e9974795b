//! Version-tagged JSON matrix files.
//!
//! ```text
//! {
//!   "format": "schatten-matrix/1",
//!   "dim": 2,
//!   "real": [
//!     [5.7142857142857140e-1, 0.0000000000000000e0],
//!     [0.0000000000000000e0, 4.2857142857142855e-1]
//!   ],
//!   "imag": [...],
//!   "metadata": {"name": "gibbs", "model": {...}, "seed": null}
//! }
//! ```
//!
//! Entries are written with 17 significant digits, which round-trips every
//! `f64` exactly.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use schatten_core::{Complex64, ComplexMatrix, DecayModel};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const FORMAT_TAG: &str = "schatten-matrix/1";

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<DecayModel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation_remainder: Option<f64>,
}

#[derive(Deserialize)]
struct RawMatrixFile {
    format: String,
    dim: usize,
    real: Vec<Vec<f64>>,
    imag: Vec<Vec<f64>>,
    #[serde(default)]
    metadata: Option<Metadata>,
}

fn push_array(out: &mut String, key: &str, dim: usize, entry: impl Fn(usize, usize) -> f64) {
    let _ = writeln!(out, "  \"{key}\": [");
    for r in 0..dim {
        let row: Vec<String> = (0..dim).map(|c| format!("{:.16e}", entry(r, c))).collect();
        let sep = if r + 1 < dim { "," } else { "" };
        let _ = writeln!(out, "    [{}]{sep}", row.join(", "));
    }
    out.push_str("  ]");
}

pub fn to_string(matrix: &ComplexMatrix, metadata: &Metadata) -> String {
    let dim = matrix.dim();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{{\n  \"format\": \"{FORMAT_TAG}\",\n  \"dim\": {dim},"
    );
    push_array(&mut out, "real", dim, |r, c| matrix.get(r, c).re);
    out.push_str(",\n");
    push_array(&mut out, "imag", dim, |r, c| matrix.get(r, c).im);
    let meta = serde_json::to_string(metadata).expect("metadata serializes");
    let _ = write!(out, ",\n  \"metadata\": {meta}\n}}\n");
    out
}

pub fn from_str(text: &str) -> Result<(ComplexMatrix, Metadata), CliError> {
    let raw: RawMatrixFile =
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("matrix file: {e}")))?;
    if raw.format != FORMAT_TAG {
        return Err(CliError::Parse(format!(
            "unrecognized matrix format tag {:?}",
            raw.format
        )));
    }
    let dim = raw.dim;
    let rectangular = |rows: &[Vec<f64>]| rows.len() == dim && rows.iter().all(|r| r.len() == dim);
    if dim == 0 || !rectangular(&raw.real) || !rectangular(&raw.imag) {
        return Err(CliError::Parse(format!(
            "matrix arrays do not match dim = {dim}"
        )));
    }
    let rows: Vec<Vec<Complex64>> = raw
        .real
        .iter()
        .zip(&raw.imag)
        .map(|(re, im)| {
            re.iter()
                .zip(im)
                .map(|(&a, &b)| Complex64::new(a, b))
                .collect()
        })
        .collect();
    let matrix = ComplexMatrix::from_rows(&rows).map_err(|e| CliError::Parse(e.to_string()))?;
    Ok((matrix, raw.metadata.unwrap_or_default()))
}

pub fn read(path: &Path) -> Result<(ComplexMatrix, Metadata), CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    from_str(&text)
}

pub fn write(path: &Path, matrix: &ComplexMatrix, metadata: &Metadata) -> Result<(), CliError> {
    fs::write(path, to_string(matrix, metadata)).map_err(|e| CliError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[
            vec![Complex64::new(0.1, 0.0), Complex64::new(1.0 / 3.0, -2e-300)],
            vec![
                Complex64::new(-0.0, 5e-17),
                Complex64::new(std::f64::consts::PI, 1e300),
            ],
        ])
        .unwrap()
    }

    #[test]
    fn round_trip_is_exact() {
        let meta = Metadata {
            name: Some("sample \"quoted\"".into()),
            model: Some(DecayModel::gibbs(1.0).unwrap()),
            seed: Some(7),
            truncation_remainder: None,
        };
        let text = to_string(&sample(), &meta);
        let (m, back) = from_str(&text).unwrap();
        assert_eq!(m, sample());
        assert_eq!(back, meta);
        assert_eq!(to_string(&m, &back), text);
    }

    #[test]
    fn rejects_bad_files() {
        assert!(matches!(from_str("{"), Err(CliError::Parse(_))));
        let text = to_string(&sample(), &Metadata::default()).replace(FORMAT_TAG, "other/9");
        assert!(matches!(from_str(&text), Err(CliError::Parse(_))));
        let text = to_string(&sample(), &Metadata::default()).replace("\"dim\": 2", "\"dim\": 3");
        assert!(matches!(from_str(&text), Err(CliError::Parse(_))));
    }

    #[test]
    fn metadata_is_optional() {
        let text = format!(
            "{{\"format\": \"{FORMAT_TAG}\", \"dim\": 1, \"real\": [[1.0]], \"imag\": [[0.0]]}}"
        );
        let (m, meta) = from_str(&text).unwrap();
        assert_eq!(m, ComplexMatrix::identity(1));
        assert_eq!(meta, Metadata::default());
    }
}
