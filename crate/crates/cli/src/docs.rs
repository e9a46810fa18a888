//! Input and output documents and their JSON encoding.
//!
//! Matrices travel as `{"n": 4, "rows": [[...], ...], "kind": "..."}`.
//! Every float is serialized in scientific notation with 17 significant
//! digits, which reproduces the exact double on re-parse, so matrices can be
//! piped through several commands without drift.

use std::io::{self, Read, Write};

use serde::{Deserialize, Serialize};

use rotexp::{Error as CoreError, Matrix};

/// What went wrong, split by exit code: invalid input exits 1, an internal
/// numerical failure exits 2.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    InvalidInput(String),
    #[error("internal numerical failure: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::InvalidInput(_) => 1,
            CliError::Internal(_) => 2,
        }
    }

    pub fn invalid(err: impl std::fmt::Display) -> Self {
        CliError::InvalidInput(err.to_string())
    }
}

/// Core errors surfacing mid-computation are internal failures; input
/// validation converts them explicitly before this kicks in.
impl From<CoreError> for CliError {
    fn from(err: CoreError) -> Self {
        CliError::Internal(err.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixKind {
    Antisymmetric,
    Rotation,
    General,
}

/// A matrix on the wire.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub n: usize,
    pub rows: Vec<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<MatrixKind>,
}

impl MatrixDocument {
    pub fn from_matrix(m: &Matrix, kind: Option<MatrixKind>) -> Self {
        MatrixDocument {
            n: m.dim(),
            rows: m.rows(),
            kind,
        }
    }

    /// Validates shape and entries and builds the matrix.
    pub fn to_matrix(&self) -> Result<Matrix, CliError> {
        if self.rows.len() != self.n {
            return Err(CliError::InvalidInput(format!(
                "document declares n = {} but has {} rows",
                self.n,
                self.rows.len()
            )));
        }
        for (i, row) in self.rows.iter().enumerate() {
            if row.len() != self.n {
                return Err(CliError::InvalidInput(format!(
                    "row {} has {} entries, expected {}",
                    i,
                    row.len(),
                    self.n
                )));
            }
        }
        Matrix::from_rows(&self.rows).map_err(CliError::invalid)
    }
}

/// One benchmark run: per-operation latency quantiles plus the accuracy
/// residuals observed along the way.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BenchReport {
    pub dim: usize,
    pub trials: usize,
    pub seed: u64,
    pub exp_closed_median_ns: f64,
    pub exp_closed_p90_ns: f64,
    pub exp_series_median_ns: f64,
    pub exp_series_p90_ns: f64,
    pub log_materialize_median_ns: f64,
    pub log_materialize_p90_ns: f64,
    pub max_exp_residual: f64,
    pub max_roundtrip_residual: f64,
}

/// Everything a command may emit. Fields are optional so each command
/// fills in what applies; branch tags use the class names of the library
/// verbatim.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Outputs {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rotation: Option<MatrixDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<MatrixDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f_plus: Option<MatrixDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f_minus: Option<MatrixDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub projection: Option<MatrixDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta_plus: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta_minus: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y_plus: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y_minus: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axis: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub determinant: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub qualifies_as: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bench: Option<BenchReport>,
}

/// Residuals of the validity checks that ran, plus any warnings. Warnings
/// also go to stderr; they never touch the matrices.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Diagnostics {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub antisymmetry_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orthogonality_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub round_trip_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reconstruction_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub annihilation_residual: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResultDocument {
    pub operation: String,
    pub tool_version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<MatrixDocument>,
    pub outputs: Outputs,
    pub diagnostics: Diagnostics,
}

impl ResultDocument {
    pub fn new(operation: &str) -> Self {
        ResultDocument {
            operation: operation.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            input: None,
            outputs: Outputs::default(),
            diagnostics: Diagnostics::default(),
        }
    }
}

/// JSON formatter writing every f64 as `d.dddddddddddddddde[-]X`:
/// one leading digit plus 16 fractional digits is 17 significant digits,
/// enough to recover the exact bits on parse.
struct SciFormatter;

impl serde_json::ser::Formatter for SciFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SciFormatter);
    value
        .serialize(&mut ser)
        .map_err(|e| CliError::Internal(format!("serialization failed: {e}")))?;
    String::from_utf8(buf).map_err(|e| CliError::Internal(format!("non-utf8 output: {e}")))
}

pub fn parse_matrix_document(text: &str) -> Result<MatrixDocument, CliError> {
    serde_json::from_str(text).map_err(CliError::invalid)
}

pub fn parse_result_document(text: &str) -> Result<ResultDocument, CliError> {
    serde_json::from_str(text).map_err(CliError::invalid)
}

pub fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut buf = String::new();
        io::stdin()
            .read_to_string(&mut buf)
            .map_err(CliError::invalid)?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::InvalidInput(format!("cannot read {path}: {e}")))
    }
}

pub fn write_output(path: &str, doc: &ResultDocument) -> Result<(), CliError> {
    let mut text = to_json(doc)?;
    text.push('\n');
    if path == "-" {
        io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Internal(format!("cannot write to stdout: {e}")))
    } else {
        std::fs::write(path, text)
            .map_err(|e| CliError::InvalidInput(format!("cannot write {path}: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::InvalidInput("x".into()).exit_code(), 1);
        assert_eq!(CliError::Internal("x".into()).exit_code(), 2);
    }

    #[test]
    fn floats_serialize_with_seventeen_digits() {
        let doc = MatrixDocument {
            n: 3,
            rows: vec![vec![std::f64::consts::PI, -0.5, 1e-300]; 3],
            kind: None,
        };
        let text = to_json(&doc).unwrap();
        assert!(text.contains("3.1415926535897931e0"));
        assert!(text.contains("-5.0000000000000000e-1"));

        let back: MatrixDocument = serde_json::from_str(&text).unwrap();
        for (row, orig) in back.rows.iter().zip(&doc.rows) {
            for (a, b) in row.iter().zip(orig) {
                assert_eq!(a.to_bits(), b.to_bits());
            }
        }
    }

    #[test]
    fn document_shape_validation() {
        let doc = MatrixDocument {
            n: 3,
            rows: vec![vec![0.0; 3]; 2],
            kind: None,
        };
        assert!(matches!(doc.to_matrix(), Err(CliError::InvalidInput(_))));

        let doc = MatrixDocument {
            n: 3,
            rows: vec![vec![0.0; 3], vec![0.0; 2], vec![0.0; 3]],
            kind: None,
        };
        assert!(matches!(doc.to_matrix(), Err(CliError::InvalidInput(_))));
    }

    #[test]
    fn kind_tags_parse_lowercase() {
        let doc: MatrixDocument =
            serde_json::from_str("{\"n\":3,\"rows\":[[0,0,0],[0,0,0],[0,0,0]],\"kind\":\"general\"}")
                .unwrap();
        assert_eq!(doc.kind, Some(MatrixKind::General));
    }
}
