//! State file format.
//!
//! ```json
//! {"dimA": 2, "dimB": 2, "matrix": [[[0.5, 0.0], [0.0, 0.0], ...], ...]}
//! ```
//!
//! `matrix` lists rows; each entry is a `[re, im]` pair. Writers emit every
//! number with 17 significant digits, so reading a written file reproduces
//! the matrix bit for bit.

use std::fmt::Write as _;

use num_complex::Complex64;
use serde::Deserialize;
use thiserror::Error;

use crate::linalg::ComplexMatrix;
use crate::states::{validate_density, DensityMatrix, StateError};

#[derive(Debug, Error)]
pub enum StateFileError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Invalid(#[from] StateError),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateFile {
    #[serde(rename = "dimA")]
    dim_a: usize,
    #[serde(rename = "dimB")]
    dim_b: usize,
    matrix: Vec<Vec<[f64; 2]>>,
}

/// Parses the matrix and its dimensions without checking that it is a state.
pub fn parse_state_matrix(text: &str) -> Result<(ComplexMatrix, usize, usize), StateFileError> {
    let file: StateFile = serde_json::from_str(text).map_err(|e| StateFileError::Parse(e.to_string()))?;
    let rows = file.matrix.len();
    let cols = file.matrix.first().map_or(0, Vec::len);
    if let Some((i, r)) = file.matrix.iter().enumerate().find(|(_, r)| r.len() != cols) {
        return Err(StateFileError::Parse(format!(
            "row {i} has {} entries, expected {cols}",
            r.len()
        )));
    }
    let data = file
        .matrix
        .into_iter()
        .flatten()
        .map(|[re, im]| Complex64::new(re, im))
        .collect();
    let m = ComplexMatrix::from_vec(rows, cols, data).map_err(|e| StateFileError::Parse(e.to_string()))?;
    Ok((m, file.dim_a, file.dim_b))
}

/// Parses and validates a state file.
pub fn read_state(text: &str) -> Result<DensityMatrix, StateFileError> {
    let (m, dim_a, dim_b) = parse_state_matrix(text)?;
    Ok(validate_density(m, dim_a, dim_b)?)
}

fn push_number(out: &mut String, x: f64) {
    // 17 significant digits, locale independent.
    write!(out, "{x:.16e}").expect("writing to a String cannot fail");
}

/// Serializes a matrix with its dimensions in the state file format.
pub fn write_state_matrix(m: &ComplexMatrix, dim_a: usize, dim_b: usize) -> String {
    let mut out = String::new();
    write!(out, "{{\"dimA\": {dim_a}, \"dimB\": {dim_b}, \"matrix\": [").unwrap();
    for i in 0..m.rows() {
        if i > 0 {
            out.push(',');
        }
        out.push_str("\n  [");
        for (j, z) in m.row(i).iter().enumerate() {
            if j > 0 {
                out.push_str(", ");
            }
            out.push('[');
            push_number(&mut out, z.re);
            out.push_str(", ");
            push_number(&mut out, z.im);
            out.push(']');
        }
        out.push(']');
    }
    out.push_str("\n]}\n");
    out
}

pub fn write_state(rho: &DensityMatrix) -> String {
    write_state_matrix(rho.matrix(), rho.dim_a(), rho.dim_b())
}
