//! Matrix file format: a JSON object `{"dim": n, "re": [[..]; n], "im": [[..]; n]}`,
//! row-major, row `i` of each array being row `i` of the matrix.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{Gate, FILE_UNITARY_TOL};
use crate::error::{Error, Result};
use crate::qmath::ComplexMatrix;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl MatrixFile {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        let n = m.dim();
        let rows = |f: fn(Complex64) -> f64| -> Vec<Vec<f64>> {
            (0..n).map(|i| (0..n).map(|j| f(m[(i, j)])).collect()).collect()
        };
        Self {
            dim: n,
            re: rows(|z| z.re),
            im: rows(|z| z.im),
        }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        let n = self.dim;
        if n == 0 {
            return Err(Error::Parse("dim must be positive".into()));
        }
        let check = |name: &str, rows: &[Vec<f64>]| -> Result<()> {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(Error::Parse(format!("`{name}` is not a {n}x{n} array")));
            }
            Ok(())
        };
        check("re", &self.re)?;
        check("im", &self.im)?;
        let data = self
            .re
            .iter()
            .zip(&self.im)
            .flat_map(|(r, i)| r.iter().zip(i).map(|(&a, &b)| Complex64::new(a, b)))
            .collect();
        ComplexMatrix::from_vec(n, data)
    }
}

pub fn parse_matrix(text: &str) -> Result<ComplexMatrix> {
    let file: MatrixFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.to_matrix()
}

/// Reads and validates a two-qubit unitary from a matrix file.
pub fn gate_from_file(path: impl AsRef<Path>) -> Result<Gate> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    let m = parse_matrix(&text)?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "custom".into());
    Gate::new(name, m, FILE_UNITARY_TOL)
}
