use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{hermitian_eigenvalues, ComplexMatrix};
use crate::error::{Error, Result};

/// Largest `|tr(rho) - 1|` accepted when reading a density matrix.
pub const TRACE_TOL: f64 = 1e-8;
/// Most negative eigenvalue accepted when reading a density matrix.
pub const PSD_TOL: f64 = 1e-8;

/// On-disk density matrix: `{"dim": n, "re": [[...]], "im": [[...]]}`, row-major.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct DensityMatrixFile {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl DensityMatrixFile {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        let n = m.dim();
        Self {
            dim: n,
            re: (0..n).map(|i| (0..n).map(|j| m[(i, j)].re).collect()).collect(),
            im: (0..n).map(|i| (0..n).map(|j| m[(i, j)].im).collect()).collect(),
        }
    }

    /// Converts to a matrix and checks Hermiticity, unit trace and positivity.
    pub fn into_density_matrix(self) -> Result<ComplexMatrix> {
        let n = self.dim;
        if n == 0 {
            return Err(Error::InvalidDensityMatrix("dim must be positive".into()));
        }
        for (name, part) in [("re", &self.re), ("im", &self.im)] {
            if part.len() != n {
                return Err(Error::InvalidDensityMatrix(format!("\"{name}\" has {} rows, expected {n}", part.len())));
            }
            if let Some((i, row)) = part.iter().enumerate().find(|(_, r)| r.len() != n) {
                return Err(Error::InvalidDensityMatrix(format!(
                    "\"{name}\" row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
        }
        let rows = (0..n).map(|i| (0..n).map(|j| Complex64::new(self.re[i][j], self.im[i][j])).collect()).collect();
        let m = ComplexMatrix::from_rows(rows)?;
        validate_density_matrix(&m)?;
        Ok(m)
    }
}

/// Hermitian, `|tr - 1| <= 1e-8`, smallest eigenvalue `>= -1e-8`.
pub fn validate_density_matrix(m: &ComplexMatrix) -> Result<()> {
    m.check_hermitian()?;
    let tr = m.trace().re;
    if (tr - 1.0).abs() > TRACE_TOL {
        return Err(Error::InvalidDensityMatrix(format!("trace is {tr}, expected 1")));
    }
    let min = hermitian_eigenvalues(m)?.min();
    if min < -PSD_TOL {
        return Err(Error::InvalidDensityMatrix(format!("not positive semidefinite (smallest eigenvalue {min:.3e})")));
    }
    Ok(())
}

pub fn read_density_matrix(path: impl AsRef<Path>) -> Result<ComplexMatrix> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let file: DensityMatrixFile = serde_json::from_str(&text)?;
    file.into_density_matrix()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Result<ComplexMatrix> {
        serde_json::from_str::<DensityMatrixFile>(s)?.into_density_matrix()
    }

    #[test]
    fn reads_maximally_mixed_qubit() {
        let m = parse(r#"{"dim": 2, "re": [[0.5, 0], [0, 0.5]], "im": [[0, 0], [0, 0]]}"#).unwrap();
        assert_eq!(m, ComplexMatrix::identity(2).scale_real(0.5));
    }

    #[test]
    fn round_trips_through_json() {
        let m = ComplexMatrix::from_rows(vec![
            vec![Complex64::new(0.6, 0.0), Complex64::new(0.1, -0.2)],
            vec![Complex64::new(0.1, 0.2), Complex64::new(0.4, 0.0)],
        ])
        .unwrap();
        let text = serde_json::to_string(&DensityMatrixFile::from_matrix(&m)).unwrap();
        assert_eq!(parse(&text).unwrap(), m);
    }

    #[test]
    fn rejects_bad_trace() {
        let err = parse(r#"{"dim": 2, "re": [[0.5, 0], [0, 0.6]], "im": [[0, 0], [0, 0]]}"#).unwrap_err();
        assert!(matches!(err, Error::InvalidDensityMatrix(_)), "{err}");
    }

    #[test]
    fn rejects_non_hermitian() {
        let err = parse(r#"{"dim": 2, "re": [[0.5, 0.1], [0, 0.5]], "im": [[0, 0], [0, 0]]}"#).unwrap_err();
        assert!(matches!(err, Error::NotHermitian { .. }));
    }

    #[test]
    fn rejects_negative_eigenvalue() {
        let err = parse(r#"{"dim": 2, "re": [[0.5, 0.6], [0.6, 0.5]], "im": [[0, 0], [0, 0]]}"#).unwrap_err();
        assert!(err.to_string().contains("positive semidefinite"), "{err}");
    }

    #[test]
    fn rejects_ragged_rows() {
        let err = parse(r#"{"dim": 2, "re": [[0.5, 0], [0.5]], "im": [[0, 0], [0, 0]]}"#).unwrap_err();
        assert!(matches!(err, Error::InvalidDensityMatrix(_)));
    }
}
