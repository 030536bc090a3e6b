//! Dense complex square matrices and the structural operations the rest of the
//! crate needs: Kronecker products, partial trace, partial transpose and
//! Hermitian eigenvalues.
//!
//! Basis ordering for two qubits is `|00>, |01>, |10>, |11>`; entries are
//! stored row-major.

mod eigen;
mod json;

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use eigen::{hermitian_eigenvalues, HermitianSpectrum};
pub use json::{read_density_matrix, validate_density_matrix, DensityMatrixFile};

/// Maximum `|m - m^dagger|` entry accepted as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![ZERO; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    /// Builds a matrix from rows, rejecting ragged or non-finite input.
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != dim {
                return Err(Error::NotSquare { rows: dim, row: i, cols: row.len() });
            }
            data.extend(row);
        }
        let m = Self { dim, data };
        m.check_finite()?;
        Ok(m)
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect()).collect())
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    /// `|psi><psi|` for a (not necessarily normalized) vector.
    pub fn outer(psi: &[Complex64]) -> Self {
        Self::from_fn(psi.len(), |i, j| psi[i] * psi[j].conj())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn check_finite(&self) -> Result<()> {
        match self.data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            Some(k) => Err(Error::NonFinite { row: k / self.dim, col: k % self.dim }),
            None => Ok(()),
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|&z| z * s).collect() }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)])
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Largest entry-wise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "max_abs_diff on matrices of different size");
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// Largest entry-wise modulus of `self - self^dagger`.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    pub fn check_hermitian(&self) -> Result<()> {
        let defect = self.hermiticity_defect();
        if defect > HERMITIAN_TOL {
            return Err(Error::NotHermitian { defect });
        }
        Ok(())
    }

    /// Commutator `AB - BA`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// The `size x size` block starting at `(row, col)`.
    pub fn block(&self, row: usize, col: usize, size: usize) -> Self {
        Self::from_fn(size, |i, j| self[(row + i, col + j)])
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim);
        ComplexMatrix { dim: self.dim, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim);
        ComplexMatrix { dim: self.dim, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|j| {
                    let z = self[(i, j)];
                    format!("{:+.6}{:+.6}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Pauli matrix `s_k` for `k` in `1..=3`; `k = 0` gives the identity.
///
/// `s2` is `[[0, -i], [i, 0]]`. Products `s2 ⊗ s2` do not depend on this sign.
pub fn pauli(k: usize) -> ComplexMatrix {
    let rows = match k {
        0 => [[ONE, ZERO], [ZERO, ONE]],
        1 => [[ZERO, ONE], [ONE, ZERO]],
        2 => [[ZERO, -I], [I, ZERO]],
        3 => [[ONE, ZERO], [ZERO, -ONE]],
        _ => panic!("pauli index {k} out of range 0..=3"),
    };
    ComplexMatrix::from_fn(2, |i, j| rows[i][j])
}

/// Kronecker product; block `(i, j)` of the result is `a[i, j] * b`.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (m, n) = (a.dim, b.dim);
    ComplexMatrix::from_fn(m * n, |i, j| a[(i / n, j / n)] * b[(i % n, j % n)])
}

fn check_bipartite(rho: &ComplexMatrix, dims: (usize, usize)) -> Result<()> {
    let expected = dims.0 * dims.1;
    if rho.dim != expected {
        return Err(Error::DimensionMismatch { expected, found: rho.dim });
    }
    Ok(())
}

/// Traces out the second factor, returning the `dims.0`-dimensional state of A.
pub fn partial_trace_b(rho: &ComplexMatrix, dims: (usize, usize)) -> Result<ComplexMatrix> {
    check_bipartite(rho, dims)?;
    rho.check_hermitian()?;
    let (da, db) = dims;
    Ok(ComplexMatrix::from_fn(da, |i, j| (0..db).map(|k| rho[(i * db + k, j * db + k)]).sum()))
}

/// Traces out the first factor, returning the `dims.1`-dimensional state of B.
pub fn partial_trace_a(rho: &ComplexMatrix, dims: (usize, usize)) -> Result<ComplexMatrix> {
    check_bipartite(rho, dims)?;
    rho.check_hermitian()?;
    let (da, db) = dims;
    Ok(ComplexMatrix::from_fn(db, |i, j| (0..da).map(|k| rho[(k * db + i, k * db + j)]).sum()))
}

/// Transposes the second tensor factor:
/// `<i k| rho^T_B |j l> = <i l| rho |j k>`.
pub fn partial_transpose_b(rho: &ComplexMatrix, dims: (usize, usize)) -> Result<ComplexMatrix> {
    check_bipartite(rho, dims)?;
    let db = dims.1;
    Ok(ComplexMatrix::from_fn(rho.dim, |row, col| {
        let (i, k) = (row / db, row % db);
        let (j, l) = (col / db, col % db);
        rho[(i * db + l, j * db + k)]
    }))
}

/// The swap operator `P = sum_ij |i><j| ⊗ |j><i|` on `C^d ⊗ C^d`.
pub fn swap_operator(d: usize) -> ComplexMatrix {
    let mut p = ComplexMatrix::zeros(d * d);
    for i in 0..d {
        for j in 0..d {
            p[(i * d + j, j * d + i)] = ONE;
        }
    }
    p
}

/// Symmetric and antisymmetric projectors `(I ± P) / 2` on `C^d ⊗ C^d`.
pub fn projectors_sym_antisym(d: usize) -> Result<(ComplexMatrix, ComplexMatrix)> {
    if d < 2 {
        return Err(Error::InvalidState(format!("local dimension must be >= 2, got {d}")));
    }
    let id = ComplexMatrix::identity(d * d);
    let swap = swap_operator(d);
    Ok(((&id + &swap).scale_real(0.5), (&id - &swap).scale_real(0.5)))
}
