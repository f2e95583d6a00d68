//! Dense complex linear algebra: Hermitian operators, spectral decomposition,
//! PSD square roots, Kronecker products and traces.
//!
//! Storage is a dense `nalgebra` matrix. The spectral decomposition is
//! delegated to nalgebra's Hermitian eigensolver and then post-processed
//! (sorted, checked) to meet the contracts below.

use nalgebra::{DMatrix, Dyn, SymmetricEigen};
use num_complex::Complex64;
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};

/// Maximum entrywise mismatch `|M_ij - conj(M_ji)|` accepted as Hermitian.
pub const HERMITICITY_TOLERANCE: f64 = 1e-9;
/// Eigenvalues in `[-PSD_TOLERANCE, 0)` are treated as zero.
pub const PSD_TOLERANCE: f64 = 1e-9;
pub const RECONSTRUCTION_TOLERANCE: f64 = 1e-9;
pub const SQRT_TOLERANCE: f64 = 1e-9;

const EIGEN_EPS: f64 = 1e-15;
const EIGEN_MAX_ITER: usize = 10_000;

/// Dense square complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix(DMatrix<Complex64>);

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self(DMatrix::zeros(dim, dim))
    }

    pub fn identity(dim: usize) -> Self {
        Self(DMatrix::identity(dim, dim))
    }

    /// Builds a matrix from `dim * dim` row-major entries.
    pub fn from_row_major(dim: usize, entries: &[Complex64]) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidSize("matrix dimension must be positive".into()));
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        Ok(Self(DMatrix::from_row_slice(dim, dim, entries)))
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let dim = diag.len();
        Self(DMatrix::from_fn(dim, dim, |i, j| {
            if i == j {
                Complex64::new(diag[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        }))
    }

    /// `|v><v|` for a column vector `v`.
    pub fn outer(v: &[Complex64]) -> Self {
        let dim = v.len();
        Self(DMatrix::from_fn(dim, dim, |i, j| v[i] * v[j].conj()))
    }

    /// Wraps a nalgebra matrix. Panics if it is not square.
    pub fn from_dmatrix(m: DMatrix<Complex64>) -> Self {
        assert!(m.is_square(), "ComplexMatrix must be square");
        Self(m)
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[(row, col)]
    }

    pub fn as_dmatrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn into_dmatrix(self) -> DMatrix<Complex64> {
        self.0
    }

    /// Entries in row-major order.
    pub fn row_major(&self) -> Vec<Complex64> {
        let n = self.dim();
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                out.push(self.0[(i, j)]);
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self(self.0.map(|z| z * factor))
    }

    /// Largest entrywise absolute difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest `|M_ij - conj(M_ji)|`.
    pub fn hermiticity_mismatch(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.0[(i, j)] - self.0[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn trace(&self) -> Complex64 {
        trace(self)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 * &rhs.0)
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 + &rhs.0)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 - &rhs.0)
    }
}

/// A complex matrix known to be Hermitian.
///
/// Construction checks the mismatch against [`HERMITICITY_TOLERANCE`] and
/// stores the symmetrized `(M + M†)/2`, so downstream code sees an exactly
/// Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator(ComplexMatrix);

impl HermitianOperator {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let mismatch = matrix.hermiticity_mismatch();
        if !(mismatch <= HERMITICITY_TOLERANCE) {
            return Err(Error::NotHermitian { mismatch });
        }
        Ok(Self::symmetrized(matrix))
    }

    /// Symmetrizes without checking. For matrices Hermitian by construction.
    pub(crate) fn symmetrized(matrix: ComplexMatrix) -> Self {
        let adj = matrix.0.adjoint();
        Self(ComplexMatrix((matrix.0 + adj) * Complex64::new(0.5, 0.0)))
    }

    pub fn identity(dim: usize) -> Self {
        Self(ComplexMatrix::identity(dim))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn eigendecomposition(&self) -> Result<SpectralDecomposition> {
        hermitian_eigendecomposition(self)
    }
}

/// Eigenvalues in ascending order with unitary eigenvector columns.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl SpectralDecomposition {
    /// `V f(diag(w)) V†`.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let v = self.eigenvectors.as_dmatrix();
        let mut scaled = v.clone();
        for (j, &w) in self.eigenvalues.iter().enumerate() {
            let fw = f(w);
            scaled.column_mut(j).scale_mut(fw);
        }
        ComplexMatrix(scaled * v.adjoint())
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.apply(|w| w)
    }
}

/// Spectral decomposition with ascending eigenvalues.
pub fn hermitian_eigendecomposition(op: &HermitianOperator) -> Result<SpectralDecomposition> {
    let dim = op.dim();
    let m = op.matrix().as_dmatrix();
    let finite = |eig: &SymmetricEigen<Complex64, Dyn>| {
        eig.eigenvalues.iter().all(|w| w.is_finite()) && eig.eigenvectors.iter().all(|z| z.is_finite())
    };
    let eig = match SymmetricEigen::try_new(m.clone(), EIGEN_EPS, EIGEN_MAX_ITER) {
        Some(eig) if finite(&eig) => eig,
        _ => {
            // Sparse inputs with zero columns can stall deflation or come back
            // as NaN; a shift moves every eigenvalue to >= 1.
            let shift = m.norm() + 1.0;
            let shifted = m + DMatrix::from_diagonal_element(dim, dim, Complex64::new(shift, 0.0));
            let mut eig = SymmetricEigen::try_new(shifted, EIGEN_EPS, EIGEN_MAX_ITER)
                .filter(|e| finite(e))
                .ok_or(Error::NoConvergence)?;
            eig.eigenvalues.iter_mut().for_each(|w| *w -= shift);
            eig
        }
    };
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let eigenvalues: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let eigenvectors = DMatrix::from_fn(dim, dim, |i, j| eig.eigenvectors[(i, order[j])]);
    if eigenvalues.iter().any(|w| !w.is_finite()) {
        return Err(Error::NoConvergence);
    }
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors: ComplexMatrix(eigenvectors),
    })
}

/// Principal square root of a positive semidefinite operator.
///
/// Eigenvalues in `[-PSD_TOLERANCE, 0)` are clamped to zero; anything more
/// negative is rejected.
pub fn psd_sqrt(rho: &HermitianOperator) -> Result<HermitianOperator> {
    let spectral = hermitian_eigendecomposition(rho)?;
    psd_sqrt_from_spectrum(&spectral)
}

pub(crate) fn psd_sqrt_from_spectrum(spectral: &SpectralDecomposition) -> Result<HermitianOperator> {
    let min = spectral.eigenvalues.first().copied().unwrap_or(0.0);
    if min < -PSD_TOLERANCE {
        return Err(Error::NotPositiveSemidefinite { min_eigenvalue: min });
    }
    // √ is not Lipschitz at 0: roundoff of ~1e-16 on a null eigenvalue
    // would become ~1e-8 after the root, so treat it as an exact zero.
    let max = spectral.eigenvalues.last().copied().unwrap_or(0.0).max(0.0);
    let floor = 16.0 * f64::EPSILON * spectral.eigenvalues.len() as f64 * max;
    Ok(HermitianOperator::symmetrized(
        spectral.apply(|w| if w <= floor { 0.0 } else { w.sqrt() }),
    ))
}

/// Kronecker product of the factors, left to right.
pub fn tensor_product(factors: &[ComplexMatrix]) -> Result<ComplexMatrix> {
    let (first, rest) = factors.split_first().ok_or(Error::EmptyFactorList)?;
    Ok(rest
        .iter()
        .fold(first.clone(), |acc, f| ComplexMatrix(acc.0.kronecker(&f.0))))
}

pub fn trace(m: &ComplexMatrix) -> Complex64 {
    m.0.trace()
}
