use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::decomp::symmetric_eigenvalues;
use super::{cholesky, frobenius_norm, inverse, ComplexMatrix};
use crate::{Error, Result};

/// Relative tolerance for Hermitian and definiteness tests.
pub const DEFAULT_TOL: f64 = 1e-10;

/// `||A - A*||_F <= tol * (1 + ||A||_F)`.
pub fn is_hermitian(a: &ComplexMatrix, tol: f64) -> bool {
    if !a.is_square() {
        return false;
    }
    let n = a.rows();
    let mut skew = 0.0;
    for i in 0..n {
        for j in 0..n {
            skew += (a[(i, j)] - a[(j, i)].conj()).norm_sqr();
        }
    }
    skew.sqrt() <= tol * (1.0 + frobenius_norm(a))
}

/// Eigenvalues of the Hermitian part, ascending. No Hermitian check.
fn eigenvalues_of_hermitian_part(a: &ComplexMatrix) -> Result<Vec<f64>> {
    let n = a.require_square()?;
    let h = a.hermitian_part();
    let doubled = symmetric_eigenvalues(h.real_embedding(), 2 * n)?;
    Ok(doubled.into_iter().step_by(2).collect())
}

/// All eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(a: &ComplexMatrix) -> Result<Vec<f64>> {
    a.require_square()?;
    if !is_hermitian(a, DEFAULT_TOL) {
        return Err(Error::NotHermitian);
    }
    eigenvalues_of_hermitian_part(a)
}

/// `(lambda_min, lambda_max)` of a Hermitian matrix.
pub fn hermitian_extremes(a: &ComplexMatrix) -> Result<(f64, f64)> {
    let eig = hermitian_eigenvalues(a)?;
    Ok((eig[0], eig[eig.len() - 1]))
}

fn min_eigenvalue_if_hermitian(a: &ComplexMatrix, tol: f64) -> Option<f64> {
    if !is_hermitian(a, tol) {
        return None;
    }
    eigenvalues_of_hermitian_part(a).ok().map(|e| e[0])
}

/// Hermitian with `lambda_min >= -tol * (1 + ||A||_F)`.
pub fn is_psd(a: &ComplexMatrix, tol: f64) -> bool {
    min_eigenvalue_if_hermitian(a, tol)
        .is_some_and(|lmin| lmin >= -tol * (1.0 + frobenius_norm(a)))
}

/// Hermitian with `lambda_min > tol * (1 + ||A||_F)`.
pub fn is_pd(a: &ComplexMatrix, tol: f64) -> bool {
    min_eigenvalue_if_hermitian(a, tol).is_some_and(|lmin| lmin > tol * (1.0 + frobenius_norm(a)))
}

/// Loewner order `A >= B`, i.e. `A - B` is positive semidefinite.
pub fn loewner_geq(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> bool {
    a.try_sub(b).is_ok_and(|d| is_psd(&d, tol))
}

/// Largest eigenvalue of the pencil `B - mu A` for Hermitian PD `A` and
/// Hermitian `B`, i.e. `lambda_max(L^{-1} B L^{-*})` with `A = L L*`.
///
/// For `t > 0`, `A >= t B` holds exactly when `t * mu <= 1`.
pub fn generalized_max_eigenvalue(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    a.check_same_shape(b)?;
    if !is_hermitian(a, DEFAULT_TOL) || !is_hermitian(b, DEFAULT_TOL) {
        return Err(Error::NotHermitian);
    }
    let l = cholesky(&a.hermitian_part())?;
    let linv = inverse(&l)?;
    let m = &(&linv * &b.hermitian_part()) * &linv.adjoint();
    let eig = eigenvalues_of_hermitian_part(&m)?;
    Ok(eig[eig.len() - 1])
}

/// Lower estimate of the numerical radius `max |u* A u|` over unit `u`.
///
/// Sweeps `theta` over `grid` equispaced angles and takes the largest
/// eigenvalue of the Hermitian part of `e^{i theta} A`; exact whenever the
/// maximizing direction lies on the grid.
pub fn numerical_radius_estimate(a: &ComplexMatrix, grid: usize) -> Result<f64> {
    a.require_square()?;
    if grid == 0 {
        return Err(Error::InvalidParameter("grid must be positive".into()));
    }
    let mut best = 0.0f64;
    for i in 0..grid {
        let theta = 2.0 * core::f64::consts::PI * (i as f64) / (grid as f64);
        let rot = a.scale(Complex64::from_polar(1.0, theta));
        let eig = eigenvalues_of_hermitian_part(&rot)?;
        best = best.max(eig[eig.len() - 1]);
    }
    Ok(best)
}
