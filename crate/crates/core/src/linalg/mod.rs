//! Dense complex linear algebra used by the bound engine.
//!
//! Only what the theorems and their verification need: norms, LU inverses,
//! Hermitian spectra via Jacobi rotations, singular values, Loewner-order
//! tests, Frobenius angles and a numerical-radius estimator.

mod cone;
mod decomp;
mod definite;
mod matrix;
mod norm;

pub use cone::{cone_inequality_rhs, frobenius_inner_product, matrix_angle};
pub use decomp::{cholesky, inverse, singular_values, Lu};
pub use definite::{
    generalized_max_eigenvalue, hermitian_eigenvalues, hermitian_extremes, is_hermitian, is_pd,
    is_psd, loewner_geq, numerical_radius_estimate, DEFAULT_TOL,
};
pub use matrix::ComplexMatrix;
pub use norm::{frobenius_norm, inverse_norm_reciprocal, matrix_norm, sigma_min, NormKind};
