use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::{frobenius_norm, ComplexMatrix};
use crate::{Error, Result};

/// Frobenius inner product `<A, B> = tr(B* A) = sum conj(b_ij) a_ij`.
pub fn frobenius_inner_product(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<Complex64> {
    a.check_same_shape(b)?;
    Ok(a.as_slice()
        .iter()
        .zip(b.as_slice())
        .map(|(x, y)| y.conj() * x)
        .sum())
}

/// Angle between two nonzero matrices in the real inner-product space
/// `Re <A, B>`, in `[0, pi]`.
///
/// Evaluated as `2 atan2(|a - b|, |a + b|)` on the normalized matrices,
/// which equals `acos(Re<A,B> / (|A| |B|))` but stays accurate near `0`
/// and `pi`, and is exactly symmetric in its arguments.
pub fn matrix_angle(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    a.check_same_shape(b)?;
    let na = frobenius_norm(a);
    let nb = frobenius_norm(b);
    if na == 0.0 || nb == 0.0 {
        return Err(Error::ZeroMatrixAngle);
    }
    let mut diff = 0.0;
    let mut sum = 0.0;
    for (x, y) in a.as_slice().iter().zip(b.as_slice()) {
        let (u, v) = (x / na, y / nb);
        diff += (u - v).norm_sqr();
        sum += (u + v).norm_sqr();
    }
    Ok(2.0 * diff.sqrt().atan2(sum.sqrt()))
}

/// Upper bound on `||A - B||_F` for `||A||_F >= ||B||_F` whose angle is at
/// most `2 alpha <= pi`:
/// `(|A| - |B|) cos alpha + (|A| + |B|) sin alpha`.
pub fn cone_inequality_rhs(norm_a: f64, norm_b: f64, alpha: f64) -> f64 {
    (norm_a - norm_b) * alpha.cos() + (norm_a + norm_b) * alpha.sin()
}
