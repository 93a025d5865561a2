use core::fmt;
use core::str::FromStr;

#[allow(unused_imports)]
use num_traits::Float;

use super::{inverse, singular_values, ComplexMatrix};
use crate::{Error, Result};

/// Which matrix norm to use where a subordinate norm is called for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum NormKind {
    /// Spectral norm, the largest singular value.
    #[default]
    Induced2,
    /// Maximum absolute column sum.
    Induced1,
    /// Maximum absolute row sum.
    InducedInf,
    Frobenius,
}

impl NormKind {
    pub fn as_str(self) -> &'static str {
        match self {
            NormKind::Induced2 => "2",
            NormKind::Induced1 => "1",
            NormKind::InducedInf => "inf",
            NormKind::Frobenius => "fro",
        }
    }
}

impl fmt::Display for NormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NormKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "2" | "induced2" | "spectral" => Ok(NormKind::Induced2),
            "1" | "induced1" => Ok(NormKind::Induced1),
            "inf" | "infinity" | "inducedinf" => Ok(NormKind::InducedInf),
            "fro" | "frobenius" | "f" => Ok(NormKind::Frobenius),
            other => Err(Error::InvalidParameter(alloc::format!(
                "unknown norm kind {other:?} (expected 2, 1, inf or fro)"
            ))),
        }
    }
}

/// `sqrt(sum |a_ij|^2)`, scaled to avoid overflow.
pub fn frobenius_norm(a: &ComplexMatrix) -> f64 {
    let amax = a
        .as_slice()
        .iter()
        .map(|z| z.re.abs().max(z.im.abs()))
        .fold(0.0, f64::max);
    if amax == 0.0 {
        return 0.0;
    }
    let s: f64 = a
        .as_slice()
        .iter()
        .map(|z| (z / amax).norm_sqr())
        .sum();
    amax * s.sqrt()
}

pub fn matrix_norm(a: &ComplexMatrix, kind: NormKind) -> Result<f64> {
    Ok(match kind {
        NormKind::Induced2 => singular_values(a)?[0],
        NormKind::Induced1 => (0..a.cols())
            .map(|j| (0..a.rows()).map(|i| a[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max),
        NormKind::InducedInf => (0..a.rows())
            .map(|i| a.row(i).iter().map(|z| z.norm()).sum::<f64>())
            .fold(0.0, f64::max),
        NormKind::Frobenius => frobenius_norm(a),
    })
}

/// Smallest singular value of a square matrix.
pub fn sigma_min(a: &ComplexMatrix) -> Result<f64> {
    a.require_square()?;
    let sv = singular_values(a)?;
    Ok(sv[sv.len() - 1])
}

/// `1 / ||A^{-1}||`.
///
/// For the spectral norm this is `sigma_min(A)` and no inverse is formed.
pub fn inverse_norm_reciprocal(a: &ComplexMatrix, kind: NormKind) -> Result<f64> {
    a.require_square()?;
    match kind {
        NormKind::Induced2 => {
            let sv = singular_values(a)?;
            let smin = sv[sv.len() - 1];
            if smin == 0.0 || smin <= 1e-14 * sv[0] {
                return Err(Error::SingularMatrix);
            }
            Ok(smin)
        }
        _ => Ok(1.0 / matrix_norm(&inverse(a)?, kind)?),
    }
}
