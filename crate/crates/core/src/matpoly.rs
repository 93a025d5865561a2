//! The matrix polynomial `P(z) = sum_j A_j z^j` and its structural
//! transforms.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::linalg::{inverse_norm_reciprocal, ComplexMatrix, Lu, NormKind};
use crate::{Error, Result};

/// Matrix polynomial of honest degree `m >= 1` with `n x n` coefficients,
/// stored in ascending powers.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixPolynomial {
    coefficients: Vec<ComplexMatrix>,
}

/// Nonsingularity of the end coefficients, which most bounds assume.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Validation {
    pub a0_nonsingular: bool,
    pub leading_nonsingular: bool,
}

impl MatrixPolynomial {
    /// Coefficients in ascending powers: `coefficients[j]` multiplies `z^j`.
    ///
    /// A zero leading coefficient is rejected rather than trimmed.
    pub fn new(coefficients: Vec<ComplexMatrix>) -> Result<Self> {
        if coefficients.len() < 2 {
            return Err(Error::InvalidDegree(coefficients.len().saturating_sub(1)));
        }
        let n = coefficients[0].require_square()?;
        for a in &coefficients {
            if a.shape() != (n, n) {
                return Err(Error::ShapeMismatch {
                    expected: (n, n),
                    found: a.shape(),
                });
            }
        }
        if coefficients[coefficients.len() - 1].is_zero() {
            return Err(Error::ZeroLeadingCoefficient);
        }
        Ok(Self { coefficients })
    }

    /// Scalar polynomial from ascending complex coefficients.
    pub fn scalar(coefficients: &[Complex64]) -> Result<Self> {
        Self::new(
            coefficients
                .iter()
                .map(|&c| ComplexMatrix::from_diag(&[c]))
                .collect(),
        )
    }

    /// Scalar polynomial from ascending real coefficients.
    pub fn scalar_real(coefficients: &[f64]) -> Result<Self> {
        Self::new(
            coefficients
                .iter()
                .map(|&c| ComplexMatrix::from_real_diag(&[c]))
                .collect(),
        )
    }

    /// Matrix dimension `n`.
    #[inline]
    pub fn dim(&self) -> usize {
        self.coefficients[0].rows()
    }

    /// Degree `m`.
    #[inline]
    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[ComplexMatrix] {
        &self.coefficients
    }

    /// `A_j`.
    pub fn coeff(&self, j: usize) -> &ComplexMatrix {
        &self.coefficients[j]
    }

    pub fn leading(&self) -> &ComplexMatrix {
        &self.coefficients[self.degree()]
    }

    pub fn into_coefficients(self) -> Vec<ComplexMatrix> {
        self.coefficients
    }

    pub fn validate(&self) -> Validation {
        let ok = |a: &ComplexMatrix| inverse_norm_reciprocal(a, NormKind::Induced2).is_ok();
        Validation {
            a0_nonsingular: ok(self.coeff(0)),
            leading_nonsingular: ok(self.leading()),
        }
    }

    /// `P(z)` by Horner's rule.
    pub fn evaluate(&self, z: Complex64) -> ComplexMatrix {
        let mut acc = self.leading().clone();
        for a in self.coefficients.iter().rev().skip(1) {
            acc = &acc.scale(z) + a;
        }
        acc
    }

    /// `Q(z) = P(t z)`, i.e. `Q_j = t^j A_j`.
    pub fn scale_argument(&self, t: f64) -> Result<Self> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::InvalidScale(t));
        }
        let mut pow = 1.0;
        let mut coefficients = Vec::with_capacity(self.coefficients.len());
        for a in &self.coefficients {
            coefficients.push(a.scale_real(pow));
            pow *= t;
        }
        Self::new(coefficients)
    }

    /// `z^m P(1/z)`, i.e. the coefficient list reversed. Fails when `A_0 = 0`
    /// since the reversal would then lose degree.
    pub fn reverse(&self) -> Result<Self> {
        Self::new(self.coefficients.iter().rev().cloned().collect())
    }

    /// First companion linearization, an `mn x mn` matrix whose
    /// eigenvalues are those of `P`: identity blocks on the block
    /// superdiagonal and last block row `-A_m^{-1} [A_0 ... A_{m-1}]`.
    pub fn companion(&self) -> Result<ComplexMatrix> {
        let n = self.dim();
        let m = self.degree();
        let lu = Lu::new(self.leading()).map_err(|e| match e {
            Error::SingularMatrix => Error::SingularLeadingCoefficient,
            other => other,
        })?;
        let size = n * m;
        let mut c = ComplexMatrix::zeros(size, size);
        for i in 0..size - n {
            c[(i, i + n)] = Complex64::new(1.0, 0.0);
        }
        let last = (m - 1) * n;
        for j in 0..m {
            let block = lu.solve(self.coeff(j))?;
            for r in 0..n {
                for s in 0..n {
                    c[(last + r, j * n + s)] = -block[(r, s)];
                }
            }
        }
        Ok(c)
    }
}
