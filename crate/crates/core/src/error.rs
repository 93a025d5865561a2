use alloc::string::String;
use core::fmt;

use crate::bounds::TheoremId;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Operand shapes do not fit the operation.
    ShapeMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    NotSquare { rows: usize, cols: usize },
    /// A matrix entry or scalar argument was NaN or infinite.
    NonFinite,
    SingularMatrix,
    /// The angle between matrices is undefined when one of them is zero.
    ZeroMatrixAngle,
    NotHermitian,
    NotPositiveDefinite,
    /// An iterative routine hit its iteration cap.
    NonConvergence { routine: &'static str, iterations: usize },
    InvalidScale(f64),
    InvalidDegree(usize),
    ZeroLeadingCoefficient,
    SingularLeadingCoefficient,
    SingularA0,
    ZeroCoefficient { index: usize },
    InvalidParameter(String),
    HypothesisViolated { theorem: TheoremId, reason: String },
    GeneratorExhausted { attempts: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ShapeMismatch { expected, found } => write!(
                f,
                "shape mismatch: expected {}x{}, found {}x{}",
                expected.0, expected.1, found.0, found.1
            ),
            Error::NotSquare { rows, cols } => {
                write!(f, "matrix must be square, got {rows}x{cols}")
            }
            Error::NonFinite => f.write_str("non-finite value"),
            Error::SingularMatrix => f.write_str("matrix is numerically singular"),
            Error::ZeroMatrixAngle => f.write_str("angle with a zero matrix is undefined"),
            Error::NotHermitian => f.write_str("matrix is not Hermitian"),
            Error::NotPositiveDefinite => f.write_str("matrix is not positive definite"),
            Error::NonConvergence { routine, iterations } => {
                write!(f, "{routine} did not converge within {iterations} iterations")
            }
            Error::InvalidScale(t) => write!(f, "scale must be positive and finite, got {t}"),
            Error::InvalidDegree(m) => write!(f, "degree must be at least 1, got {m}"),
            Error::ZeroLeadingCoefficient => f.write_str("leading coefficient is zero"),
            Error::SingularLeadingCoefficient => f.write_str("leading coefficient A_m is singular"),
            Error::SingularA0 => f.write_str("constant coefficient A_0 is singular"),
            Error::ZeroCoefficient { index } => {
                write!(f, "coefficient A_{index} is zero; its angle is undefined")
            }
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::HypothesisViolated { theorem, reason } => {
                write!(f, "{theorem} hypothesis violated: {reason}")
            }
            Error::GeneratorExhausted { attempts } => {
                write!(f, "generator gave up after {attempts} attempts")
            }
        }
    }
}

impl core::error::Error for Error {}
