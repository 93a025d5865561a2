//! Positive roots of the scalar equations the bounds reduce to.

use alloc::vec::Vec;

use crate::{Error, Result};

/// `G(z) = leading z^m - lower[0] z^{m-1} - ... - lower[m-1]`.
///
/// `lower` runs from the `z^{m-1}` coefficient down to the constant term,
/// matching `||A_{m-1}||, ..., ||A_0||`.
#[derive(Debug, Clone, PartialEq)]
pub struct CauchyPolynomial {
    leading: f64,
    lower: Vec<f64>,
}

/// Positive root of a [`CauchyPolynomial`]. `degenerate` is set when all
/// lower coefficients vanish and the root collapses to zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CauchyRoot {
    pub root: f64,
    pub degenerate: bool,
}

impl CauchyPolynomial {
    pub fn new(leading: f64, lower: Vec<f64>) -> Result<Self> {
        if !(leading > 0.0 && leading.is_finite()) {
            return Err(Error::InvalidParameter(alloc::format!(
                "leading coefficient must be positive, got {leading}"
            )));
        }
        if lower.is_empty() {
            return Err(Error::InvalidDegree(0));
        }
        if lower.iter().any(|&c| !(c >= 0.0 && c.is_finite())) {
            return Err(Error::InvalidParameter(
                "lower coefficients must be finite and nonnegative".into(),
            ));
        }
        Ok(Self { leading, lower })
    }

    pub fn degree(&self) -> usize {
        self.lower.len()
    }

    pub fn evaluate(&self, z: f64) -> f64 {
        let mut acc = self.leading;
        for &c in &self.lower {
            acc = acc * z - c;
        }
        acc
    }

    /// `leading z^m + sum lower_j z^j`, the natural scale for `|G(z)|`.
    pub fn magnitude(&self, z: f64) -> f64 {
        let mut acc = self.leading;
        for &c in &self.lower {
            acc = acc * z + c;
        }
        acc
    }

    /// `G(z) / z^m = leading - sum_i lower[i] z^{-(i+1)}`, increasing on
    /// `z > 0`.
    fn normalized(&self, z: f64) -> f64 {
        let mut tail = 0.0;
        for &c in self.lower.iter().rev() {
            tail = (tail + c) / z;
        }
        self.leading - tail
    }

    /// The unique positive root, found by bisection on `G(z) / z^m` down to
    /// adjacent floating-point numbers. The upper end of the final bracket
    /// is returned.
    pub fn unique_positive_root(&self) -> CauchyRoot {
        let max_lower = self.lower.iter().copied().fold(0.0, f64::max);
        if max_lower == 0.0 {
            return CauchyRoot {
                root: 0.0,
                degenerate: true,
            };
        }
        let mut lo = 0.0f64;
        let mut hi = 1.0 + max_lower / self.leading;
        while self.normalized(hi) < 0.0 {
            hi *= 2.0;
        }
        for _ in 0..2100 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.normalized(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        // `hi` keeps G(hi) >= 0, so it never undershoots the root.
        CauchyRoot {
            root: hi,
            degenerate: false,
        }
    }
}

/// Greatest positive root `k` of `K^{m+1} - 2 K^m + 1`, stored together
/// with its distance `2 - k` to the upper end of its bracket.
///
/// For large `m` the root crowds `2` and the polynomial's slope there grows
/// like `2^m`, so the plain `f64` value cannot carry a small residual on its
/// own; `deficit` keeps full relative precision and `residual` uses it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrinomialRoot {
    pub degree: usize,
    pub root: f64,
    /// `2 - root`, accurate to a few ulps relative.
    pub deficit: f64,
    /// `m = 1`: the trinomial is `(K - 1)^2` and the root `1` is double.
    pub degenerate: bool,
}

impl TrinomialRoot {
    /// `|k^{m+1} - 2 k^m + 1|` evaluated as `|1 - (2 - k) k^m|`.
    pub fn residual(&self) -> f64 {
        (1.0 - self.deficit * powi(self.root, self.degree)).abs()
    }
}

fn powi(x: f64, m: usize) -> f64 {
    let mut acc = 1.0;
    for _ in 0..m {
        acc *= x;
    }
    acc
}

/// Greatest positive root of `K^{m+1} - 2 K^m + 1 = 0`.
///
/// `K = 1` is always a root. For `m >= 2` the polynomial is negative just
/// above its minimum at `2m/(m+1)` and equals `1` at `K = 2`, so the
/// greatest root is the unique zero of `e (2 - e)^m - 1` for the deficit
/// `e = 2 - K` in `(0, 2/(m+1))`.
pub fn trinomial_greatest_root(m: usize) -> Result<TrinomialRoot> {
    if m == 0 {
        return Err(Error::InvalidDegree(0));
    }
    if m == 1 {
        return Ok(TrinomialRoot {
            degree: 1,
            root: 1.0,
            deficit: 1.0,
            degenerate: true,
        });
    }
    let f = |e: f64| e * powi(2.0 - e, m) - 1.0;
    let mut lo = 0.0f64;
    let mut hi = 2.0 / (m as f64 + 1.0);
    debug_assert!(f(hi) > 0.0);
    for _ in 0..2100 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let deficit = if f(lo).abs() < f(hi).abs() { lo } else { hi };
    Ok(TrinomialRoot {
        degree: m,
        root: 2.0 - deficit,
        deficit,
        degenerate: false,
    })
}
