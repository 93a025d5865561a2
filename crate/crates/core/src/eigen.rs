//! Dense complex eigensolver and the polynomial eigenvalue front end.
//!
//! `dense_eigenvalues` balances the matrix, reduces it to upper Hessenberg
//! form with Householder reflections and runs single-shift complex QR with
//! Wilkinson shifts. `polyeig` feeds it the companion linearization and
//! attaches a backward-error residual to every eigenvalue.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::linalg::{frobenius_norm, matrix_norm, sigma_min, ComplexMatrix, NormKind};
use crate::matpoly::MatrixPolynomial;
use crate::{Error, Result};

/// Iteration budget per eigenvalue before giving up.
pub const MAX_QR_ITERATIONS: usize = 40;
/// Relative subdiagonal deflation threshold.
const DEFLATION_TOL: f64 = 1e-14;

/// One eigenvalue of a matrix polynomial with its normalized residual
/// `sigma_min(P(lambda)) / sum_j ||A_j||_2 |lambda|^j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenPair {
    pub lambda: Complex64,
    pub residual: f64,
}

/// All `n m` eigenvalues of a matrix polynomial with nonsingular `A_m`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<EigenPair>,
    pub max_residual: f64,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn lambdas(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.eigenvalues.iter().map(|e| e.lambda)
    }

    pub fn max_modulus(&self) -> f64 {
        self.lambdas().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn min_modulus(&self) -> f64 {
        self.lambdas().map(|z| z.norm()).fold(f64::INFINITY, f64::min)
    }
}

/// Residual of a candidate eigenvalue against precomputed `||A_j||_2`.
fn normalized_residual(p: &MatrixPolynomial, norms: &[f64], lambda: Complex64) -> f64 {
    let r = lambda.norm();
    let mut scale = 0.0;
    for &nj in norms.iter().rev() {
        scale = scale * r + nj;
    }
    match sigma_min(&p.evaluate(lambda)) {
        Ok(s) if scale > 0.0 => s / scale,
        Ok(0.0) => 0.0,
        _ => f64::INFINITY,
    }
}

/// Eigenvalues of `P` via its companion linearization.
pub fn polyeig(p: &MatrixPolynomial) -> Result<Spectrum> {
    let comp = p.companion()?;
    let lambdas = dense_eigenvalues(&comp)?;
    let norms: Vec<f64> = p
        .coefficients()
        .iter()
        .map(|a| matrix_norm(a, NormKind::Induced2))
        .collect::<Result<_>>()?;
    let eigenvalues: Vec<EigenPair> = lambdas
        .into_iter()
        .map(|lambda| EigenPair {
            lambda,
            residual: normalized_residual(p, &norms, lambda),
        })
        .collect();
    let max_residual = eigenvalues.iter().map(|e| e.residual).fold(0.0, f64::max);
    Ok(Spectrum {
        eigenvalues,
        max_residual,
    })
}

/// All eigenvalues of a square complex matrix, with multiplicity.
pub fn dense_eigenvalues(a: &ComplexMatrix) -> Result<Vec<Complex64>> {
    let n = a.require_square()?;
    if n == 1 {
        return Ok(alloc::vec![a[(0, 0)]]);
    }
    let mut h = a.clone();
    balance(&mut h);
    hessenberg(&mut h);
    hessenberg_qr(h)
}

/// Diagonal similarity by powers of two that evens out row and column
/// norms (Parlett–Reinsch). Exact in floating point.
fn balance(a: &mut ComplexMatrix) {
    const RADIX: f64 = 2.0;
    let n = a.rows();
    let abs1 = |z: Complex64| z.re.abs() + z.im.abs();
    for _ in 0..200 {
        let mut done = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += abs1(a[(j, i)]);
                    r += abs1(a[(i, j)]);
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / RADIX;
            while c < g {
                f *= RADIX;
                c *= RADIX * RADIX;
            }
            g = r * RADIX;
            while c > g {
                f /= RADIX;
                c /= RADIX * RADIX;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                let g = 1.0 / f;
                for j in 0..n {
                    a[(i, j)] *= g;
                    a[(j, i)] *= f;
                }
            }
        }
        if done {
            break;
        }
    }
}

/// In-place Householder reduction to upper Hessenberg form.
fn hessenberg(h: &mut ComplexMatrix) {
    let n = h.rows();
    let mut v: Vec<Complex64> = Vec::with_capacity(n);
    for k in 0..n.saturating_sub(2) {
        v.clear();
        v.extend((k + 1..n).map(|i| h[(i, k)]));
        let xnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let x0 = v[0];
        let phase = if x0.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * xnorm;
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm2;
        for j in k..n {
            let s: Complex64 = v
                .iter()
                .enumerate()
                .map(|(i, vi)| vi.conj() * h[(k + 1 + i, j)])
                .sum();
            let s = s * beta;
            for (i, vi) in v.iter().enumerate() {
                h[(k + 1 + i, j)] -= vi * s;
            }
        }
        for r in 0..n {
            let s: Complex64 = v
                .iter()
                .enumerate()
                .map(|(l, vl)| h[(r, k + 1 + l)] * vl)
                .sum();
            let s = s * beta;
            for (l, vl) in v.iter().enumerate() {
                h[(r, k + 1 + l)] -= s * vl.conj();
            }
        }
        h[(k + 1, k)] = alpha;
        for i in k + 2..n {
            h[(i, k)] = Complex64::new(0.0, 0.0);
        }
    }
}

/// Eigenvalue of the trailing 2x2 block `[[a, b], [c, d]]` closest to `d`.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let p = (a - d) * 0.5;
    let bc = b * c;
    let disc = (p * p + bc).sqrt();
    let den = if (p + disc).norm() >= (p - disc).norm() {
        p + disc
    } else {
        p - disc
    };
    if den.norm() == 0.0 {
        d
    } else {
        d - bc / den
    }
}

/// Single-shift QR on an upper Hessenberg matrix; eigenvalues only, so
/// rotations touch the active window alone.
fn hessenberg_qr(mut h: ComplexMatrix) -> Result<Vec<Complex64>> {
    let n = h.rows();
    let mut eig = alloc::vec![Complex64::new(0.0, 0.0); n];
    let hnorm = frobenius_norm(&h);
    let floor = f64::EPSILON * hnorm;
    let mut rot: Vec<(Complex64, Complex64)> = Vec::with_capacity(n);
    let mut hi = n - 1;
    let mut its = 0usize;
    loop {
        // Find the start of the unreduced block ending at `hi`.
        let mut lo = hi;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let mut s = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            if s == 0.0 {
                s = hnorm;
            }
            if sub <= DEFLATION_TOL * s || sub <= floor * 1e-3 {
                h[(lo, lo - 1)] = Complex64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            eig[hi] = h[(hi, hi)];
            its = 0;
            if hi == 0 {
                break;
            }
            hi -= 1;
            continue;
        }
        its += 1;
        if its > MAX_QR_ITERATIONS {
            return Err(Error::NonConvergence {
                routine: "Hessenberg QR",
                iterations: MAX_QR_ITERATIONS,
            });
        }
        let shift = if its.is_multiple_of(10) {
            // Exceptional shift to break cycles.
            h[(hi, hi)] + h[(hi, hi - 1)].re.abs() * 0.75
        } else {
            wilkinson_shift(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };
        for i in lo..=hi {
            h[(i, i)] -= shift;
        }
        rot.clear();
        for k in lo..hi {
            let a = h[(k, k)];
            let b = h[(k + 1, k)];
            let r = a.norm().hypot(b.norm());
            let (ca, cb) = if r == 0.0 {
                (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
            } else {
                (a / r, b / r)
            };
            // Rows k, k+1 <- G with G = [[conj(ca), conj(cb)], [-cb, ca]].
            for j in k..=hi {
                let x = h[(k, j)];
                let y = h[(k + 1, j)];
                h[(k, j)] = ca.conj() * x + cb.conj() * y;
                h[(k + 1, j)] = -cb * x + ca * y;
            }
            rot.push((ca, cb));
        }
        for (idx, &(ca, cb)) in rot.iter().enumerate() {
            let k = lo + idx;
            // Columns k, k+1 <- G*.
            for i in lo..=(k + 1).min(hi) {
                let x = h[(i, k)];
                let y = h[(i, k + 1)];
                h[(i, k)] = x * ca + y * cb;
                h[(i, k + 1)] = -x * cb.conj() + y * ca.conj();
            }
        }
        for i in lo..=hi {
            h[(i, i)] += shift;
        }
    }
    Ok(eig)
}
