use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::{frobenius_norm, ComplexMatrix};
use crate::{Error, Result};

/// Pivots below this multiple of `||A||_F` count as zero.
const PIVOT_TOL: f64 = 1e-14;
const MAX_JACOBI_SWEEPS: usize = 80;

/// LU factorization with partial pivoting, `PA = LU`.
#[derive(Debug, Clone)]
pub struct Lu {
    lu: ComplexMatrix,
    perm: Vec<usize>,
}

impl Lu {
    pub fn new(a: &ComplexMatrix) -> Result<Self> {
        let n = a.require_square()?;
        let scale = frobenius_norm(a);
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (p, pmag) = (k..n)
                .map(|i| (i, lu[(i, k)].norm()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pmag == 0.0 || pmag <= PIVOT_TOL * scale {
                return Err(Error::SingularMatrix);
            }
            if p != k {
                perm.swap(p, k);
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = tmp;
                }
            }
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let f = lu[(i, k)] / pivot;
                lu[(i, k)] = f;
                for j in k + 1..n {
                    let u = lu[(k, j)];
                    lu[(i, j)] -= f * u;
                }
            }
        }
        Ok(Self { lu, perm })
    }

    /// Solves `A X = B` for every column of `B`.
    pub fn solve(&self, b: &ComplexMatrix) -> Result<ComplexMatrix> {
        let n = self.lu.rows();
        if b.rows() != n {
            return Err(Error::ShapeMismatch {
                expected: (n, b.cols()),
                found: b.shape(),
            });
        }
        let mut x = ComplexMatrix::from_fn(n, b.cols(), |i, j| b[(self.perm[i], j)]);
        for col in 0..b.cols() {
            for i in 0..n {
                let mut acc = x[(i, col)];
                for k in 0..i {
                    acc -= self.lu[(i, k)] * x[(k, col)];
                }
                x[(i, col)] = acc;
            }
            for i in (0..n).rev() {
                let mut acc = x[(i, col)];
                for k in i + 1..n {
                    acc -= self.lu[(i, k)] * x[(k, col)];
                }
                x[(i, col)] = acc / self.lu[(i, i)];
            }
        }
        Ok(x)
    }
}

/// Inverse by LU with partial pivoting.
pub fn inverse(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = a.require_square()?;
    Lu::new(a)?.solve(&ComplexMatrix::identity(n))
}

/// Lower-triangular `L` with `A = L L*` for Hermitian positive definite `A`.
pub fn cholesky(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = a.require_square()?;
    let floor = 1e-14 * frobenius_norm(a);
    let mut l = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        let mut d = a[(j, j)].re;
        for k in 0..j {
            d -= l[(j, k)].norm_sqr();
        }
        if d.is_nan() || d <= floor {
            return Err(Error::NotPositiveDefinite);
        }
        let ljj = d.sqrt();
        l[(j, j)] = Complex64::new(ljj, 0.0);
        for i in j + 1..n {
            let mut acc = a[(i, j)];
            for k in 0..j {
                acc -= l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = acc / ljj;
        }
    }
    Ok(l)
}

/// Eigenvalues of a real symmetric matrix (row-major), ascending.
///
/// Cyclic Jacobi; stops after the first sweep that applies no rotation.
pub(crate) fn symmetric_eigenvalues(mut a: Vec<f64>, n: usize) -> Result<Vec<f64>> {
    debug_assert_eq!(a.len(), n * n);
    for _ in 0..MAX_JACOBI_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                if apq == 0.0 || apq.abs() <= 1e-17 * (app.abs() * aqq.abs()).sqrt() {
                    continue;
                }
                rotated = true;
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
        if !rotated {
            let mut eig: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
            eig.sort_by(|x, y| x.total_cmp(y));
            return Ok(eig);
        }
    }
    Err(Error::NonConvergence {
        routine: "symmetric Jacobi",
        iterations: MAX_JACOBI_SWEEPS,
    })
}

/// Singular values of a real `rows x cols` matrix (row-major), descending.
///
/// One-sided (Hestenes) Jacobi: columns are rotated until mutually
/// orthogonal, then the column norms are the singular values. Small
/// singular values come out with high relative accuracy.
pub(crate) fn real_singular_values(a: &[f64], rows: usize, cols: usize) -> Result<Vec<f64>> {
    let mut colv: Vec<Vec<f64>> = (0..cols)
        .map(|j| (0..rows).map(|i| a[i * cols + j]).collect())
        .collect();
    for _ in 0..MAX_JACOBI_SWEEPS {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let (alpha, beta, gamma) = {
                    let (cp, cq) = (&colv[p], &colv[q]);
                    let mut alpha = 0.0;
                    let mut beta = 0.0;
                    let mut gamma = 0.0;
                    for k in 0..rows {
                        alpha += cp[k] * cp[k];
                        beta += cq[k] * cq[k];
                        gamma += cp[k] * cq[k];
                    }
                    (alpha, beta, gamma)
                };
                if gamma == 0.0 || gamma.abs() <= 1e-15 * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (left, right) = colv.split_at_mut(q);
                let (cp, cq) = (&mut left[p], &mut right[0]);
                for k in 0..rows {
                    let x = cp[k];
                    let y = cq[k];
                    cp[k] = c * x - s * y;
                    cq[k] = s * x + c * y;
                }
            }
        }
        if !rotated {
            let mut sv: Vec<f64> = colv
                .iter()
                .map(|col| col.iter().map(|x| x * x).sum::<f64>().sqrt())
                .collect();
            sv.sort_by(|x, y| y.total_cmp(x));
            return Ok(sv);
        }
    }
    Err(Error::NonConvergence {
        routine: "one-sided Jacobi SVD",
        iterations: MAX_JACOBI_SWEEPS,
    })
}

/// Singular values of a complex matrix, descending, with multiplicity.
pub fn singular_values(a: &ComplexMatrix) -> Result<Vec<f64>> {
    let (r, c) = a.shape();
    let doubled = real_singular_values(&a.real_embedding(), 2 * r, 2 * c)?;
    // Each singular value of A appears twice in the embedding; keep the
    // largest min(r, c) pairs.
    let k = r.min(c);
    let mut out = vec![0.0; k];
    for (i, slot) in out.iter_mut().enumerate() {
        *slot = doubled[2 * i];
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sample(n: usize, seed: u64) -> ComplexMatrix {
        // Small LCG keeps these unit tests free of the generator module.
        let mut s = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let mut next = move || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((s >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        ComplexMatrix::from_fn(n, n, |_, _| c(next(), next()))
    }

    #[test]
    fn inverse_of_identity_and_diagonal() {
        assert_eq!(inverse(&ComplexMatrix::identity(3)).unwrap(), ComplexMatrix::identity(3));
        let inv = inverse(&ComplexMatrix::from_real_diag(&[2.0, 4.0])).unwrap();
        assert_eq!(inv, ComplexMatrix::from_real_diag(&[0.5, 0.25]));
    }

    #[test]
    fn inverse_multiplies_back_to_identity() {
        for seed in 0..20 {
            let a = &sample(4, seed) + &ComplexMatrix::identity(4).scale_real(3.0);
            let prod = &a * &inverse(&a).unwrap();
            let err = frobenius_norm(&(&prod - &ComplexMatrix::identity(4)));
            assert!(err < 1e-10, "seed {seed}: {err}");
        }
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let a = ComplexMatrix::from_real(2, 2, &[1.0, 2.0, 2.0, 4.0]).unwrap();
        assert_eq!(inverse(&a).unwrap_err(), Error::SingularMatrix);
        assert_eq!(inverse(&ComplexMatrix::zeros(2, 2)).unwrap_err(), Error::SingularMatrix);
        assert!(inverse(&ComplexMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn cholesky_reconstructs() {
        let b = sample(3, 9);
        let a = &(&b.adjoint() * &b) + &ComplexMatrix::identity(3);
        let l = cholesky(&a).unwrap();
        let err = frobenius_norm(&(&(&l * &l.adjoint()) - &a));
        assert!(err < 1e-12);
        assert_eq!(
            cholesky(&ComplexMatrix::from_real_diag(&[1.0, -1.0])).unwrap_err(),
            Error::NotPositiveDefinite
        );
    }

    #[test]
    fn symmetric_jacobi_on_known_spectrum() {
        let eig = symmetric_eigenvalues(vec![2.0, 1.0, 1.0, 2.0], 2).unwrap();
        assert!((eig[0] - 1.0).abs() < 1e-15 && (eig[1] - 3.0).abs() < 1e-15);
    }

    #[test]
    fn singular_values_of_diagonal() {
        let sv = singular_values(&ComplexMatrix::from_diag(&[c(0.0, -3.0), c(2.0, 0.0)])).unwrap();
        assert!((sv[0] - 3.0).abs() < 1e-15);
        assert!((sv[1] - 2.0).abs() < 1e-15);
    }
}
