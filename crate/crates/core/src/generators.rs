//! Seeded random instances that satisfy a chosen hypothesis by construction.
//!
//! The same [`GeneratorConfig`] always produces the same instance: the
//! stream comes from `Xoshiro256PlusPlus` seeded through SplitMix64.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::bounds::Witness;
use crate::linalg::{frobenius_norm, matrix_norm, sigma_min, ComplexMatrix, NormKind};
use crate::matpoly::MatrixPolynomial;
use crate::{Error, Result};

/// Resampling budget for rejection steps.
pub const MAX_ATTEMPTS: usize = 100;

/// Which hypothesis the instance is built to satisfy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GeneratorClass {
    /// Entries uniform in `[-1, 1] + i[-1, 1]`; `A_m` kept well conditioned.
    Unconstrained,
    /// Hermitian `A_m >= ... >= A_0 >= 0`.
    LoewnerChain,
    /// `||A_m^{-1}||_2^{-1} >= t ||A_{m-1}||_2 >= ... >= t^m ||A_0||_2`
    /// with Hermitian positive definite `A_0`.
    GeometricNormChain { t: f64 },
    /// Frobenius chain with leading factor `k` and every coefficient within
    /// angle `alpha` of a common axis.
    FrobeniusCone { k: f64, alpha: f64 },
    /// Hermitian `k A_0 >= t A_1 >= ... >= t^m A_m >= 0`.
    HermitianScaledChain { k: f64, t: f64 },
}

impl GeneratorClass {
    pub fn name(&self) -> &'static str {
        match self {
            GeneratorClass::Unconstrained => "unconstrained",
            GeneratorClass::LoewnerChain => "loewner",
            GeneratorClass::GeometricNormChain { .. } => "geometric",
            GeneratorClass::FrobeniusCone { .. } => "cone",
            GeneratorClass::HermitianScaledChain { .. } => "hermitian-chain",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorConfig {
    pub seed: u64,
    /// Matrix size.
    pub n: usize,
    /// Degree.
    pub m: usize,
    pub class: GeneratorClass,
}

/// A generated polynomial and the parameters its hypothesis holds with.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratedInstance {
    pub polynomial: MatrixPolynomial,
    pub witness: Witness,
}

pub fn generate(config: &GeneratorConfig) -> Result<GeneratedInstance> {
    validate(config)?;
    let mut g = Gen {
        rng: Xoshiro256PlusPlus::seed_from_u64(config.seed),
        n: config.n,
    };
    let m = config.m;
    match config.class {
        GeneratorClass::Unconstrained => g.unconstrained(m),
        GeneratorClass::LoewnerChain => g.loewner(m),
        GeneratorClass::GeometricNormChain { t } => g.geometric(m, t),
        GeneratorClass::FrobeniusCone { k, alpha } => g.cone(m, k, alpha),
        GeneratorClass::HermitianScaledChain { k, t } => g.hermitian_chain(m, k, t),
    }
}

fn validate(config: &GeneratorConfig) -> Result<()> {
    let bad = |msg: alloc::string::String| Err(Error::InvalidParameter(msg));
    if config.n == 0 {
        return bad("matrix size n must be at least 1".into());
    }
    if config.m == 0 {
        return bad("degree m must be at least 1".into());
    }
    let check_t = |t: f64| {
        if t > 0.0 && t.is_finite() {
            Ok(())
        } else {
            bad(format!("t must be positive and finite, got {t}"))
        }
    };
    let check_k = |k: f64| {
        if k >= 1.0 && k.is_finite() {
            Ok(())
        } else {
            bad(format!("k must be finite and at least 1, got {k}"))
        }
    };
    match config.class {
        GeneratorClass::Unconstrained | GeneratorClass::LoewnerChain => Ok(()),
        GeneratorClass::GeometricNormChain { t } => check_t(t),
        GeneratorClass::FrobeniusCone { k, alpha } => {
            check_k(k)?;
            if (0.0..=FRAC_PI_2).contains(&alpha) {
                Ok(())
            } else {
                bad(format!("alpha must lie in [0, pi/2], got {alpha}"))
            }
        }
        GeneratorClass::HermitianScaledChain { k, t } => {
            check_k(k)?;
            check_t(t)
        }
    }
}

struct Gen {
    rng: Xoshiro256PlusPlus,
    n: usize,
}

impl Gen {
    fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.rng.random::<f64>()
    }

    fn entry(&mut self) -> Complex64 {
        Complex64::new(self.uniform(-1.0, 1.0), self.uniform(-1.0, 1.0))
    }

    fn matrix(&mut self) -> ComplexMatrix {
        let n = self.n;
        let data: Vec<Complex64> = (0..n * n).map(|_| self.entry()).collect();
        ComplexMatrix::new(n, n, data).expect("finite entries")
    }

    /// `B* B + eps I`, positive definite for `eps > 0`.
    fn gram(&mut self, eps: f64) -> ComplexMatrix {
        let b = self.matrix();
        let g = &b.adjoint() * &b;
        (&g + &ComplexMatrix::identity(self.n).scale_real(eps)).hermitian_part()
    }

    /// Unitary factor of Gram-Schmidt on a random matrix.
    fn unitary(&mut self) -> Result<ComplexMatrix> {
        let n = self.n;
        for _ in 0..MAX_ATTEMPTS {
            let a = self.matrix();
            let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
            let mut ok = true;
            for j in 0..n {
                let mut v: Vec<Complex64> = (0..n).map(|i| a[(i, j)]).collect();
                for _ in 0..2 {
                    for q in &cols {
                        let proj: Complex64 = q.iter().zip(&v).map(|(qi, vi)| qi.conj() * vi).sum();
                        for (vi, qi) in v.iter_mut().zip(q) {
                            *vi -= proj * qi;
                        }
                    }
                }
                let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                if norm < 1e-6 {
                    ok = false;
                    break;
                }
                v.iter_mut().for_each(|z| *z /= norm);
                cols.push(v);
            }
            if ok {
                return Ok(ComplexMatrix::from_fn(n, n, |i, j| cols[j][i]));
            }
        }
        Err(Error::GeneratorExhausted {
            attempts: MAX_ATTEMPTS,
        })
    }

    fn unconstrained(&mut self, m: usize) -> Result<GeneratedInstance> {
        let mut coefficients: Vec<ComplexMatrix> = (0..m).map(|_| self.matrix()).collect();
        for _ in 0..MAX_ATTEMPTS {
            let lead = self.matrix();
            if sigma_min(&lead)? >= 0.1 {
                coefficients.push(lead);
                return Ok(GeneratedInstance {
                    polynomial: MatrixPolynomial::new(coefficients)?,
                    witness: Witness::default(),
                });
            }
        }
        Err(Error::GeneratorExhausted {
            attempts: MAX_ATTEMPTS,
        })
    }

    fn loewner(&mut self, m: usize) -> Result<GeneratedInstance> {
        let mut coefficients = Vec::with_capacity(m + 1);
        coefficients.push(self.gram(1e-3));
        for j in 1..=m {
            let s = self.uniform(0.0, 1.0);
            let step = self.gram(0.0).scale_real(s);
            let next = (&coefficients[j - 1] + &step).hermitian_part();
            coefficients.push(next);
        }
        Ok(GeneratedInstance {
            polynomial: MatrixPolynomial::new(coefficients)?,
            witness: Witness::default(),
        })
    }

    fn geometric(&mut self, m: usize, t: f64) -> Result<GeneratedInstance> {
        let sigma = self.uniform(0.5, 2.0);
        let lead = self.unitary()?.scale_real(sigma);
        // targets[j] = ||A_j||_2, each link kept strictly inside the chain.
        let mut targets = alloc::vec![0.0; m];
        let mut above = sigma;
        for j in (0..m).rev() {
            let slack = self.uniform(0.5, 0.999);
            targets[j] = above * slack / t;
            above = targets[j];
        }
        let mut coefficients = Vec::with_capacity(m + 1);
        for (j, &target) in targets.iter().enumerate() {
            let raw = if j == 0 { self.gram(1e-2) } else { self.matrix() };
            let norm = matrix_norm(&raw, NormKind::Induced2)?;
            coefficients.push(raw.scale_real(target / norm));
        }
        coefficients.push(lead);
        Ok(GeneratedInstance {
            polynomial: MatrixPolynomial::new(coefficients)?,
            witness: Witness {
                t: Some(t),
                norm: Some(NormKind::Induced2),
                ..Witness::default()
            },
        })
    }

    fn cone(&mut self, m: usize, k: f64, alpha: f64) -> Result<GeneratedInstance> {
        let n = self.n;
        for _ in 0..MAX_ATTEMPTS {
            let c = self.matrix();
            let c = c.scale_real(1.0 / frobenius_norm(&c));
            let lead_norm = self.uniform(0.5, 2.0);
            let mut norms: Vec<f64> = (0..m)
                .map(|_| self.uniform(0.01, 1.0) * k * lead_norm)
                .collect();
            norms.sort_by(f64::total_cmp);
            norms.push(lead_norm);
            let mut coefficients = Vec::with_capacity(m + 1);
            for &nu in &norms {
                let beta = self.uniform(0.0, alpha);
                // W: unit, orthogonal to C in Re <., .>_F.
                let w = self.matrix();
                let proj: f64 = w
                    .as_slice()
                    .iter()
                    .zip(c.as_slice())
                    .map(|(x, y)| (y.conj() * x).re)
                    .sum();
                let w = &w - &c.scale_real(proj);
                let wn = frobenius_norm(&w);
                if wn < 1e-8 {
                    continue;
                }
                let dir = &c.scale_real(beta.cos()) + &w.scale_real(beta.sin() / wn);
                coefficients.push(dir.scale_real(nu));
            }
            if coefficients.len() != m + 1 {
                continue;
            }
            let lead = &coefficients[m];
            if sigma_min(lead)? < 1e-2 * frobenius_norm(lead) {
                continue;
            }
            debug_assert_eq!(c.shape(), (n, n));
            return Ok(GeneratedInstance {
                polynomial: MatrixPolynomial::new(coefficients)?,
                witness: Witness {
                    k: Some(k),
                    alpha: Some(alpha),
                    axis: Some(c),
                    norm: Some(NormKind::Frobenius),
                    ..Witness::default()
                },
            });
        }
        Err(Error::GeneratorExhausted {
            attempts: MAX_ATTEMPTS,
        })
    }

    fn hermitian_chain(&mut self, m: usize, k: f64, t: f64) -> Result<GeneratedInstance> {
        let mut rev = Vec::with_capacity(m + 1);
        rev.push(self.gram(1e-2));
        // A_j = t A_{j+1} + (PSD increment), then A_0 = (t A_1 + incr) / k.
        for j in (0..m).rev() {
            let s = self.uniform(0.0, 1.0);
            let incr = self.gram(0.0).scale_real(s);
            let above = rev.last().expect("nonempty").scale_real(t);
            let mut next = &above + &incr;
            if j == 0 {
                next = next.scale_real(1.0 / k);
            }
            rev.push(next.hermitian_part());
        }
        rev.reverse();
        Ok(GeneratedInstance {
            polynomial: MatrixPolynomial::new(rev)?,
            witness: Witness {
                t: Some(t),
                k: Some(k),
                ..Witness::default()
            },
        })
    }
}
