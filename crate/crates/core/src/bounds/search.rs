//! Automatic witness selection for the theorems that take parameters.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;

#[allow(unused_imports)]
use num_traits::Float;

use super::theorems::{
    bound_cor1, bound_thm4, coefficient_norms, frobenius_norms, leading_reciprocal, violated,
    ANGLE_TOL,
};
use super::{BoundResult, Region, TheoremId};
use crate::linalg::{
    frobenius_norm, generalized_max_eigenvalue, is_hermitian, is_pd, matrix_angle, ComplexMatrix,
    NormKind, DEFAULT_TOL,
};
use crate::matpoly::MatrixPolynomial;
use crate::{Error, Result};

/// Largest `t` for which the geometric norm chain holds:
/// `min(||A_m^{-1}||^{-1} / ||A_{m-1}||, min_j ||A_j|| / ||A_{j-1}||)`.
///
/// The radius `k_1 / t` decreases in `t`, so this is the best witness.
pub fn optimal_t_thm1(p: &MatrixPolynomial, kind: NormKind) -> Result<f64> {
    const ID: TheoremId = TheoremId::Thm1;
    if !is_pd(p.coeff(0), DEFAULT_TOL) {
        return Err(violated(ID, "A_0 is not Hermitian positive definite"));
    }
    let sigma = leading_reciprocal(p, kind)?;
    let norms = coefficient_norms(p, kind)?;
    let m = p.degree();
    let ratio = |num: f64, den: f64| if den > 0.0 { num / den } else { f64::INFINITY };
    let mut t = ratio(sigma, norms[m - 1]);
    for j in 1..m {
        t = t.min(ratio(norms[j], norms[j - 1]));
    }
    if !(t > 0.0 && t.is_finite()) {
        return Err(violated(
            ID,
            format!("no positive ratio t satisfies the norm chain (bound {t})"),
        ));
    }
    Ok(t)
}

/// Cone parameters found for an instance.
#[derive(Debug, Clone, PartialEq)]
pub struct ConeWitness {
    pub k: f64,
    pub alpha: f64,
    pub axis: ComplexMatrix,
}

/// An axis `C` and the half-angle `alpha = max_j angle(A_j, C)`.
///
/// Candidates are the sum of normalized coefficients and each coefficient
/// itself; the one with the smallest half-angle wins.
pub fn cone_axis(p: &MatrixPolynomial) -> Result<(ComplexMatrix, f64)> {
    let n = p.dim();
    let mut sum = ComplexMatrix::zeros(n, n);
    for (j, a) in p.coefficients().iter().enumerate() {
        let na = frobenius_norm(a);
        if na == 0.0 {
            return Err(Error::ZeroCoefficient { index: j });
        }
        sum = &sum + &a.scale_real(1.0 / na);
    }
    let mut candidates = Vec::with_capacity(p.degree() + 2);
    if frobenius_norm(&sum) > 1e-12 * (p.degree() + 1) as f64 {
        candidates.push(sum);
    }
    candidates.extend(p.coefficients().iter().cloned());
    let mut best: Option<(ComplexMatrix, f64)> = None;
    for c in candidates {
        let mut alpha = 0.0f64;
        for a in p.coefficients() {
            alpha = alpha.max(matrix_angle(a, &c)?);
        }
        if best.as_ref().is_none_or(|(_, b)| alpha < *b) {
            best = Some((c, alpha));
        }
    }
    Ok(best.expect("at least one candidate axis"))
}

/// Axis, half-angle and the smallest admissible
/// `k = max(1, ||A_{m-1}||_F / ||A_m||_F)`.
pub fn cone_witness(p: &MatrixPolynomial) -> Result<ConeWitness> {
    let (axis, alpha) = cone_axis(p)?;
    let alpha = if alpha > FRAC_PI_2 && alpha <= FRAC_PI_2 + ANGLE_TOL {
        FRAC_PI_2
    } else {
        alpha
    };
    if alpha > FRAC_PI_2 {
        return Err(violated(
            TheoremId::Thm2,
            format!("coefficients span more than a right angle (alpha = {alpha})"),
        ));
    }
    let norms = frobenius_norms(p);
    let m = p.degree();
    let k = (norms[m - 1] / norms[m]).max(1.0);
    Ok(ConeWitness { k, alpha, axis })
}

fn region_reach(r: &Region) -> f64 {
    r.center().norm() + r.radii().1.unwrap_or(f64::INFINITY)
}

/// Scans `t` upward from the smallest value that restores the Frobenius
/// chain on `P(t z)` and keeps the disk reaching least far from the origin.
pub fn cor1_witness(p: &MatrixPolynomial) -> Result<BoundResult> {
    let (axis, alpha) = cone_axis(p)?;
    if alpha > FRAC_PI_2 + ANGLE_TOL {
        return Err(violated(
            TheoremId::Cor1,
            format!("coefficients span more than a right angle (alpha = {alpha})"),
        ));
    }
    let alpha = alpha.min(FRAC_PI_2);
    let norms = frobenius_norms(p);
    let m = p.degree();
    let t_min = (1..m)
        .map(|j| norms[j - 1] / norms[j])
        .fold(0.0f64, f64::max);
    let grid: Vec<f64> = if t_min > 0.0 {
        (0..=16).map(|i| t_min * 2f64.powf(i as f64 / 2.0)).collect()
    } else {
        (-8..=8).map(|i| 2f64.powi(i)).collect()
    };
    let mut best: Option<BoundResult> = None;
    let mut first_err = None;
    for t in grid {
        let k = (norms[m - 1] / (t * norms[m])).max(1.0);
        match bound_cor1(p, k, alpha, &axis, t) {
            Ok(r) => {
                let reach = region_reach(r.region.as_ref().expect("region"));
                if best
                    .as_ref()
                    .is_none_or(|b| reach < region_reach(b.region.as_ref().expect("region")))
                {
                    best = Some(r);
                }
            }
            Err(e) => {
                if first_err.is_none() {
                    first_err = Some(e);
                }
            }
        }
    }
    best.ok_or_else(|| first_err.expect("nonempty grid"))
}

/// Witness for the Hermitian scaled chain.
///
/// The middle links `A_j >= t A_{j+1}` cap `t`; the first link then fixes
/// the smallest `k = max(1, t mu_0)` with `mu_0` the top eigenvalue of the
/// pencil `(A_0, A_1)`. A short grid below the cap guards against links
/// that hold only up to rounding, and the widest disk is kept.
pub fn thm4_witness(p: &MatrixPolynomial) -> Result<BoundResult> {
    const ID: TheoremId = TheoremId::Thm4;
    for (j, a) in p.coefficients().iter().enumerate() {
        if !is_hermitian(a, DEFAULT_TOL) {
            return Err(violated(ID, format!("A_{j} is not Hermitian")));
        }
    }
    let pencil = |j: usize| {
        generalized_max_eigenvalue(p.coeff(j), p.coeff(j + 1)).map_err(|e| match e {
            Error::NotPositiveDefinite => {
                violated(ID, format!("A_{j} is not positive definite"))
            }
            other => other,
        })
    };
    let mu0 = pencil(0)?;
    let mut t_cap = f64::INFINITY;
    for j in 1..p.degree() {
        let mu = pencil(j)?;
        if mu > 0.0 {
            t_cap = t_cap.min(1.0 / mu);
        }
    }
    let top = if t_cap.is_finite() {
        t_cap
    } else if mu0 > 0.0 {
        1.0 / mu0
    } else {
        1.0
    };
    let mut best: Option<(f64, BoundResult)> = None;
    let mut first_err = None;
    for i in 0..=8 {
        let t = top / 2f64.powi(i);
        let k = (t * mu0).max(1.0);
        match bound_thm4(p, k, t) {
            Ok(r) => {
                let radius = r.region.and_then(|g| g.radii().0).unwrap_or(0.0);
                if best.as_ref().is_none_or(|(b, _)| radius > *b) {
                    best = Some((radius, r));
                }
            }
            Err(e) => {
                if first_err.is_none() {
                    first_err = Some(e);
                }
            }
        }
    }
    best.map(|(_, r)| r)
        .ok_or_else(|| first_err.expect("nonempty grid"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{bound_thm1, bound_thm2};
    use crate::eigen::polyeig;
    use alloc::vec;

    #[test]
    fn optimal_t_is_tight() {
        let q = MatrixPolynomial::scalar_real(&[0.25, 0.5, 1.0]).unwrap();
        let t = optimal_t_thm1(&q, NormKind::Induced2).unwrap();
        assert!((t - 2.0).abs() < 1e-15);
        assert!(bound_thm1(&q, t, NormKind::Induced2).is_ok());
    }

    #[test]
    fn cone_axis_for_aligned_coefficients() {
        let a = ComplexMatrix::from_real(2, 2, &[2.0, 1.0, 0.0, 1.0]).unwrap();
        let p = MatrixPolynomial::new(vec![a.scale_real(0.5), a.clone(), a.scale_real(3.0)])
            .unwrap();
        let (_, alpha) = cone_axis(&p).unwrap();
        assert!(alpha < 1e-7, "alpha = {alpha}");
        let w = cone_witness(&p).unwrap();
        assert_eq!(w.k, 1.0);
        let r = bound_thm2(&p, w.k, w.alpha, &w.axis).unwrap();
        let s = polyeig(&p).unwrap();
        assert!(r.region.unwrap().admits_all(s.lambdas(), 1e-8));
    }

    #[test]
    fn opposite_coefficients_have_no_cone() {
        let p = MatrixPolynomial::scalar_real(&[1.0, -1.0]).unwrap();
        assert!(matches!(
            cone_witness(&p),
            Err(Error::HypothesisViolated { .. })
        ));
    }

    #[test]
    fn cor1_repairs_a_broken_chain() {
        // |A_0| > |A_1| breaks the chain at t = 1.
        let p = MatrixPolynomial::scalar_real(&[4.0, 1.0, 1.0]).unwrap();
        let axis = ComplexMatrix::identity(1);
        assert!(bound_thm2(&p, 1.0, 0.0, &axis).is_err());
        let r = cor1_witness(&p).unwrap();
        assert!(r.hypothesis_ok);
        let s = polyeig(&p).unwrap();
        assert!(r.region.unwrap().admits_all(s.lambdas(), 1e-8));
    }

    #[test]
    fn thm4_witness_on_loewner_instance() {
        let a0 = ComplexMatrix::from_real_diag(&[3.0, 2.0]);
        let a1 = ComplexMatrix::from_real_diag(&[2.0, 1.0]);
        let a2 = ComplexMatrix::from_real_diag(&[1.0, 1.0]);
        let p = MatrixPolynomial::new(vec![a0, a1, a2]).unwrap();
        let r = thm4_witness(&p).unwrap();
        let s = polyeig(&p).unwrap();
        assert!(r.region.unwrap().admits_all(s.lambdas(), 1e-8));
    }
}
