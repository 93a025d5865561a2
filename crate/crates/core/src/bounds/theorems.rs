use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::{BoundResult, Region, TheoremId, Witness};
use crate::linalg::{
    frobenius_norm, inverse, inverse_norm_reciprocal, is_hermitian, is_pd, is_psd, loewner_geq,
    matrix_angle, matrix_norm, ComplexMatrix, NormKind, DEFAULT_TOL,
};
use crate::matpoly::MatrixPolynomial;
use crate::pell::annulus_weight;
use crate::scalar::{trinomial_greatest_root, CauchyPolynomial};
use crate::{Error, Result};

/// Relative slack on norm-chain inequalities.
pub const CHAIN_TOL: f64 = 1e-12;
/// Absolute slack on cone angles, in radians.
pub const ANGLE_TOL: f64 = 1e-9;

pub(crate) fn violated(theorem: TheoremId, reason: impl Into<String>) -> Error {
    Error::HypothesisViolated {
        theorem,
        reason: reason.into(),
    }
}

pub(crate) fn coefficient_norms(p: &MatrixPolynomial, kind: NormKind) -> Result<Vec<f64>> {
    p.coefficients()
        .iter()
        .map(|a| matrix_norm(a, kind))
        .collect()
}

pub(crate) fn frobenius_norms(p: &MatrixPolynomial) -> Vec<f64> {
    p.coefficients().iter().map(frobenius_norm).collect()
}

/// `||A_m^{-1}||^{-1}`.
pub(crate) fn leading_reciprocal(p: &MatrixPolynomial, kind: NormKind) -> Result<f64> {
    inverse_norm_reciprocal(p.leading(), kind).map_err(|e| match e {
        Error::SingularMatrix => Error::SingularLeadingCoefficient,
        other => other,
    })
}

/// `lhs <= rhs` up to [`CHAIN_TOL`].
fn chain_leq(lhs: f64, rhs: f64) -> bool {
    lhs <= rhs * (1.0 + CHAIN_TOL)
}

/// Disk `|z| <= rho` with `rho` the positive root of
/// `||A_m^{-1}||^{-1} z^m - sum_{j<m} ||A_j|| z^j`.
pub fn bound_thm_c(p: &MatrixPolynomial, kind: NormKind) -> Result<BoundResult> {
    let sigma = leading_reciprocal(p, kind)?;
    let norms = coefficient_norms(p, kind)?;
    let m = p.degree();
    let lower: Vec<f64> = norms[..m].iter().rev().copied().collect();
    let rho = CauchyPolynomial::new(sigma, lower)?.unique_positive_root().root;
    Ok(BoundResult::holds(
        TheoremId::ThmC,
        Witness::with_norm(kind),
        Region::centered_disk(rho),
    ))
}

/// Disk `|z| <= 1 + ||A_m^{-1}|| max_{j<m} ||A_j||`.
pub fn bound_thm_d(p: &MatrixPolynomial, kind: NormKind) -> Result<BoundResult> {
    let sigma = leading_reciprocal(p, kind)?;
    let norms = coefficient_norms(p, kind)?;
    let big_m = norms[..p.degree()].iter().copied().fold(0.0, f64::max) / sigma;
    Ok(BoundResult::holds(
        TheoremId::ThmD,
        Witness::with_norm(kind),
        Region::centered_disk(1.0 + big_m),
    ))
}

/// Unit disk under the Loewner chain `A_m >= A_{m-1} >= ... >= A_0 >= 0`.
///
/// A failing chain is reported in the result, one diagnostic per broken
/// link.
pub fn bound_thm_e(p: &MatrixPolynomial) -> BoundResult {
    let mut diagnostics = Vec::new();
    let a0 = p.coeff(0);
    if !is_hermitian(a0, DEFAULT_TOL) {
        diagnostics.push(String::from("A_0 is not Hermitian"));
    } else if !is_psd(a0, DEFAULT_TOL) {
        diagnostics.push(String::from("A_0 >= 0 fails: A_0 is not positive semidefinite"));
    }
    for j in 1..=p.degree() {
        let diff = p.coeff(j) - p.coeff(j - 1);
        if !is_hermitian(&diff, DEFAULT_TOL) {
            diagnostics.push(format!("A_{j} - A_{} is not Hermitian", j - 1));
        } else if !is_psd(&diff, DEFAULT_TOL) {
            diagnostics.push(format!("A_{j} >= A_{} fails", j - 1));
        }
    }
    if diagnostics.is_empty() {
        BoundResult::holds(TheoremId::ThmE, Witness::default(), Region::centered_disk(1.0))
    } else {
        BoundResult::fails(TheoremId::ThmE, Witness::default(), diagnostics)
    }
}

/// Disk `|z| <= k_1 / t` under
/// `||A_m^{-1}||^{-1} >= t ||A_{m-1}|| >= ... >= t^m ||A_0||` with
/// `A_0` Hermitian positive definite; `k_1` is the greatest positive root
/// of `K^{m+1} - 2 K^m + 1`.
pub fn bound_thm1(p: &MatrixPolynomial, t: f64, kind: NormKind) -> Result<BoundResult> {
    const ID: TheoremId = TheoremId::Thm1;
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::InvalidScale(t));
    }
    let m = p.degree();
    let sigma = leading_reciprocal(p, kind)?;
    if !is_pd(p.coeff(0), DEFAULT_TOL) {
        return Err(violated(ID, "A_0 is not Hermitian positive definite"));
    }
    let norms = coefficient_norms(p, kind)?;
    if !chain_leq(t * norms[m - 1], sigma) {
        return Err(violated(
            ID,
            format!("link 0 fails: ||A_m^-1||^-1 >= t ||A_{}||", m - 1),
        ));
    }
    for j in (1..m).rev() {
        if !chain_leq(t * norms[j - 1], norms[j]) {
            return Err(violated(
                ID,
                format!("link {} fails: ||A_{j}|| >= t ||A_{}||", m - j, j - 1),
            ));
        }
    }
    let k1 = trinomial_greatest_root(m)?.root;
    Ok(BoundResult::holds(
        ID,
        Witness {
            t: Some(t),
            norm: Some(kind),
            ..Witness::default()
        },
        Region::centered_disk(k1 / t),
    ))
}

/// Disk `|z + k - 1| <= ||A_m^{-1}||_F { (k|A_m| - |A_0|)(sin a + cos a)
/// + |A_0| + 2 sin a sum_{j<m} |A_j| }` (Frobenius norms) under the chain
/// `k |A_m| >= |A_{m-1}| >= ... >= |A_0|` and the cone condition
/// `angle(A_j, C) <= alpha <= pi/2` for every `j`.
pub fn bound_thm2(
    p: &MatrixPolynomial,
    k: f64,
    alpha: f64,
    axis: &ComplexMatrix,
) -> Result<BoundResult> {
    const ID: TheoremId = TheoremId::Thm2;
    if !(k >= 1.0 && k.is_finite()) {
        return Err(Error::InvalidParameter(format!("k must be >= 1, got {k}")));
    }
    if !(0.0..=FRAC_PI_2).contains(&alpha) {
        return Err(Error::InvalidParameter(format!(
            "alpha must lie in [0, pi/2], got {alpha}"
        )));
    }
    let n = p.dim();
    if axis.shape() != (n, n) {
        return Err(Error::ShapeMismatch {
            expected: (n, n),
            found: axis.shape(),
        });
    }
    if axis.is_zero() {
        return Err(Error::InvalidParameter("cone axis C must be nonzero".into()));
    }
    let m = p.degree();
    let inv_fro = inverse(p.leading())
        .map(|inv| frobenius_norm(&inv))
        .map_err(|e| match e {
            Error::SingularMatrix => Error::SingularLeadingCoefficient,
            other => other,
        })?;
    let norms = frobenius_norms(p);
    if !chain_leq(norms[m - 1], k * norms[m]) {
        return Err(violated(
            ID,
            format!("link 0 fails: k ||A_m||_F >= ||A_{}||_F", m - 1),
        ));
    }
    for j in (1..m).rev() {
        if !chain_leq(norms[j - 1], norms[j]) {
            return Err(violated(
                ID,
                format!("link {} fails: ||A_{j}||_F >= ||A_{}||_F", m - j, j - 1),
            ));
        }
    }
    for (j, a) in p.coefficients().iter().enumerate() {
        if a.is_zero() {
            return Err(Error::ZeroCoefficient { index: j });
        }
        let angle = matrix_angle(a, axis)?;
        if angle > alpha + ANGLE_TOL {
            return Err(violated(
                ID,
                format!("cone condition fails: angle(A_{j}, C) = {angle} > alpha = {alpha}"),
            ));
        }
    }
    let (s, c) = alpha.sin_cos();
    let lower_sum: f64 = norms[..m].iter().sum();
    let radius = inv_fro * ((k * norms[m] - norms[0]) * (s + c) + norms[0] + 2.0 * s * lower_sum);
    Ok(BoundResult::holds(
        ID,
        Witness {
            k: Some(k),
            alpha: Some(alpha),
            axis: Some(axis.clone()),
            norm: Some(NormKind::Frobenius),
            ..Witness::default()
        },
        Region::disk(Complex64::new(1.0 - k, 0.0), radius),
    ))
}

/// [`bound_thm2`] applied to `P(t z)`, mapped back by `z -> t z`: a disk
/// centered at `-(k - 1) t`.
pub fn bound_cor1(
    p: &MatrixPolynomial,
    k: f64,
    alpha: f64,
    axis: &ComplexMatrix,
    t: f64,
) -> Result<BoundResult> {
    let scaled = p.scale_argument(t)?;
    let inner = bound_thm2(&scaled, k, alpha, axis).map_err(|e| match e {
        Error::HypothesisViolated { reason, .. } => Error::HypothesisViolated {
            theorem: TheoremId::Cor1,
            reason: format!("{reason} (for P(t z), t = {t})"),
        },
        other => other,
    })?;
    let region = inner.region.expect("satisfied bound carries a region").scaled(t);
    let mut witness = inner.witness;
    witness.t = Some(t);
    Ok(BoundResult::holds(TheoremId::Cor1, witness, region))
}

/// Annulus `r_1 <= |z| <= r_2` with Pell weights
/// `w_k = 2^{3(1-m)} C(2m, m+k) P_k^2`:
/// `r_1 = min_k (w_k / (||A_0^{-1}|| ||A_k||))^{1/k}` over nonzero `A_k`
/// and `r_2 = max_k (||A_{m-k}|| ||A_m^{-1}|| / w_k)^{1/k}`.
pub fn bound_thm3(p: &MatrixPolynomial, kind: NormKind) -> Result<BoundResult> {
    let sigma0 = inverse_norm_reciprocal(p.coeff(0), kind).map_err(|e| match e {
        Error::SingularMatrix => Error::SingularA0,
        other => other,
    })?;
    let sigma_m = leading_reciprocal(p, kind)?;
    let norms = coefficient_norms(p, kind)?;
    let m = p.degree();
    let mut r1 = f64::INFINITY;
    let mut r2 = 0.0f64;
    for k in 1..=m {
        let w = annulus_weight(m, k);
        let e = 1.0 / k as f64;
        if norms[k] > 0.0 {
            r1 = r1.min((w * sigma0 / norms[k]).powf(e));
        }
        if norms[m - k] > 0.0 {
            r2 = r2.max((norms[m - k] / (sigma_m * w)).powf(e));
        }
    }
    Ok(BoundResult::holds(
        TheoremId::Thm3,
        Witness::with_norm(kind),
        Region::annulus(r1, r2)?,
    ))
}

/// Zero-free disk `|z - (k-1)t/(2k-1)| < k t / (2k-1)` under the Hermitian
/// chain `k A_0 >= t A_1 >= t^2 A_2 >= ... >= t^m A_m >= 0`.
pub fn bound_thm4(p: &MatrixPolynomial, k: f64, t: f64) -> Result<BoundResult> {
    const ID: TheoremId = TheoremId::Thm4;
    if !(k >= 1.0 && k.is_finite()) {
        return Err(Error::InvalidParameter(format!("k must be >= 1, got {k}")));
    }
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::InvalidScale(t));
    }
    for (j, a) in p.coefficients().iter().enumerate() {
        if !is_hermitian(a, DEFAULT_TOL) {
            return Err(violated(ID, format!("A_{j} is not Hermitian")));
        }
    }
    let m = p.degree();
    if !loewner_geq(&p.coeff(0).scale_real(k), &p.coeff(1).scale_real(t), DEFAULT_TOL) {
        return Err(violated(ID, "link 0 fails: k A_0 >= t A_1"));
    }
    // t^j A_j >= t^{j+1} A_{j+1} is A_j >= t A_{j+1} after dividing by t^j.
    for j in 1..m {
        if !loewner_geq(p.coeff(j), &p.coeff(j + 1).scale_real(t), DEFAULT_TOL) {
            return Err(violated(
                ID,
                format!("link {j} fails: t^{j} A_{j} >= t^{} A_{}", j + 1, j + 1),
            ));
        }
    }
    if !is_psd(p.leading(), DEFAULT_TOL) {
        return Err(violated(ID, "tail fails: t^m A_m >= 0"));
    }
    let d = 2.0 * k - 1.0;
    Ok(BoundResult::holds(
        ID,
        Witness {
            t: Some(t),
            k: Some(k),
            ..Witness::default()
        },
        Region::exclusion_disk(Complex64::new((k - 1.0) * t / d, 0.0), k * t / d),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::polyeig;
    use alloc::vec;

    const PHI: f64 = 1.618_033_988_749_895;

    fn spectrum_fits(p: &MatrixPolynomial, r: &BoundResult) -> bool {
        let s = polyeig(p).unwrap();
        r.region.unwrap().admits_all(s.lambdas(), 1e-8)
    }

    #[test]
    fn thm_c_scalar_cases() {
        let p = MatrixPolynomial::scalar_real(&[-3.0, 1.0]).unwrap();
        let r = bound_thm_c(&p, NormKind::Induced2).unwrap();
        assert_eq!(r.region.unwrap().radii().1, Some(3.0));
        let p = MatrixPolynomial::scalar_real(&[-1.0, -1.0, 1.0]).unwrap();
        let r = bound_thm_c(&p, NormKind::Induced2).unwrap();
        assert!((r.region.unwrap().radii().1.unwrap() - PHI).abs() < 1e-14);
        assert!(spectrum_fits(&p, &r));
    }

    #[test]
    fn thm_d_formula() {
        let a0 = ComplexMatrix::from_real_diag(&[3.0, -1.0]);
        let p = MatrixPolynomial::new(vec![a0, ComplexMatrix::identity(2)]).unwrap();
        let r = bound_thm_d(&p, NormKind::Induced2).unwrap();
        assert!((r.region.unwrap().radii().1.unwrap() - 4.0).abs() < 1e-14);
    }

    #[test]
    fn singular_leading_is_an_error() {
        let sing = ComplexMatrix::from_real(2, 2, &[1.0, 1.0, 1.0, 1.0]).unwrap();
        let p = MatrixPolynomial::new(vec![ComplexMatrix::identity(2), sing]).unwrap();
        assert_eq!(
            bound_thm_c(&p, NormKind::Induced2).unwrap_err(),
            Error::SingularLeadingCoefficient
        );
        assert_eq!(
            bound_thm3(&p, NormKind::Induced1).unwrap_err(),
            Error::SingularLeadingCoefficient
        );
        let q = MatrixPolynomial::new(vec![
            ComplexMatrix::from_real(2, 2, &[1.0, 1.0, 1.0, 1.0]).unwrap(),
            ComplexMatrix::identity(2),
        ])
        .unwrap();
        assert_eq!(bound_thm3(&q, NormKind::Induced2).unwrap_err(), Error::SingularA0);
    }

    #[test]
    fn thm_e_on_cube_roots_and_identity_chain() {
        let p = MatrixPolynomial::scalar_real(&[1.0, 1.0, 1.0]).unwrap();
        let r = bound_thm_e(&p);
        assert!(r.hypothesis_ok);
        assert_eq!(r.region.unwrap(), Region::centered_disk(1.0));
        let s = polyeig(&p).unwrap();
        assert!((s.max_modulus() - 1.0).abs() < 1e-12);
        let i = ComplexMatrix::identity(3);
        let q = MatrixPolynomial::new(vec![i.clone(); 4]).unwrap();
        let r = bound_thm_e(&q);
        assert!(r.hypothesis_ok && spectrum_fits(&q, &r));
    }

    #[test]
    fn thm_e_reports_non_hermitian_link() {
        let i = ComplexMatrix::identity(2);
        let bump = ComplexMatrix::from_real(2, 2, &[1.0, 1.0, 0.0, 1.0]).unwrap();
        let p = MatrixPolynomial::new(vec![i.clone(), &i + &bump]).unwrap();
        let r = bound_thm_e(&p);
        assert!(!r.hypothesis_ok && r.region.is_none());
        assert!(r.diagnostics[0].contains("not Hermitian"), "{:?}", r.diagnostics);
    }

    #[test]
    fn thm1_radius_for_low_degrees() {
        // P = I z + A_0, A_0 PD, t = 1 / ||A_0||.
        let a0 = ComplexMatrix::from_real(2, 2, &[2.0, 1.0, 1.0, 2.0]).unwrap();
        let p = MatrixPolynomial::new(vec![a0, ComplexMatrix::identity(2)]).unwrap();
        let r = bound_thm1(&p, 1.0 / 3.0, NormKind::Induced2).unwrap();
        assert!((r.region.unwrap().radii().1.unwrap() - 3.0).abs() < 1e-12);
        assert!(spectrum_fits(&p, &r));
        let q = MatrixPolynomial::scalar_real(&[0.25, 0.5, 1.0]).unwrap();
        let r = bound_thm1(&q, 2.0, NormKind::Induced2).unwrap();
        assert!((r.region.unwrap().radii().1.unwrap() - PHI / 2.0).abs() < 1e-14);
        assert!(bound_thm1(&q, 2.0 * (1.0 + 1e-6), NormKind::Induced2).is_err());
    }

    #[test]
    fn thm1_requires_pd_constant_term() {
        let q = MatrixPolynomial::scalar_real(&[-0.25, 0.5, 1.0]).unwrap();
        assert!(matches!(
            bound_thm1(&q, 1.0, NormKind::Induced2),
            Err(Error::HypothesisViolated { .. })
        ));
    }

    #[test]
    fn thm2_collapses_to_unit_disk_for_scalars() {
        let p = MatrixPolynomial::scalar_real(&[0.5, 0.7, 0.7, 2.0]).unwrap();
        let axis = ComplexMatrix::identity(1);
        let r = bound_thm2(&p, 1.0, 0.0, &axis).unwrap();
        match r.region.unwrap() {
            Region::Disk { center, radius } => {
                assert_eq!(center, Complex64::new(0.0, 0.0));
                assert!((radius - 1.0).abs() < 1e-12);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(spectrum_fits(&p, &r));
    }

    #[test]
    fn thm2_at_right_angle() {
        let p = MatrixPolynomial::scalar_real(&[0.5, 1.0, 2.0]).unwrap();
        let axis = ComplexMatrix::identity(1);
        let r = bound_thm2(&p, 1.0, FRAC_PI_2, &axis).unwrap();
        // inv * (k|A_m| - |A_0| + |A_0| + 2 sum_{j<m} |A_j|)
        let want = 0.5 * (2.0 - 0.5 + 0.5 + 2.0 * 1.5);
        assert!((r.region.unwrap().radii().1.unwrap() - want).abs() < 1e-14);
    }

    #[test]
    fn thm2_rejects_bad_witnesses() {
        let p = MatrixPolynomial::scalar_real(&[0.5, 1.0, 2.0]).unwrap();
        let axis = ComplexMatrix::identity(1);
        assert!(bound_thm2(&p, 0.5, 0.0, &axis).is_err());
        assert!(bound_thm2(&p, 1.0, 2.0, &axis).is_err());
        let minus = axis.scale_real(-1.0);
        assert!(matches!(
            bound_thm2(&p, 1.0, 0.1, &minus),
            Err(Error::HypothesisViolated { .. })
        ));
        let z = MatrixPolynomial::scalar_real(&[0.0, 1.0, 2.0]).unwrap();
        assert_eq!(
            bound_thm2(&z, 1.0, 0.0, &axis).unwrap_err(),
            Error::ZeroCoefficient { index: 0 }
        );
    }

    #[test]
    fn cor1_at_unit_scale_matches_thm2() {
        let p = MatrixPolynomial::scalar_real(&[0.5, 1.0, 2.0]).unwrap();
        let axis = ComplexMatrix::identity(1);
        let a = bound_thm2(&p, 1.0, 0.3, &axis).unwrap();
        let b = bound_cor1(&p, 1.0, 0.3, &axis, 1.0).unwrap();
        assert_eq!(a.region, b.region);
        assert_eq!(b.witness.t, Some(1.0));
    }

    #[test]
    fn thm3_linear_scalar_is_exact() {
        let p = MatrixPolynomial::scalar_real(&[3.0, -2.0]).unwrap();
        let r = bound_thm3(&p, NormKind::Induced2).unwrap();
        match r.region.unwrap() {
            Region::Annulus { inner, outer } => {
                assert!((inner - 1.5).abs() < 1e-12 && (outer - 1.5).abs() < 1e-12);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn thm4_formula_and_checks() {
        let p = MatrixPolynomial::scalar_real(&[1.0, 1.0, 1.0]).unwrap();
        let r = bound_thm4(&p, 1.0, 1.0).unwrap();
        assert_eq!(r.region.unwrap(), Region::exclusion_disk(Complex64::new(0.0, 0.0), 1.0));
        assert!(spectrum_fits(&p, &r));
        let r = bound_thm4(&p, 2.0, 0.5).unwrap();
        assert_eq!(
            r.region.unwrap(),
            Region::exclusion_disk(Complex64::new(0.5 / 3.0, 0.0), 1.0 / 3.0)
        );
        assert!(bound_thm4(&p, 1.0, 1.5).is_err());
        let skew = ComplexMatrix::from_real(2, 2, &[1.0, 1.0, 0.0, 1.0]).unwrap();
        let q = MatrixPolynomial::new(vec![skew, ComplexMatrix::identity(2)]).unwrap();
        assert!(matches!(bound_thm4(&q, 1.0, 1.0), Err(Error::HypothesisViolated { .. })));
    }
}
