//! Hypothesis checkers and localization regions.
//!
//! Each theorem gets a function that takes explicit witness parameters,
//! verifies the theorem's hypothesis on the instance and returns the region
//! it guarantees. [`all_bounds`] picks witnesses automatically and reports
//! every theorem, including the ones whose hypotheses fail.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;

use crate::eigen::Spectrum;
use crate::linalg::{ComplexMatrix, NormKind};
use crate::matpoly::MatrixPolynomial;
use crate::{Error, Result};

mod region;
mod search;
mod theorems;

pub use region::{Region, MEMBERSHIP_ABS, MEMBERSHIP_TOL};
pub use search::{cone_axis, cone_witness, cor1_witness, optimal_t_thm1, thm4_witness, ConeWitness};
pub use theorems::{
    bound_cor1, bound_thm1, bound_thm2, bound_thm3, bound_thm4, bound_thm_c, bound_thm_d,
    bound_thm_e, ANGLE_TOL, CHAIN_TOL,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    /// Cauchy-type radius: unique positive root of
    /// `||A_m^{-1}||^{-1} z^m - sum_{j<m} ||A_j|| z^j`.
    ThmC,
    /// `|z| <= 1 + ||A_m^{-1}|| max_{j<m} ||A_j||`.
    ThmD,
    /// Loewner chain `A_m >= ... >= A_0 >= 0` gives the unit disk.
    ThmE,
    /// Geometric norm chain with ratio `t` gives `|z| <= k_1 / t`.
    Thm1,
    /// Frobenius cone condition gives a disk centered at `-(k - 1)`.
    Thm2,
    /// The cone bound applied to `P(t z)`.
    Cor1,
    /// Pell-weighted annulus `r_1 <= |z| <= r_2`.
    Thm3,
    /// Hermitian scaled chain gives a zero-free disk.
    Thm4,
}

impl TheoremId {
    pub const ALL: [TheoremId; 8] = [
        TheoremId::ThmC,
        TheoremId::ThmD,
        TheoremId::ThmE,
        TheoremId::Thm1,
        TheoremId::Thm2,
        TheoremId::Cor1,
        TheoremId::Thm3,
        TheoremId::Thm4,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::ThmC => "ThmC",
            TheoremId::ThmD => "ThmD",
            TheoremId::ThmE => "ThmE",
            TheoremId::Thm1 => "Thm1",
            TheoremId::Thm2 => "Thm2",
            TheoremId::Cor1 => "Cor1",
            TheoremId::Thm3 => "Thm3",
            TheoremId::Thm4 => "Thm4",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    /// Accepts `ThmC`, `thm-c`, `c`, `Cor1`, `1`, ... case-insensitively.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase().replace(['-', '_'], "");
        let key = lower
            .strip_prefix("theorem")
            .or_else(|| lower.strip_prefix("thm"))
            .unwrap_or(&lower);
        Ok(match key {
            "c" => TheoremId::ThmC,
            "d" => TheoremId::ThmD,
            "e" => TheoremId::ThmE,
            "1" => TheoremId::Thm1,
            "2" => TheoremId::Thm2,
            "3" => TheoremId::Thm3,
            "4" => TheoremId::Thm4,
            "cor1" | "corollary1" => TheoremId::Cor1,
            _ => {
                return Err(Error::InvalidParameter(alloc::format!(
                    "unknown theorem id {s:?}"
                )))
            }
        })
    }
}

/// Parameters under which a hypothesis was checked.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Witness {
    pub t: Option<f64>,
    pub k: Option<f64>,
    pub alpha: Option<f64>,
    /// Cone axis `C` for the Frobenius-angle condition.
    pub axis: Option<ComplexMatrix>,
    pub norm: Option<NormKind>,
}

impl Witness {
    pub fn with_norm(norm: NormKind) -> Self {
        Self {
            norm: Some(norm),
            ..Self::default()
        }
    }
}

/// Outcome of one theorem on one instance. `region` is present exactly
/// when `hypothesis_ok` holds.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundResult {
    pub theorem: TheoremId,
    pub hypothesis_ok: bool,
    pub witness: Witness,
    pub region: Option<Region>,
    pub diagnostics: Vec<String>,
}

impl BoundResult {
    pub(crate) fn holds(theorem: TheoremId, witness: Witness, region: Region) -> Self {
        Self {
            theorem,
            hypothesis_ok: true,
            witness,
            region: Some(region),
            diagnostics: Vec::new(),
        }
    }

    pub(crate) fn fails(theorem: TheoremId, witness: Witness, diagnostics: Vec<String>) -> Self {
        Self {
            theorem,
            hypothesis_ok: false,
            witness,
            region: None,
            diagnostics,
        }
    }

    fn from_error(theorem: TheoremId, witness: Witness, err: Error) -> Self {
        let msg = match err {
            Error::HypothesisViolated { reason, .. } => reason,
            other => other.to_string(),
        };
        Self::fails(theorem, witness, alloc::vec![msg])
    }
}

/// Runs every theorem with automatically chosen witnesses.
///
/// Results come back in [`TheoremId::ALL`] order. Operational failures
/// such as a singular `A_m` are reported as unsatisfied hypotheses.
pub fn all_bounds(p: &MatrixPolynomial, kind: NormKind) -> Vec<BoundResult> {
    TheoremId::ALL
        .iter()
        .map(|&id| bound_auto(p, id, kind))
        .collect()
}

/// One theorem with an automatically chosen witness.
pub fn bound_auto(p: &MatrixPolynomial, theorem: TheoremId, kind: NormKind) -> BoundResult {
    let outcome = match theorem {
        TheoremId::ThmC => bound_thm_c(p, kind),
        TheoremId::ThmD => bound_thm_d(p, kind),
        TheoremId::ThmE => Ok(bound_thm_e(p)),
        TheoremId::Thm1 => optimal_t_thm1(p, kind).and_then(|t| bound_thm1(p, t, kind)),
        TheoremId::Thm2 => cone_witness(p).and_then(|w| bound_thm2(p, w.k, w.alpha, &w.axis)),
        TheoremId::Cor1 => cor1_witness(p),
        TheoremId::Thm3 => bound_thm3(p, kind),
        TheoremId::Thm4 => thm4_witness(p),
    };
    let witness = match theorem {
        TheoremId::ThmC | TheoremId::ThmD | TheoremId::Thm1 | TheoremId::Thm3 => {
            Witness::with_norm(kind)
        }
        _ => Witness::default(),
    };
    outcome.unwrap_or_else(|e| BoundResult::from_error(theorem, witness, e))
}

/// How close one satisfied claim comes to the computed spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct Tightness {
    pub theorem: TheoremId,
    pub region: Region,
    /// Disk and annulus: outer radius minus the largest distance from the
    /// center. Exclusion disk: smallest distance minus the radius.
    pub slack: f64,
    /// Annulus only: smallest modulus minus the inner radius.
    pub inner_margin: Option<f64>,
}

/// Slack of every satisfied bound against `spectrum`, tightest first.
pub fn tightness_report(results: &[BoundResult], spectrum: &Spectrum) -> Vec<Tightness> {
    let mut rows: Vec<Tightness> = results
        .iter()
        .filter(|r| r.hypothesis_ok)
        .filter_map(|r| r.region.map(|region| (r.theorem, region)))
        .map(|(theorem, region)| {
            let dist = |c: Complex64| spectrum.lambdas().map(move |z| (z - c).norm());
            let (slack, inner_margin) = match region {
                Region::Disk { center, radius } => {
                    (radius - dist(center).fold(0.0, f64::max), None)
                }
                Region::Annulus { inner, outer } => (
                    outer - spectrum.max_modulus(),
                    Some(spectrum.min_modulus() - inner),
                ),
                Region::ExclusionDisk { center, radius } => {
                    (dist(center).fold(f64::INFINITY, f64::min) - radius, None)
                }
            };
            Tightness {
                theorem,
                region,
                slack,
                inner_margin,
            }
        })
        .collect();
    rows.sort_by(|a, b| a.slack.total_cmp(&b.slack));
    rows
}
