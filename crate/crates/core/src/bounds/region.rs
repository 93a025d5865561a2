use num_complex::Complex64;

use crate::{Error, Result};

/// Default relative slack for membership tests.
pub const MEMBERSHIP_TOL: f64 = 1e-8;
/// Absolute slack added on top of the relative one.
pub const MEMBERSHIP_ABS: f64 = 1e-12;

/// An eigenvalue-localization claim.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Region {
    /// Every eigenvalue satisfies `|z - center| <= radius`.
    Disk { center: Complex64, radius: f64 },
    /// Every eigenvalue satisfies `inner <= |z| <= outer`.
    Annulus { inner: f64, outer: f64 },
    /// No eigenvalue satisfies `|z - center| < radius`.
    ExclusionDisk { center: Complex64, radius: f64 },
}

impl Region {
    pub fn disk(center: Complex64, radius: f64) -> Self {
        Region::Disk { center, radius }
    }

    pub fn centered_disk(radius: f64) -> Self {
        Region::Disk {
            center: Complex64::new(0.0, 0.0),
            radius,
        }
    }

    /// Annulus `inner <= |z| <= outer`. An inner radius exceeding the outer
    /// one by rounding only (relative `1e-10`) is pulled down to it.
    pub fn annulus(inner: f64, outer: f64) -> Result<Self> {
        if !(inner >= 0.0 && outer.is_finite()) {
            return Err(Error::InvalidParameter("annulus radii must be finite and nonnegative".into()));
        }
        if inner > outer {
            if inner <= outer * (1.0 + 1e-10) {
                return Ok(Region::Annulus { inner: outer, outer });
            }
            return Err(Error::InvalidParameter(alloc::format!(
                "annulus inner radius {inner} exceeds outer radius {outer}"
            )));
        }
        Ok(Region::Annulus { inner, outer })
    }

    pub fn exclusion_disk(center: Complex64, radius: f64) -> Self {
        Region::ExclusionDisk { center, radius }
    }

    pub fn center(&self) -> Complex64 {
        match *self {
            Region::Disk { center, .. } | Region::ExclusionDisk { center, .. } => center,
            Region::Annulus { .. } => Complex64::new(0.0, 0.0),
        }
    }

    /// `(lower, upper)` bounds on `|z - center|` that the claim implies.
    pub fn radii(&self) -> (Option<f64>, Option<f64>) {
        match *self {
            Region::Disk { radius, .. } => (None, Some(radius)),
            Region::Annulus { inner, outer } => (Some(inner), Some(outer)),
            Region::ExclusionDisk { radius, .. } => (Some(radius), None),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Region::Disk { .. } => "disk",
            Region::Annulus { .. } => "annulus",
            Region::ExclusionDisk { .. } => "exclusion-disk",
        }
    }

    /// Whether an eigenvalue at `z` is consistent with the claim, allowing
    /// `tol` relative plus `1e-12` absolute slack.
    pub fn admits(&self, z: Complex64, tol: f64) -> bool {
        match *self {
            Region::Disk { center, radius } => {
                (z - center).norm() <= radius * (1.0 + tol) + MEMBERSHIP_ABS
            }
            Region::Annulus { inner, outer } => {
                let r = z.norm();
                r >= inner * (1.0 - tol) - MEMBERSHIP_ABS
                    && r <= outer * (1.0 + tol) + MEMBERSHIP_ABS
            }
            Region::ExclusionDisk { center, radius } => {
                (z - center).norm() > radius * (1.0 - tol) - MEMBERSHIP_ABS
            }
        }
    }

    /// Whether every point in `lambdas` is admitted.
    pub fn admits_all(&self, lambdas: impl IntoIterator<Item = Complex64>, tol: f64) -> bool {
        lambdas.into_iter().all(|z| self.admits(z, tol))
    }

    /// The region's image under `z -> s z` for `s > 0`.
    pub fn scaled(&self, s: f64) -> Self {
        match *self {
            Region::Disk { center, radius } => Region::Disk {
                center: center * s,
                radius: radius * s,
            },
            Region::Annulus { inner, outer } => Region::Annulus {
                inner: inner * s,
                outer: outer * s,
            },
            Region::ExclusionDisk { center, radius } => Region::ExclusionDisk {
                center: center * s,
                radius: radius * s,
            },
        }
    }
}
