use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result, TolerancePolicy};

/// A point `(s, p)` of `C²`, read as `(z + w, zw)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaPoint {
    pub s: Complex64,
    pub p: Complex64,
}

impl GammaPoint {
    pub fn new(s: Complex64, p: Complex64) -> Self {
        Self { s, p }
    }

    /// The royal point `(-2η, η²)`.
    pub fn royal(eta: Complex64) -> Self {
        Self::new(-2.0 * eta, eta * eta)
    }

    /// `|s - conj(s) p|`.
    pub fn symmetry_defect(&self) -> f64 {
        (self.s - self.s.conj() * self.p).norm()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GammaClass {
    InteriorG,
    BoundaryGamma,
    DistinguishedBGamma,
    Outside,
}

impl GammaClass {
    pub fn in_gamma(self) -> bool {
        self != GammaClass::Outside
    }
}

/// Decide membership using `|s| ≤ 2` and `|s - conj(s)p| ≤ 1 - |p|²`,
/// with `residual_tol` as the slack in every comparison.
pub fn classify_point(pt: GammaPoint, tol: &TolerancePolicy) -> GammaClass {
    let eps = tol.residual_tol;
    let s_abs = pt.s.norm();
    let p_abs = pt.p.norm();
    let defect = pt.symmetry_defect();
    let gap = 1.0 - p_abs * p_abs;
    if (p_abs - 1.0).abs() <= eps && defect <= eps && s_abs <= 2.0 + eps {
        GammaClass::DistinguishedBGamma
    } else if s_abs < 2.0 - eps && defect < gap - eps {
        GammaClass::InteriorG
    } else if s_abs <= 2.0 + eps && defect <= gap + eps {
        GammaClass::BoundaryGamma
    } else {
        GammaClass::Outside
    }
}

/// `Φ_ω(s, p) = (2ωp - s)/(2 - ωs)`.
pub fn phi_omega(omega: Complex64, pt: GammaPoint, tol: &TolerancePolicy) -> Result<Complex64> {
    let den = 2.0 - omega * pt.s;
    if den.norm() < tol.trim_tol {
        return Err(Error::SingularPoint);
    }
    Ok((2.0 * omega * pt.p - pt.s) / den)
}
