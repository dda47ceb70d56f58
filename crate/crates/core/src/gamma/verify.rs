use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::construct::GammaInnerFn;
use crate::blaschke::phasar_derivative;
use crate::pick::{tau_candidate, BlaschkeData};
use crate::polyrat::{rat_reduce, RationalFn};
use crate::{Result, TolerancePolicy};

/// Minimum distance between a cross-check ω and any `-conj(η_j)`.
const OMEGA_SEPARATION: f64 = 1e-3;

/// Named residuals compared against one threshold, plus hard failures.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub tolerance: f64,
    pub residuals: BTreeMap<String, f64>,
    /// Informational quantities that are not compared against the tolerance.
    pub metrics: BTreeMap<String, f64>,
    /// Failures that are not residuals (royal range, poles in the disc, ...).
    pub flags: Vec<String>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn max_residual(&self) -> f64 {
        self.residuals.values().copied().fold(0.0, f64::max)
    }

    /// The largest residual whose name starts with `prefix`.
    pub fn max_with_prefix(&self, prefix: &str) -> f64 {
        self.residuals
            .iter()
            .filter(|(k, _)| k.starts_with(prefix))
            .map(|(_, v)| *v)
            .fold(0.0, f64::max)
    }

    pub fn has_flag(&self, flag: &str) -> bool {
        self.flags.iter().any(|f| f == flag)
    }
}

/// Eight deterministic points of the circle kept away from `-conj(η_j)` for
/// the boundary targets, where `Φ_ω ∘ h` has a removable singularity.
pub fn cross_check_omegas(data: &BlaschkeData) -> Vec<Complex64> {
    let forbidden: Vec<Complex64> = data.eta()[..data.k()].iter().map(|e| -e.conj()).collect();
    (1..)
        .map(tau_candidate)
        .filter(|w| forbidden.iter().all(|f| (w - f).norm() > OMEGA_SEPARATION))
        .take(8)
        .collect()
}

/// `Φ_ω ∘ h = (2ωP - S)/(2D - ωS)`, reduced.
pub fn compose_phi_omega(h: &GammaInnerFn, omega: Complex64, tol: &TolerancePolicy) -> Result<RationalFn> {
    let num = &h.p_num().scale(2.0 * omega) - h.s_num();
    let den = &h.den().scale_real(2.0) - &h.s_num().scale(omega);
    Ok(rat_reduce(&RationalFn::new(num, den)?, tol))
}

/// Check `h` against every property a solution for `data` must have.
pub fn verify_royal_solution(
    h: &GammaInnerFn,
    data: &BlaschkeData,
    tol: &TolerancePolicy,
) -> VerificationReport {
    let mut residuals = BTreeMap::new();
    let mut metrics = BTreeMap::new();
    let mut flags = Vec::new();
    let s = h.s();
    let p = h.p();
    let p_reduced = rat_reduce(&p, tol);

    for j in 0..data.n() {
        let (sigma, eta) = (data.sigma()[j], data.eta()[j]);
        let den = h.den().eval(sigma);
        if den.norm() <= tol.trim_tol * h.den().max_coeff_norm() {
            flags.push(format!("pole_at_node[{j}]"));
            continue;
        }
        residuals.insert(format!("interpolation_s[{j}]"), (s.eval(sigma) + 2.0 * eta).norm());
        residuals.insert(format!("interpolation_p[{j}]"), (p.eval(sigma) - eta * eta).norm());
    }
    for j in 0..data.k() {
        match phasar_derivative(&p_reduced, data.sigma()[j], tol) {
            Ok(a) => {
                residuals.insert(format!("phasar[{j}]"), (a.value - 2.0 * data.rho()[j]).abs());
            }
            Err(_) => flags.push(format!("phasar_undefined[{j}]")),
        }
    }

    let inner = h.inner_residuals();
    residuals.insert("inner_p_modulus".into(), inner.p_modulus);
    residuals.insert("inner_symmetry".into(), inner.symmetry);
    residuals.insert("inner_s_bound".into(), inner.s_excess.max(0.0));

    let degree = h.degree(tol);
    metrics.insert("degree".into(), degree as f64);
    if degree != data.n() {
        flags.push("degree_mismatch".into());
    }

    if h.is_royal_range(tol) {
        flags.push("royal_range".into());
    } else {
        for (m, omega) in cross_check_omegas(data).into_iter().enumerate() {
            let phi = match compose_phi_omega(h, omega, tol) {
                Ok(phi) => phi,
                Err(_) => {
                    flags.push(format!("phi_omega_undefined[{m}]"));
                    continue;
                }
            };
            for j in 0..data.n() {
                let key = format!("phi_omega_value[{j}]");
                let v = (phi.eval(data.sigma()[j]) - data.eta()[j]).norm();
                let entry = residuals.entry(key).or_insert(0.0);
                *entry = f64::max(*entry, v);
            }
            for j in 0..data.k() {
                match phasar_derivative(&phi, data.sigma()[j], tol) {
                    Ok(a) => {
                        let key = format!("phi_omega_phasar[{j}]");
                        let v = (a.value - data.rho()[j]).abs();
                        let entry = residuals.entry(key).or_insert(0.0);
                        *entry = f64::max(*entry, v);
                    }
                    Err(_) => flags.push(format!("phi_omega_phasar_undefined[{m},{j}]")),
                }
            }
        }
    }

    match h.denominator_roots(tol) {
        Ok(roots) => {
            let min = roots.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
            if min.is_finite() {
                metrics.insert("denominator_min_root_modulus".into(), min);
            }
            if min <= 1.0 {
                flags.push("denominator_zero_in_disc".into());
            }
        }
        Err(_) => flags.push("denominator_roots_failed".into()),
    }

    for v in residuals.values_mut() {
        if !v.is_finite() {
            *v = f64::MAX;
        }
    }
    let pass = flags.is_empty() && residuals.values().all(|&v| v <= tol.residual_tol);
    VerificationReport {
        tolerance: tol.residual_tol,
        residuals,
        metrics,
        flags,
        pass,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::generate_h_nu;
    use crate::polyrat::Poly;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn h_nu_data(rho: f64) -> BlaschkeData {
        BlaschkeData::new(vec![c(-1.0, 0.0), c(0.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)], vec![rho]).unwrap()
    }

    #[test]
    fn h_nu_passes_against_its_own_data() {
        let tol = TolerancePolicy::default();
        let rep = verify_royal_solution(&generate_h_nu(0, 0.5).unwrap(), &h_nu_data(2.0), &tol);
        assert!(rep.pass, "{rep:?}");
    }

    #[test]
    fn wrong_rho_is_reported() {
        let tol = TolerancePolicy::default();
        let rep = verify_royal_solution(&generate_h_nu(0, 0.5).unwrap(), &h_nu_data(3.0), &tol);
        assert!(!rep.pass);
        assert!((rep.residuals["phasar[0]"] - 2.0).abs() < 1e-9);
    }

    #[test]
    fn royal_range_fails() {
        let tol = TolerancePolicy::default();
        let h = GammaInnerFn::new(Poly::from_real(&[0.0, 2.0]), Poly::from_real(&[0.0, 0.0, 1.0]), Poly::one()).unwrap();
        let rep = verify_royal_solution(&h, &h_nu_data(2.0), &tol);
        assert!(!rep.pass);
        assert!(rep.has_flag("royal_range"));
    }

    #[test]
    fn omegas_avoid_forbidden_points() {
        let d = h_nu_data(2.0);
        let w = cross_check_omegas(&d);
        assert_eq!(w.len(), 8);
        assert!(w.iter().all(|w| (w + 1.0).norm() > OMEGA_SEPARATION));
    }
}
