//! Finite Blaschke products, phasar derivatives and the normalized
//! linear-fractional parametrization `φ = (aζ + b)/(cζ + d)` of all solutions
//! of a Blaschke interpolation problem.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::pick::{
    exceptional_coefficients, exceptional_set, kernel_vectors, BlaschkeData, ExceptionalSet,
    PickMatrix,
};
use crate::polyrat::{poly_roots, rat_reduce, Poly, RationalFn};
use crate::{circle_grid, disc_grid, disc_samples, Error, Result, TolerancePolicy};

/// Half-width of the band around an exceptional ζ that is refused.
pub const EXCEPTIONAL_BAND: f64 = 1e-8;

/// Tolerance used when checking the `(a, b, c, d)(τ) = (1, 0, 0, 1)` normalization.
pub const NORMALIZATION_TOL: f64 = 1e-9;

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// `c ∏ (λ - α_j)/(1 - conj(α_j) λ)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlaschkeProduct {
    pub unimodular_constant: Complex64,
    pub zeros: Vec<Complex64>,
}

impl BlaschkeProduct {
    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.zeros
            .iter()
            .fold(self.unimodular_constant, |acc, a| acc * (z - a) / (one() - a.conj() * z))
    }

    pub fn to_rational(&self) -> RationalFn {
        let mut num = Poly::constant(self.unimodular_constant);
        let mut den = Poly::one();
        for a in &self.zeros {
            num = &num * &Poly::linear(-a, one());
            den = &den * &Poly::linear(one(), -a.conj());
        }
        RationalFn { num, den }
    }
}

/// `A f(z) = Re(z f'(z)/f(z))` plus the size of the discarded imaginary part,
/// which vanishes when `f` is inner.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Phasar {
    pub value: f64,
    pub imag_residual: f64,
}

pub fn phasar_derivative(f: &RationalFn, z: Complex64, tol: &TolerancePolicy) -> Result<Phasar> {
    if (z.norm() - 1.0).abs() > 1e-9 {
        return Err(Error::PreconditionViolated(format!(
            "phasar derivative requires |z| = 1, got {}",
            z.norm()
        )));
    }
    let (n, dn) = f.num.eval_with_derivative(z);
    let (d, dd) = f.den.eval_with_derivative(z);
    if n.norm() <= tol.trim_tol * f.num.max_coeff_norm() || d.norm() <= tol.trim_tol * f.den.max_coeff_norm()
    {
        return Err(Error::ZeroOrPoleAtPoint);
    }
    let q = z * (dn / n - dd / d);
    Ok(Phasar {
        value: q.re,
        imag_residual: q.im.abs(),
    })
}

/// Canonical factorization of an inner rational function.
pub fn to_blaschke_product(f: &RationalFn, tol: &TolerancePolicy) -> Result<BlaschkeProduct> {
    let f = rat_reduce(f, tol);
    let defect = circle_grid(256)
        .into_iter()
        .map(|z| (f.eval(z).norm() - 1.0).abs())
        .fold(0.0, f64::max);
    if defect.is_nan() || defect > tol.residual_tol {
        return Err(Error::NotInner(defect));
    }
    let mut zeros = Vec::new();
    if f.num.degree().unwrap_or(0) > 0 {
        for r in poly_roots(&f.num, tol)? {
            if r.value.norm() >= 1.0 {
                return Err(Error::NotInner(r.value.norm() - 1.0));
            }
            zeros.extend(std::iter::repeat_n(r.value, r.multiplicity));
        }
    }
    let bare = BlaschkeProduct {
        unimodular_constant: one(),
        zeros,
    };
    // Anchor at 1, or at the next grid point if 1 is a pole of f.
    let anchor = circle_grid(64)
        .into_iter()
        .find(|&z| f.den.eval(z).norm() > tol.trim_tol * f.den.max_coeff_norm())
        .ok_or(Error::ZeroOrPoleAtPoint)?;
    let c = f.eval(anchor) / bare.eval(anchor);
    let product = BlaschkeProduct {
        unimodular_constant: c / c.norm(),
        ..bare
    };
    let mismatch = disc_samples(64)
        .into_iter()
        .map(|z| (product.eval(z) - f.eval(z)).norm())
        .fold(0.0, f64::max);
    if mismatch.is_nan() || mismatch > tol.residual_tol {
        return Err(Error::NotInner(mismatch));
    }
    Ok(product)
}

/// The polynomials obtained by clearing `∏(1 - conj(σ_j) λ)` from the kernel
/// pairings `⟨x_λ, M⁻¹x_τ⟩`, `⟨x_λ, M⁻¹y_τ⟩`, `⟨y_λ, M⁻¹x_τ⟩`, `⟨y_λ, M⁻¹y_τ⟩`.
#[derive(Debug, Clone)]
pub(crate) struct KernelPolys {
    pub product: Poly,
    pub product_at_tau: Complex64,
    pub xx: Poly,
    pub xy: Poly,
    pub yx: Poly,
    pub yy: Poly,
}

pub(crate) fn kernel_polys(
    m: &PickMatrix,
    data: &BlaschkeData,
    tau: Complex64,
    tol: &TolerancePolicy,
) -> Result<KernelPolys> {
    let kv = kernel_vectors(data, tau, tol)?;
    let wx = m.solve(&kv.x, tol)?;
    let wy = m.solve(&kv.y, tol)?;
    let n = data.n();
    let factors: Vec<Poly> = data
        .sigma()
        .iter()
        .map(|s| Poly::linear(one(), -s.conj()))
        .collect();
    let product = factors.iter().fold(Poly::one(), |acc, f| &acc * f);
    let mut xx = Poly::zero();
    let mut xy = Poly::zero();
    let mut yx = Poly::zero();
    let mut yy = Poly::zero();
    for i in 0..n {
        let others = factors
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(Poly::one(), |acc, (_, f)| &acc * f);
        let eb = data.eta()[i].conj();
        xx = &xx + &others.scale(wx[i].conj());
        xy = &xy + &others.scale(wy[i].conj());
        yx = &yx + &others.scale(eb * wx[i].conj());
        yy = &yy + &others.scale(eb * wy[i].conj());
    }
    Ok(KernelPolys {
        product_at_tau: product.eval(tau),
        product,
        xx,
        xy,
        yx,
        yy,
    })
}

/// The normalized quadruple `(a, b, c, d)` at base point τ.
#[derive(Debug, Clone, PartialEq)]
pub struct Parametrization {
    pub a: Poly,
    pub b: Poly,
    pub c: Poly,
    pub d: Poly,
    pub tau: Complex64,
    /// Digest of the data this was built from; absent after deserialization.
    pub data_hash: Option<String>,
    /// Per boundary node, the pair `(α_j, β_j)` whose ratio is the
    /// exceptional ζ. Absent after deserialization.
    exceptional: Option<Vec<(Complex64, Complex64)>>,
}

/// Checks of the structural properties every parametrization should have.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParametrizationDiagnostics {
    /// `max(|a(τ)-1|, |b(τ)|, |c(τ)|, |d(τ)-1|)`.
    pub normalization: f64,
    pub max_degree: usize,
    /// A point where all four polynomials vanish, if one exists.
    pub common_root: Option<Complex64>,
    /// `max(|c| - |d|)` over the 256-point grid of the closed disc.
    pub c_over_d_excess: f64,
}

impl ParametrizationDiagnostics {
    pub fn holds(&self, n: usize, tol: &TolerancePolicy) -> bool {
        self.normalization <= NORMALIZATION_TOL
            && self.max_degree == n
            && self.common_root.is_none()
            && self.c_over_d_excess <= tol.residual_tol
    }
}

impl Parametrization {
    /// Wrap raw polynomials (no data attached).
    pub fn from_parts(a: Poly, b: Poly, c: Poly, d: Poly, tau: Complex64) -> Self {
        Self {
            a,
            b,
            c,
            d,
            tau,
            data_hash: None,
            exceptional: None,
        }
    }

    pub fn diagnostics(&self, tol: &TolerancePolicy) -> ParametrizationDiagnostics {
        let t = self.tau;
        let normalization = [
            (self.a.eval(t) - one()).norm(),
            self.b.eval(t).norm(),
            self.c.eval(t).norm(),
            (self.d.eval(t) - one()).norm(),
        ]
        .into_iter()
        .fold(0.0, f64::max);
        let polys = [&self.a, &self.b, &self.c, &self.d];
        let max_degree = polys.iter().filter_map(|p| p.degree()).max().unwrap_or(0);
        let scale = polys.iter().map(|p| p.max_coeff_norm()).fold(0.0, f64::max);
        let pivot = polys
            .iter()
            .filter(|p| p.degree().unwrap_or(0) > 0)
            .min_by_key(|p| p.degree());
        let common_root = pivot.and_then(|p| {
            poly_roots(p, tol).ok()?.into_iter().map(|r| r.value).find(|&z| {
                polys
                    .iter()
                    .all(|q| q.eval(z).norm() <= tol.root_cluster_tol * scale.max(1.0))
            })
        });
        let c_over_d_excess = disc_grid(16)
            .into_iter()
            .map(|z| self.c.eval(z).norm() - self.d.eval(z).norm())
            .fold(f64::NEG_INFINITY, f64::max);
        ParametrizationDiagnostics {
            normalization,
            max_degree,
            common_root,
            c_over_d_excess,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ParamJson {
    tau: Complex64,
    a: Poly,
    b: Poly,
    c: Poly,
    d: Poly,
}

impl Serialize for Parametrization {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ParamJson {
            tau: self.tau,
            a: self.a.clone(),
            b: self.b.clone(),
            c: self.c.clone(),
            d: self.d.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Parametrization {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = ParamJson::deserialize(d)?;
        if (raw.tau.norm() - 1.0).abs() > 1e-9 {
            return Err(serde::de::Error::custom("tau must lie on the unit circle"));
        }
        Ok(Parametrization::from_parts(raw.a, raw.b, raw.c, raw.d, raw.tau / raw.tau.norm()))
    }
}

/// Assemble `(a, b, c, d)` exactly over the common product `∏(1 - conj(σ_j) λ)`.
pub fn build_parametrization(
    m: &PickMatrix,
    data: &BlaschkeData,
    tau: Complex64,
    tol: &TolerancePolicy,
) -> Result<Parametrization> {
    if !exceptional_set(m, data, tau, tol)?.is_finite() {
        return Err(Error::UnsuitableTau);
    }
    let k = kernel_polys(m, data, tau, tol)?;
    let line = Poly::linear(one(), -tau.conj());
    let inv = k.product_at_tau.inv();
    let a = (&k.product - &(&line * &k.xx)).scale(inv);
    let b = (&line * &k.xy).scale(inv);
    let c = (&line * &k.yx).scale(-inv);
    let d = (&k.product + &(&line * &k.yy)).scale(inv);
    let param = Parametrization {
        a,
        b,
        c,
        d,
        tau,
        data_hash: Some(data.digest()),
        exceptional: Some(exceptional_coefficients(m, data, tau, tol)?),
    };
    let norm = param.diagnostics(tol).normalization;
    if norm > NORMALIZATION_TOL {
        return Err(Error::PreconditionViolated(format!(
            "normalization at tau fails by {norm:e}"
        )));
    }
    Ok(param)
}

/// Index of the boundary node for which ζ is exceptional, if any.
fn exceptional_index(
    param: &Parametrization,
    zeta: Complex64,
    tol: &TolerancePolicy,
) -> Result<Option<usize>> {
    if let Some(coeffs) = &param.exceptional {
        return Ok(coeffs.iter().position(|(alpha, beta)| {
            let scale = alpha.norm().max(beta.norm());
            scale > 0.0 && (alpha - zeta * beta).norm() <= EXCEPTIONAL_BAND * scale
        }));
    }
    // Without data, an exceptional ζ shows up as a common zero of the
    // numerator and denominator on the circle.
    let num = &param.a.scale(zeta) + &param.b;
    let den = &param.c.scale(zeta) + &param.d;
    if den.degree().unwrap_or(0) == 0 {
        return Ok(None);
    }
    let scale = num.max_coeff_norm().max(den.max_coeff_norm());
    let mut boundary_roots = poly_roots(&den, tol)?
        .into_iter()
        .filter(|r| (r.value.norm() - 1.0).abs() <= 1e-6);
    Ok(boundary_roots
        .position(|r| num.eval(r.value).norm() <= 1e-6 * scale))
}

/// `φ = (aζ + b)/(cζ + d)`, reduced.
pub fn solve_blaschke(
    param: &Parametrization,
    zeta: Complex64,
    tol: &TolerancePolicy,
) -> Result<RationalFn> {
    if (zeta.norm() - 1.0).abs() > 1e-9 {
        return Err(Error::PreconditionViolated("ζ must lie on the unit circle".into()));
    }
    if let Some(j) = exceptional_index(param, zeta, tol)? {
        return Err(Error::ExceptionalZeta(j));
    }
    let num = &param.a.scale(zeta) + &param.b;
    let den = &param.c.scale(zeta) + &param.d;
    Ok(rat_reduce(&RationalFn::new(num, den)?, tol))
}

/// The exceptional set of a built parametrization, if it carries its data.
pub fn parametrization_exceptional_set(param: &Parametrization) -> Option<ExceptionalSet> {
    param.exceptional.as_ref().map(|coeffs| {
        ExceptionalSet::Finite(
            coeffs
                .iter()
                .filter(|(_, b)| b.norm() > 0.0)
                .map(|(a, b)| a / b)
                .filter(|z| (z.norm() - 1.0).abs() <= 1e-6)
                .map(|z| z / z.norm())
                .collect(),
        )
    })
}
