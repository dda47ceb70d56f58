use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::geometry::GammaPoint;
use super::s0p0::identity_residual;
use crate::blaschke::Parametrization;
use crate::polyrat::{poly_roots, rat_reduce, Poly, RationalFn};
use crate::{circle_grid, Error, Result, TolerancePolicy};

/// A rational map `h = (s, p) = (S/D, P/D)` with one shared denominator,
/// stored with `D` monic.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaInnerFn {
    s_num: Poly,
    p_num: Poly,
    den: Poly,
}

/// Boundary behaviour of `h` on the 256-point circle grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InnerResiduals {
    /// `max | |p| - 1 |`.
    pub p_modulus: f64,
    /// `max |s - conj(s) p|`.
    pub symmetry: f64,
    /// `max(0, max |s| - 2)`.
    pub s_excess: f64,
}

impl InnerResiduals {
    pub fn max(&self) -> f64 {
        self.p_modulus.max(self.symmetry).max(self.s_excess)
    }
}

impl GammaInnerFn {
    pub fn new(s_num: Poly, p_num: Poly, den: Poly) -> Result<Self> {
        let lead = den
            .leading()
            .ok_or_else(|| Error::PreconditionViolated("zero denominator".into()))?;
        let k = lead.inv();
        Ok(Self {
            s_num: s_num.scale(k),
            p_num: p_num.scale(k),
            den: den.scale(k),
        })
    }

    /// Bring `s` and `p` over a shared denominator, cancelling common factors.
    pub fn from_parts(s: &RationalFn, p: &RationalFn, tol: &TolerancePolicy) -> Result<Self> {
        let (ds, dp) = (s.den.monic(), p.den.monic());
        let same = ds.degree() == dp.degree() && ds.max_coeff_diff(&dp) <= tol.root_cluster_tol;
        if same {
            let ks = s.den.leading().unwrap_or(Complex64::new(1.0, 0.0)).inv();
            let kp = p.den.leading().unwrap_or(Complex64::new(1.0, 0.0)).inv();
            return Self::new(s.num.scale(ks), p.num.scale(kp), ds);
        }
        let s_num = &s.num * &p.den;
        let p_num = &p.num * &s.den;
        let den = &s.den * &p.den;
        Self::reduced(s_num, p_num, den, tol)
    }

    /// Cancel linear factors shared by `den` and both numerators.
    pub(crate) fn reduced(s_num: Poly, p_num: Poly, den: Poly, tol: &TolerancePolicy) -> Result<Self> {
        let (nums, dens) = crate::polyrat::cancel_joint(&den, &[&s_num, &p_num], tol);
        let mut nums = nums.into_iter();
        let s = nums.next().unwrap_or_else(Poly::zero);
        let p = nums.next().unwrap_or_else(Poly::zero);
        Self::new(s, p, dens.into_iter().next().unwrap_or_else(Poly::one))
    }

    pub fn s_num(&self) -> &Poly {
        &self.s_num
    }

    pub fn p_num(&self) -> &Poly {
        &self.p_num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn s(&self) -> RationalFn {
        RationalFn {
            num: self.s_num.clone(),
            den: self.den.clone(),
        }
    }

    pub fn p(&self) -> RationalFn {
        RationalFn {
            num: self.p_num.clone(),
            den: self.den.clone(),
        }
    }

    pub fn eval(&self, z: Complex64) -> GammaPoint {
        let d = self.den.eval(z);
        GammaPoint::new(self.s_num.eval(z) / d, self.p_num.eval(z) / d)
    }

    /// Degree of `h`, which is the degree of the reduced `p`.
    pub fn degree(&self, tol: &TolerancePolicy) -> usize {
        rat_reduce(&self.p(), tol).degree()
    }

    /// `S² - 4PD`; its zeros in the closed disc are the royal nodes.
    pub fn royal_polynomial(&self) -> Poly {
        &(&self.s_num * &self.s_num) - &(&self.p_num * &self.den).scale_real(4.0)
    }

    /// Whether `s² = 4p` identically, relative to the size of the two terms.
    pub fn is_royal_range(&self, tol: &TolerancePolicy) -> bool {
        let ss = &self.s_num * &self.s_num;
        let pd = (&self.p_num * &self.den).scale_real(4.0);
        let scale = ss.max_coeff_norm().max(pd.max_coeff_norm());
        (&ss - &pd).max_coeff_norm() <= tol.residual_tol * scale
    }

    pub fn inner_residuals(&self) -> InnerResiduals {
        let mut r = InnerResiduals {
            p_modulus: 0.0,
            symmetry: 0.0,
            s_excess: 0.0,
        };
        for z in circle_grid(256) {
            let h = self.eval(z);
            r.p_modulus = r.p_modulus.max((h.p.norm() - 1.0).abs());
            r.symmetry = r.symmetry.max(h.symmetry_defect());
            r.s_excess = r.s_excess.max(h.s.norm() - 2.0);
        }
        r
    }

    /// Roots of the shared denominator (empty for a constant denominator).
    pub fn denominator_roots(&self, tol: &TolerancePolicy) -> Result<Vec<Complex64>> {
        if self.den.degree().unwrap_or(0) == 0 {
            return Ok(Vec::new());
        }
        Ok(poly_roots(&self.den, tol)?
            .into_iter()
            .flat_map(|r| std::iter::repeat_n(r.value, r.multiplicity))
            .collect())
    }

    /// Largest coefficient difference after putting both in reduced form.
    pub fn max_coeff_distance(&self, other: &GammaInnerFn) -> f64 {
        if self.den.degree() != other.den.degree() {
            return f64::INFINITY;
        }
        self.s_num
            .max_coeff_diff(&other.s_num)
            .max(self.p_num.max_coeff_diff(&other.p_num))
            .max(self.den.max_coeff_diff(&other.den))
    }
}

#[derive(Serialize, Deserialize)]
struct GammaJson {
    s: RationalFn,
    p: RationalFn,
    #[serde(default)]
    degree: Option<usize>,
}

impl Serialize for GammaInnerFn {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GammaJson {
            s: self.s(),
            p: self.p(),
            degree: Some(self.degree(&TolerancePolicy::default())),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GammaInnerFn {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = GammaJson::deserialize(d)?;
        GammaInnerFn::from_parts(&raw.s, &raw.p, &TolerancePolicy::default())
            .map_err(serde::de::Error::custom)
    }
}

/// Precondition slack for `(s₀, p₀)`, looser than the verification tolerance
/// because the pair is itself the output of a projection.
fn admissible(s0: Complex64, p0: Complex64, tol: &TolerancePolicy) -> Result<()> {
    let eps = tol.residual_tol;
    if (p0.norm() - 1.0).abs() > eps {
        return Err(Error::PreconditionViolated(format!("|p₀| = {} is not 1", p0.norm())));
    }
    if (s0 - s0.conj() * p0).norm() > eps {
        return Err(Error::PreconditionViolated("s₀ ≠ conj(s₀) p₀".into()));
    }
    if s0.norm() >= 2.0 {
        return Err(Error::PreconditionViolated(format!("|s₀| = {} is not below 2", s0.norm())));
    }
    Ok(())
}

/// `s = 2(2p₀c - s₀d)/(s₀c - 2d)`, `p = (-2p₀a + s₀b)/(s₀c - 2d)`, jointly reduced.
pub fn construct_h(
    param: &Parametrization,
    s0: Complex64,
    p0: Complex64,
    tol: &TolerancePolicy,
) -> Result<GammaInnerFn> {
    admissible(s0, p0, tol)?;
    let res = identity_residual(param, s0, p0);
    if res > tol.residual_tol {
        return Err(Error::PreconditionViolated(format!(
            "identity residual {res:e} exceeds tolerance"
        )));
    }
    let den = &param.c.scale(s0) - &param.d.scale_real(2.0);
    let s_num = (&param.c.scale(2.0 * p0) - &param.d.scale(s0)).scale_real(2.0);
    let p_num = &param.b.scale(s0) - &param.a.scale(2.0 * p0);
    if den.is_zero() {
        return Err(Error::PreconditionViolated("s₀c - 2d vanishes".into()));
    }
    let h = GammaInnerFn::reduced(s_num, p_num, den, tol)?;
    if let Some(z) = h
        .denominator_roots(tol)?
        .into_iter()
        .find(|z| z.norm() <= 1.0)
    {
        return Err(Error::DenominatorZeroInDisc(z));
    }
    if h.is_royal_range(tol) {
        return Err(Error::RoyalRange);
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn shared_denominator_is_found() {
        let tol = TolerancePolicy::default();
        let s = RationalFn::new(Poly::from_real(&[0.0, 2.0]), Poly::from_real(&[4.0, 2.0])).unwrap();
        let p = RationalFn::new(Poly::from_real(&[0.0, 0.5, 1.0]), Poly::from_real(&[1.0, 0.5])).unwrap();
        let h = GammaInnerFn::from_parts(&s, &p, &tol).unwrap();
        assert_eq!(h.den().degree(), Some(1));
        let z = c(0.3, 0.2);
        assert!((h.eval(z).s - s.eval(z)).norm() < 1e-14);
        assert!((h.eval(z).p - p.eval(z)).norm() < 1e-14);
    }

    #[test]
    fn different_denominators_are_combined() {
        let tol = TolerancePolicy::default();
        let s = RationalFn::polynomial(Poly::from_real(&[0.0, 2.0]));
        let p = RationalFn::new(Poly::from_real(&[0.0, 0.0, 1.0]), Poly::from_real(&[2.0, 1.0])).unwrap();
        let h = GammaInnerFn::from_parts(&s, &p, &tol).unwrap();
        let z = c(-0.4, 0.1);
        assert!((h.eval(z).s - s.eval(z)).norm() < 1e-14);
        assert!((h.eval(z).p - p.eval(z)).norm() < 1e-14);
    }

    #[test]
    fn royal_range_detection() {
        let tol = TolerancePolicy::default();
        let h = GammaInnerFn::new(Poly::from_real(&[0.0, 2.0]), Poly::from_real(&[0.0, 0.0, 1.0]), Poly::one()).unwrap();
        assert!(h.is_royal_range(&tol));
        assert_eq!(h.degree(&tol), 2);
    }

    #[test]
    fn json_schema() {
        let h = GammaInnerFn::new(Poly::from_real(&[0.0, 2.0]), Poly::from_real(&[0.0, 0.0, 1.0]), Poly::one()).unwrap();
        let text = serde_json::to_string(&h).unwrap();
        assert_eq!(
            text,
            r#"{"s":{"num":[[0.0,0.0],[2.0,0.0]],"den":[[1.0,0.0]]},"p":{"num":[[0.0,0.0],[0.0,0.0],[1.0,0.0]],"den":[[1.0,0.0]]},"degree":2}"#
        );
        let back: GammaInnerFn = serde_json::from_str(&text).unwrap();
        assert_eq!(back, h);
    }
}
