use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::poly::Poly;
use super::roots::{poly_roots, Root};
use crate::{Error, Result, TolerancePolicy};

/// `num / den` with a nonzero denominator.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RationalFn {
    pub num: Poly,
    pub den: Poly,
}

impl RationalFn {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::PreconditionViolated("zero denominator".into()));
        }
        Ok(Self { num, den })
    }

    pub fn polynomial(num: Poly) -> Self {
        Self {
            num,
            den: Poly::one(),
        }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.num.eval(z) / self.den.eval(z)
    }

    /// `f(z)` and `f'(z)`.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let (n, dn) = self.num.eval_with_derivative(z);
        let (d, dd) = self.den.eval_with_derivative(z);
        (n / d, (dn * d - n * dd) / (d * d))
    }

    /// Logarithmic derivative `f'(z)/f(z)` computed as `N'/N - D'/D`.
    pub fn log_derivative(&self, z: Complex64) -> Complex64 {
        let (n, dn) = self.num.eval_with_derivative(z);
        let (d, dd) = self.den.eval_with_derivative(z);
        dn / n - dd / d
    }

    /// `max(deg num, deg den)` of this representation (not reduced).
    pub fn degree(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }
}

impl<'de> Deserialize<'de> for RationalFn {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            num: Poly,
            den: Poly,
        }
        let raw = Raw::deserialize(d)?;
        RationalFn::new(raw.num, raw.den).map_err(serde::de::Error::custom)
    }
}

/// Cancel numerator/denominator root pairs closer than `root_cluster_tol`
/// and make the denominator monic.
pub fn rat_reduce(f: &RationalFn, tol: &TolerancePolicy) -> RationalFn {
    let (num, mut dens) = cancel_joint(&f.den, &[&f.num], tol);
    let den = dens.pop().unwrap_or_else(Poly::one);
    normalize(num.into_iter().next().unwrap_or_default(), den)
}

fn normalize(num: Poly, den: Poly) -> RationalFn {
    let lead = den.leading().unwrap_or(Complex64::new(1.0, 0.0));
    if num.is_zero() {
        return RationalFn {
            num,
            den: Poly::one(),
        };
    }
    RationalFn {
        num: num.scale(lead.inv()),
        den: den.monic(),
    }
}

/// Roots (with multiplicity) shared by `den` and every one of `nums`,
/// within `root_cluster_tol`. A zero numerator shares every root.
pub(crate) fn common_roots(den: &Poly, nums: &[&Poly], tol: &TolerancePolicy) -> Vec<Complex64> {
    if den.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let Ok(den_roots) = poly_roots(den, tol) else {
        return Vec::new();
    };
    let mut pools: Vec<Option<Vec<Root>>> = Vec::new();
    for n in nums {
        if n.is_zero() {
            pools.push(None);
        } else if n.degree() == Some(0) {
            return Vec::new();
        } else {
            match poly_roots(n, tol) {
                Ok(r) => pools.push(Some(r)),
                Err(_) => return Vec::new(),
            }
        }
    }
    let mut shared = Vec::new();
    for dr in den_roots {
        let mut avail = dr.multiplicity;
        let mut matches: Vec<Option<usize>> = Vec::new();
        for pool in &pools {
            match pool {
                None => matches.push(None),
                Some(roots) => {
                    let best = roots
                        .iter()
                        .enumerate()
                        .filter(|(_, r)| r.multiplicity > 0)
                        .map(|(i, r)| (i, (r.value - dr.value).norm()))
                        .min_by(|a, b| a.1.total_cmp(&b.1));
                    match best {
                        Some((i, d)) if d <= tol.root_cluster_tol => {
                            avail = avail.min(roots[i].multiplicity);
                            matches.push(Some(i));
                        }
                        _ => {
                            avail = 0;
                            matches.push(None);
                        }
                    }
                }
            }
        }
        if avail == 0 {
            continue;
        }
        for (pool, m) in pools.iter_mut().zip(&matches) {
            if let (Some(roots), Some(i)) = (pool, m) {
                roots[*i].multiplicity -= avail;
            }
        }
        shared.extend(std::iter::repeat_n(dr.value, avail));
    }
    shared
}

/// Divide `den` and all `nums` by their shared linear factors.
/// Returns `(reduced nums, vec![reduced den])`.
pub(crate) fn cancel_joint(
    den: &Poly,
    nums: &[&Poly],
    tol: &TolerancePolicy,
) -> (Vec<Poly>, Vec<Poly>) {
    let shared = common_roots(den, nums, tol);
    let mut out_nums: Vec<Poly> = nums.iter().map(|p| (*p).clone()).collect();
    let mut out_den = den.clone();
    for r in shared {
        out_den = out_den.deflate(r);
        for n in out_nums.iter_mut() {
            if !n.is_zero() {
                *n = n.deflate(r);
            }
        }
    }
    (out_nums, vec![out_den])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn cancels_shared_linear_factor() {
        let f = RationalFn::new(Poly::from_real(&[-1.0, 0.0, 1.0]), Poly::from_real(&[-1.0, 1.0])).unwrap();
        let g = rat_reduce(&f, &TolerancePolicy::default());
        assert_eq!(g.den.degree(), Some(0));
        assert!(g.num.max_coeff_diff(&Poly::from_real(&[1.0, 1.0])) < 1e-12);
    }

    #[test]
    fn scaling_makes_denominator_monic() {
        let f = RationalFn::new(Poly::from_real(&[0.0, 2.0]), Poly::from_real(&[2.0])).unwrap();
        let g = rat_reduce(&f, &TolerancePolicy::default());
        assert_eq!(g.den, Poly::one());
        assert!(g.num.max_coeff_diff(&Poly::identity()) < 1e-15);
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(RationalFn::new(Poly::one(), Poly::zero()).is_err());
    }

    #[test]
    fn distinct_roots_are_kept() {
        let f = RationalFn::new(
            Poly::from_roots(c(1.0, 0.0), &[c(0.5, 0.0)]),
            Poly::from_roots(c(1.0, 0.0), &[c(2.0, 0.0)]),
        )
        .unwrap();
        let g = rat_reduce(&f, &TolerancePolicy::default());
        assert_eq!(g.num.degree(), Some(1));
        assert_eq!(g.den.degree(), Some(1));
    }

    #[test]
    fn joint_cancellation_requires_all_numerators() {
        let tol = TolerancePolicy::default();
        let den = Poly::from_roots(c(1.0, 0.0), &[c(0.5, 0.0), c(3.0, 0.0)]);
        let a = Poly::from_roots(c(1.0, 0.0), &[c(0.5, 0.0)]);
        let b = Poly::from_roots(c(2.0, 0.0), &[c(0.5, 0.0), c(3.0, 0.0)]);
        let shared = common_roots(&den, &[&a, &b], &tol);
        assert_eq!(shared.len(), 1);
        assert!((shared[0] - c(0.5, 0.0)).norm() < 1e-12);
    }
}
