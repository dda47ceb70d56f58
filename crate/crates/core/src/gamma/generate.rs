use super::construct::GammaInnerFn;
use crate::polyrat::Poly;
use crate::{Error, Result};

/// The test family
/// `s = 2(1-r)λ^{ν+1}/(1 + rλ^{2ν+1})`, `p = λ(λ^{2ν+1} + r)/(1 + rλ^{2ν+1})`
/// of degree `2ν + 2`, with `2ν + 1` royal nodes on the circle and one at 0.
pub fn generate_h_nu(nu: usize, r: f64) -> Result<GammaInnerFn> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidData(format!("r = {r} must lie in (0, 1)")));
    }
    let odd = 2 * nu + 1;
    let mut s = vec![0.0; nu + 2];
    s[nu + 1] = 2.0 * (1.0 - r);
    let mut p = vec![0.0; odd + 2];
    p[1] = r;
    p[odd + 1] = 1.0;
    let mut d = vec![0.0; odd + 1];
    d[0] = 1.0;
    d[odd] = r;
    GammaInnerFn::new(Poly::from_real(&s), Poly::from_real(&p), Poly::from_real(&d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::{classify_point, GammaClass};
    use crate::{circle_grid, Complex64, TolerancePolicy};

    #[test]
    fn zero_half_closed_form() {
        let h = generate_h_nu(0, 0.5).unwrap();
        let z = Complex64::new(0.3, -0.6);
        let v = h.eval(z);
        assert!((v.s - z / (1.0 + z / 2.0)).norm() < 1e-15);
        assert!((v.p - z * (z + 0.5) / (1.0 + z / 2.0)).norm() < 1e-15);
        assert_eq!(h.degree(&TolerancePolicy::default()), 2);
    }

    #[test]
    fn boundary_values_are_distinguished() {
        let tol = TolerancePolicy::default();
        for nu in 0..3 {
            let h = generate_h_nu(nu, 0.3).unwrap();
            assert_eq!(h.degree(&tol), 2 * nu + 2);
            for z in circle_grid(64) {
                assert_eq!(classify_point(h.eval(z), &tol), GammaClass::DistinguishedBGamma);
            }
        }
    }

    #[test]
    fn rejects_bad_r() {
        assert!(generate_h_nu(0, 1.0).is_err());
        assert!(generate_h_nu(0, 0.0).is_err());
    }
}
