#![allow(dead_code)]

use std::f64::consts::TAU;

use proptest::prelude::*;
use royal_gamma::gamma::{extract_royal_data, generate_h_nu, GammaInnerFn};
use royal_gamma::pick::BlaschkeData;
use royal_gamma::polyrat::Poly;
use royal_gamma::{unimodular, Complex64, TolerancePolicy};

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn complex_in_disc(radius: f64) -> impl Strategy<Value = Complex64> {
    (0.0..radius, 0.0..TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

pub fn unit() -> impl Strategy<Value = Complex64> {
    (0.0..TAU).prop_map(unimodular)
}

/// Numerator and denominator of `c ∏ (λ - α)/(1 - conj(α) λ)`.
pub fn blaschke_polys(zeros: &[Complex64], lead: Complex64) -> (Poly, Poly) {
    let num = Poly::from_roots(lead, zeros);
    let den = zeros
        .iter()
        .fold(Poly::one(), |acc, a| &acc * &Poly::linear(c(1.0, 0.0), -a.conj()));
    (num, den)
}

/// `(β + conj(β) p, p)` for the Blaschke product with the given zeros.
pub fn superficial(zeros: &[Complex64], lead: Complex64, beta: Complex64) -> GammaInnerFn {
    let (pn, pd) = blaschke_polys(zeros, lead);
    let s = &pd.scale(beta) + &pn.scale(beta.conj());
    GammaInnerFn::new(s, pn, pd).unwrap()
}

/// Royal data extracted from a random superficial function, or `None` when
/// a royal node is not simple or two nodes lie within 5e-2 of each other.
/// Nearly coincident nodes make the Pick matrix too ill-conditioned for the
/// fixed verification tolerances.
pub fn superficial_data() -> impl Strategy<Value = Option<BlaschkeData>> {
    (
        prop::collection::vec(complex_in_disc(0.85), 1..=4),
        unit(),
        (0.1..0.95f64, 0.0..TAU),
    )
        .prop_map(|(zeros, lead, (br, bt))| {
            let h = superficial(&zeros, lead, Complex64::from_polar(br, bt));
            extract_royal_data(&h, &TolerancePolicy::default())
                .ok()
                .filter(|d| separated(d.sigma(), 5e-2))
        })
}

pub fn h_nu_data() -> impl Strategy<Value = BlaschkeData> {
    (0usize..2, 0.1..0.9f64).prop_map(|(nu, r)| {
        extract_royal_data(&generate_h_nu(nu, r).unwrap(), &TolerancePolicy::default()).unwrap()
    })
}

/// Forward-generated solvable data from either source.
pub fn solvable_data() -> impl Strategy<Value = BlaschkeData> {
    prop_oneof![
        h_nu_data(),
        superficial_data().prop_filter_map("royal node not simple", |d| d),
    ]
}

pub fn separated(sigma: &[Complex64], gap: f64) -> bool {
    sigma
        .iter()
        .enumerate()
        .all(|(i, a)| sigma[i + 1..].iter().all(|b| (a - b).norm() > gap))
}

/// Arbitrary valid data: distinct nodes, interior targets in the disc,
/// boundary targets on the circle, positive ρ. Not necessarily solvable.
pub fn any_data() -> impl Strategy<Value = BlaschkeData> {
    (0usize..=3, 0usize..=3)
        .prop_filter("need a node", |(k, m)| k + m > 0 && k + m <= 5)
        .prop_flat_map(|(k, m)| {
            (
                prop::collection::vec((unit(), unit(), 0.1..5.0f64), k),
                prop::collection::vec((complex_in_disc(0.95), complex_in_disc(0.99)), m),
            )
        })
        .prop_filter_map("nodes too close", |(boundary, interior)| {
            let mut sigma: Vec<Complex64> = boundary.iter().map(|b| b.0).collect();
            sigma.extend(interior.iter().map(|i| i.0));
            if !separated(&sigma, 1e-2) {
                return None;
            }
            let mut eta: Vec<Complex64> = boundary.iter().map(|b| b.1).collect();
            eta.extend(interior.iter().map(|i| i.1));
            let rho = boundary.iter().map(|b| b.2).collect();
            BlaschkeData::new(sigma, eta, rho).ok()
        })
}

/// Central difference of `θ ↦ arg f(σ e^{iθ})` with step 1e-6.
pub fn fd_phasar(f: impl Fn(Complex64) -> Complex64, sigma: Complex64) -> f64 {
    let h = 1e-6;
    (f(sigma * unimodular(h)) / f(sigma * unimodular(-h))).arg() / (2.0 * h)
}

/// Richardson extrapolation of [`fd_phasar`] with steps 1e-5 and 5e-6, for
/// functions with a zero close to `σ`.
pub fn fd_phasar_extrapolated(f: impl Fn(Complex64) -> Complex64, sigma: Complex64) -> f64 {
    let quotient = |h: f64| (f(sigma * unimodular(h)) / f(sigma * unimodular(-h))).arg() / (2.0 * h);
    (4.0 * quotient(5e-6) - quotient(1e-5)) / 3.0
}
