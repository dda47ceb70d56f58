mod common;

use common::{c, complex_in_disc};
use proptest::prelude::*;
use royal_gamma::polyrat::{poly_roots, rat_reduce, Poly, RationalFn};
use royal_gamma::{Complex64, TolerancePolicy};

fn separated(roots: &[Complex64], gap: f64) -> bool {
    roots
        .iter()
        .enumerate()
        .all(|(i, a)| roots[i + 1..].iter().all(|b| (a - b).norm() > gap))
}

proptest! {
    #[test]
    fn roots_of_a_product_are_recovered(
        roots in prop::collection::vec(complex_in_disc(2.0), 1..8),
        lead in complex_in_disc(3.0).prop_filter("nonzero", |z| z.norm() > 0.1),
    ) {
        prop_assume!(separated(&roots, 0.05));
        let p = Poly::from_roots(lead, &roots);
        let found = poly_roots(&p, &TolerancePolicy::default()).unwrap();
        prop_assert_eq!(found.iter().map(|r| r.multiplicity).sum::<usize>(), roots.len());
        for r in &roots {
            let best = found.iter().map(|f| (f.value - r).norm()).fold(f64::INFINITY, f64::min);
            prop_assert!(best < 1e-8, "root {} missed by {:e}", r, best);
        }
    }

    #[test]
    fn double_roots_are_counted_twice(
        double in complex_in_disc(1.5),
        single in complex_in_disc(1.5),
    ) {
        prop_assume!((double - single).norm() > 0.1);
        let p = Poly::from_roots(c(1.0, 0.0), &[double, double, single]);
        let found = poly_roots(&p, &TolerancePolicy::default()).unwrap();
        prop_assert_eq!(found.len(), 2);
        let d = found.iter().find(|r| r.multiplicity == 2).expect("double root cluster");
        prop_assert!((d.value - double).norm() < 1e-7);
    }

    #[test]
    fn derivative_matches_finite_difference(
        coeffs in prop::collection::vec(complex_in_disc(2.0), 1..8),
        z in complex_in_disc(1.0),
    ) {
        let p = Poly::new(coeffs);
        let h = 1e-6;
        let fd = (p.eval(z + h) - p.eval(z - h)) / (2.0 * h);
        let exact = p.derivative().eval(z);
        prop_assert!((fd - exact).norm() <= 1e-6 * (1.0 + exact.norm()));
        let (v, dv) = p.eval_with_derivative(z);
        prop_assert!((v - p.eval(z)).norm() < 1e-12 && (dv - exact).norm() < 1e-12);
    }

    #[test]
    fn reduction_is_idempotent_and_preserves_values(
        common_roots in prop::collection::vec(complex_in_disc(0.9), 0..3),
        num_roots in prop::collection::vec(complex_in_disc(0.9), 0..3),
        den_roots in prop::collection::vec(complex_in_disc(0.9), 0..3),
        z in complex_in_disc(0.9),
    ) {
        let mut all = common_roots.clone();
        all.extend(&num_roots);
        all.extend(&den_roots);
        prop_assume!(separated(&all, 0.05));
        let num: Vec<_> = common_roots.iter().chain(&num_roots).copied().collect();
        let den: Vec<_> = common_roots.iter().chain(&den_roots).copied().collect();
        let tol = TolerancePolicy::default();
        let f = RationalFn::new(Poly::from_roots(c(2.0, 1.0), &num), Poly::from_roots(c(1.0, 0.0), &den)).unwrap();
        let once = rat_reduce(&f, &tol);
        let twice = rat_reduce(&once, &tol);
        prop_assert!(once.num.max_coeff_diff(&twice.num) < 1e-10);
        prop_assert!(once.den.max_coeff_diff(&twice.den) < 1e-10);
        prop_assert_eq!(once.den.degree(), Some(den_roots.len()));
        prop_assume!(all.iter().all(|r| (r - z).norm() > 0.05));
        let (a, b) = (f.eval(z), once.eval(z));
        prop_assert!((a - b).norm() <= 1e-8 * (1.0 + a.norm()));
    }

    #[test]
    fn poly_json_round_trips(coeffs in prop::collection::vec(complex_in_disc(5.0), 1..10)) {
        let p = Poly::new(coeffs);
        let text = serde_json::to_string(&p).unwrap();
        let back: Poly = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(p, back);
    }
}
