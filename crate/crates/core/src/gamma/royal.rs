use std::cmp::Ordering;
use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::construct::GammaInnerFn;
use crate::blaschke::phasar_derivative;
use crate::pick::BlaschkeData;
use crate::polyrat::{cluster, poly_roots, rat_reduce, Poly};
use crate::{Error, Result, TolerancePolicy};

/// A zero of the royal polynomial in the closed disc.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RoyalNode {
    pub sigma: Complex64,
    pub multiplicity: usize,
    pub boundary: bool,
    /// `η = -s(σ)/2`.
    pub eta: Complex64,
    /// `|p(σ) - η²|`.
    pub value_residual: f64,
    /// `½ Ap(σ)` at boundary nodes.
    pub rho: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoyalData {
    /// Boundary nodes by argument in `[0, 2π)`, then interior nodes by modulus and argument.
    pub nodes: Vec<RoyalNode>,
    /// `(n, k)`: total multiplicity in the closed disc and on the circle.
    pub node_type: (usize, usize),
    pub degree: usize,
    /// Some boundary cluster had odd size, so its order is not even.
    pub odd_boundary_order: bool,
}

impl RoyalData {
    pub fn degree_matches(&self) -> bool {
        self.node_type.0 == self.degree
    }
}

fn arg0(z: Complex64) -> f64 {
    let a = z.arg();
    if a < 0.0 {
        a + TAU
    } else {
        a
    }
}

fn canonical_order(a: &RoyalNode, b: &RoyalNode) -> Ordering {
    match (a.boundary, b.boundary) {
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        (true, true) => arg0(a.sigma).total_cmp(&arg0(b.sigma)),
        (false, false) => a
            .sigma
            .norm()
            .total_cmp(&b.sigma.norm())
            .then(arg0(a.sigma).total_cmp(&arg0(b.sigma))),
    }
}

/// Locate the royal nodes of `h` with multiplicities and royal values.
///
/// A double zero on the circle typically splits into two simple zeros
/// about `sqrt(ε)` apart, one on each side. Zeros within
/// `sqrt(root_cluster_tol)` of the circle are therefore paired with that
/// wider radius first; the pair's mean is accurate to `O(ε)` and is then
/// snapped onto the circle when it lies within `10 · root_cluster_tol`.
pub fn royal_nodes(h: &GammaInnerFn, tol: &TolerancePolicy) -> Result<RoyalData> {
    if h.is_royal_range(tol) {
        return Err(Error::RoyalRange);
    }
    let r = h.royal_polynomial();
    let snap = 10.0 * tol.root_cluster_tol;
    let wide = tol.root_cluster_tol.sqrt();
    let mut near = Vec::new();
    let mut inner = Vec::new();
    if r.degree().unwrap_or(0) > 0 {
        for root in poly_roots(&r, tol)? {
            let dist = root.value.norm() - 1.0;
            if dist.abs() <= wide {
                near.extend(std::iter::repeat_n(root.value, root.multiplicity));
            } else if dist < 0.0 {
                inner.push((root.value, root.multiplicity));
            }
        }
    }

    let dr = r.derivative();
    let mut odd = false;
    let mut located: Vec<(Complex64, usize, bool)> = Vec::new();
    for (mean, size) in cluster(&near, wide) {
        if (mean.norm() - 1.0).abs() <= snap {
            odd |= size % 2 == 1;
            let z = if size == 2 { polish_double(&dr, mean, wide) } else { mean };
            located.push((z / z.norm(), size.div_ceil(2), true));
        } else if mean.norm() < 1.0 {
            located.push((mean, size, false));
        }
    }
    located.extend(inner.into_iter().map(|(z, m)| (z, m, false)));

    let s = h.s();
    let p = h.p();
    let p_reduced = rat_reduce(&p, tol);
    let mut nodes = located
        .into_iter()
        .map(|(sigma, multiplicity, boundary)| {
            let eta = -s.eval(sigma) / 2.0;
            let value_residual = (p.eval(sigma) - eta * eta).norm();
            let rho = if boundary {
                Some(0.5 * phasar_derivative(&p_reduced, sigma, tol)?.value)
            } else {
                None
            };
            Ok(RoyalNode {
                sigma,
                multiplicity,
                boundary,
                eta,
                value_residual,
                rho,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    nodes.sort_by(canonical_order);

    let n = nodes.iter().map(|x| x.multiplicity).sum();
    let k = nodes.iter().filter(|x| x.boundary).map(|x| x.multiplicity).sum();
    Ok(RoyalData {
        nodes,
        node_type: (n, k),
        degree: h.degree(tol),
        odd_boundary_order: odd,
    })
}

/// Newton iteration on `R'`, where a double root of `R` is simple. The cluster
/// mean of a split double root is only accurate to about the square root of
/// machine precision.
fn polish_double(dr: &Poly, start: Complex64, max_move: f64) -> Complex64 {
    let mut z = start;
    for _ in 0..8 {
        let (v, d) = dr.eval_with_derivative(z);
        let step = v / d;
        if !step.is_finite() || (z - step - start).norm() > max_move {
            break;
        }
        z -= step;
        if step.norm() <= 4.0 * f64::EPSILON * z.norm().max(1.0) {
            break;
        }
    }
    z
}

/// The Blaschke interpolation data realised by `h` at its royal nodes.
pub fn extract_royal_data(h: &GammaInnerFn, tol: &TolerancePolicy) -> Result<BlaschkeData> {
    let royal = royal_nodes(h, tol)?;
    if let Some(node) = royal.nodes.iter().find(|x| x.multiplicity > 1) {
        return Err(Error::MultiplicityAboveOne(node.sigma, node.multiplicity));
    }
    let mut sigma = Vec::new();
    let mut eta = Vec::new();
    let mut rho = Vec::new();
    for node in &royal.nodes {
        sigma.push(node.sigma);
        if let Some(r) = node.rho {
            eta.push(node.eta / node.eta.norm());
            rho.push(r);
        } else {
            eta.push(node.eta);
        }
    }
    BlaschkeData::new(sigma, eta, rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::generate_h_nu;
    use crate::polyrat::Poly;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn h_nu_zero_half() {
        let tol = TolerancePolicy::default();
        let h = generate_h_nu(0, 0.5).unwrap();
        let r = royal_nodes(&h, &tol).unwrap();
        assert_eq!(r.node_type, (2, 1));
        assert!(r.degree_matches());
        let b = &r.nodes[0];
        assert!(b.boundary && (b.sigma + 1.0).norm() < 1e-12);
        assert!((b.eta - 1.0).norm() < 1e-12);
        assert!((b.rho.unwrap() - 2.0).abs() < 1e-10);
        let i = &r.nodes[1];
        assert!(!i.boundary && i.sigma.norm() < 1e-12 && i.eta.norm() < 1e-12);

        let d = extract_royal_data(&h, &tol).unwrap();
        assert!((d.sigma()[0] - c(-1.0, 0.0)).norm() < 1e-12);
        assert!((d.rho()[0] - 2.0).abs() < 1e-10);
    }

    #[test]
    fn h_nu_one_has_three_boundary_nodes() {
        let tol = TolerancePolicy::default();
        let h = generate_h_nu(1, 0.5).unwrap();
        let r = royal_nodes(&h, &tol).unwrap();
        assert_eq!(r.node_type, (4, 3));
        assert!(!r.odd_boundary_order);
        let want = [1.0, 3.0, 5.0].map(|k| crate::unimodular(k * std::f64::consts::PI / 3.0));
        for (node, w) in r.nodes.iter().zip(want) {
            assert!((node.sigma - w).norm() < 1e-10);
        }
    }

    #[test]
    fn royal_range_is_flagged() {
        let h = GammaInnerFn::new(Poly::from_real(&[0.0, 2.0]), Poly::from_real(&[0.0, 0.0, 1.0]), Poly::one()).unwrap();
        assert_eq!(royal_nodes(&h, &TolerancePolicy::default()), Err(Error::RoyalRange));
    }

    #[test]
    fn split_double_root_on_circle_is_merged() {
        // The superficial map s = -1 - p, p = λ has R = (λ - 1)². Perturbing
        // the slope of s by ε splits that double zero by about 4·sqrt(ε).
        let eps = 1e-9;
        let h = GammaInnerFn::new(
            Poly::new(vec![c(-1.0, 0.0), c(-1.0 - eps, 0.0)]),
            Poly::identity(),
            Poly::one(),
        )
        .unwrap();
        let r = royal_nodes(&h, &TolerancePolicy::default()).unwrap();
        assert_eq!(r.nodes.len(), 1);
        assert!(r.nodes[0].boundary);
        assert_eq!(r.nodes[0].multiplicity, 1);
    }
}
