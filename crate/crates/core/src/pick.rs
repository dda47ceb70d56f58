//! Interpolation data, the Pick matrix, kernel vectors and the base point τ.
//!
//! Inner products are linear in the first slot: `⟨u, v⟩ = Σ u_i conj(v_i)`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::{unimodular, Error, Result, TolerancePolicy};

/// Tolerance for deciding that an input point lies on the unit circle.
pub const BOUNDARY_TOL: f64 = 1e-9;

/// Minimum distance between τ and any boundary node.
pub const TAU_NODE_SEPARATION: f64 = 1e-3;

/// Number of golden-ratio candidates tried by [`choose_tau`].
pub const TAU_CANDIDATES: usize = 1000;

const NODE_SEPARATION: f64 = 1e-12;

pub(crate) fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a * b.conj()).sum()
}

/// One interpolation node as it appears on the wire.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Node {
    pub sigma: Complex64,
    pub eta: Complex64,
    pub rho: Option<f64>,
}

/// Blaschke interpolation data `(σ, η, ρ)`.
///
/// The first `k` nodes lie on the unit circle (and carry a phasar bound
/// `ρ_j > 0` and a unimodular target), the remaining `n - k` lie strictly
/// inside the disc with targets strictly inside the disc. Boundary points are
/// projected exactly onto the circle on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct BlaschkeData {
    sigma: Vec<Complex64>,
    eta: Vec<Complex64>,
    rho: Vec<f64>,
}

impl BlaschkeData {
    /// Build from nodes in any order; boundary nodes are moved to the front,
    /// preserving relative order.
    pub fn from_nodes(nodes: &[Node]) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::InvalidData("empty node list".into()));
        }
        let mut boundary = Vec::new();
        let mut interior = Vec::new();
        for (i, node) in nodes.iter().enumerate() {
            for (name, z) in [("sigma", node.sigma), ("eta", node.eta)] {
                if !(z.re.is_finite() && z.im.is_finite()) {
                    return Err(Error::InvalidData(format!("node {i}: {name} is not finite")));
                }
            }
            let on_circle = (node.sigma.norm() - 1.0).abs() <= BOUNDARY_TOL;
            if on_circle {
                let rho = node.rho.ok_or_else(|| {
                    Error::InvalidData(format!("node {i}: boundary node requires rho"))
                })?;
                if !(rho.is_finite() && rho > 0.0) {
                    return Err(Error::InvalidData(format!("node {i}: rho must be positive")));
                }
                if (node.eta.norm() - 1.0).abs() > BOUNDARY_TOL {
                    return Err(Error::InvalidData(format!(
                        "node {i}: boundary node requires |eta| = 1"
                    )));
                }
                boundary.push(Node {
                    sigma: node.sigma / node.sigma.norm(),
                    eta: node.eta / node.eta.norm(),
                    rho: Some(rho),
                });
            } else {
                if node.sigma.norm() >= 1.0 {
                    return Err(Error::InvalidData(format!(
                        "node {i}: sigma lies outside the closed disc"
                    )));
                }
                if node.eta.norm() >= 1.0 {
                    return Err(Error::InvalidData(format!(
                        "node {i}: interior node requires |eta| < 1"
                    )));
                }
                if node.rho.is_some() {
                    return Err(Error::InvalidData(format!(
                        "node {i}: rho given for an interior node"
                    )));
                }
                interior.push(*node);
            }
        }
        let k = boundary.len();
        let ordered: Vec<Node> = boundary.into_iter().chain(interior).collect();
        for i in 0..ordered.len() {
            for j in (i + 1)..ordered.len() {
                if (ordered[i].sigma - ordered[j].sigma).norm() <= NODE_SEPARATION {
                    return Err(Error::DegenerateData(i, j));
                }
            }
        }
        Ok(Self {
            sigma: ordered.iter().map(|n| n.sigma).collect(),
            eta: ordered.iter().map(|n| n.eta).collect(),
            rho: ordered[..k].iter().filter_map(|n| n.rho).collect(),
        })
    }

    /// Build from separate arrays, boundary nodes first.
    pub fn new(sigma: Vec<Complex64>, eta: Vec<Complex64>, rho: Vec<f64>) -> Result<Self> {
        if sigma.len() != eta.len() || rho.len() > sigma.len() {
            return Err(Error::InvalidData("mismatched array lengths".into()));
        }
        let nodes: Vec<Node> = sigma
            .iter()
            .zip(&eta)
            .enumerate()
            .map(|(j, (&s, &e))| Node {
                sigma: s,
                eta: e,
                rho: rho.get(j).copied(),
            })
            .collect();
        let data = Self::from_nodes(&nodes)?;
        if data.k() != rho.len() {
            return Err(Error::InvalidData(
                "the first k nodes must be exactly the boundary nodes".into(),
            ));
        }
        Ok(data)
    }

    pub fn n(&self) -> usize {
        self.sigma.len()
    }

    pub fn k(&self) -> usize {
        self.rho.len()
    }

    pub fn sigma(&self) -> &[Complex64] {
        &self.sigma
    }

    pub fn eta(&self) -> &[Complex64] {
        &self.eta
    }

    pub fn rho(&self) -> &[f64] {
        &self.rho
    }

    pub fn nodes(&self) -> Vec<Node> {
        (0..self.n())
            .map(|j| Node {
                sigma: self.sigma[j],
                eta: self.eta[j],
                rho: self.rho.get(j).copied(),
            })
            .collect()
    }

    /// Hex SHA-256 of the canonical JSON encoding.
    pub fn digest(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("data serializes");
        Sha256::digest(&bytes)
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    /// Largest componentwise distance to `other` (σ, η and ρ), or infinity
    /// when the shapes differ.
    pub fn max_distance(&self, other: &BlaschkeData) -> f64 {
        if self.n() != other.n() || self.k() != other.k() {
            return f64::INFINITY;
        }
        let s = self.sigma.iter().zip(&other.sigma).map(|(a, b)| (a - b).norm());
        let e = self.eta.iter().zip(&other.eta).map(|(a, b)| (a - b).norm());
        let r = self.rho.iter().zip(&other.rho).map(|(a, b)| (a - b).abs());
        s.chain(e).chain(r).fold(0.0, f64::max)
    }
}

#[derive(Serialize, Deserialize)]
struct DataJson {
    nodes: Vec<Node>,
}

impl Serialize for BlaschkeData {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DataJson {
            nodes: self.nodes(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BlaschkeData {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = DataJson::deserialize(d)?;
        BlaschkeData::from_nodes(&raw.nodes).map_err(serde::de::Error::custom)
    }
}

/// The Hermitian Pick matrix with its spectrum, computed once at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct PickMatrix {
    entries: DMatrix<Complex64>,
    eigenvalues: Vec<f64>,
}

impl PickMatrix {
    /// Wrap an arbitrary Hermitian matrix (used for testing the classifier).
    pub fn from_hermitian(entries: DMatrix<Complex64>) -> Self {
        let eigenvalues = spectrum(&entries);
        Self {
            entries,
            eigenvalues,
        }
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    /// `M⁻¹ rhs` by Cholesky.
    pub fn solve(&self, rhs: &[Complex64], tol: &TolerancePolicy) -> Result<Vec<Complex64>> {
        if self.min_eigenvalue() <= tol.pd_tol * self.scale() {
            return Err(Error::SingularPick);
        }
        let chol = self.entries.clone().cholesky().ok_or(Error::SingularPick)?;
        let x = chol.solve(&DVector::from_column_slice(rhs));
        Ok(x.iter().copied().collect())
    }

    fn scale(&self) -> f64 {
        self.eigenvalues
            .iter()
            .map(|e| e.abs())
            .fold(1.0, f64::max)
    }

    /// Largest `|m_ij - conj(m_ji)|`.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                worst = worst.max((self.entries[(i, j)] - self.entries[(j, i)].conj()).norm());
            }
        }
        worst
    }
}

fn spectrum(m: &DMatrix<Complex64>) -> Vec<f64> {
    let mut ev: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// `m_ij = ρ_i` when `i = j ≤ k`, else `(1 - conj(η_i) η_j) / (1 - conj(σ_i) σ_j)`.
pub fn build_pick_matrix(data: &BlaschkeData, tol: &TolerancePolicy) -> Result<PickMatrix> {
    let n = data.n();
    let (s, e) = (data.sigma(), data.eta());
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = if i == j && i < data.k() {
                Complex64::new(data.rho()[i], 0.0)
            } else {
                let den = Complex64::new(1.0, 0.0) - s[i].conj() * s[j];
                if den.norm() < tol.trim_tol {
                    return Err(Error::DegenerateData(i, j));
                }
                (Complex64::new(1.0, 0.0) - e[i].conj() * e[j]) / den
            };
            if i == j {
                m[(i, i)] = Complex64::new(v.re, 0.0);
            } else {
                m[(i, j)] = v;
                m[(j, i)] = v.conj();
            }
        }
    }
    Ok(PickMatrix::from_hermitian(m))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum Definiteness {
    Definite,
    Semidefinite { rank: usize },
    Indefinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PdCheck {
    pub class: Definiteness,
    pub min_eigenvalue: f64,
}

/// Classify the spectrum against `pd_tol · max(1, max|λ|)`.
pub fn check_positive_definite(m: &PickMatrix, tol: &TolerancePolicy) -> PdCheck {
    let thr = tol.pd_tol * m.scale();
    let ev = m.eigenvalues();
    let class = if ev.iter().any(|&e| e < -thr) {
        Definiteness::Indefinite
    } else if ev.iter().all(|&e| e > thr) {
        Definiteness::Definite
    } else {
        Definiteness::Semidefinite {
            rank: ev.iter().filter(|&&e| e > thr).count(),
        }
    };
    PdCheck {
        class,
        min_eigenvalue: m.min_eigenvalue(),
    }
}

/// `x_λ = [1/(1 - conj(σ_i) λ)]`, `y_λ = [conj(η_i)/(1 - conj(σ_i) λ)]`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelVectors {
    pub x: Vec<Complex64>,
    pub y: Vec<Complex64>,
    pub at: Complex64,
}

impl KernelVectors {
    /// `u_{ζ,τ} = x_τ - ζ y_τ`.
    pub fn u(&self, zeta: Complex64) -> Vec<Complex64> {
        self.x.iter().zip(&self.y).map(|(x, y)| x - zeta * y).collect()
    }
}

pub fn kernel_vectors(
    data: &BlaschkeData,
    lambda: Complex64,
    tol: &TolerancePolicy,
) -> Result<KernelVectors> {
    let mut x = Vec::with_capacity(data.n());
    let mut y = Vec::with_capacity(data.n());
    for (i, (s, e)) in data.sigma().iter().zip(data.eta()).enumerate() {
        let den = Complex64::new(1.0, 0.0) - s.conj() * lambda;
        if den.norm() < tol.trim_tol {
            return Err(Error::PoleAtNode(i));
        }
        let xi = den.inv();
        x.push(xi);
        y.push(e.conj() * xi);
    }
    Ok(KernelVectors { x, y, at: lambda })
}

fn require_base_point(data: &BlaschkeData, tau: Complex64) -> Result<()> {
    if let Some(j) = data.sigma()[..data.k()]
        .iter()
        .position(|s| (s - tau).norm() < BOUNDARY_TOL)
    {
        return Err(Error::PoleAtNode(j));
    }
    Ok(())
}

/// `ρ_{ζ,τ} = ⟨M⁻¹ u, u⟩` with `u = x_τ - ζ y_τ`.
pub fn augmented_rho(
    m: &PickMatrix,
    data: &BlaschkeData,
    zeta: Complex64,
    tau: Complex64,
    tol: &TolerancePolicy,
) -> Result<f64> {
    require_base_point(data, tau)?;
    let u = kernel_vectors(data, tau, tol)?.u(zeta);
    let w = m.solve(&u, tol)?;
    Ok(inner(&w, &u).re)
}

/// The `(n+1)×(n+1)` bordered matrix `[[M, u], [u*, ρ]]`.
pub fn bordered_matrix(m: &PickMatrix, u: &[Complex64], rho: f64) -> DMatrix<Complex64> {
    let n = m.dim();
    let mut b = DMatrix::<Complex64>::zeros(n + 1, n + 1);
    b.view_mut((0, 0), (n, n)).copy_from(m.entries());
    for i in 0..n {
        b[(i, n)] = u[i];
        b[(n, i)] = u[i].conj();
    }
    b[(n, n)] = Complex64::new(rho, 0.0);
    b
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExceptionalSet {
    Finite(Vec<Complex64>),
    AllOfCircle,
}

impl ExceptionalSet {
    pub fn is_finite(&self) -> bool {
        matches!(self, ExceptionalSet::Finite(_))
    }
}

/// Per boundary node `j`, the pair `(⟨x_τ, M⁻¹e_j⟩, ⟨y_τ, M⁻¹e_j⟩)`; ζ is
/// exceptional for node `j` when `α_j = ζ β_j`.
pub(crate) fn exceptional_coefficients(
    m: &PickMatrix,
    data: &BlaschkeData,
    tau: Complex64,
    tol: &TolerancePolicy,
) -> Result<Vec<(Complex64, Complex64)>> {
    require_base_point(data, tau)?;
    let kv = kernel_vectors(data, tau, tol)?;
    let n = data.n();
    (0..data.k())
        .map(|j| {
            let mut e = vec![Complex64::new(0.0, 0.0); n];
            e[j] = Complex64::new(1.0, 0.0);
            let col = m.solve(&e, tol)?;
            Ok((inner(&kv.x, &col), inner(&kv.y, &col)))
        })
        .collect()
}

/// Unimodularity slack when collecting exceptional ζ.
const CIRCLE_TOL: f64 = 1e-6;

pub fn exceptional_set(
    m: &PickMatrix,
    data: &BlaschkeData,
    tau: Complex64,
    tol: &TolerancePolicy,
) -> Result<ExceptionalSet> {
    let coeffs = exceptional_coefficients(m, data, tau, tol)?;
    let kv = kernel_vectors(data, tau, tol)?;
    let xnorm = kv.x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let mut out = Vec::new();
    for (j, (alpha, beta)) in coeffs.into_iter().enumerate() {
        let mut e = vec![Complex64::new(0.0, 0.0); data.n()];
        e[j] = Complex64::new(1.0, 0.0);
        let colnorm = m.solve(&e, tol)?.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let thr = tol.pd_tol * xnorm * colnorm;
        if alpha.norm() <= thr && beta.norm() <= thr {
            return Ok(ExceptionalSet::AllOfCircle);
        }
        if beta.norm() <= thr {
            continue;
        }
        let zeta = alpha / beta;
        if (zeta.norm() - 1.0).abs() <= CIRCLE_TOL {
            out.push(zeta / zeta.norm());
        }
    }
    Ok(ExceptionalSet::Finite(out))
}

/// `τ_m = exp(2πi · frac(m φ))`, φ the golden ratio.
pub fn tau_candidate(m: usize) -> Complex64 {
    let phi = (1.0 + 5.0_f64.sqrt()) / 2.0;
    unimodular(std::f64::consts::TAU * (m as f64 * phi).fract())
}

/// First suitable τ in the golden-ratio sequence, starting at `m = 1`.
pub fn choose_tau(m: &PickMatrix, data: &BlaschkeData, tol: &TolerancePolicy) -> Result<Complex64> {
    choose_tau_from(m, data, 1, tol)
}

/// As [`choose_tau`] but starting the candidate sequence at index `start`.
pub fn choose_tau_from(
    m: &PickMatrix,
    data: &BlaschkeData,
    start: usize,
    tol: &TolerancePolicy,
) -> Result<Complex64> {
    for idx in start..start + TAU_CANDIDATES {
        let tau = tau_candidate(idx);
        let far = data.sigma()[..data.k()]
            .iter()
            .all(|s| (s - tau).norm() > TAU_NODE_SEPARATION);
        if far && exceptional_set(m, data, tau, tol)?.is_finite() {
            return Ok(tau);
        }
    }
    Err(Error::NoSuitableTau(TAU_CANDIDATES))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn tol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    #[test]
    fn single_interior_entry() {
        let d = BlaschkeData::new(vec![c(0.0, 0.0)], vec![c(0.5, 0.0)], vec![]).unwrap();
        let m = build_pick_matrix(&d, &tol()).unwrap();
        assert!((m.entries()[(0, 0)] - c(0.75, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn boundary_diagonal_is_rho() {
        let d = BlaschkeData::new(vec![c(1.0, 0.0)], vec![c(0.0, 1.0)], vec![1.0]).unwrap();
        let m = build_pick_matrix(&d, &tol()).unwrap();
        assert_eq!(m.entries()[(0, 0)], c(1.0, 0.0));
    }

    #[test]
    fn h_nu_data_pick_matrix() {
        let d = BlaschkeData::new(
            vec![c(-1.0, 0.0), c(0.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0)],
            vec![2.0],
        )
        .unwrap();
        let m = build_pick_matrix(&d, &tol()).unwrap();
        let want = [[2.0, 1.0], [1.0, 1.0]];
        for (i, row) in want.iter().enumerate() {
            for (j, &w) in row.iter().enumerate() {
                assert!((m.entries()[(i, j)] - c(w, 0.0)).norm() < 1e-15);
            }
        }
        let pd = check_positive_definite(&m, &tol());
        assert_eq!(pd.class, Definiteness::Definite);
        assert!((pd.min_eigenvalue - (3.0 - 5.0_f64.sqrt()) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn classification() {
        let m = |a: [[f64; 2]; 2]| {
            PickMatrix::from_hermitian(DMatrix::from_fn(2, 2, |i, j| c(a[i][j], 0.0)))
        };
        assert_eq!(
            check_positive_definite(&m([[1.0, 1.0], [1.0, 1.0]]), &tol()).class,
            Definiteness::Semidefinite { rank: 1 }
        );
        assert_eq!(
            check_positive_definite(&m([[0.0, 0.0], [0.0, -1.0]]), &tol()).class,
            Definiteness::Indefinite
        );
    }

    #[test]
    fn kernel_vector_examples() {
        let d = BlaschkeData::new(vec![c(0.0, 0.0)], vec![c(0.5, 0.0)], vec![]).unwrap();
        let kv = kernel_vectors(&d, c(0.3, -0.8), &tol()).unwrap();
        assert_eq!(kv.x, vec![c(1.0, 0.0)]);
        assert_eq!(kv.y, vec![c(0.5, 0.0)]);

        let d = BlaschkeData::new(vec![c(1.0, 0.0)], vec![c(0.0, 1.0)], vec![1.0]).unwrap();
        let kv = kernel_vectors(&d, c(0.0, 1.0), &tol()).unwrap();
        let one_minus_i = c(1.0, -1.0);
        assert!((kv.x[0] - one_minus_i.inv()).norm() < 1e-15);
        assert!((kv.y[0] - c(0.0, -1.0) / one_minus_i).norm() < 1e-15);
        assert_eq!(kernel_vectors(&d, c(1.0, 0.0), &tol()), Err(Error::PoleAtNode(0)));
    }

    #[test]
    fn augmented_rho_scalar_cases() {
        let d = BlaschkeData::new(vec![c(0.0, 0.0)], vec![c(0.0, 0.0)], vec![]).unwrap();
        let m = build_pick_matrix(&d, &tol()).unwrap();
        let r = augmented_rho(&m, &d, c(0.0, 1.0), c(-1.0, 0.0), &tol()).unwrap();
        assert!((r - 1.0).abs() < 1e-15);

        let d = BlaschkeData::new(vec![c(0.0, 0.0)], vec![c(0.5, 0.0)], vec![]).unwrap();
        let m = build_pick_matrix(&d, &tol()).unwrap();
        let r = augmented_rho(&m, &d, c(1.0, 0.0), c(1.0, 0.0), &tol()).unwrap();
        assert!((r - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn exceptional_set_single_boundary_node() {
        let d = BlaschkeData::new(vec![c(1.0, 0.0)], vec![c(0.0, 1.0)], vec![1.0]).unwrap();
        let m = build_pick_matrix(&d, &tol()).unwrap();
        let z = exceptional_set(&m, &d, unimodular(2.0), &tol()).unwrap();
        match z {
            ExceptionalSet::Finite(v) => {
                assert_eq!(v.len(), 1);
                assert!((v[0] - c(0.0, 1.0)).norm() < 1e-12);
            }
            ExceptionalSet::AllOfCircle => panic!("expected finite set"),
        }
    }

    #[test]
    fn exceptional_set_empty_without_boundary_nodes() {
        let d = BlaschkeData::new(vec![c(0.0, 0.0)], vec![c(0.5, 0.0)], vec![]).unwrap();
        let m = build_pick_matrix(&d, &tol()).unwrap();
        assert_eq!(
            exceptional_set(&m, &d, c(1.0, 0.0), &tol()).unwrap(),
            ExceptionalSet::Finite(vec![])
        );
    }

    #[test]
    fn choose_tau_is_deterministic_and_avoids_nodes() {
        let d = BlaschkeData::new(vec![c(0.0, 0.0)], vec![c(0.5, 0.0)], vec![]).unwrap();
        let m = build_pick_matrix(&d, &tol()).unwrap();
        assert_eq!(choose_tau(&m, &d, &tol()).unwrap(), tau_candidate(1));

        let d = BlaschkeData::new(vec![c(1.0, 0.0)], vec![c(0.0, 1.0)], vec![1.0]).unwrap();
        let m = build_pick_matrix(&d, &tol()).unwrap();
        let t1 = choose_tau(&m, &d, &tol()).unwrap();
        let t2 = choose_tau(&m, &d, &tol()).unwrap();
        assert_eq!(t1, t2);
        assert!((t1 - c(1.0, 0.0)).norm() > TAU_NODE_SEPARATION);
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(BlaschkeData::from_nodes(&[]), Err(Error::InvalidData(_))));
        let bad_rho = Node { sigma: c(1.0, 0.0), eta: c(1.0, 0.0), rho: None };
        assert!(BlaschkeData::from_nodes(&[bad_rho]).is_err());
        let dup = Node { sigma: c(0.1, 0.0), eta: c(0.0, 0.0), rho: None };
        assert_eq!(BlaschkeData::from_nodes(&[dup, dup]), Err(Error::DegenerateData(0, 1)));
        let outside = Node { sigma: c(1.5, 0.0), eta: c(0.0, 0.0), rho: None };
        assert!(BlaschkeData::from_nodes(&[outside]).is_err());
    }

    #[test]
    fn boundary_nodes_are_projected_and_reordered() {
        let nodes = [
            Node { sigma: c(0.2, 0.0), eta: c(0.1, 0.0), rho: None },
            Node { sigma: c(0.0, 1.0 + 5e-10), eta: c(-1.0, 0.0), rho: Some(3.0) },
        ];
        let d = BlaschkeData::from_nodes(&nodes).unwrap();
        assert_eq!(d.k(), 1);
        assert_eq!(d.sigma()[0].norm(), 1.0);
        assert_eq!(d.sigma()[1], c(0.2, 0.0));
    }

    #[test]
    fn json_schema() {
        let text = r#"{"nodes":[{"sigma":[1.0,0.0],"eta":[0.0,1.0],"rho":1.0},{"sigma":[0.0,0.0],"eta":[0.5,0.0],"rho":null}]}"#;
        let d: BlaschkeData = serde_json::from_str(text).unwrap();
        assert_eq!((d.n(), d.k()), (2, 1));
        assert_eq!(serde_json::to_string(&d).unwrap(), text);
    }
}
