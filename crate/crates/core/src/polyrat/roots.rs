use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::poly::{Poly, MAX_DEGREE};
use crate::{Error, Result, TolerancePolicy};

/// A root cluster: representative value, cluster size, and `|p(value)|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Root {
    pub value: Complex64,
    pub multiplicity: usize,
    pub residual: f64,
}

/// All roots of `p`, counted with multiplicity.
///
/// Eigenvalues of the balanced companion matrix, one Newton step per root,
/// then single-linkage clustering at `root_cluster_tol`. Multiplicity is
/// the cluster size.
///
/// An m-fold root computed in floating point splits into m points about
/// `ε^{1/m}` apart, which can exceed `root_cluster_tol`. Clusters within
/// `sqrt(root_cluster_tol)` of each other are therefore merged as well, but
/// only when the polished mean passes `is_multiple_root`.
///
/// Output is sorted by real part, then imaginary part.
pub fn poly_roots(p: &Poly, tol: &TolerancePolicy) -> Result<Vec<Root>> {
    let deg = p.degree().ok_or(Error::ZeroPolynomial)?;
    if deg > MAX_DEGREE {
        return Err(Error::DegreeTooLarge(deg));
    }
    let coeffs = p.coeffs();
    let zero_roots = coeffs.iter().take_while(|c| c.norm() == 0.0).count();
    let mut raw = vec![Complex64::new(0.0, 0.0); zero_roots];
    raw.extend(nonzero_roots(&coeffs[zero_roots..]));

    let polished: Vec<Complex64> = raw
        .iter()
        .enumerate()
        .map(|(i, &r)| {
            let gap = raw
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, q)| (q - r).norm())
                .fold(f64::INFINITY, f64::min);
            newton_step(p, r, (0.5 * gap).min(1e-4 * r.norm().max(1.0)))
        })
        .collect();
    let groups = cluster(&polished, tol.root_cluster_tol);
    let mut out = merge_multiple(p, groups, tol.root_cluster_tol.sqrt())
        .into_iter()
        .map(|(value, multiplicity)| Root {
            value,
            multiplicity,
            residual: p.eval(value).norm(),
        })
        .collect::<Vec<_>>();
    out.sort_by(|a, b| {
        a.value
            .re
            .total_cmp(&b.value.re)
            .then(a.value.im.total_cmp(&b.value.im))
    });
    Ok(out)
}

fn nonzero_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    match n {
        0 => Vec::new(),
        1 => vec![-coeffs[0] / coeffs[1]],
        _ => companion_eigenvalues(coeffs).unwrap_or_else(|| aberth(coeffs)),
    }
}

fn companion_eigenvalues(coeffs: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..n {
        m[(i, n - 1)] = -coeffs[i] / lead;
    }
    balance(&mut m);
    let schur = Schur::try_new(m, 1e-15, 10_000)?;
    let (_, t) = schur.unpack();
    let eig: Vec<Complex64> = (0..n).map(|i| t[(i, i)]).collect();
    eig.iter().all(|z| z.re.is_finite() && z.im.is_finite()).then_some(eig)
}

/// Parlett–Reinsch balancing with power-of-two scalings.
fn balance(m: &mut DMatrix<Complex64>) {
    let n = m.nrows();
    let radix = 2.0_f64;
    let mut converged = false;
    let mut sweeps = 0;
    while !converged && sweeps < 100 {
        converged = true;
        sweeps += 1;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += m[(j, i)].norm();
                    r += m[(i, j)].norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut cc = c;
            let mut rr = r;
            while cc < rr / radix {
                cc *= radix;
                rr /= radix;
                f *= radix;
            }
            while cc >= rr * radix {
                cc /= radix;
                rr *= radix;
                f /= radix;
            }
            if (cc + rr) < 0.95 * s {
                converged = false;
                for j in 0..n {
                    m[(i, j)] /= f;
                    m[(j, i)] *= f;
                }
            }
        }
    }
}

/// Simultaneous Aberth–Ehrlich iteration; used only if the QR iteration
/// fails to converge.
fn aberth(coeffs: &[Complex64]) -> Vec<Complex64> {
    let p = Poly::new(coeffs.to_vec());
    let n = coeffs.len() - 1;
    let lead = coeffs[n].norm();
    let radius = 1.0
        + coeffs[..n]
            .iter()
            .map(|c| c.norm() / lead)
            .fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            Complex64::from_polar(
                0.5 * radius,
                std::f64::consts::TAU * (k as f64 + 0.25) / n as f64,
            )
        })
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0_f64;
        for i in 0..n {
            let (v, dv) = p.eval_with_derivative(z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / dv;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.re.is_finite() && step.im.is_finite() {
                z[i] -= step;
                moved = moved.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// One Newton correction, kept only if it is shorter than `max_step` and
/// reduces `|p|`. The step bound stops a root of a near-multiple cluster,
/// where `p'` is tiny, from jumping onto a different root.
fn newton_step(p: &Poly, r: Complex64, max_step: f64) -> Complex64 {
    let (v, dv) = p.eval_with_derivative(r);
    if dv.norm() == 0.0 {
        return r;
    }
    let step = v / dv;
    if !step.is_finite() || step.norm() > max_step {
        return r;
    }
    let cand = r - step;
    if cand.re.is_finite() && cand.im.is_finite() && p.eval(cand).norm() < v.norm() {
        cand
    } else {
        r
    }
}

/// Coefficients of `p(z + x)` in powers of `x`, and the same for the
/// polynomial with coefficients `|a_k|` at `|z|`. The second gives the
/// rounding scale of the first.
fn taylor_at(p: &Poly, z: Complex64) -> (Vec<Complex64>, Vec<f64>) {
    let mut t: Vec<Complex64> = p.coeffs().to_vec();
    let mut b: Vec<f64> = t.iter().map(|a| a.norm()).collect();
    let n = t.len();
    let za = z.norm();
    for j in 0..n {
        for k in (j + 1..n).rev() {
            let (hi, bhi) = (t[k], b[k]);
            t[k - 1] += z * hi;
            b[k - 1] += za * bhi;
        }
    }
    (t, b)
}

/// Whether `z` is an `m`-fold root of `p` up to rounding: after one Newton
/// step on `p^{(m-1)}`, each Taylor coefficient of order below `m` is within
/// a modest multiple of machine precision of its rounding scale.
fn is_multiple_root(p: &Poly, z: Complex64, m: usize) -> Option<Complex64> {
    const SLACK: f64 = 1e3;
    let deg = p.coeffs().len().checked_sub(1)?;
    if m < 2 || m > deg {
        return None;
    }
    let (t, _) = taylor_at(p, z);
    if t[m].norm() == 0.0 {
        return None;
    }
    let z = z - t[m - 1] / (t[m] * m as f64);
    let (t, b) = taylor_at(p, z);
    (0..m)
        .all(|j| t[j].norm() <= SLACK * f64::EPSILON * b[j])
        .then_some(z)
}

fn merge_multiple(p: &Poly, mut groups: Vec<(Complex64, usize)>, radius: f64) -> Vec<(Complex64, usize)> {
    loop {
        let mut merged = None;
        'search: for i in 0..groups.len() {
            for j in i + 1..groups.len() {
                let ((a, ka), (b, kb)) = (groups[i], groups[j]);
                if (a - b).norm() > radius {
                    continue;
                }
                let m = ka + kb;
                let mean = (a * ka as f64 + b * kb as f64) / m as f64;
                if let Some(z) = is_multiple_root(p, mean, m) {
                    merged = Some((i, j, z, m));
                    break 'search;
                }
            }
        }
        match merged {
            Some((i, j, z, m)) => {
                groups[i] = (z, m);
                groups.remove(j);
            }
            None => return groups,
        }
    }
}

/// Single-linkage clustering; returns (mean, size) per cluster.
pub(crate) fn cluster(points: &[Complex64], tol: f64) -> Vec<(Complex64, usize)> {
    let n = points.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if (points[i] - points[j]).norm() <= tol {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[b] = a;
                }
            }
        }
    }
    let mut groups: Vec<(usize, Complex64, usize)> = Vec::new();
    for (i, &z) in points.iter().enumerate() {
        let r = find(&mut parent, i);
        match groups.iter_mut().find(|g| g.0 == r) {
            Some(g) => {
                g.1 += z;
                g.2 += 1;
            }
            None => groups.push((r, z, 1)),
        }
    }
    groups
        .into_iter()
        .map(|(_, sum, k)| (sum / k as f64, k))
        .collect()
}
