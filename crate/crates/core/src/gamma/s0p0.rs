//! The value `h(τ) = (s₀, p₀)` of a Γ-inner solution at the base point.
//!
//! Writing `p₀ = u` and `s₀ = 2v`, the requirement that
//! `s₀a - 2b + 2p₀c - s₀d` vanish identically becomes the linear system
//! `Q_c u + Q_g v + Q_b = 0` in polynomial coefficients, where
//! `Q_c = π⟨y_λ, M⁻¹x_τ⟩`, `Q_g = π(⟨x_λ, M⁻¹x_τ⟩ + ⟨y_λ, M⁻¹y_τ⟩)`,
//! `Q_b = π⟨x_λ, M⁻¹y_τ⟩` and `π = ∏(1 - conj(σ_j) λ)`.
//! Admissible solutions have `|u| = 1` and, with `ω² = u`, a real `t = v conj(ω)`
//! in `(-1, 1)`; then `(s₀, p₀) = (2tω, ω²)`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::blaschke::{kernel_polys, Parametrization};
use crate::pick::{build_pick_matrix, BlaschkeData};
use crate::polyrat::Poly;
use crate::{Error, Result, TolerancePolicy};

/// An admissible value `(s₀, p₀) = (2tω, ω²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct S0P0 {
    pub s0: Complex64,
    pub p0: Complex64,
    pub t: f64,
    pub omega: Complex64,
}

/// The one-parameter law `c ω² + g tω + b = 0` left after projecting a
/// rank-one system onto its range.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilyLaw {
    pub c: Complex64,
    pub g: Complex64,
    pub b: Complex64,
    /// The whole system vanished: every point of the distinguished boundary works.
    pub degenerate: bool,
}

impl FamilyLaw {
    /// The member at `ω`, or `None` when `t` is not real or `|t| ≥ 1`.
    pub fn at(&self, omega: Complex64, tol: &TolerancePolicy) -> Option<S0P0> {
        let omega = omega / omega.norm();
        let u = omega * omega;
        let t = if self.degenerate {
            Complex64::new(0.0, 0.0)
        } else {
            let scale = self.c.norm().max(self.g.norm()).max(self.b.norm());
            let rest = self.c * u + self.b;
            if self.g.norm() <= tol.pd_tol * scale {
                if rest.norm() > tol.residual_tol * scale {
                    return None;
                }
                Complex64::new(0.0, 0.0)
            } else {
                -rest / self.g * omega.conj()
            }
        };
        if t.im.abs() > tol.residual_tol || t.norm() >= 1.0 {
            return None;
        }
        Some(S0P0 {
            s0: 2.0 * t.re * omega,
            p0: u,
            t: t.re,
            omega,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum S0P0Kind {
    Unique(S0P0),
    Family(FamilyLaw),
    NoSolution,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct S0P0Solution {
    pub kind: S0P0Kind,
    /// Consistency residual of the stacked system; for a rejected rank-two
    /// solution, the worst violation of the admissibility conditions.
    pub residual: f64,
    pub rank: usize,
    /// Singular values of `[Q_c | Q_g]`, descending.
    pub singular_values: Vec<f64>,
    /// Set when a singular value lies within two decades of the rank threshold.
    pub near_threshold: bool,
}

/// Coefficient polynomials `(Q_c, Q_g, Q_b)` for a parametrization built from `data`.
pub(crate) fn coefficient_polys(
    param: &Parametrization,
    data: &BlaschkeData,
    tol: &TolerancePolicy,
) -> Result<[Poly; 3]> {
    if let Some(h) = &param.data_hash {
        if *h != data.digest() {
            return Err(Error::PreconditionViolated(
                "parametrization was built from different data".into(),
            ));
        }
    }
    let m = build_pick_matrix(data, tol)?;
    let k = kernel_polys(&m, data, param.tau, tol)?;
    Ok([k.yx, &k.xx + &k.yy, k.xy])
}

/// Largest coefficient of `s₀a - 2b + 2p₀c - s₀d`, relative to the size of
/// `(a, b, c, d)`.
pub fn identity_residual(param: &Parametrization, s0: Complex64, p0: Complex64) -> f64 {
    let r = &(&param.a.scale(s0) - &param.b.scale_real(2.0))
        + &(&param.c.scale(2.0 * p0) - &param.d.scale(s0));
    let scale = [&param.a, &param.b, &param.c, &param.d]
        .iter()
        .map(|p| p.max_coeff_norm())
        .fold(1.0, f64::max);
    r.max_coeff_norm() / scale
}

pub fn solve_s0_p0(
    param: &Parametrization,
    data: &BlaschkeData,
    tol: &TolerancePolicy,
) -> Result<S0P0Solution> {
    let [qc, qg, qb] = coefficient_polys(param, data, tol)?;
    let n = data.n();
    let a = DMatrix::from_fn(n, 2, |i, j| if j == 0 { qc.padded(n)[i] } else { qg.padded(n)[i] });
    let rhs = DVector::from_column_slice(&qb.padded(n)).map(|z| -z);
    Ok(solve_stacked(&a, &rhs, tol))
}

/// Singular value decomposition `A V = U Σ` of an `n × 2` matrix by one-sided
/// Jacobi rotations, with singular values in decreasing order.
///
/// nalgebra's complex SVD can return factors that do not reproduce a
/// rank-deficient input, and the rank decision here depends on the small
/// singular value being accurate, so the two columns are orthogonalized
/// directly.
fn svd_two_columns(a: &DMatrix<Complex64>) -> ([f64; 2], DMatrix<Complex64>, DMatrix<Complex64>) {
    let mut w = a.clone();
    let mut v = DMatrix::<Complex64>::identity(2, 2);
    for _ in 0..60 {
        let alpha = w.column(0).norm_squared();
        let beta = w.column(1).norm_squared();
        let gamma = w.column(0).dotc(&w.column(1));
        if gamma.norm() <= f64::EPSILON * (alpha * beta).sqrt() || gamma.norm() == 0.0 {
            break;
        }
        // Rotate column 1 by the phase of γ so the inner product is real.
        let phase = (gamma / gamma.norm()).conj();
        let g = gamma.norm();
        let zeta = (beta - alpha) / (2.0 * g);
        let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
        let c = 1.0 / (1.0 + t * t).sqrt();
        let s = c * t;
        for m in [&mut w, &mut v] {
            for i in 0..m.nrows() {
                let p = m[(i, 0)];
                let q = m[(i, 1)] * phase;
                m[(i, 0)] = p * c - q * s;
                m[(i, 1)] = p * s + q * c;
            }
        }
    }
    let mut sv = [w.column(0).norm(), w.column(1).norm()];
    if sv[1] > sv[0] {
        w.swap_columns(0, 1);
        v.swap_columns(0, 1);
        sv.swap(0, 1);
    }
    let mut u = w;
    for (j, &s) in sv.iter().enumerate() {
        if s > 0.0 {
            u.column_mut(j).scale_mut(1.0 / s);
        }
    }
    (sv, u, v)
}

/// Solve `A [u, v]ᵀ = rhs` for admissible `(u, v)`.
pub(crate) fn solve_stacked(
    a: &DMatrix<Complex64>,
    rhs: &DVector<Complex64>,
    tol: &TolerancePolicy,
) -> S0P0Solution {
    let (sv, u, v) = svd_two_columns(a);
    let sv = sv.to_vec();
    let smax = sv.iter().copied().fold(0.0, f64::max);
    let rhs_norm = rhs.norm();
    let scale = smax.max(rhs_norm).max(f64::MIN_POSITIVE);
    let thr = tol.pd_tol * smax;
    let rank = if smax <= tol.pd_tol * scale.max(1.0) {
        0
    } else {
        sv.iter().filter(|&&s| s > thr).count()
    };
    let near_threshold = smax > 0.0 && sv.iter().any(|&s| s > thr / 100.0 && s < thr * 100.0);
    let result = |kind, residual| S0P0Solution {
        kind,
        residual,
        rank,
        singular_values: sv.clone(),
        near_threshold,
    };

    match rank {
        0 => {
            let residual = rhs_norm / scale.max(1.0);
            if residual <= tol.residual_tol {
                let law = FamilyLaw {
                    c: Complex64::new(0.0, 0.0),
                    g: Complex64::new(0.0, 0.0),
                    b: Complex64::new(0.0, 0.0),
                    degenerate: true,
                };
                result(S0P0Kind::Family(law), residual)
            } else {
                result(S0P0Kind::NoSolution, residual)
            }
        }
        1 => {
            let w = u.column(0);
            let proj = |col: &DVector<Complex64>| w.dotc(col);
            let acol = a.column(0).into_owned();
            let gcol = a.column(1).into_owned();
            let b = -proj(rhs);
            let off_range = (rhs + w * b).norm();
            let residual = off_range / scale;
            if residual > tol.residual_tol {
                return result(S0P0Kind::NoSolution, residual);
            }
            let law = FamilyLaw {
                c: proj(&acol),
                g: proj(&gcol),
                b,
                degenerate: false,
            };
            result(S0P0Kind::Family(law), residual)
        }
        _ => {
            // Least squares through the SVD.
            let uh_rhs = u.adjoint() * rhs;
            let mut y = DVector::<Complex64>::zeros(2);
            for i in 0..2 {
                y[i] = uh_rhs[i] / sv[i];
            }
            let x = &v * y;
            let consistency = (a * &x - rhs).norm() / scale;
            let (uu, vv) = (x[0], x[1]);
            let omega = uu.sqrt();
            let t = if omega.norm() > 0.0 {
                vv * (omega / omega.norm()).conj()
            } else {
                Complex64::new(f64::INFINITY, 0.0)
            };
            let violation = consistency
                .max((uu.norm() - 1.0).abs())
                .max(t.im.abs())
                .max((t.norm() - 1.0).max(0.0));
            let admissible = consistency <= tol.residual_tol
                && (uu.norm() - 1.0).abs() <= tol.residual_tol
                && t.im.abs() <= tol.residual_tol
                && t.norm() < 1.0;
            if !admissible {
                return result(S0P0Kind::NoSolution, violation.max(f64::MIN_POSITIVE));
            }
            // ±ω give (t, ω) and (-t, -ω), hence the same (s₀, p₀).
            let omega = omega / omega.norm();
            let sol = S0P0 {
                s0: 2.0 * t.re * omega,
                p0: omega * omega,
                t: t.re,
                omega,
            };
            result(S0P0Kind::Unique(sol), consistency)
        }
    }
}
