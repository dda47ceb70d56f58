//! End-to-end drivers: data → Pick matrix → τ → parametrization →
//! `(s₀, p₀)` → `h` → verification, and the round trip `h → data → h`.

use num_complex::Complex64;
use serde::Serialize;

use crate::blaschke::{build_parametrization, Parametrization};
use crate::gamma::{
    construct_h, extract_royal_data, solve_s0_p0, verify_royal_solution, FamilyLaw, GammaInnerFn,
    S0P0Kind, S0P0Solution, VerificationReport, S0P0,
};
use crate::par::Exec;
use crate::pick::{
    build_pick_matrix, check_positive_definite, choose_tau_from, BlaschkeData, Definiteness,
    PdCheck,
};
use crate::{circle_grid, Error, TolerancePolicy};

pub const DEFAULT_OMEGA_GRID: usize = 256;
pub const MIN_OMEGA_GRID: usize = 8;
pub const MAX_OMEGA_GRID: usize = 65536;

/// Coefficient tolerance for recognising a target `h` in a solution family.
pub const MATCH_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    pub tol: TolerancePolicy,
    pub omega_grid: usize,
    /// Index of the first τ candidate tried.
    pub tau_start: usize,
    pub exec: Exec,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            tol: TolerancePolicy::default(),
            omega_grid: DEFAULT_OMEGA_GRID,
            tau_start: 1,
            exec: Exec::default(),
        }
    }
}

/// Why the pipeline stopped before producing candidates.
#[derive(Debug, Clone, PartialEq)]
pub enum SolveFailure {
    /// The problem has no solution; `step` is the algorithm step that decided it.
    NotSolvable { step: u8, reason: String },
    /// A numerical failure outside the solvability logic.
    Numerical(Error),
}

impl std::fmt::Display for SolveFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SolveFailure::NotSolvable { step, reason } => {
                write!(f, "not solvable (step {step}): {reason}")
            }
            SolveFailure::Numerical(e) => write!(f, "numerical failure: {e}"),
        }
    }
}

impl From<Error> for SolveFailure {
    fn from(e: Error) -> Self {
        SolveFailure::Numerical(e)
    }
}

/// One constructed candidate with its verification report.
#[derive(Debug, Clone, Serialize)]
pub struct Candidate {
    /// Position on the ω grid, or `None` for a unique solution.
    pub omega_index: Option<usize>,
    pub member: S0P0,
    pub h: GammaInnerFn,
    pub report: VerificationReport,
}

/// A grid point whose member could not be turned into an `h`.
#[derive(Debug, Clone, Serialize)]
pub struct Rejection {
    pub omega_index: usize,
    pub omega: Complex64,
    pub reason: String,
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub data: BlaschkeData,
    pub pick: PdCheck,
    pub tau: Complex64,
    pub param: Parametrization,
    pub s0p0: S0P0Solution,
    pub candidates: Vec<Candidate>,
    pub rejections: Vec<Rejection>,
}

impl SolveOutcome {
    pub fn verified(&self) -> impl Iterator<Item = &Candidate> {
        self.candidates.iter().filter(|c| c.report.pass)
    }

    pub fn family(&self) -> Option<&FamilyLaw> {
        match &self.s0p0.kind {
            S0P0Kind::Family(law) => Some(law),
            _ => None,
        }
    }
}

/// Construct and verify the member `m`.
pub fn build_candidate(
    param: &Parametrization,
    data: &BlaschkeData,
    m: S0P0,
    omega_index: Option<usize>,
    tol: &TolerancePolicy,
) -> crate::Result<Candidate> {
    let h = construct_h(param, m.s0, m.p0, tol)?;
    let report = verify_royal_solution(&h, data, tol);
    Ok(Candidate {
        omega_index,
        member: m,
        h,
        report,
    })
}

/// Run the algorithm on `data`.
pub fn solve(data: &BlaschkeData, opts: &SolveOptions) -> Result<SolveOutcome, SolveFailure> {
    let tol = &opts.tol;
    let m = build_pick_matrix(data, tol)?;
    let pick = check_positive_definite(&m, tol);
    if pick.class != Definiteness::Definite {
        return Err(SolveFailure::NotSolvable {
            step: 1,
            reason: format!(
                "Pick matrix is {:?} (min eigenvalue {:e})",
                pick.class, pick.min_eigenvalue
            ),
        });
    }
    let tau = choose_tau_from(&m, data, opts.tau_start, tol).map_err(|e| match e {
        Error::NoSuitableTau(_) => SolveFailure::NotSolvable {
            step: 2,
            reason: e.to_string(),
        },
        other => SolveFailure::Numerical(other),
    })?;
    let param = build_parametrization(&m, data, tau, tol)?;
    let s0p0 = solve_s0_p0(&param, data, tol)?;

    let mut candidates = Vec::new();
    let mut rejections = Vec::new();
    match &s0p0.kind {
        S0P0Kind::NoSolution => {
            return Err(SolveFailure::NotSolvable {
                step: 3,
                reason: format!(
                    "no admissible (s0, p0): residual {:e}, rank {}",
                    s0p0.residual, s0p0.rank
                ),
            });
        }
        S0P0Kind::Unique(member) => {
            candidates.push(build_candidate(&param, data, *member, None, tol)?);
        }
        S0P0Kind::Family(law) => {
            let grid = circle_grid(opts.omega_grid);
            let results = opts.exec.map_range(grid.len(), |i| {
                let member = law.at(grid[i], tol)?;
                Some(
                    build_candidate(&param, data, member, Some(i), tol)
                        .map_err(|e| Rejection {
                            omega_index: i,
                            omega: grid[i],
                            reason: e.to_string(),
                        }),
                )
            });
            for r in results.into_iter().flatten() {
                match r {
                    Ok(c) => candidates.push(c),
                    Err(rej) => rejections.push(rej),
                }
            }
            if candidates.is_empty() && rejections.is_empty() {
                return Err(SolveFailure::NotSolvable {
                    step: 3,
                    reason: "no ω on the grid gives an admissible (s0, p0)".into(),
                });
            }
        }
    }
    Ok(SolveOutcome {
        data: data.clone(),
        pick,
        tau,
        param,
        s0p0,
        candidates,
        rejections,
    })
}

/// The family member with `h(τ) = (s₀, p₀)` closest to `target`, by
/// coefficient distance.
#[derive(Debug, Clone)]
pub struct FamilyMatch {
    pub omega: Option<Complex64>,
    pub distance: f64,
    pub h: Option<GammaInnerFn>,
}

fn member_distance(
    param: &Parametrization,
    law: &FamilyLaw,
    omega: Complex64,
    target: &GammaInnerFn,
    tol: &TolerancePolicy,
) -> (f64, Option<GammaInnerFn>) {
    let Some(m) = law.at(omega, tol) else {
        return (f64::INFINITY, None);
    };
    match construct_h(param, m.s0, m.p0, tol) {
        Ok(h) => (h.max_coeff_distance(target), Some(h)),
        Err(_) => (f64::INFINITY, None),
    }
}

/// Search the solution set of `outcome` for `target`: the unique solution is
/// compared directly; a family is scanned over the ω grid and the best grid
/// point refined by golden-section search on the angle.
pub fn find_in_solutions(
    outcome: &SolveOutcome,
    target: &GammaInnerFn,
    opts: &SolveOptions,
) -> FamilyMatch {
    let tol = &opts.tol;
    match &outcome.s0p0.kind {
        S0P0Kind::NoSolution => FamilyMatch {
            omega: None,
            distance: f64::INFINITY,
            h: None,
        },
        S0P0Kind::Unique(m) => {
            let h = construct_h(&outcome.param, m.s0, m.p0, tol).ok();
            FamilyMatch {
                omega: Some(m.omega),
                distance: h.as_ref().map_or(f64::INFINITY, |h| h.max_coeff_distance(target)),
                h,
            }
        }
        S0P0Kind::Family(law) => {
            let n = opts.omega_grid;
            let step = std::f64::consts::TAU / n as f64;
            let scores = opts.exec.map_range(n, |i| {
                member_distance(&outcome.param, law, crate::unimodular(i as f64 * step), target, tol).0
            });
            let best = (0..n)
                .min_by(|&a, &b| scores[a].total_cmp(&scores[b]))
                .unwrap_or(0);
            let f = |theta: f64| {
                member_distance(&outcome.param, law, crate::unimodular(theta), target, tol).0
            };
            let theta = golden_section(f, (best as f64 - 1.0) * step, (best as f64 + 1.0) * step);
            let candidates = [best as f64 * step, theta];
            let theta = candidates
                .into_iter()
                .min_by(|a, b| f(*a).total_cmp(&f(*b)))
                .unwrap_or(theta);
            let omega = crate::unimodular(theta);
            let (distance, h) = member_distance(&outcome.param, law, omega, target, tol);
            FamilyMatch {
                omega: Some(omega),
                distance,
                h,
            }
        }
    }
}

fn golden_section(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let g = (5.0_f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..80 {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
        if hi - lo < 1e-13 {
            break;
        }
    }
    0.5 * (lo + hi)
}

#[derive(Debug, Clone)]
pub struct RoundTrip {
    pub data: BlaschkeData,
    pub outcome: SolveOutcome,
    pub found: FamilyMatch,
}

impl RoundTrip {
    pub fn matched(&self) -> bool {
        self.found.distance <= MATCH_TOL
    }
}

/// Extract the royal data of `h`, solve for it, and look for `h` among the solutions.
pub fn roundtrip(h: &GammaInnerFn, opts: &SolveOptions) -> Result<RoundTrip, SolveFailure> {
    let data = extract_royal_data(h, &opts.tol)?;
    let outcome = solve(&data, opts)?;
    let found = find_in_solutions(&outcome, h, opts);
    Ok(RoundTrip {
        data,
        outcome,
        found,
    })
}
