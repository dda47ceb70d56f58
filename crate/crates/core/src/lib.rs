//! Rational Γ-inner functions with prescribed royal nodes.
//!
//! The crate solves the boundary-augmented Blaschke interpolation problem
//! (interior and unimodular nodes, with phasar-derivative constraints at the
//! boundary nodes), builds the normalized linear-fractional parametrization
//! of its solutions, and turns that parametrization into rational
//! Γ-inner maps `h = (s, p)` of the symmetrized bidisc whose royal nodes,
//! royal values and boundary phasar derivatives are prescribed.
//!
//! Module map:
//!
//! * [`polyrat`]: complex polynomials, rational functions, root finding.
//! * [`pick`]: interpolation data, Pick matrix, kernel vectors, choice of τ.
//! * [`blaschke`]: Blaschke products, phasar derivatives, the `(a, b, c, d)`
//!   parametrization and the per-ζ solver.
//! * [`gamma`]: Γ geometry, the Φ_ω family, the `(s₀, p₀)` solve, construction
//!   of `h`, royal-node extraction and verification.
//! * [`pipeline`]: the end-to-end solve and round-trip drivers.

pub mod blaschke;
mod error;
pub mod gamma;
pub mod par;
pub mod pick;
pub mod pipeline;
pub mod polyrat;
mod tolerance;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use tolerance::TolerancePolicy;

/// `e^{iθ}`.
#[inline]
pub fn unimodular(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

/// `n` equispaced points on the unit circle starting at 1.
pub fn circle_grid(n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|j| unimodular(std::f64::consts::TAU * j as f64 / n as f64))
        .collect()
}

/// `n × n` polar grid of the closed disc: radii `1/n, 2/n, …, 1` at `n`
/// equispaced angles each.
pub fn disc_grid(n: usize) -> Vec<Complex64> {
    (1..=n)
        .flat_map(|i| {
            let r = i as f64 / n as f64;
            circle_grid(n).into_iter().map(move |z| z * r)
        })
        .collect()
}

/// Deterministic low-discrepancy points in the open disc (golden-angle
/// spiral with area-uniform radii).
pub fn disc_samples(count: usize) -> Vec<Complex64> {
    let phi = (1.0 + 5.0_f64.sqrt()) / 2.0;
    (1..=count)
        .map(|m| {
            let r = 0.95 * ((m as f64 - 0.5) / count as f64).sqrt();
            unimodular(std::f64::consts::TAU * (m as f64 * phi).fract()) * r
        })
        .collect()
}
