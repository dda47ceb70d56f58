//! Γ-inner functions: geometry of the symmetrized bidisc, the `(s₀, p₀)`
//! solve, construction of `h = (s, p)`, royal nodes and verification.

mod construct;
mod generate;
mod geometry;
mod royal;
mod s0p0;
mod verify;

pub use construct::{construct_h, GammaInnerFn, InnerResiduals};
pub use generate::generate_h_nu;
pub use geometry::{classify_point, phi_omega, GammaClass, GammaPoint};
pub use royal::{extract_royal_data, royal_nodes, RoyalData, RoyalNode};
pub use s0p0::{identity_residual, solve_s0_p0, FamilyLaw, S0P0Kind, S0P0Solution, S0P0};
pub use verify::{compose_phi_omega, cross_check_omegas, verify_royal_solution, VerificationReport};
