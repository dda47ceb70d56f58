//! Complex polynomial and rational-function arithmetic.
//!
//! Polynomials are stored in ascending powers and trimmed on construction;
//! rational functions are plain `num / den` pairs with an explicit
//! cancellation step ([`rat_reduce`]).

mod poly;
mod rational;
mod roots;

pub use poly::{Poly, MAX_DEGREE};
pub use rational::{rat_reduce, RationalFn};
pub use roots::{poly_roots, Root};

pub(crate) use rational::cancel_joint;
pub(crate) use roots::cluster;

use num_complex::Complex64;

/// Horner evaluation.
pub fn poly_eval(p: &Poly, z: Complex64) -> Complex64 {
    p.eval(z)
}

pub fn poly_derivative(p: &Poly) -> Poly {
    p.derivative()
}
