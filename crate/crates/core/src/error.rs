use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("polynomial degree {0} exceeds the supported maximum of 64")]
    DegreeTooLarge(usize),
    #[error("invalid interpolation data: {0}")]
    InvalidData(String),
    #[error("degenerate data: nodes {0} and {1} coincide")]
    DegenerateData(usize, usize),
    #[error("kernel evaluated at a pole (node {0})")]
    PoleAtNode(usize),
    #[error("Pick matrix is not numerically positive definite")]
    SingularPick,
    #[error("no suitable base point τ found after {0} candidates")]
    NoSuitableTau(usize),
    #[error("base point τ is unsuitable: the exceptional set is the whole circle")]
    UnsuitableTau,
    #[error("ζ lies in the exceptional set (boundary node {0})")]
    ExceptionalZeta(usize),
    #[error("function has a zero or pole at the evaluation point")]
    ZeroOrPoleAtPoint,
    #[error("function is not inner (max | |f| - 1 | = {0:e})")]
    NotInner(f64),
    #[error("Φ_ω is singular at this point (|2 - ωs| too small)")]
    SingularPoint,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("shared denominator has a zero in the closed disc at {0}")]
    DenominatorZeroInDisc(num_complex::Complex64),
    #[error("h maps into the royal variety (s² - 4p ≡ 0)")]
    RoyalRange,
    #[error("royal node {0} has multiplicity {1}; only simple royal nodes are supported")]
    MultiplicityAboveOne(num_complex::Complex64, usize),
}
