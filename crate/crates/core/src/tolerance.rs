use serde::{Deserialize, Serialize};

/// Numerical tolerances shared by every stage of the pipeline.
///
/// `trim_tol` is relative: a coefficient is dropped from the top of a
/// polynomial when its modulus is below `trim_tol * max|coeff|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TolerancePolicy {
    pub trim_tol: f64,
    pub root_cluster_tol: f64,
    pub residual_tol: f64,
    pub pd_tol: f64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        Self {
            trim_tol: 1e-12,
            root_cluster_tol: 1e-7,
            residual_tol: 1e-8,
            pd_tol: 1e-10,
        }
    }
}

impl TolerancePolicy {
    /// Default policy with a different verification threshold.
    pub fn with_residual(residual_tol: f64) -> Self {
        Self {
            residual_tol,
            ..Self::default()
        }
    }

    pub fn is_valid(&self) -> bool {
        [self.trim_tol, self.root_cluster_tol, self.residual_tol, self.pd_tol]
            .iter()
            .all(|t| t.is_finite() && *t > 0.0)
    }
}
