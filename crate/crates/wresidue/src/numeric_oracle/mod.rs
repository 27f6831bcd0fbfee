//! Floating-point ground truth: gamma matrices, seeded draws, contour and
//! quadrature evaluation of the case integrals, and the `Wres` limit check.

pub mod arbitrate;
pub mod case;
pub mod contour;
pub mod draw;
pub mod eval;
pub mod gamma;
pub mod quadrature;
pub mod richardson;
pub mod sphere;
pub mod symbols;

pub use arbitrate::{compare_candidates, QuadratureOracle, VerdictRecord};
pub use case::{numeric_case, numeric_total, CaseEvaluator, QuadratureSettings};
pub use draw::{omega, ParamDraw};
pub use eval::{evaluate_numeric, NumericEval};
pub use gamma::{CMat, GammaRep};
pub use richardson::{richardson_wres, RichardsonCheck};
pub use sphere::SphereRule;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OracleError {
    #[error("no numeric value bound for {0}")]
    UnboundIndeterminate(String),
    #[error("quadrature did not converge: {panels} panels, error estimate {error:e} above {tolerance:e}")]
    QuadratureFailure { panels: usize, error: f64, tolerance: f64 },
    #[error("{0}")]
    Unsupported(String),
}
