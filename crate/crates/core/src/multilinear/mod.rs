//! Clifford algebra with symbolic coefficients, and the exterior algebra with
//! exterior multiplication and contraction by a complex covector.

mod clifford;
mod forms;

pub use clifford::{word_indices, word_product, CliffordElem, GAMMA_SQUARE, MAX_DIM};
pub use forms::{eps, iota, FormElem, FormFactor, FormOp};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MultilinearError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: u8, right: u8 },
    #[error("expected a one-form")]
    NotCovector,
}
