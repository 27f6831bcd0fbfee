//! Exact arithmetic: Gaussian rationals, sparse polynomials, and rational
//! functions of `xn` with poles only at `+i` and `-i`.

mod gaussian;
mod poly;
pub mod print;
mod xn;

pub use gaussian::{fmt_rational, rat, rat_int, GaussianRational, Rational};
pub use poly::{poly_string, torsion_var, Monomial, PolyScalar, Var};
pub use xn::{PartialFractions, PfTerm, Pole, XnPoly, XnRational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("not integrable on the real line: numerator degree {numerator_degree}, denominator degree {denominator_degree}")]
    Integrability { numerator_degree: u32, denominator_degree: u32 },
    #[error("function does not decay at infinity")]
    NonDecaying,
    #[error("division by a non-invertible value")]
    NotInvertible,
    #[error("result would have a pole away from +i and -i")]
    PoleOutsideAxis,
}
