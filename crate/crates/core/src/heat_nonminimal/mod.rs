//! Heat coefficients of form Laplacians and of the nonminimal operator
//! `a^2 dbar dbar^* + b^2 dbar^* dbar` on `k`-forms.
//!
//! Every `a_2`-type quantity carries an overall `(4 pi)^(-m/2)`, which is left
//! implicit. The remaining dependence on `m` is a polynomial in [`Var::M`]
//! times one of the weights `1`, `(a^2/2)^(2-m/2)`, `(b^2/2)^(2-m/2)`.

mod series;
mod symbols;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::exact_scalars::print::canonical;
use crate::exact_scalars::{rat_int, GaussianRational, PolyScalar, Rational, Var};

pub use series::{wres_nonminimal, ClaimComparison, LogAtom, SeriesCoeff, WresReport};
pub use symbols::{lemma_symbols_compose, sigma2_nonminimal, sigma_minus2_numerator, verify_factorization, FactorizationReport};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HeatError {
    #[error("form degree {p} out of range for dimension {m}")]
    Domain { m: u32, p: u32 },
    #[error("dimension must exceed 2")]
    SmallDimension,
    #[error("a^2 and b^2 must be positive")]
    SingularOperator,
    #[error("no exact evaluation: {0}")]
    NotExact(&'static str),
    #[error(transparent)]
    Forms(#[from] crate::multilinear::MultilinearError),
}

/// Manifold dimension, kept symbolic or fixed.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Dim {
    Symbolic,
    Value(u32),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HeatParams {
    pub m: Dim,
    pub k: u32,
    pub a2: Rational,
    pub b2: Rational,
}

impl HeatParams {
    pub fn new(m: Dim, k: u32, a2: Rational, b2: Rational) -> Self {
        HeatParams { m, k, a2, b2 }
    }

    fn check(&self) -> Result<(), HeatError> {
        if self.a2 <= Rational::zero() || self.b2 <= Rational::zero() {
            return Err(HeatError::SingularOperator);
        }
        if let Dim::Value(m) = self.m {
            if m <= 2 {
                return Err(HeatError::SmallDimension);
            }
            if self.k > m {
                return Err(HeatError::Domain { m, p: self.k });
            }
        }
        Ok(())
    }
}

/// Weight multiplying a polynomial part of a heat expression.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Weight {
    One,
    /// `(a^2/2)^(2-m/2)`
    HalfA2,
    /// `(b^2/2)^(2-m/2)`
    HalfB2,
}

impl Weight {
    fn text(self) -> &'static str {
        match self {
            Weight::One => "",
            Weight::HalfA2 => "(a^2/2)^(2-m/2)",
            Weight::HalfB2 => "(b^2/2)^(2-m/2)",
        }
    }
}

/// `(4 pi)^(-m/2) * sum_w w * poly_w`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct HeatExpr {
    parts: BTreeMap<Weight, PolyScalar>,
}

impl HeatExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(w: Weight, p: PolyScalar) -> Self {
        let mut e = Self::zero();
        e.add(w, &p);
        e
    }

    pub fn part(&self, w: Weight) -> PolyScalar {
        self.parts.get(&w).cloned().unwrap_or_default()
    }

    pub fn parts(&self) -> impl Iterator<Item = (Weight, &PolyScalar)> {
        self.parts.iter().map(|(w, p)| (*w, p))
    }

    pub fn add(&mut self, w: Weight, p: &PolyScalar) {
        let mut cur = self.parts.remove(&w).unwrap_or_default();
        cur.add_assign_ref(p);
        if !cur.is_zero() {
            self.parts.insert(w, cur);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    /// Fix `m`.
    pub fn at_dimension(&self, m: u32) -> HeatExpr {
        let mut out = HeatExpr::zero();
        for (w, p) in &self.parts {
            out.add(*w, &p.substitute(Var::M, &PolyScalar::int(m as i64)));
        }
        out
    }
}

impl fmt::Display for HeatExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("0");
        }
        let mut pieces: Vec<String> = Vec::new();
        for (w, p) in &self.parts {
            let body = canonical(p, None);
            pieces.push(if *w == Weight::One { alloc::format!("({})", body) } else { alloc::format!("{} * ({})", w.text(), body) });
        }
        write!(f, "(4 pi)^(-m/2) * [{}]", pieces.join(" + "))
    }
}

fn m_var() -> PolyScalar {
    PolyScalar::var(Var::M)
}

fn rijij() -> PolyScalar {
    PolyScalar::var(Var::Rijij)
}

/// `C(x + shift, q)` as a polynomial in `m` (zero for `q < 0`).
fn binom_poly(shift: i64, q: i64) -> PolyScalar {
    if q < 0 {
        return PolyScalar::zero();
    }
    let mut acc = PolyScalar::one();
    let mut fact = Rational::one();
    for i in 0..q {
        acc = &acc * &(&m_var() + &PolyScalar::int(shift - i));
        fact *= rat_int(i + 1);
    }
    acc.scale_rational(&(Rational::one() / fact))
}

fn fix(p: PolyScalar, m: Dim) -> PolyScalar {
    match m {
        Dim::Symbolic => p,
        Dim::Value(v) => p.substitute(Var::M, &PolyScalar::int(v as i64)),
    }
}

fn check_degree(m: Dim, p: u32) -> Result<(), HeatError> {
    match m {
        Dim::Value(v) if p > v => Err(HeatError::Domain { m: v, p }),
        _ => Ok(()),
    }
}

/// `a_0(Delta_p) = (4 pi)^(-m/2) C(m, p)`.
pub fn gilkey_a0(m: Dim, p: u32) -> Result<HeatExpr, HeatError> {
    check_degree(m, p)?;
    Ok(HeatExpr::single(Weight::One, fix(binom_poly(0, p as i64), m)))
}

/// Polynomial part of `a_2(Delta_p)`:
/// `(1/6)(C(m-2,p-2) + C(m-2,p) - 4 C(m-2,p-1)) (-Rijij)`.
pub fn a2_poly(p: u32) -> PolyScalar {
    let p = p as i64;
    let c = &(&binom_poly(-2, p - 2) + &binom_poly(-2, p)) - &binom_poly(-2, p - 1).scale(&GaussianRational::int(4));
    (&c * &rijij()).scale(&GaussianRational::frac(-1, 6))
}

pub fn gilkey_a2(m: Dim, p: u32) -> Result<HeatExpr, HeatError> {
    check_degree(m, p)?;
    Ok(HeatExpr::single(Weight::One, fix(a2_poly(p), m)))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpecializationCheck {
    pub id: String,
    pub p: u32,
    pub derived: PolyScalar,
    pub printed: PolyScalar,
    pub matches: bool,
}

/// A printed `a_2(Delta_p)` polynomial (coefficient of `(4 pi)^(-m/2)`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpecializationTarget {
    pub id: String,
    pub p: u32,
    pub printed: PolyScalar,
}

/// Expand the general formula at each target's `p` and compare.
pub fn verify_specializations(targets: &[SpecializationTarget]) -> Vec<SpecializationCheck> {
    targets
        .iter()
        .map(|t| {
            let derived = a2_poly(t.p);
            SpecializationCheck { id: t.id.clone(), p: t.p, matches: derived == t.printed, derived, printed: t.printed.clone() }
        })
        .collect()
}

fn sign(e: i64) -> GaussianRational {
    GaussianRational::int(if e.rem_euclid(2) == 0 { 1 } else { -1 })
}

/// `sum_{p=0}^{top} (-1)^(k-p) (k-p+shift) a_2(Delta_p)`, empty when `top < 0`.
fn weighted_sum(k: i64, top: i64, shift: i64) -> PolyScalar {
    let mut acc = PolyScalar::zero();
    for p in 0..=top {
        let c = sign(k - p) * GaussianRational::int(k - p + shift);
        acc.add_assign_ref(&a2_poly(p as u32).scale(&c));
    }
    acc
}

/// `a_2` of the nonminimal operator on `k`-forms, the three alternating sums
/// weighted by `(a^2/2)^(2-m/2)`, `-[(a^2/2)^(2-m/2) + (b^2/2)^(2-m/2)]`, `(b^2/2)^(2-m/2)`.
pub fn nonminimal_a2(hp: &HeatParams) -> Result<HeatExpr, HeatError> {
    hp.check()?;
    let k = hp.k as i64;
    let s1 = weighted_sum(k, k - 2, -1);
    let s2 = weighted_sum(k, k - 1, 0);
    let s3 = weighted_sum(k, k, 1);
    let mut e = HeatExpr::zero();
    e.add(Weight::HalfA2, &fix(&s1 - &s2, hp.m));
    e.add(Weight::HalfB2, &fix(&s3 - &s2, hp.m));
    Ok(e)
}

/// Rewrite `A*P + B*Q` as `(A - B)*X + B*Y`: returns `(X, Y) = (P, P + Q)`.
pub fn bracket_form(e: &HeatExpr) -> (PolyScalar, PolyScalar) {
    let x = e.part(Weight::HalfA2);
    let y = &x + &e.part(Weight::HalfB2);
    (x, y)
}

/// Value of `(base/2)^(2 - m/2)` for even `m`.
pub fn half_weight(base: &Rational, m: u32) -> Result<Rational, HeatError> {
    if m % 2 != 0 {
        return Err(HeatError::NotExact("odd dimension gives a square root"));
    }
    let e = 2 - (m as i64) / 2;
    let h = base / rat_int(2);
    Ok(if e >= 0 { num_traits::pow(h, e as usize) } else { num_traits::pow(Rational::one() / h, (-e) as usize) })
}
