//! Leading symbols on forms, written with `eps(xihat)` and `iota(xihat)`.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::exact_scalars::{GaussianRational, PolyScalar, Rational};
use crate::multilinear::{FormElem, FormFactor, FormOp};

use super::HeatError;

fn norm_sq(xi: &[PolyScalar]) -> PolyScalar {
    xi.iter().fold(PolyScalar::zero(), |acc, x| &acc + &(x * x))
}

fn check(a2: &Rational, b2: &Rational) -> Result<(), HeatError> {
    if a2.is_zero() || b2.is_zero() {
        return Err(HeatError::SingularOperator);
    }
    Ok(())
}

fn r(q: &Rational) -> PolyScalar {
    PolyScalar::rational(q.clone())
}

/// `((a^2 - b^2)/4) eps iota + (b^2/2) |xi|^2`.
pub fn sigma2_nonminimal(a2: &Rational, b2: &Rational, xi: &[PolyScalar]) -> Result<FormOp, HeatError> {
    check(a2, b2)?;
    let n = (xi.len() / 2) as u8;
    let xh = FormElem::xihat(n, xi);
    let quarter = GaussianRational::frac(1, 4);
    let ei = FormOp::word(&xh, r(&(a2 - b2)).scale(&quarter), &[FormFactor::Eps, FormFactor::Iota]);
    let id = FormOp::scalar(&xh, (&r(b2) * &norm_sq(xi)).scale(&GaussianRational::frac(1, 2)));
    Ok(ei.add(&id))
}

/// `((a^2 - b^2)/4) iota eps + (b^2/2) |xi|^2`.
fn mirror(a2: &Rational, b2: &Rational, xi: &[PolyScalar]) -> FormOp {
    let n = (xi.len() / 2) as u8;
    let xh = FormElem::xihat(n, xi);
    let ie = FormOp::word(&xh, r(&(a2 - b2)).scale(&GaussianRational::frac(1, 4)), &[FormFactor::Iota, FormFactor::Eps]);
    ie.add(&FormOp::scalar(&xh, (&r(b2) * &norm_sq(xi)).scale(&GaussianRational::frac(1, 2))))
}

/// Numerator `2 b^2 |xi|^2 + (a^2 - b^2) iota eps` and denominator `a^2 b^2 |xi|^4` of `sigma_{-2}`.
pub fn sigma_minus2_numerator(a2: &Rational, b2: &Rational, xi: &[PolyScalar]) -> Result<(FormOp, PolyScalar), HeatError> {
    check(a2, b2)?;
    let n = (xi.len() / 2) as u8;
    let xh = FormElem::xihat(n, xi);
    let nrm = norm_sq(xi);
    let num = FormOp::word(&xh, r(&(a2 - b2)), &[FormFactor::Iota, FormFactor::Eps])
        .add(&FormOp::scalar(&xh, (&r(b2) * &nrm).scale(&GaussianRational::int(2))));
    let den = &(&r(a2) * &r(b2)) * &(&nrm * &nrm);
    Ok((num, den))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FactorizationReport {
    pub degrees: Vec<u32>,
    /// `sigma_2 * mirror = (a^2 b^2 / 4) |xi|^4` on every checked degree.
    pub product_identity: bool,
    /// `sigma_2 * numerator = a^2 b^2 |xi|^4`, i.e. `sigma_2 sigma_{-2} = id`.
    pub inverse_identity: bool,
}

impl FactorizationReport {
    pub fn holds(&self) -> bool {
        self.product_identity && self.inverse_identity
    }
}

/// Check the factorization on forms of degree `0..=max_degree`.
pub fn verify_factorization(a2: &Rational, b2: &Rational, xi: &[PolyScalar], max_degree: u32) -> Result<FactorizationReport, HeatError> {
    let s2 = sigma2_nonminimal(a2, b2, xi)?;
    let xh = s2.xihat().clone();
    let nrm = norm_sq(xi);
    let quartic = &nrm * &nrm;
    let prod = s2.compose(&mirror(a2, b2, xi));
    let target = FormOp::scalar(&xh, (&(&r(a2) * &r(b2)) * &quartic).scale(&GaussianRational::frac(1, 4)));
    let (num, den) = sigma_minus2_numerator(a2, b2, xi)?;
    let inv = s2.compose(&num);
    let inv_target = FormOp::scalar(&xh, den);
    let top = max_degree.min(xi.len() as u32);
    let mut product_identity = true;
    let mut inverse_identity = true;
    for k in 0..=top {
        product_identity &= prod.agrees_on_degree(&target, k)?;
        inverse_identity &= inv.agrees_on_degree(&inv_target, k)?;
    }
    Ok(FactorizationReport { degrees: (0..=top).collect(), product_identity, inverse_identity })
}

/// `a^2 sigma(dbar) sigma(dbar^*) + b^2 sigma(dbar^*) sigma(dbar)` with
/// `sigma(dbar) = (i/2) eps`, `sigma(dbar^*) = -(i/2) iota`, compared with `sigma_2`.
pub fn lemma_symbols_compose(a2: &Rational, b2: &Rational, xi: &[PolyScalar], max_degree: u32) -> Result<bool, HeatError> {
    let s2 = sigma2_nonminimal(a2, b2, xi)?;
    let xh = s2.xihat().clone();
    let half_i = GaussianRational::frac(1, 2) * GaussianRational::i();
    let d = FormOp::word(&xh, PolyScalar::constant(half_i.clone()), &[FormFactor::Eps]);
    let ds = FormOp::word(&xh, PolyScalar::constant(-half_i), &[FormFactor::Iota]);
    let built = d.compose(&ds).scale(&r(a2)).add(&ds.compose(&d).scale(&r(b2)));
    let top = max_degree.min(xi.len() as u32);
    for k in 0..=top {
        if !built.agrees_on_degree(&s2, k)? {
            return Ok(false);
        }
    }
    Ok(true)
}
