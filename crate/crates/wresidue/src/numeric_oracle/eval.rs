//! Double-precision evaluation of exact objects at a parameter draw.

use num_complex::Complex64;
use wres_core::exact_scalars::{GaussianRational, PolyScalar, Var, XnRational};
use wres_core::multilinear::CliffordElem;

use super::draw::{omega, ParamDraw};
use super::gamma::{CMat, GammaRep};
use super::OracleError;

pub trait NumericEval {
    type Output;
    fn eval_numeric(&self, d: &ParamDraw, rep: &GammaRep) -> Result<Self::Output, OracleError>;
}

pub fn evaluate_numeric<T: NumericEval>(x: &T, d: &ParamDraw, rep: &GammaRep) -> Result<T::Output, OracleError> {
    x.eval_numeric(d, rep)
}

pub fn gaussian(c: &GaussianRational) -> Complex64 {
    let (re, im) = c.to_f64_pair();
    Complex64::new(re, im)
}

/// Value of one indeterminate. `pi` and `Omega` take their numeric meanings.
pub fn var_value(v: Var, d: &ParamDraw) -> Result<f64, OracleError> {
    match v {
        Var::Xi(k) if k >= 1 && (k as usize) <= d.xi_prime.len() => Ok(d.xi_prime[k as usize - 1]),
        Var::Hp => Ok(d.hp),
        Var::A(i, s, t) if i <= d.n && s <= d.n && t <= d.n => Ok(d.a(i, s, t)),
        Var::Pi => Ok(std::f64::consts::PI),
        Var::Omega => Ok(omega(d.n)),
        other => Err(OracleError::UnboundIndeterminate(other.to_string())),
    }
}

/// Evaluate with a custom binding for the variables.
pub fn eval_poly_with(p: &PolyScalar, value: impl Fn(Var) -> Result<f64, OracleError>) -> Result<Complex64, OracleError> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (m, c) in p.terms() {
        let mut t = gaussian(c);
        for (v, e) in m.factors() {
            t *= value(*v)?.powi(*e as i32);
        }
        acc += t;
    }
    Ok(acc)
}

impl NumericEval for PolyScalar {
    type Output = Complex64;
    fn eval_numeric(&self, d: &ParamDraw, _rep: &GammaRep) -> Result<Complex64, OracleError> {
        eval_poly_with(self, |v| var_value(v, d))
    }
}

/// `XnRational` at a complex point `z`.
pub fn eval_xn_at(x: &XnRational, z: Complex64, d: &ParamDraw) -> Result<Complex64, OracleError> {
    let mut num = Complex64::new(0.0, 0.0);
    for c in x.numerator().iter().rev() {
        num = num * z + eval_poly_with(c, |v| var_value(v, d))?;
    }
    let i = Complex64::new(0.0, 1.0);
    let den = (z - i).powu(x.den_plus()) * (z + i).powu(x.den_minus());
    Ok(num / den)
}

impl NumericEval for XnRational {
    type Output = Complex64;
    fn eval_numeric(&self, d: &ParamDraw, _rep: &GammaRep) -> Result<Complex64, OracleError> {
        eval_xn_at(self, Complex64::new(d.xn, 0.0), d)
    }
}

impl NumericEval for CliffordElem {
    type Output = CMat;
    fn eval_numeric(&self, d: &ParamDraw, rep: &GammaRep) -> Result<CMat, OracleError> {
        if self.dim() != rep.n() {
            return Err(OracleError::Unsupported(format!("element of dimension {} against a rep of dimension {}", self.dim(), rep.n())));
        }
        let mut m = rep.zero();
        for (w, c) in self.words() {
            m += rep.word(w) * c.eval_numeric(d, rep)?;
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use wres_core::symbol_engine::c_dxn;

    #[test]
    fn identity_and_normal_square() {
        let rep = GammaRep::new(4).unwrap();
        let d = ParamDraw::flat(4);
        let id = CliffordElem::identity(4).eval_numeric(&d, &rep).unwrap();
        assert!((id - rep.identity()).norm() < 1e-15);
        let sq = &c_dxn(4) * &c_dxn(4);
        let m = sq.eval_numeric(&d, &rep).unwrap();
        assert!((m.trace() - Complex64::new(-4.0, 0.0)).norm() < 1e-14);
        let w = CliffordElem::product_of(4, &[1, 2]);
        let ww = (&w * &w).eval_numeric(&d, &rep).unwrap();
        assert!((ww + rep.identity()).norm() < 1e-14);
    }

    #[test]
    fn unbound_variables_are_reported() {
        let rep = GammaRep::new(4).unwrap();
        let d = ParamDraw::flat(4);
        let e = PolyScalar::var(Var::Rijij).eval_numeric(&d, &rep);
        assert!(matches!(e, Err(OracleError::UnboundIndeterminate(_))));
        let omega = PolyScalar::var(Var::Omega).eval_numeric(&d, &rep).unwrap();
        assert!((omega.re - 4.0 * std::f64::consts::PI).abs() < 1e-13);
    }
}
