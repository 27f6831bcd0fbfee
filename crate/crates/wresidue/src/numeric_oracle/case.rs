//! Quadrature evaluation of the boundary case integrals.

use std::cell::RefCell;
use std::collections::HashMap;

use num_complex::Complex64;
use wres_core::boundary_engine::CaseIndices;
use wres_core::symbol_engine::OperatorSpec;

use super::contour::{pole_derivative, ContourRule, MINUS_I, PLUS_I};
use super::draw::ParamDraw;
use super::eval::NumericEval;
use super::gamma::{trace_of_product, CMat, GammaRep};
use super::quadrature::integrate_real_line;
use super::sphere::SphereRule;
use super::symbols::{NumJet, NumericModel};
use super::OracleError;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureSettings {
    /// Polynomial degree the sphere rule integrates exactly. The case
    /// integrands are polynomials of degree at most 7 in `xi'`.
    pub sphere_degree: u32,
    pub contour: ContourRule,
    pub line_abs_tol: f64,
    pub line_rel_tol: f64,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        QuadratureSettings { sphere_degree: 7, contour: ContourRule::default(), line_abs_tol: 1e-13, line_rel_tol: 1e-12 }
    }
}

/// Which stored piece of a jet a tuple uses.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Piece {
    Top,
    TopDx,
    Next,
}

impl Piece {
    fn index(self) -> usize {
        match self {
            Piece::Top => 0,
            Piece::TopDx => 1,
            Piece::Next => 2,
        }
    }
}

fn pieces(j: NumJet) -> Vec<CMat> {
    vec![j.top, j.top_dx, j.next]
}

/// `(-i)^(|alpha|+j+k+1) / (|alpha|! (j+k+1)!)`.
pub fn prefactor(t: &CaseIndices) -> Complex64 {
    let p = t.alpha + t.j + t.k + 1;
    let fact = |m: u32| (1..=m).map(|x| x as f64).product::<f64>();
    Complex64::new(0.0, -1.0).powu(p) / (fact(t.alpha) * fact(t.j + t.k + 1))
}

/// All `(r, l, k, j, |alpha|)` with `r <= -p1`, `l <= -p2`, `r + l - k - j - |alpha| - 1 = -n`.
pub fn all_tuples(n: u8, p1: u32, p2: u32) -> Vec<CaseIndices> {
    let n = n as i32;
    let (p1, p2) = (p1 as i32, p2 as i32);
    let mut out = Vec::new();
    for r in (-n..=-p1).rev() {
        for l in (-n..=-p2).rev() {
            let s = r + l - 1 + n;
            if s < 0 {
                continue;
            }
            for alpha in 0..=s {
                for j in 0..=s - alpha {
                    out.push(CaseIndices::new(r, l, (s - alpha - j) as u32, j as u32, alpha as u32));
                }
            }
        }
    }
    out
}

pub struct CaseEvaluator<'a> {
    left: &'a OperatorSpec,
    right: &'a OperatorSpec,
    p1: u32,
    p2: u32,
    rep: GammaRep,
    rule: SphereRule,
    settings: QuadratureSettings,
    /// Real-line integrals of the pole products, keyed by `(a, b, k_left, k_right, right pole is +i)`.
    basis: RefCell<HashMap<(usize, usize, u32, u32, bool), Complex64>>,
}

impl<'a> CaseEvaluator<'a> {
    pub fn new(left: &'a OperatorSpec, right: &'a OperatorSpec, settings: QuadratureSettings) -> Result<Self, OracleError> {
        if left.n != right.n {
            return Err(OracleError::Unsupported("left and right dimensions differ".into()));
        }
        let order = |s: &OperatorSpec| -> Result<u32, OracleError> {
            let o = s.base.leading_order();
            if o >= 0 {
                return Err(OracleError::Unsupported("operators must have negative order".into()));
            }
            Ok((-o) as u32)
        };
        let rep = GammaRep::new(left.n)?;
        let rule = SphereRule::exact_to(left.n as u32 - 1, settings.sphere_degree)?;
        Ok(CaseEvaluator { left, right, p1: order(left)?, p2: order(right)?, rep, rule, settings, basis: RefCell::default() })
    }

    pub fn orders(&self) -> (u32, u32) {
        (self.p1, self.p2)
    }

    pub fn tuples(&self) -> Vec<CaseIndices> {
        all_tuples(self.left.n, self.p1, self.p2)
    }

    fn pieces_for(&self, t: &CaseIndices) -> Result<(Piece, Piece), OracleError> {
        let (tl, tr) = (-(self.p1 as i32), -(self.p2 as i32));
        let bad = || OracleError::Unsupported(format!("tuple {t} needs symbol data beyond the numeric jets"));
        let left = match (t.r - tl, t.j) {
            (0, 0) => Piece::Top,
            (0, 1) => Piece::TopDx,
            (-1, 0) => Piece::Next,
            _ => return Err(bad()),
        };
        let right = match (t.l - tr, t.k) {
            (0, 0) => Piece::Top,
            (0, 1) => Piece::TopDx,
            (-1, 0) => Piece::Next,
            _ => return Err(bad()),
        };
        Ok((left, right))
    }

    /// Values of the given tuples at one draw, prefactors included.
    pub fn evaluate(&self, tuples: &[CaseIndices], draw: &ParamDraw) -> Result<Vec<Complex64>, OracleError> {
        let mut plan = Vec::with_capacity(tuples.len());
        for t in tuples {
            // the model metric depends on xn only, so tangential derivatives vanish
            plan.push(if t.alpha > 0 { None } else { Some(self.pieces_for(t)?) });
        }
        let lm = NumericModel::new(&self.rep, draw, self.left.torsion);
        let rm = NumericModel::new(&self.rep, draw, self.right.torsion);
        let w = match &self.left.projector {
            Some(p) => Some(p.eval_numeric(draw, &self.rep)?),
            None => None,
        };
        let c = self.settings.contour;
        let mut out = vec![Complex64::new(0.0, 0.0); tuples.len()];
        for (xi, weight) in self.rule.nodes.iter().zip(&self.rule.weights) {
            let mut left_plus = c.principal_parts(PLUS_I, 3, |z| Ok(pieces(lm.jet(self.left.base, xi, z)?)))?;
            // the projector is constant in xn, so it commutes with taking principal parts
            if let Some(w) = &w {
                for m in left_plus.iter_mut().flatten() {
                    *m = w * &*m;
                }
            }
            let right_plus = c.principal_parts(PLUS_I, 3, |z| Ok(pieces(rm.jet(self.right.base, xi, z)?)))?;
            let right_minus = c.principal_parts(MINUS_I, 3, |z| Ok(pieces(rm.jet(self.right.base, xi, z)?)))?;
            for (slot, (t, p)) in tuples.iter().zip(&plan).enumerate() {
                let Some((lp, rp)) = p else { continue };
                let line = self.line_integral(t, &left_plus[lp.index()], &right_plus[rp.index()], &right_minus[rp.index()])?;
                out[slot] += line * *weight * prefactor(t);
            }
        }
        Ok(out)
    }

    /// `∫_R d^kl (x - i)^-(a+1) d^kr (x -/+ i)^-(b+1) dx` by adaptive quadrature,
    /// once per evaluator; the integrand does not depend on the draw.
    fn basis_integral(&self, a: usize, b: usize, kl: u32, kr: u32, plus: bool) -> Result<Complex64, OracleError> {
        let key = (a, b, kl, kr, plus);
        if let Some(v) = self.basis.borrow().get(&key) {
            return Ok(*v);
        }
        let pole = if plus { PLUS_I } else { MINUS_I };
        let f = |x: f64| {
            let z = Complex64::new(x, 0.0);
            pole_derivative(a + 1, kl, PLUS_I, z) * pole_derivative(b + 1, kr, pole, z)
        };
        let v = integrate_real_line(f, self.settings.line_abs_tol, self.settings.line_rel_tol)?.value;
        self.basis.borrow_mut().insert(key, v);
        Ok(v)
    }

    fn line_integral(&self, t: &CaseIndices, lp: &[CMat], rp: &[CMat], rm: &[CMat]) -> Result<Complex64, OracleError> {
        let (kl, kr) = (t.k, t.j + 1);
        let mut acc = Complex64::new(0.0, 0.0);
        for (a, la) in lp.iter().enumerate() {
            for b in 0..rp.len() {
                acc += trace_of_product(la, &rp[b]) * self.basis_integral(a, b, kl, kr, true)?;
                acc += trace_of_product(la, &rm[b]) * self.basis_integral(a, b, kl, kr, false)?;
            }
        }
        Ok(acc)
    }
}

/// One tuple over a list of draws.
pub fn numeric_case(t: CaseIndices, left: &OperatorSpec, right: &OperatorSpec, draws: &[ParamDraw]) -> Result<Vec<Complex64>, OracleError> {
    let ev = CaseEvaluator::new(left, right, QuadratureSettings::default())?;
    draws.iter().map(|d| ev.evaluate(&[t], d).map(|v| v[0])).collect()
}

/// Sum over every admissible tuple.
pub fn numeric_total(left: &OperatorSpec, right: &OperatorSpec, draws: &[ParamDraw]) -> Result<Vec<Complex64>, OracleError> {
    let ev = CaseEvaluator::new(left, right, QuadratureSettings::default())?;
    let tuples = ev.tuples();
    draws.iter().map(|d| ev.evaluate(&tuples, d).map(|v| v.into_iter().sum())).collect()
}
