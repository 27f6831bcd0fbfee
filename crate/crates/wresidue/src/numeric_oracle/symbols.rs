//! Matrix-valued symbols of the inverse operators at complex `xin`.
//!
//! Model metric `(1/h(xn)) g_boundary + dxn^2`, `h(0) = 1`, `h'(0) = hp`:
//! `sigma_1 = i (sqrt(h) c(xi') + xin gamma_n)`, so `d_xn sigma_1 = i (hp/2) c(xi')`
//! and `d_xn |xi|^2 = hp |xi'|^2` at the base point.

use num_complex::Complex64;
use wres_core::symbol_engine::{BaseOperator, Torsion};

use super::draw::ParamDraw;
use super::gamma::{CMat, GammaRep};
use super::OracleError;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Top order, its normal derivative, and the next order.
#[derive(Clone, Debug)]
pub struct NumJet {
    pub top: CMat,
    pub top_dx: CMat,
    pub next: CMat,
}

/// Order-0 symbols of `D_T` and `D_T^*` for one draw.
#[derive(Clone, Debug)]
pub struct NumericModel<'a> {
    rep: &'a GammaRep,
    hp: f64,
    p0: CMat,
    p0_star: CMat,
}

impl<'a> NumericModel<'a> {
    pub fn new(rep: &'a GammaRep, d: &ParamDraw, torsion: Torsion) -> Self {
        let n = rep.n();
        let g = |k: u8| rep.gamma(k).clone();
        let metric = g(n) * re(-(n as f64 - 1.0) / 4.0 * d.hp);

        let mut three = rep.zero();
        if torsion.three_form {
            for i in 1..=n {
                for s in 1..=n {
                    for t in 1..=n {
                        if i != s && s != t && i != t {
                            three += g(i) * g(s) * g(t) * re(d.a(i, s, t) / 4.0);
                        }
                    }
                }
            }
        }
        let mut vect = rep.zero();
        if torsion.vectorial {
            for i in 1..=n {
                for t in 1..=n {
                    vect += g(t) * re(-d.a(i, i, t)) + g(t) * re(d.a(i, t, i)) - g(i) * re(d.a(i, t, t));
                }
                vect += g(i) * re(2.0 * d.a(i, i, i));
            }
            vect *= re(0.25);
        }
        let p0 = &metric + &three + &vect;
        let p0_star = &metric + &three - &vect;
        NumericModel { rep, hp: d.hp, p0, p0_star }
    }

    pub fn order_zero(&self, adjoint: bool) -> &CMat {
        if adjoint {
            &self.p0_star
        } else {
            &self.p0
        }
    }

    /// `c(xi) = c(xi') + z gamma_n`.
    fn c_xi(&self, xi: &[f64], z: Complex64) -> CMat {
        self.rep.clifford(xi) + self.rep.gamma(self.rep.n()) * z
    }

    fn inverse(m: &CMat) -> Result<CMat, OracleError> {
        m.clone().try_inverse().ok_or_else(|| OracleError::Unsupported("singular leading symbol".into()))
    }

    /// Jet of `D_T^{-1}` (or the adjoint): `q`, `d_xn q`, `sigma_{-2}`.
    pub fn parametrix(&self, xi: &[f64], z: Complex64, adjoint: bool) -> Result<NumJet, OracleError> {
        let n = self.rep.n();
        let cxi = self.c_xi(xi, z);
        let cxp = self.rep.clifford(xi);
        let gn = self.rep.gamma(n);
        let q = Self::inverse(&(&cxi * I))?;
        let dp = &cxp * (I * self.hp / 2.0);
        let top_dx = -(&q * &dp * &q);
        // sigma_{-2} = c s0 c / |xi|^4 + c/|xi|^6 c(dxn) [d c(xi) |xi|^2 - c(xi) d |xi|^2]
        let xp2: f64 = xi.iter().map(|x| x * x).sum();
        let nrm = re(xp2) + z * z;
        let s0 = self.order_zero(adjoint);
        let bracket = &cxp * (re(self.hp / 2.0) * nrm) - &cxi * re(self.hp * xp2);
        let next = &cxi * s0 * &cxi / (nrm * nrm) + &cxi * gn * bracket / (nrm * nrm * nrm);
        Ok(NumJet { top: q, top_dx, next })
    }

    /// Same jet through the generic recursion `q_{-2} = -q (p_0 q - i d_xin p_1 d_xn q)`.
    pub fn parametrix_by_recursion(&self, xi: &[f64], z: Complex64, adjoint: bool) -> Result<NumJet, OracleError> {
        let n = self.rep.n();
        let cxi = self.c_xi(xi, z);
        let q = Self::inverse(&(&cxi * I))?;
        let dp = self.rep.clifford(xi) * (I * self.hp / 2.0);
        let dq = -(&q * &dp * &q);
        let dxi_p = self.rep.gamma(n) * I;
        let inner = self.order_zero(adjoint) * &q + dxi_p * &dq * (-I);
        let next = -(&q * inner);
        Ok(NumJet { top: q, top_dx: dq, next })
    }

    /// Jet of the square of the parametrix.
    pub fn squared(&self, xi: &[f64], z: Complex64, adjoint: bool) -> Result<NumJet, OracleError> {
        let n = self.rep.n();
        let j = self.parametrix(xi, z, adjoint)?;
        let dxi_q = -(&j.top * (self.rep.gamma(n) * I) * &j.top);
        let top = &j.top * &j.top;
        let top_dx = &j.top_dx * &j.top + &j.top * &j.top_dx;
        let next = &j.top * &j.next + &j.next * &j.top + dxi_q * &j.top_dx * (-I);
        Ok(NumJet { top, top_dx, next })
    }

    pub fn jet(&self, op: BaseOperator, xi: &[f64], z: Complex64) -> Result<NumJet, OracleError> {
        match op {
            BaseOperator::DInv => self.parametrix(xi, z, false),
            BaseOperator::DStarInv => self.parametrix(xi, z, true),
            BaseOperator::DInvSq => self.squared(xi, z, false),
            BaseOperator::DStarInvSq => self.squared(xi, z, true),
            BaseOperator::D | BaseOperator::DStar => Err(OracleError::Unsupported("numeric jets exist for negative orders only".into())),
        }
    }
}
