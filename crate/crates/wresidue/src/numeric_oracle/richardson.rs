//! Floating-point check of the `Wres` limit for the nonminimal operator.
//!
//! The unexpanded product is evaluated at `m = m0 + 2 eps` for shrinking `eps`
//! and extrapolated to `eps = 0`.

use std::f64::consts::PI;

use statrs::function::gamma::gamma;
use wres_core::exact_scalars::{PolyScalar, Rational, Var};
use wres_core::heat_nonminimal::{nonminimal_a2, wres_nonminimal, Dim, HeatParams, LogAtom, SeriesCoeff, Weight};

use super::eval::eval_poly_with;
use super::OracleError;

fn to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RichardsonCheck {
    pub steps: Vec<f64>,
    pub samples: Vec<f64>,
    pub extrapolated: f64,
    pub exact: f64,
    /// `(numeric, exact)` first-order coefficient at a pole.
    pub slope: Option<(f64, f64)>,
    pub tolerance: f64,
}

impl RichardsonCheck {
    pub fn limit_ok(&self) -> bool {
        (self.extrapolated - self.exact).abs() <= self.tolerance * self.exact.abs().max(1.0)
    }

    pub fn slope_ok(&self) -> bool {
        self.slope.map_or(true, |(a, b)| (a - b).abs() <= self.tolerance * b.abs().max(1.0))
    }

    pub fn passed(&self) -> bool {
        self.limit_ok() && self.slope_ok()
    }
}

/// `(m-2)(2 pi)^4 / Gamma((m-k)/2) * (4 pi)^(-m/2) * sum_w w(m) P_w(m)` at real `m`.
pub fn wres_float(hp: &HeatParams, m: f64, rijij: f64) -> Result<f64, OracleError> {
    let sym = HeatParams { m: Dim::Symbolic, ..hp.clone() };
    let e = nonminimal_a2(&sym).map_err(|e| OracleError::Unsupported(e.to_string()))?;
    let bind = |v: Var| match v {
        Var::M => Ok(m),
        Var::Rijij => Ok(rijij),
        other => Err(OracleError::UnboundIndeterminate(other.to_string())),
    };
    let mut sum = 0.0;
    for (w, p) in e.parts() {
        let weight = match w {
            Weight::One => 1.0,
            Weight::HalfA2 => (to_f64(&hp.a2) / 2.0).powf(2.0 - m / 2.0),
            Weight::HalfB2 => (to_f64(&hp.b2) / 2.0).powf(2.0 - m / 2.0),
        };
        sum += weight * eval_poly_with(p, bind)?.re;
    }
    let z = (m - hp.k as f64) / 2.0;
    Ok((m - 2.0) * (2.0 * PI).powi(4) / gamma(z) * (4.0 * PI).powf(-m / 2.0) * sum)
}

fn coeff_value(c: &SeriesCoeff, hp: &HeatParams, rijij: f64) -> Result<f64, OracleError> {
    let bind = |v: Var| match v {
        Var::Rijij => Ok(rijij),
        other => Err(OracleError::UnboundIndeterminate(other.to_string())),
    };
    let mut acc = 0.0;
    for (atom, p) in c {
        let a = match atom {
            LogAtom::One => 1.0,
            LogAtom::EulerGamma => 0.577_215_664_901_532_9,
            LogAtom::LnFourPi => (4.0 * PI).ln(),
            LogAtom::LnHalfA2 => (to_f64(&hp.a2) / 2.0).ln(),
            LogAtom::LnHalfB2 => (to_f64(&hp.b2) / 2.0).ln(),
        };
        acc += a * eval_poly_with(p, bind)?.re;
    }
    Ok(acc)
}

fn extrapolate(samples: &[f64]) -> f64 {
    // steps shrink by 10: eliminate the eps and eps^2 terms
    let r1: Vec<f64> = samples.windows(2).map(|w| (10.0 * w[1] - w[0]) / 9.0).collect();
    let r2: Vec<f64> = r1.windows(2).map(|w| (100.0 * w[1] - w[0]) / 99.0).collect();
    *r2.last().or(r1.last()).unwrap_or(&samples[0])
}

/// Compare the extrapolated float limit with the exact report.
pub fn richardson_wres(hp: &HeatParams, rijij: f64, tolerance: f64) -> Result<RichardsonCheck, OracleError> {
    let m0 = match hp.m {
        Dim::Value(v) => v as f64,
        Dim::Symbolic => return Err(OracleError::Unsupported("dimension must be fixed".into())),
    };
    let rep = wres_nonminimal(hp).map_err(|e| OracleError::Unsupported(e.to_string()))?;
    let pi_pow = PI.powi(rep.pi_exp);
    let bind = |v: Var| match v {
        Var::Rijij => Ok(rijij),
        other => Err(OracleError::UnboundIndeterminate(other.to_string())),
    };
    let exact = eval_poly_with(&rep.limit, bind)?.re * pi_pow;
    let steps = vec![1e-3, 1e-4, 1e-5];
    let samples = steps.iter().map(|e| wres_float(hp, m0 + 2.0 * e, rijij)).collect::<Result<Vec<f64>, _>>()?;
    let extrapolated = extrapolate(&samples);
    let slope = match &rep.series {
        Some(s) => {
            let quot: Vec<f64> = steps.iter().zip(&samples).map(|(e, f)| (f - exact) / e).collect();
            Some((extrapolate(&quot), coeff_value(&s[1], hp, rijij)? * pi_pow))
        }
        None => None,
    };
    Ok(RichardsonCheck { steps, samples, extrapolated, exact, slope, tolerance })
}

/// Float value of a polynomial in `Rijij` times `pi^e`, for printing.
pub fn claim_value(p: &PolyScalar, pi_exp: i32, rijij: f64) -> Result<f64, OracleError> {
    let bind = |v: Var| match v {
        Var::Rijij => Ok(rijij),
        other => Err(OracleError::UnboundIndeterminate(other.to_string())),
    };
    Ok(eval_poly_with(p, bind)?.re * PI.powi(pi_exp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use wres_core::exact_scalars::rat;

    #[test]
    fn pole_limit_and_slope() {
        let hp = HeatParams::new(Dim::Value(4), 4, rat(3, 1), rat(5, 1));
        let c = richardson_wres(&hp, 1.0, 1e-6).unwrap();
        assert!(c.exact == 0.0);
        assert!(c.limit_ok(), "{c:?}");
        let (num, ex) = c.slope.unwrap();
        assert!((ex + PI * PI / 3.0).abs() < 1e-12);
        assert!((num - ex).abs() < 1e-6, "{c:?}");
    }

    #[test]
    fn regular_point() {
        let hp = HeatParams::new(Dim::Value(6), 0, rat(3, 1), rat(2, 1));
        let c = richardson_wres(&hp, 2.0, 1e-6).unwrap();
        assert!((c.exact + PI * 2.0 / 12.0).abs() < 1e-12);
        assert!(c.passed(), "{c:?}");
    }
}
