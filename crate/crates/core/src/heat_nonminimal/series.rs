//! `Wres = (m-2)(2 pi)^4 / Gamma((m-k)/2) * a_2`, evaluated exactly or, at a
//! pole of `Gamma`, as a series in `eps` with `m = m0 + 2 eps`.
//!
//! Near `z = -j`: `1/Gamma(-j + eps) = (-1)^j j! eps (1 + eps (gamma_E - H_j)) + O(eps^3)`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::exact_scalars::print::canonical;
use crate::exact_scalars::{rat_int, PolyScalar, Rational, Var};

use super::{half_weight, nonminimal_a2, Dim, HeatError, HeatParams, Weight};

/// Transcendental constants appearing in the series coefficients.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum LogAtom {
    One,
    EulerGamma,
    LnFourPi,
    /// `ln(a^2/2)`
    LnHalfA2,
    /// `ln(b^2/2)`
    LnHalfB2,
}

impl LogAtom {
    pub fn name(self) -> &'static str {
        match self {
            LogAtom::One => "1",
            LogAtom::EulerGamma => "gamma_E",
            LogAtom::LnFourPi => "ln(4 pi)",
            LogAtom::LnHalfA2 => "ln(a^2/2)",
            LogAtom::LnHalfB2 => "ln(b^2/2)",
        }
    }
}

/// `sum_atom atom * poly` (polynomials in `Rijij`).
pub type SeriesCoeff = BTreeMap<LogAtom, PolyScalar>;

fn add_atom(c: &mut SeriesCoeff, a: LogAtom, p: &PolyScalar) {
    let mut cur = c.remove(&a).unwrap_or_default();
    cur.add_assign_ref(p);
    if !cur.is_zero() {
        c.insert(a, cur);
    }
}

fn scale_coeff(c: &SeriesCoeff, q: &Rational) -> SeriesCoeff {
    let mut out = SeriesCoeff::new();
    for (a, p) in c {
        add_atom(&mut out, *a, &p.scale_rational(q));
    }
    out
}

fn coeff_text(c: &SeriesCoeff) -> String {
    if c.is_empty() {
        return String::from("0");
    }
    let parts: Vec<String> = c
        .iter()
        .map(|(a, p)| if *a == LogAtom::One { alloc::format!("({})", canonical(p, None)) } else { alloc::format!("{} * ({})", a.name(), canonical(p, None)) })
        .collect();
    parts.join(" + ")
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WresReport {
    pub params: HeatParams,
    /// Every value below multiplies `pi^pi_exp`.
    pub pi_exp: i32,
    /// `j` with `(m-k)/2 = -j` when the Gamma factor has a pole.
    pub pole: Option<u32>,
    /// Finite value away from poles.
    pub direct: Option<PolyScalar>,
    /// Coefficients of `eps^0, eps^1, eps^2` at a pole.
    pub series: Option<[SeriesCoeff; 3]>,
    /// Value (or `eps -> 0` limit).
    pub limit: PolyScalar,
    /// The product with the `1/Gamma` factor left out, evaluated at `m`.
    pub without_gamma: PolyScalar,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClaimComparison {
    pub claim: PolyScalar,
    pub claim_pi_exp: i32,
    pub matches_limit: bool,
    pub matches_without_gamma: bool,
}

impl WresReport {
    pub fn compare(&self, claim: &PolyScalar, claim_pi_exp: i32) -> ClaimComparison {
        let eq = |v: &PolyScalar| if claim.is_zero() { v.is_zero() } else { claim_pi_exp == self.pi_exp && claim == v };
        ClaimComparison { claim: claim.clone(), claim_pi_exp, matches_limit: eq(&self.limit), matches_without_gamma: eq(&self.without_gamma) }
    }
}

impl fmt::Display for WresReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pi = |p: &PolyScalar| if p.is_zero() { String::from("0") } else { alloc::format!("({}) * pi^{}", canonical(p, None), self.pi_exp) };
        let m = match self.params.m {
            Dim::Value(v) => v,
            Dim::Symbolic => 0,
        };
        writeln!(f, "Wres at m = {}, k = {}, a^2 = {}, b^2 = {}", m, self.params.k, self.params.a2, self.params.b2)?;
        match (&self.series, self.pole) {
            (Some(s), Some(j)) => {
                writeln!(f, "Gamma((m-k)/2) has a pole at {}; m = {} + 2 eps", -(j as i64), m)?;
                for (i, c) in s.iter().enumerate() {
                    writeln!(f, "  eps^{}: [{}] * pi^{}", i, coeff_text(c), self.pi_exp)?;
                }
                writeln!(f, "limit eps -> 0: {}", pi(&self.limit))?;
            }
            _ => writeln!(f, "value: {}", pi(&self.limit))?,
        }
        write!(f, "without the 1/Gamma factor: {}", pi(&self.without_gamma))
    }
}

fn d_m(p: &PolyScalar) -> PolyScalar {
    let mut out = PolyScalar::zero();
    for (mono, c) in p.terms() {
        let e = mono.exponent(Var::M);
        if e == 0 {
            continue;
        }
        let lower = mono.div(&crate::exact_scalars::Monomial::var(Var::M, 1)).unwrap();
        out.add_term(lower, &c.scale(&rat_int(e as i64)));
    }
    out
}

fn at(p: &PolyScalar, m: u32) -> PolyScalar {
    p.substitute(Var::M, &PolyScalar::int(m as i64))
}

fn harmonic(j: u32) -> Rational {
    (1..=j as i64).fold(Rational::zero(), |acc, i| acc + Rational::one() / rat_int(i))
}

fn factorial(j: u32) -> Rational {
    (1..=j as i64).fold(Rational::one(), |acc, i| acc * rat_int(i))
}

pub fn wres_nonminimal(hp: &HeatParams) -> Result<WresReport, HeatError> {
    let m0 = match hp.m {
        Dim::Value(v) => v,
        Dim::Symbolic => return Err(HeatError::NotExact("the dimension must be fixed")),
    };
    let symbolic = HeatParams { m: Dim::Symbolic, ..hp.clone() };
    hp.check()?;
    if m0 % 2 != 0 || (m0 as i64 - hp.k as i64) % 2 != 0 {
        return Err(HeatError::NotExact("m and m - k must both be even"));
    }
    let expr = nonminimal_a2(&symbolic)?;
    // (2 pi)^4 (4 pi)^(-m0/2) = 2^(4 - m0) pi^(4 - m0/2)
    let pi_exp = 4 - (m0 as i32) / 2;
    let two_pow = if m0 <= 4 { num_traits::pow(rat_int(2), (4 - m0) as usize) } else { Rational::one() / num_traits::pow(rat_int(2), (m0 - 4) as usize) };
    let mm2 = rat_int(m0 as i64 - 2);

    let weight_val = |w: Weight| -> Result<Rational, HeatError> {
        match w {
            Weight::One => Ok(Rational::one()),
            Weight::HalfA2 => half_weight(&hp.a2, m0),
            Weight::HalfB2 => half_weight(&hp.b2, m0),
        }
    };
    let weight_log = |w: Weight| match w {
        Weight::One => None,
        Weight::HalfA2 => Some(LogAtom::LnHalfA2),
        Weight::HalfB2 => Some(LogAtom::LnHalfB2),
    };

    let mut g0 = PolyScalar::zero();
    let mut g1 = SeriesCoeff::new();
    for (w, p) in expr.parts() {
        let wv = weight_val(w)?;
        let p0 = at(p, m0);
        let dp0 = at(&d_m(p), m0);
        g0.add_assign_ref(&p0.scale_rational(&(wv.clone() * mm2.clone())));
        // d/d eps of (m-2) W(m) P(m) (4 pi)^(-m/2) at eps = 0, m = m0 + 2 eps
        add_atom(&mut g1, LogAtom::One, &p0.scale_rational(&(wv.clone() * rat_int(2))));
        add_atom(&mut g1, LogAtom::One, &dp0.scale_rational(&(wv.clone() * mm2.clone() * rat_int(2))));
        if let Some(a) = weight_log(w) {
            add_atom(&mut g1, a, &p0.scale_rational(&(-(wv.clone() * mm2.clone()))));
        }
        add_atom(&mut g1, LogAtom::LnFourPi, &p0.scale_rational(&(-(wv * mm2.clone()))));
    }
    let g0 = g0.scale_rational(&two_pow);
    let g1 = scale_coeff(&g1, &two_pow);

    let z = (m0 as i64 - hp.k as i64) / 2;
    if z >= 1 {
        let value = g0.scale_rational(&(Rational::one() / factorial((z - 1) as u32)));
        return Ok(WresReport { params: hp.clone(), pi_exp, pole: None, direct: Some(value.clone()), series: None, limit: value, without_gamma: g0 });
    }
    let j = (-z) as u32;
    let lead = if j % 2 == 0 { factorial(j) } else { -factorial(j) };
    let c0 = SeriesCoeff::new();
    let mut c1 = SeriesCoeff::new();
    add_atom(&mut c1, LogAtom::One, &g0.scale_rational(&lead));
    let mut c2 = scale_coeff(&g1, &lead);
    add_atom(&mut c2, LogAtom::EulerGamma, &g0.scale_rational(&lead));
    add_atom(&mut c2, LogAtom::One, &g0.scale_rational(&(-(lead.clone() * harmonic(j)))));
    Ok(WresReport {
        params: hp.clone(),
        pi_exp,
        pole: Some(j),
        direct: None,
        series: Some([c0, c1, c2]),
        limit: PolyScalar::zero(),
        without_gamma: g0,
    })
}
