//! Two-term statements: a quoted interior constant next to the computed boundary term.

use alloc::string::String;
use alloc::vec::Vec;

use crate::exact_scalars::print::{canonical, latex};
use crate::exact_scalars::{rat, GaussianRational, Monomial, PolyScalar, Rational, Var};

use super::{BoundaryError, PhiResult};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum TheoremId {
    /// Four-dimensional volume for `(D_T^*)^{-1} D_T^{-1}`.
    Volume4,
    /// Interior and boundary parts of the gravitational action with torsion.
    GravityBoundary,
    /// Six-dimensional volume for `(D_T^*)^{-2} D_T^{-2}`.
    Volume6,
    /// Four-dimensional volume with the chiral projector on the left.
    ChiralVolume4,
}

impl TheoremId {
    pub const ALL: [TheoremId; 4] = [TheoremId::Volume4, TheoremId::GravityBoundary, TheoremId::Volume6, TheoremId::ChiralVolume4];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::Volume4 => "volume4",
            TheoremId::GravityBoundary => "gravity-boundary",
            TheoremId::Volume6 => "volume6",
            TheoremId::ChiralVolume4 => "chiral-volume4",
        }
    }

    fn dimension(self) -> u8 {
        match self {
            TheoremId::Volume6 => 6,
            _ => 4,
        }
    }
}

/// `coefficient * pi^pi_power * ∫_M integrand`. Taken as given, not derived here.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InteriorTerm {
    pub coefficient: Rational,
    pub pi_power: i32,
    pub integrand: &'static str,
    pub integrand_latex: &'static str,
    pub quoted: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReportCheck {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TheoremReport {
    pub id: TheoremId,
    pub interior: InteriorTerm,
    /// Boundary density (integrated over the boundary against `dx'`).
    pub boundary: PolyScalar,
    pub text: String,
    pub latex: String,
    pub checks: Vec<ReportCheck>,
}

const TORSION_SCALAR: &str = "(R + 18 div(V) - 54 |V|^2 - 9 |T|^2)";
const TORSION_SCALAR_LATEX: &str = "\\tilde{R}";

fn interior(id: TheoremId) -> InteriorTerm {
    match id {
        TheoremId::Volume4 | TheoremId::GravityBoundary => InteriorTerm {
            coefficient: rat(-1, 48),
            pi_power: -2,
            integrand: TORSION_SCALAR,
            integrand_latex: TORSION_SCALAR_LATEX,
            quoted: true,
        },
        TheoremId::Volume6 => InteriorTerm {
            coefficient: rat(-1, 48),
            pi_power: -2,
            integrand: "(R - 9 |T|^2)",
            integrand_latex: "(R - 9\\|T\\|^{2})",
            quoted: true,
        },
        TheoremId::ChiralVolume4 => InteriorTerm {
            coefficient: rat(-1, 96),
            pi_power: -2,
            integrand: "(Rt omega_g + 18 (dT - <T, *V> omega_g))",
            integrand_latex: "(\\tilde{R}\\omega^{g} + \\tilde{C}_{H})",
            quoted: true,
        },
    }
}

fn interior_text(t: &InteriorTerm) -> String {
    alloc::format!("{}/({}pi^{}) * Int_M {} dx", t.coefficient.numer(), t.coefficient.denom(), -t.pi_power, t.integrand)
}

fn interior_latex(t: &InteriorTerm) -> String {
    let sign = if t.coefficient < Rational::from_integer(0.into()) { "-" } else { "" };
    let mag = if sign.is_empty() { t.coefficient.clone() } else { -t.coefficient.clone() };
    alloc::format!("{}\\frac{{{}}}{{{}\\pi^{{{}}}}}\\int_M {}\\,dx", sign, mag.numer(), mag.denom(), -t.pi_power, t.integrand_latex)
}

fn volume_name(id: TheoremId) -> (&'static str, &'static str) {
    match id {
        TheoremId::Volume6 => ("Vol_6^(2,2)", "\\mathrm{Vol}_6^{(2,2)}"),
        TheoremId::ChiralVolume4 => ("Vol~_4^(1,1)", "\\widetilde{\\mathrm{Vol}}_4^{(1,1)}"),
        _ => ("Vol_4^(1,1)", "\\mathrm{Vol}_4^{(1,1)}"),
    }
}

/// Statement for `which`, using `phi` from the matching configuration.
pub fn assemble_theorem_report(which: TheoremId, phi: &PhiResult) -> Result<TheoremReport, BoundaryError> {
    if phi.n != which.dimension() {
        return Err(BoundaryError::Precondition("boundary term computed in the wrong dimension"));
    }
    let n = phi.n;
    let inter = interior(which);
    let mut checks = Vec::new();
    let (text, tex, boundary) = if which == TheoremId::GravityBoundary {
        let pi_omega = Monomial::from_pairs(alloc::vec![(Var::Pi, 1), (Var::Omega, 1)]);
        let reduced = phi
            .total
            .div_monomial(&pi_omega)
            .ok_or(BoundaryError::Precondition("boundary term is not a multiple of pi * Omega"))?;
        let b = reduced.scale(&GaussianRational::int(-2));
        // K~ at the base point is the normal torsion trace (flat collar, K = 0).
        let k_tilde = crate::exact_scalars::print::normal_trace(n);
        checks.push(ReportCheck { name: String::from("I_Gr,b equals 2 * K~"), passed: b == k_tilde.scale(&GaussianRational::int(2)) });
        // -3 pi times the interior residue constant gives the Einstein-Hilbert 1/(16 pi).
        let scaled = inter.coefficient.clone() * Rational::from_integer((-3).into());
        checks.push(ReportCheck { name: String::from("-3 pi * Wres_i has coefficient 1/(16 pi)"), passed: scaled == rat(1, 16) });
        let text = alloc::format!(
            "I_Gr,i = -3 * pi * Wres_i = 1/(16 pi) * Int_M {} dx\nI_Gr,b = -2/(pi * Omega) * Wres_b = Int_dM {} dx'",
            inter.integrand,
            canonical(&b, Some(n))
        );
        let tex = alloc::format!(
            "I_{{\\mathrm{{Gr,i}}}} = -3\\pi\\,\\widetilde{{\\mathrm{{Wres}}}}_i = \\frac{{1}}{{16\\pi}}\\int_M {}\\,dx, \\qquad I_{{\\mathrm{{Gr,b}}}} = \\frac{{-2}}{{\\pi\\Omega}}\\widetilde{{\\mathrm{{Wres}}}}_b = \\int_{{\\partial M}} {}\\,dx'",
            inter.integrand_latex,
            latex(&b, Some(n))
        );
        (text, tex, b)
    } else {
        let (name, name_tex) = volume_name(which);
        let b = phi.total.clone();
        checks.push(ReportCheck {
            name: String::from("boundary term is free of hp"),
            passed: super::metric_sector(&b).is_zero(),
        });
        let text = alloc::format!("{} = {} + Int_dM ({}) dx'", name, interior_text(&inter), canonical(&b, Some(n)));
        let tex = alloc::format!("{} = {} + \\int_{{\\partial M}} {}\\,dx'", name_tex, interior_latex(&inter), latex(&b, Some(n)));
        (text, tex, b)
    };
    Ok(TheoremReport { id: which, interior: inter, boundary, text, latex: tex, checks })
}
