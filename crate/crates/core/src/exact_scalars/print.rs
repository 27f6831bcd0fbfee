//! Canonical string form for polynomials.
//!
//! Terms appear in descending lexicographic order, factors are joined with
//! `" * "`, and any common power of `pi` and `Omega` is pulled out to the right.
//! With a dimension supplied, the linear combination `c*(A[1,1,n] + ... +
//! A[n-1,n-1,n])` is written as `c * (Sum_i A[i,i,n])`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::gaussian::GaussianRational;
use super::poly::{Monomial, PolyScalar, Var};

/// Placeholder text for the normal torsion trace.
pub const NORMAL_TRACE: &str = "(Sum_i A[i,i,n])";

/// Monomials `A[i,i,n]`, `i = 1..n-1`.
pub fn normal_trace_members(n: u8) -> Vec<Monomial> {
    (1..n).map(|i| Monomial::var(Var::A(i, i, n), 1)).collect()
}

/// `Sum_i A[i,i,n]` as a polynomial.
pub fn normal_trace(n: u8) -> PolyScalar {
    let mut p = PolyScalar::zero();
    for m in normal_trace_members(n) {
        p.add_term(m, &GaussianRational::one());
    }
    p
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Style {
    Text,
    Latex,
}

fn var_string(v: Var, style: Style) -> String {
    match (style, v) {
        (Style::Text, v) => v.to_string(),
        (Style::Latex, Var::Xi(k)) => alloc::format!("\\xi_{{{}}}", k),
        (Style::Latex, Var::Hp) => String::from("h'(0)"),
        (Style::Latex, Var::A(i, s, t)) => alloc::format!("A_{{{}{}{}}}", i, s, t),
        (Style::Latex, Var::M) => String::from("m"),
        (Style::Latex, Var::Rijij) => String::from("R_{ijij}"),
        (Style::Latex, Var::Pi) => String::from("\\pi"),
        (Style::Latex, Var::Omega) => String::from("\\Omega"),
    }
}

fn factor_strings(m: &Monomial, style: Style) -> Vec<String> {
    m.factors()
        .iter()
        .map(|&(v, e)| {
            let base = var_string(v, style);
            match (e, style) {
                (1, _) => base,
                (_, Style::Text) => alloc::format!("{}^{}", base, e),
                (_, Style::Latex) => alloc::format!("{}^{{{}}}", base, e),
            }
        })
        .collect()
}

fn coeff_string(c: &GaussianRational, style: Style) -> String {
    if style == Style::Text {
        return c.to_string();
    }
    let frac = |q: &super::gaussian::Rational| {
        if q.is_integer() {
            q.numer().to_string()
        } else {
            alloc::format!("\\frac{{{}}}{{{}}}", q.numer(), q.denom())
        }
    };
    if c.im.is_zero() {
        frac(&c.re)
    } else if c.re.is_zero() {
        if c.im.is_one() {
            String::from("i")
        } else if (-c.im.clone()).is_one() {
            String::from("-i")
        } else {
            alloc::format!("{} i", frac(&c.im))
        }
    } else {
        let sign = if c.im < super::gaussian::Rational::zero() { "-" } else { "+" };
        let im = if c.im < super::gaussian::Rational::zero() { -c.im.clone() } else { c.im.clone() };
        let imag = if im.is_one() { String::from("i") } else { alloc::format!("{} i", frac(&im)) };
        alloc::format!("\\left({} {} {}\\right)", frac(&c.re), sign, imag)
    }
}

/// Render one term as (is_negative, text without the sign).
fn render_term(c: &GaussianRational, factors: &[String], style: Style) -> (bool, String) {
    let neg = c.prints_negative();
    let mag = if neg { -c } else { c.clone() };
    if factors.is_empty() {
        return (neg, coeff_string(&mag, style));
    }
    let sep = if style == Style::Text { " * " } else { " " };
    let body = factors.join(sep);
    if mag.is_one() {
        (neg, body)
    } else {
        (neg, alloc::format!("{}{}{}", coeff_string(&mag, style), sep, body))
    }
}

/// Canonical text of `p`; `group_n` enables the normal-trace grouping.
pub fn canonical(p: &PolyScalar, group_n: Option<u8>) -> String {
    render(p, group_n, Style::Text)
}

/// LaTeX form with the same term order and grouping as [`canonical`].
pub fn latex(p: &PolyScalar, group_n: Option<u8>) -> String {
    render(p, group_n, Style::Latex)
}

fn render(p: &PolyScalar, group_n: Option<u8>, style: Style) -> String {
    if p.is_zero() {
        return String::from("0");
    }
    let sep = if style == Style::Text { " * " } else { " " };
    let trace_text = match style {
        Style::Text => String::from(NORMAL_TRACE),
        Style::Latex => String::from("\\Big(\\sum_i A_{iin}\\Big)"),
    };
    let common = p.common_factor(|v| matches!(v, Var::Pi | Var::Omega));
    let rem = p.div_monomial(&common).expect("common factor divides");

    let group = group_n.and_then(|n| {
        let members = normal_trace_members(n);
        let c = rem.coefficient(members.first()?);
        if n >= 2 && !c.is_zero() && members.iter().all(|m| rem.coefficient(m) == c) {
            Some((members, c))
        } else {
            None
        }
    });

    let mut items: Vec<(GaussianRational, Vec<String>)> = Vec::new();
    for (m, c) in rem.terms().rev() {
        if let Some((members, gc)) = &group {
            if let Some(pos) = members.iter().position(|x| x == m) {
                if pos == 0 {
                    items.push((gc.clone(), alloc::vec![trace_text.clone()]));
                }
                continue;
            }
        }
        items.push((c.clone(), factor_strings(m, style)));
    }
    let tail = factor_strings(&common, style);

    if items.len() == 1 {
        let (c, mut fs) = items.pop().unwrap();
        fs.extend(tail);
        let (neg, body) = render_term(&c, &fs, style);
        return if neg { alloc::format!("-{}", body) } else { body };
    }

    let mut body = String::new();
    for (k, (c, fs)) in items.iter().enumerate() {
        let (neg, t) = render_term(c, fs, style);
        if k == 0 {
            if neg {
                body.push('-');
            }
        } else {
            body.push_str(if neg { " - " } else { " + " });
        }
        body.push_str(&t);
    }
    if tail.is_empty() {
        body
    } else if style == Style::Text {
        alloc::format!("({}){}{}", body, sep, tail.join(sep))
    } else {
        alloc::format!("\\left({}\\right){}{}", body, sep, tail.join(sep))
    }
}
