//! Boundary term `Phi` of the residue of a composition of two operators.
//!
//! For left/right operators of orders `-p1`, `-p2` in dimension `n`, the sum
//! runs over tuples `(r, l, k, j, |alpha|)` with `r <= -p1`, `l <= -p2` and
//! `r + l - k - j - |alpha| - 1 = -n`. Each tuple contributes
//!
//! ```text
//! (-i)^(|alpha|+j+k+1) / (alpha! (j+k+1)!)
//!   * ∫_{|xi'|=1} ∫_R tr[ d_xn^j d_xi'^alpha d_xin^k pi+(W sigma_r(left))
//!                        * d_x'^alpha d_xin^(j+1) d_xn^k sigma_l(right) ] dxin dsigma(xi')
//! ```
//!
//! Tangential derivatives vanish at the base point, so `|alpha| > 0` gives zero.

mod report;
pub mod sphere;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::exact_scalars::{GaussianRational, PolyScalar, Rational, ScalarError, Var, XnRational};
use crate::multilinear::{word_product, CliffordElem};
use crate::symbol_engine::{build_operator_jet, pi_plus, OperatorSpec, OrderAvailability, SymbolError, SymbolJet};

pub use report::{assemble_theorem_report, InteriorTerm, ReportCheck, TheoremId, TheoremReport};
pub use sphere::{integrate_sphere, moment};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoundaryError {
    #[error("tuple needs order {order} of the {side} operator, which is not stored")]
    DepthExceeded { side: Side, order: i32 },
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error("no case has indices {0}")]
    UnknownTarget(CaseIndices),
    #[error(transparent)]
    Symbol(#[from] SymbolError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// `(r, l, k, j, |alpha|)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CaseIndices {
    pub r: i32,
    pub l: i32,
    pub k: u32,
    pub j: u32,
    pub alpha: u32,
}

impl CaseIndices {
    pub fn new(r: i32, l: i32, k: u32, j: u32, alpha: u32) -> Self {
        CaseIndices { r, l, k, j, alpha }
    }

    /// Short name of the case for the two-term configurations: a(I), a(II),
    /// a(III) for the derivative cases, b and c for the lowered orders.
    pub fn label(&self, p1: u32, p2: u32) -> String {
        let top = self.r == -(p1 as i32) && self.l == -(p2 as i32);
        let s = match (self.alpha, self.j, self.k) {
            (1, 0, 0) if top => "a(I)",
            (0, 1, 0) if top => "a(II)",
            (0, 0, 1) if top => "a(III)",
            (0, 0, 0) if self.r == -(p1 as i32) - 1 && self.l == -(p2 as i32) => "b",
            (0, 0, 0) if self.r == -(p1 as i32) && self.l == -(p2 as i32) - 1 => "c",
            _ => return alloc::format!("({},{},{},{},{})", self.r, self.l, self.k, self.j, self.alpha),
        };
        String::from(s)
    }
}

impl fmt::Display for CaseIndices {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r={}, l={}, k={}, j={}, |alpha|={}", self.r, self.l, self.k, self.j, self.alpha)
    }
}

/// All admissible tuples for the given orders, checked against what the jets store.
pub fn enumerate_cases(
    n: u8,
    p1: u32,
    p2: u32,
    left: &OrderAvailability,
    right: &OrderAvailability,
) -> Result<Vec<CaseIndices>, BoundaryError> {
    let (top_l, top_r) = (-(p1 as i32), -(p2 as i32));
    if !left.value.contains(&top_l) {
        return Err(BoundaryError::DepthExceeded { side: Side::Left, order: top_l });
    }
    if !right.value.contains(&top_r) {
        return Err(BoundaryError::DepthExceeded { side: Side::Right, order: top_r });
    }
    if p1 + p2 > n as u32 {
        return Err(BoundaryError::Precondition("p1 + p2 must not exceed n"));
    }
    let n = n as i32;
    let mut out = Vec::new();
    for r in ((1 - n + p2 as i32)..=top_l).rev() {
        for l in ((1 - n - r)..=top_r).rev() {
            let s = (r + l - 1 + n) as u32;
            for alpha in (0..=s).rev() {
                for j in (0..=s - alpha).rev() {
                    let k = s - alpha - j;
                    out.push(CaseIndices::new(r, l, k, j, alpha));
                }
            }
        }
    }
    for t in &out {
        let need_left = t.j > 1 || !left.value.contains(&t.r) || (t.j == 1 && !left.dxn.contains(&t.r));
        if need_left {
            return Err(BoundaryError::DepthExceeded { side: Side::Left, order: t.r });
        }
        let need_right = t.k > 1 || !right.value.contains(&t.l) || (t.k == 1 && !right.dxn.contains(&t.l));
        if need_right {
            return Err(BoundaryError::DepthExceeded { side: Side::Right, order: t.l });
        }
    }
    Ok(out)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CaseResult {
    pub indices: CaseIndices,
    pub label: String,
    /// Spinor trace before the `xin` and sphere integrations, without the prefactor.
    pub integrand_trace: XnRational,
    pub value: PolyScalar,
}

fn factorial(k: u32) -> Rational {
    (1..=k as i64).fold(Rational::from_integer(1.into()), |acc, x| acc * Rational::from_integer(x.into()))
}

/// `(-i)^(|alpha|+j+k+1) / (alpha! (j+k+1)!)`; only `|alpha| <= 1` occurs, where `alpha! = 1`.
pub fn case_prefactor(t: &CaseIndices) -> GaussianRational {
    let p = t.alpha + t.j + t.k + 1;
    let minus_i_pow = GaussianRational::i_pow(3 * p as i64);
    let den = factorial(t.alpha) * factorial(t.j + t.k + 1);
    minus_i_pow.scale(&(Rational::from_integer(1.into()) / den))
}

/// `tr(a b)` using only the words whose product is the identity.
pub fn trace_product(a: &CliffordElem, b: &CliffordElem) -> XnRational {
    let n = a.dim();
    let mut acc = XnRational::zero();
    for (w, ca) in a.words() {
        let cb = b.coefficient(w);
        if cb.is_zero() {
            continue;
        }
        let (sign, _) = word_product(w, w);
        let prod = ca * &cb;
        acc = if sign > 0 { &acc + &prod } else { &acc - &prod };
    }
    acc.scale(&GaussianRational::int(1i64 << (n / 2)))
}

/// Every monomial carries `pi * Omega` once and one factor from `{hp, A}`.
pub fn is_structured(v: &PolyScalar) -> bool {
    v.terms().all(|(m, _)| {
        let (po, rest) = m.split(|x| matches!(x, Var::Pi | Var::Omega));
        po.exponent(Var::Pi) == 1
            && po.exponent(Var::Omega) == 1
            && rest.degree() == 1
            && rest.factors().iter().all(|(x, _)| matches!(x, Var::Hp | Var::A(..)))
    })
}

/// One case from prebuilt jets.
pub fn compute_case_with_jets(
    t: CaseIndices,
    p: (u32, u32),
    left: &SymbolJet,
    right: &SymbolJet,
    projector: Option<&CliffordElem>,
) -> Result<CaseResult, BoundaryError> {
    let n = left.dim();
    let label = t.label(p.0, p.1);
    if t.alpha > 0 {
        // d_x' of the right symbol vanishes at the base point
        left.value(t.r)?;
        right.value(t.l)?;
        return Ok(CaseResult { indices: t, label, integrand_trace: XnRational::zero(), value: PolyScalar::zero() });
    }
    let mut lsym = if t.j == 1 { left.d_x_n(t.r)? } else { left.value(t.r)?.clone() };
    if let Some(w) = projector {
        lsym = w * &lsym;
    }
    let mut lp = pi_plus(&lsym)?;
    for _ in 0..t.k {
        lp = lp.d_xn_coeffs();
    }
    let mut rsym = if t.k == 1 { right.d_x_n(t.l)? } else { right.value(t.l)?.clone() };
    for _ in 0..=t.j {
        rsym = rsym.d_xn_coeffs();
    }
    let tr = trace_product(&lp, &rsym);
    let line = tr.integrate_real_line()?;
    let value = integrate_sphere(&line, n).scale(&case_prefactor(&t));
    debug_assert!(is_structured(&value), "unexpected shape of case value {}", value);
    Ok(CaseResult { indices: t, label, integrand_trace: tr, value })
}

fn orders_of(spec: &OperatorSpec) -> Result<u32, BoundaryError> {
    let o = spec.base.leading_order();
    if o >= 0 {
        return Err(BoundaryError::Precondition("operators must have negative order"));
    }
    Ok((-o) as u32)
}

/// One case, building the jets from the specifications.
pub fn compute_case(t: CaseIndices, left: &OperatorSpec, right: &OperatorSpec) -> Result<CaseResult, BoundaryError> {
    if left.n != right.n {
        return Err(BoundaryError::Precondition("left and right dimensions differ"));
    }
    let p = (orders_of(left)?, orders_of(right)?);
    let lj = build_operator_jet(left)?;
    let rj = build_operator_jet(right)?;
    compute_case_with_jets(t, p, &lj, &rj, left.projector.as_ref())
}

/// What a printed value refers to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TargetKey {
    Total,
    Case(CaseIndices),
}

/// A printed value to compare against.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CaseTarget {
    pub id: String,
    pub key: TargetKey,
    pub value: PolyScalar,
}

/// What the numeric side was asked to check.
#[derive(Clone, Copy, Debug)]
pub struct OracleQuery<'a> {
    pub key: &'a str,
    pub left: &'a OperatorSpec,
    pub right: &'a OperatorSpec,
    pub p1: u32,
    pub p2: u32,
    /// `None` for the total.
    pub indices: Option<CaseIndices>,
}

#[derive(Clone, PartialEq, Debug)]
pub struct OracleVerdict {
    pub draws: u32,
    pub tolerance: f64,
    /// Draws on which the engine value agreed with the quadrature.
    pub engine_agree: u32,
    /// Draws on which the printed value agreed with the quadrature.
    pub target_agree: u32,
    pub max_engine_dev: f64,
    pub max_target_dev: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Winner {
    Engine,
    Target,
    Both,
    Neither,
}

impl OracleVerdict {
    /// A side wins when it agrees on at least 95% of the draws.
    pub fn winner(&self) -> Winner {
        let ok = |a: u32| self.draws > 0 && a * 100 >= self.draws * 95;
        match (ok(self.engine_agree), ok(self.target_agree)) {
            (true, true) => Winner::Both,
            (true, false) => Winner::Engine,
            (false, true) => Winner::Target,
            (false, false) => Winner::Neither,
        }
    }
}

pub trait CaseOracle {
    fn arbitrate(&self, q: &OracleQuery<'_>, engine: &PolyScalar, target: &PolyScalar) -> Result<OracleVerdict, String>;
}

#[derive(Clone, PartialEq, Debug)]
pub enum OracleOutcome {
    NotRun,
    Failed(String),
    Ran(OracleVerdict),
}

#[derive(Clone, PartialEq, Debug)]
pub enum Verdict {
    Match { oracle: OracleOutcome },
    Mismatch { oracle: OracleOutcome },
}

impl Verdict {
    pub fn is_match(&self) -> bool {
        matches!(self, Verdict::Match { .. })
    }

    pub fn oracle(&self) -> &OracleOutcome {
        match self {
            Verdict::Match { oracle } | Verdict::Mismatch { oracle } => oracle,
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct LedgerEntry {
    pub key: String,
    pub target_id: String,
    pub target: PolyScalar,
    pub engine: PolyScalar,
    pub verdict: Verdict,
}

#[derive(Clone, PartialEq, Debug)]
pub struct PhiResult {
    pub n: u8,
    pub p1: u32,
    pub p2: u32,
    pub cases: Vec<CaseResult>,
    pub total: PolyScalar,
    pub ledger: Vec<LedgerEntry>,
}

impl PhiResult {
    pub fn case(&self, label: &str) -> Option<&CaseResult> {
        self.cases.iter().find(|c| c.label == label)
    }
}

/// When the oracle is consulted.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OraclePolicy {
    /// Only for ledger entries whose values differ.
    Mismatches,
    /// For every ledger entry.
    Always,
}

pub fn compute_phi(
    left: &OperatorSpec,
    right: &OperatorSpec,
    targets: &[CaseTarget],
    oracle: Option<&dyn CaseOracle>,
    policy: OraclePolicy,
) -> Result<PhiResult, BoundaryError> {
    if left.n != right.n {
        return Err(BoundaryError::Precondition("left and right dimensions differ"));
    }
    if right.projector.is_some() {
        return Err(BoundaryError::Precondition("only the left operator may carry a projector"));
    }
    let n = left.n;
    let (p1, p2) = (orders_of(left)?, orders_of(right)?);
    let lj = build_operator_jet(left)?;
    let rj = build_operator_jet(right)?;
    let tuples = enumerate_cases(n, p1, p2, &lj.availability(), &rj.availability())?;
    let mut cases = Vec::with_capacity(tuples.len());
    let mut total = PolyScalar::zero();
    for t in tuples {
        let c = compute_case_with_jets(t, (p1, p2), &lj, &rj, left.projector.as_ref())?;
        total.add_assign_ref(&c.value);
        cases.push(c);
    }

    let mut ledger = Vec::with_capacity(targets.len());
    for tg in targets {
        let (key, engine, indices) = match tg.key {
            TargetKey::Total => (String::from("total"), total.clone(), None),
            TargetKey::Case(t) => {
                let c = cases.iter().find(|c| c.indices == t).ok_or(BoundaryError::UnknownTarget(t))?;
                (c.label.clone(), c.value.clone(), Some(t))
            }
        };
        let matched = engine == tg.value;
        let run = oracle.filter(|_| !matched || policy == OraclePolicy::Always);
        let outcome = match run {
            None => OracleOutcome::NotRun,
            Some(o) => {
                let q = OracleQuery { key: &key, left, right, p1, p2, indices };
                match o.arbitrate(&q, &engine, &tg.value) {
                    Ok(v) => OracleOutcome::Ran(v),
                    Err(e) => OracleOutcome::Failed(e),
                }
            }
        };
        let verdict = if matched { Verdict::Match { oracle: outcome } } else { Verdict::Mismatch { oracle: outcome } };
        ledger.push(LedgerEntry { key, target_id: tg.id.clone(), target: tg.value.clone(), engine, verdict });
    }
    Ok(PhiResult { n, p1, p2, cases, total, ledger })
}

/// Part of `p` whose monomials contain a variable selected by `pred`.
pub fn sector(p: &PolyScalar, pred: impl Fn(Var) -> bool) -> PolyScalar {
    let mut out = PolyScalar::zero();
    for (m, c) in p.terms() {
        if m.factors().iter().any(|(v, _)| pred(*v)) {
            out.add_term(m.clone(), c);
        }
    }
    out
}

/// `hp`-dependent part.
pub fn metric_sector(p: &PolyScalar) -> PolyScalar {
    sector(p, |v| v == Var::Hp)
}

/// Torsion-dependent part.
pub fn torsion_sector(p: &PolyScalar) -> PolyScalar {
    sector(p, |v| matches!(v, Var::A(..)))
}
