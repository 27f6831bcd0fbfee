//! Boundary 1-jets of the symbols of `D_T`, `D_T^*`, their parametrices and
//! squared parametrices at a boundary point in normal coordinates.
//!
//! Model: the metric near the boundary is `(1/h(xn)) g_boundary + dxn^2` with
//! `h(0) = 1`, so `c(dx_j) = sqrt(h) gamma_j` for `j < n` and `c(dxn) = gamma_n`.
//! Tangential derivatives vanish at the base point; `d/dxn c(xi') = (hp/2) c(xi')`.
//! Values are stored after the substitution `|xi'|^2 = 1` (normal form modulo
//! the unit sphere, see [`PolyScalar::reduce_unit_sphere`]).

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::exact_scalars::{GaussianRational, PolyScalar, ScalarError, Var, XnRational};
use crate::multilinear::CliffordElem;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymbolError {
    #[error("unsupported operator specification: {0}")]
    UnsupportedSpec(&'static str),
    #[error("leading symbol is not invertible")]
    NotElliptic,
    #[error("jet depth {have} is below the required {need}")]
    InsufficientDepth { have: usize, need: usize },
    #[error("order {0} is not stored in the jet")]
    OrderUnavailable(i32),
    #[error("normal derivative of order {0} is not stored in the jet")]
    DerivativeUnavailable(i32),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Which operator a jet describes.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum BaseOperator {
    /// `D_T`
    D,
    /// `D_T^*`
    DStar,
    /// `D_T^{-1}`
    DInv,
    /// `(D_T^*)^{-1}`
    DStarInv,
    /// `D_T^{-2}`
    DInvSq,
    /// `(D_T^*)^{-2}`
    DStarInvSq,
}

impl BaseOperator {
    pub fn name(self) -> &'static str {
        match self {
            BaseOperator::D => "D_T",
            BaseOperator::DStar => "D_T^*",
            BaseOperator::DInv => "D_T^{-1}",
            BaseOperator::DStarInv => "(D_T^*)^{-1}",
            BaseOperator::DInvSq => "D_T^{-2}",
            BaseOperator::DStarInvSq => "(D_T^*)^{-2}",
        }
    }

    /// Order of the leading symbol.
    pub fn leading_order(self) -> i32 {
        match self {
            BaseOperator::D | BaseOperator::DStar => 1,
            BaseOperator::DInv | BaseOperator::DStarInv => -1,
            BaseOperator::DInvSq | BaseOperator::DStarInvSq => -2,
        }
    }

    fn is_adjoint(self) -> bool {
        matches!(self, BaseOperator::DStar | BaseOperator::DStarInv | BaseOperator::DStarInvSq)
    }
}

/// Which torsion pieces enter the order-0 symbol.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Torsion {
    /// Totally antisymmetric part (indices pairwise distinct).
    pub three_form: bool,
    /// Trace part built from `A[i,i,t]`.
    pub vectorial: bool,
}

impl Torsion {
    pub const FULL: Torsion = Torsion { three_form: true, vectorial: true };
    pub const NONE: Torsion = Torsion { three_form: false, vectorial: false };
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OperatorSpec {
    pub base: BaseOperator,
    pub n: u8,
    pub torsion: Torsion,
    /// Optional left factor applied to the symbol before projection.
    pub projector: Option<CliffordElem>,
}

impl OperatorSpec {
    pub fn new(base: BaseOperator, n: u8) -> Self {
        OperatorSpec { base, n, torsion: Torsion::FULL, projector: None }
    }

    pub fn with_torsion(mut self, t: Torsion) -> Self {
        self.torsion = t;
        self
    }

    pub fn with_projector(mut self, w: CliffordElem) -> Self {
        self.projector = Some(w);
        self
    }
}

/// Value and first normal derivative (when known) of one homogeneous order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JetEntry {
    pub value: CliffordElem,
    pub dxn: Option<CliffordElem>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymbolJet {
    n: u8,
    tag: BaseOperator,
    orders: BTreeMap<i32, JetEntry>,
}

/// Orders whose value / normal derivative a jet can supply.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct OrderAvailability {
    pub value: BTreeSet<i32>,
    pub dxn: BTreeSet<i32>,
}

impl SymbolJet {
    fn new(n: u8, tag: BaseOperator, entries: Vec<(i32, JetEntry)>) -> Self {
        let orders: BTreeMap<i32, JetEntry> = entries.into_iter().collect();
        debug_assert!(orders.keys().zip(orders.keys().skip(1)).all(|(a, b)| b - a == 1), "jet orders must be contiguous");
        SymbolJet { n, tag, orders }
    }

    pub fn dim(&self) -> u8 {
        self.n
    }

    pub fn tag(&self) -> BaseOperator {
        self.tag
    }

    pub fn leading_order(&self) -> i32 {
        *self.orders.keys().next_back().expect("nonempty jet")
    }

    /// Number of stored orders.
    pub fn depth(&self) -> usize {
        self.orders.len()
    }

    pub fn orders(&self) -> impl Iterator<Item = (i32, &JetEntry)> {
        self.orders.iter().rev().map(|(r, e)| (*r, e))
    }

    pub fn entry(&self, r: i32) -> Result<&JetEntry, SymbolError> {
        self.orders.get(&r).ok_or(SymbolError::OrderUnavailable(r))
    }

    pub fn value(&self, r: i32) -> Result<&CliffordElem, SymbolError> {
        Ok(&self.entry(r)?.value)
    }

    /// Normal derivative at the base point.
    pub fn d_x_n(&self, r: i32) -> Result<CliffordElem, SymbolError> {
        self.entry(r)?.dxn.clone().ok_or(SymbolError::DerivativeUnavailable(r))
    }

    /// Derivative in `xn` (the normal covector component).
    pub fn d_xi_n(&self, r: i32) -> Result<CliffordElem, SymbolError> {
        Ok(self.value(r)?.d_xn_coeffs())
    }

    /// Tangential derivative `d/dx_j`, `j < n`: zero at the base point.
    pub fn d_x_prime(&self, r: i32, j: u8) -> Result<CliffordElem, SymbolError> {
        if j == 0 || j >= self.n {
            return Err(SymbolError::UnsupportedSpec("tangential index must satisfy 1 <= j < n"));
        }
        self.value(r)?;
        Ok(CliffordElem::zero(self.n))
    }

    /// The whole jet differentiated in `xn`.
    pub fn d_xi_n_jet(&self) -> SymbolJet {
        let entries = self
            .orders
            .iter()
            .map(|(r, e)| (*r, JetEntry { value: e.value.d_xn_coeffs(), dxn: e.dxn.as_ref().map(|d| d.d_xn_coeffs()) }))
            .collect();
        SymbolJet::new(self.n, self.tag, entries)
    }

    pub fn availability(&self) -> OrderAvailability {
        OrderAvailability {
            value: self.orders.keys().copied().collect(),
            dxn: self.orders.iter().filter(|(_, e)| e.dxn.is_some()).map(|(r, _)| *r).collect(),
        }
    }
}

fn poly(v: Var) -> PolyScalar {
    PolyScalar::var(v)
}

fn specialize(e: &CliffordElem) -> CliffordElem {
    let n = e.dim();
    e.map_coeffs(|c| c.map_coeffs(|p| p.reduce_unit_sphere(n)))
}

/// `c(xi') = sum_{j<n} xi_j gamma_j`.
pub fn c_xi_prime(n: u8) -> CliffordElem {
    let mut c = CliffordElem::zero(n);
    for j in 1..n {
        c = &c + &CliffordElem::gamma(n, j).scale_poly(&poly(Var::Xi(j)));
    }
    c
}

/// `c(dxn) = gamma_n`.
pub fn c_dxn(n: u8) -> CliffordElem {
    CliffordElem::gamma(n, n)
}

/// `c(xi) = c(xi') + xn gamma_n`.
pub fn c_xi(n: u8) -> CliffordElem {
    &c_xi_prime(n) + &c_dxn(n).scale(&XnRational::xn())
}

/// `|xi|^2` at the base point with `|xi'| = 1`.
pub fn xi_norm_sq() -> XnRational {
    &XnRational::one() + &(&XnRational::xn() * &XnRational::xn())
}

/// Pieces of the order-0 symbol at the base point.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrderZeroParts {
    /// Spin-connection term, proportional to `hp gamma_n`.
    pub metric: CliffordElem,
    /// Contribution of torsion components with pairwise distinct indices.
    pub three_form: CliffordElem,
    /// Contribution of the trace components; enters `D_T^*` with opposite sign.
    pub vectorial: CliffordElem,
}

fn tors(i: u8, s: u8, t: u8) -> PolyScalar {
    PolyScalar::torsion(i, s, t)
}

pub fn order_zero_parts(n: u8) -> OrderZeroParts {
    let quarter = GaussianRational::frac(1, 4);
    let g = |k: u8| CliffordElem::gamma(n, k);
    let metric = c_dxn(n).scale_poly(&poly(Var::Hp).scale(&GaussianRational::frac(-(n as i64 - 1), 4)));

    let mut three_form = CliffordElem::zero(n);
    for i in 1..=n {
        for s in 1..=n {
            for t in 1..=n {
                if i == s || s == t || i == t {
                    continue;
                }
                let a = tors(i, s, t);
                if a.is_zero() {
                    continue;
                }
                let word = CliffordElem::product_of(n, &[i, s, t]);
                three_form = &three_form + &word.scale_poly(&a.scale(&quarter));
            }
        }
    }

    // Each summand is summed over its own free indices only.
    let mut vectorial = CliffordElem::zero(n);
    for i in 1..=n {
        for t in 1..=n {
            vectorial = &vectorial - &g(t).scale_poly(&tors(i, i, t));
            vectorial = &vectorial + &g(t).scale_poly(&tors(i, t, i));
            vectorial = &vectorial - &g(i).scale_poly(&tors(i, t, t));
        }
        vectorial = &vectorial + &g(i).scale_poly(&tors(i, i, i).scale(&GaussianRational::int(2)));
    }
    vectorial = vectorial.scale_gaussian(&quarter);
    OrderZeroParts { metric, three_form, vectorial }
}

fn i_const() -> GaussianRational {
    GaussianRational::i()
}

/// Jet of `D_T` or `D_T^*`: orders 1 and 0.
pub fn build_dirac_symbols(spec: &OperatorSpec) -> Result<SymbolJet, SymbolError> {
    let n = spec.n;
    if n < 2 || n % 2 != 0 || n > crate::multilinear::MAX_DIM {
        return Err(SymbolError::UnsupportedSpec("dimension must be even and at most 16"));
    }
    if !matches!(spec.base, BaseOperator::D | BaseOperator::DStar) {
        return Err(SymbolError::UnsupportedSpec("base must be D_T or D_T^*"));
    }
    let lead = c_xi(n).scale_gaussian(&i_const());
    let lead_dxn = c_xi_prime(n).scale_poly(&poly(Var::Hp).scale(&GaussianRational::frac(1, 2))).scale_gaussian(&i_const());
    let parts = order_zero_parts(n);
    let mut zero = parts.metric.clone();
    if spec.torsion.three_form {
        zero = &zero + &parts.three_form;
    }
    if spec.torsion.vectorial {
        zero = if spec.base.is_adjoint() { &zero - &parts.vectorial } else { &zero + &parts.vectorial };
    }
    Ok(SymbolJet::new(
        n,
        spec.base,
        alloc::vec![(1, JetEntry { value: lead, dxn: Some(lead_dxn) }), (0, JetEntry { value: zero, dxn: None })],
    ))
}

/// Inverse of a leading symbol that is scalar or squares to a scalar.
fn invert_leading(p: &CliffordElem) -> Result<CliffordElem, SymbolError> {
    let n = p.dim();
    if p.is_scalar() {
        let s = p.scalar_part().map_coeffs(|c| c.reduce_unit_sphere(n));
        let inv = s.inverse().map_err(|_| SymbolError::NotElliptic)?;
        return Ok(CliffordElem::scalar(n, inv));
    }
    let sq = specialize(&(p * p));
    if !sq.is_scalar() {
        return Err(SymbolError::NotElliptic);
    }
    let inv = sq.scalar_part().inverse().map_err(|_| SymbolError::NotElliptic)?;
    Ok(specialize(&p.scale(&inv)))
}

/// Parametrix jet: for leading order `m`, orders `-m` and `-m-1`.
pub fn invert_symbol(j: &SymbolJet, depth: usize) -> Result<SymbolJet, SymbolError> {
    if depth != 2 {
        return Err(SymbolError::UnsupportedSpec("only depth 2 is supported"));
    }
    if j.depth() < 2 {
        return Err(SymbolError::InsufficientDepth { have: j.depth(), need: 2 });
    }
    let m = j.leading_order();
    let p_top = j.value(m)?;
    let p_next = j.value(m - 1)?;
    let dp_top = j.d_x_n(m)?;
    let q = invert_leading(p_top)?;
    let dq = specialize(&-&(&(&q * &dp_top) * &q));
    let minus_i = -i_const();
    let inner = &(p_next * &q) + &(&p_top.d_xn_coeffs() * &dq).scale_gaussian(&minus_i);
    let q_next = specialize(&-&(&q * &inner));
    let tag = match j.tag {
        BaseOperator::D => BaseOperator::DInv,
        BaseOperator::DStar => BaseOperator::DStarInv,
        _ => return Err(SymbolError::UnsupportedSpec("inversion is defined for D_T and D_T^*")),
    };
    Ok(SymbolJet::new(
        j.n,
        tag,
        alloc::vec![(-m, JetEntry { value: q, dxn: Some(dq) }), (-m - 1, JetEntry { value: q_next, dxn: None })],
    ))
}

/// Composition of two jets truncated to their two top orders.
pub fn compose(a: &SymbolJet, b: &SymbolJet, tag: BaseOperator) -> Result<SymbolJet, SymbolError> {
    if a.n != b.n {
        return Err(SymbolError::UnsupportedSpec("dimension mismatch"));
    }
    for jet in [a, b] {
        if jet.depth() < 2 {
            return Err(SymbolError::InsufficientDepth { have: jet.depth(), need: 2 });
        }
    }
    let (la, lb) = (a.leading_order(), b.leading_order());
    let (a0, a1) = (a.value(la)?, a.value(la - 1)?);
    let (b0, b1) = (b.value(lb)?, b.value(lb - 1)?);
    let top = specialize(&(a0 * b0));
    let top_dxn = match (a.entry(la)?.dxn.as_ref(), b.entry(lb)?.dxn.as_ref()) {
        (Some(da), Some(db)) => Some(specialize(&(&(da * b0) + &(a0 * db)))),
        _ => None,
    };
    let db0 = b.d_x_n(lb)?;
    let leibniz = (&a0.d_xn_coeffs() * &db0).scale_gaussian(&-i_const());
    let next = specialize(&(&(&(a0 * b1) + &(a1 * b0)) + &leibniz));
    Ok(SymbolJet::new(
        a.n,
        tag,
        alloc::vec![(la + lb, JetEntry { value: top, dxn: top_dxn }), (la + lb - 1, JetEntry { value: next, dxn: None })],
    ))
}

/// Jet of the square of a parametrix, orders `2m` and `2m-1`.
pub fn square_inverse_symbol(j: &SymbolJet, depth: usize) -> Result<SymbolJet, SymbolError> {
    if depth != 2 {
        return Err(SymbolError::UnsupportedSpec("only depth 2 is supported"));
    }
    let tag = match j.tag {
        BaseOperator::DInv => BaseOperator::DInvSq,
        BaseOperator::DStarInv => BaseOperator::DStarInvSq,
        _ => return Err(SymbolError::UnsupportedSpec("squaring expects a parametrix jet")),
    };
    compose(j, j, tag)
}

/// Build the jet for any supported operator.
pub fn build_operator_jet(spec: &OperatorSpec) -> Result<SymbolJet, SymbolError> {
    let base_spec = |b: BaseOperator| OperatorSpec { base: b, n: spec.n, torsion: spec.torsion, projector: None };
    match spec.base {
        BaseOperator::D | BaseOperator::DStar => build_dirac_symbols(spec),
        BaseOperator::DInv => invert_symbol(&build_dirac_symbols(&base_spec(BaseOperator::D))?, 2),
        BaseOperator::DStarInv => invert_symbol(&build_dirac_symbols(&base_spec(BaseOperator::DStar))?, 2),
        BaseOperator::DInvSq => square_inverse_symbol(&build_operator_jet(&base_spec(BaseOperator::DInv))?, 2),
        BaseOperator::DStarInvSq => square_inverse_symbol(&build_operator_jet(&base_spec(BaseOperator::DStarInv))?, 2),
    }
}

/// Coefficientwise projection onto the part with poles at `+i`.
pub fn pi_plus(e: &CliffordElem) -> Result<CliffordElem, SymbolError> {
    Ok(e.try_map_coeffs(|c| c.pi_plus())?)
}

/// Coefficientwise projection onto the part with poles at `-i`.
pub fn pi_minus(e: &CliffordElem) -> Result<CliffordElem, SymbolError> {
    Ok(e.try_map_coeffs(|c| c.pi_minus())?)
}

/// Coefficientwise contour functional `i * Res(+i)`.
pub fn pi_prime(e: &CliffordElem) -> Result<CliffordElem, SymbolError> {
    Ok(e.try_map_coeffs(|c| c.pi_prime().map(XnRational::constant))?)
}

#[cfg(test)]
mod tests;
