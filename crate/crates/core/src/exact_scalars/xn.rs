use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::gaussian::{rat_int, GaussianRational, Rational};
use super::poly::{PolyScalar, Var};
use super::ScalarError;

/// Dense polynomial in `xn`; entry `k` is the coefficient of `xn^k`.
pub type XnPoly = Vec<PolyScalar>;

/// A pole location of an [`XnRational`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Pole {
    /// `xn = +i`
    Plus,
    /// `xn = -i`
    Minus,
}

impl Pole {
    pub fn value(self) -> GaussianRational {
        match self {
            Pole::Plus => GaussianRational::i(),
            Pole::Minus => -GaussianRational::i(),
        }
    }

    pub fn other(self) -> Pole {
        match self {
            Pole::Plus => Pole::Minus,
            Pole::Minus => Pole::Plus,
        }
    }
}

fn trim(v: &mut XnPoly) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn padd(a: &[PolyScalar], b: &[PolyScalar]) -> XnPoly {
    let mut out: XnPoly = Vec::with_capacity(a.len().max(b.len()));
    for k in 0..a.len().max(b.len()) {
        let mut c = a.get(k).cloned().unwrap_or_default();
        if let Some(x) = b.get(k) {
            c.add_assign_ref(x);
        }
        out.push(c);
    }
    trim(&mut out);
    out
}

fn pneg(a: &[PolyScalar]) -> XnPoly {
    a.iter().map(|c| -c).collect()
}

fn pmul(a: &[PolyScalar], b: &[PolyScalar]) -> XnPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out: XnPoly = alloc::vec![PolyScalar::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let prod = x * y;
            out[i + j].add_assign_ref(&prod);
        }
    }
    trim(&mut out);
    out
}

fn pscale(a: &[PolyScalar], c: &GaussianRational) -> XnPoly {
    let mut out: XnPoly = a.iter().map(|x| x.scale(c)).collect();
    trim(&mut out);
    out
}

/// Multiply by `(xn - s)`.
fn pmul_linear(a: &[PolyScalar], s: &GaussianRational) -> XnPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut out: XnPoly = alloc::vec![PolyScalar::zero(); a.len() + 1];
    for (k, c) in a.iter().enumerate() {
        out[k + 1].add_assign_ref(c);
        out[k].sub_assign_ref(&c.scale(s));
    }
    trim(&mut out);
    out
}

fn eval_at(a: &[PolyScalar], s: &GaussianRational) -> PolyScalar {
    let mut acc = PolyScalar::zero();
    for c in a.iter().rev() {
        acc = acc.scale(s);
        acc.add_assign_ref(c);
    }
    acc
}

/// Synthetic division by `(xn - s)`; returns quotient and remainder.
fn div_linear(a: &[PolyScalar], s: &GaussianRational) -> (XnPoly, PolyScalar) {
    if a.is_empty() {
        return (Vec::new(), PolyScalar::zero());
    }
    let d = a.len() - 1;
    let mut q: XnPoly = alloc::vec![PolyScalar::zero(); d];
    let mut carry = PolyScalar::zero();
    for k in (0..=d).rev() {
        let cur = &a[k] + &carry.scale(s);
        if k == 0 {
            return (q, cur);
        }
        q[k - 1] = cur.clone();
        carry = cur;
    }
    unreachable!()
}

fn pderiv(a: &[PolyScalar]) -> XnPoly {
    let mut out: XnPoly = a.iter().enumerate().skip(1).map(|(k, c)| c.scale(&GaussianRational::int(k as i64))).collect();
    trim(&mut out);
    out
}

/// `(xn - i)^a (xn + i)^b` expanded.
fn den_poly(a: u32, b: u32) -> XnPoly {
    let mut d: XnPoly = alloc::vec![PolyScalar::one()];
    for _ in 0..a {
        d = pmul_linear(&d, &GaussianRational::i());
    }
    for _ in 0..b {
        d = pmul_linear(&d, &-GaussianRational::i());
    }
    d
}

/// Coefficients of `a(t + s)` in powers of `t`.
fn taylor_shift(a: &[PolyScalar], s: &GaussianRational) -> XnPoly {
    let mut rest = a.to_vec();
    let mut out = Vec::with_capacity(a.len());
    while !rest.is_empty() {
        let (q, r) = div_linear(&rest, s);
        out.push(r);
        rest = q;
        trim(&mut rest);
    }
    out
}

fn binomial(n: i64, k: i64) -> Rational {
    if k < 0 {
        return Rational::zero();
    }
    let mut acc = rat_int(1);
    for j in 0..k {
        acc = acc * rat_int(n - j) / rat_int(j + 1);
    }
    acc
}

/// Rational function of `xn` whose only possible poles are `+i` and `-i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct XnRational {
    num: XnPoly,
    den_plus: u32,
    den_minus: u32,
}

/// One principal-part term `coeff / (xn - pole)^order`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PfTerm {
    pub pole: Pole,
    pub order: u32,
    pub coeff: PolyScalar,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PartialFractions {
    pub poly_part: XnPoly,
    pub terms: Vec<PfTerm>,
}

impl PartialFractions {
    /// Sum the parts back into a single rational function.
    pub fn recompose(&self) -> XnRational {
        let mut acc = XnRational::from_poly(self.poly_part.clone());
        for t in &self.terms {
            let (dp, dm) = match t.pole {
                Pole::Plus => (t.order, 0),
                Pole::Minus => (0, t.order),
            };
            acc = &acc + &XnRational::new(alloc::vec![t.coeff.clone()], dp, dm);
        }
        acc
    }
}

impl XnRational {
    /// `num / ((xn - i)^den_plus (xn + i)^den_minus)`, reduced.
    pub fn new(num: XnPoly, den_plus: u32, den_minus: u32) -> Self {
        let mut r = XnRational { num, den_plus, den_minus };
        r.normalize();
        r
    }

    pub fn from_poly(num: XnPoly) -> Self {
        Self::new(num, 0, 0)
    }

    pub fn zero() -> Self {
        XnRational::default()
    }

    pub fn one() -> Self {
        Self::constant(PolyScalar::one())
    }

    pub fn constant(c: PolyScalar) -> Self {
        Self::from_poly(alloc::vec![c])
    }

    pub fn gaussian(c: GaussianRational) -> Self {
        Self::constant(PolyScalar::constant(c))
    }

    /// The variable `xn`.
    pub fn xn() -> Self {
        Self::from_poly(alloc::vec![PolyScalar::zero(), PolyScalar::one()])
    }

    /// `(1 + xn^2)^(-k)`.
    pub fn inv_one_plus_xn2(k: u32) -> Self {
        XnRational { num: alloc::vec![PolyScalar::one()], den_plus: k, den_minus: k }
    }

    pub fn numerator(&self) -> &[PolyScalar] {
        &self.num
    }

    pub fn den_plus(&self) -> u32 {
        self.den_plus
    }

    pub fn den_minus(&self) -> u32 {
        self.den_minus
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    /// Degree of the numerator; `None` for zero.
    pub fn num_degree(&self) -> Option<usize> {
        self.num.len().checked_sub(1)
    }

    /// `Some(c)` if this is an `xn`-independent polynomial.
    pub fn as_constant(&self) -> Option<PolyScalar> {
        if self.den_plus > 0 || self.den_minus > 0 || self.num.len() > 1 {
            return None;
        }
        Some(self.num.first().cloned().unwrap_or_default())
    }

    fn normalize(&mut self) {
        trim(&mut self.num);
        if self.num.is_empty() {
            self.den_plus = 0;
            self.den_minus = 0;
            return;
        }
        for pole in [Pole::Plus, Pole::Minus] {
            let s = pole.value();
            loop {
                let d = match pole {
                    Pole::Plus => &mut self.den_plus,
                    Pole::Minus => &mut self.den_minus,
                };
                if *d == 0 || self.num.len() < 2 || !eval_at(&self.num, &s).is_zero() {
                    break;
                }
                *d -= 1;
                let (q, _) = div_linear(&self.num, &s);
                self.num = q;
                trim(&mut self.num);
            }
        }
    }

    fn lift(&self, dp: u32, dm: u32) -> XnPoly {
        let mut n = self.num.clone();
        for _ in self.den_plus..dp {
            n = pmul_linear(&n, &GaussianRational::i());
        }
        for _ in self.den_minus..dm {
            n = pmul_linear(&n, &-GaussianRational::i());
        }
        n
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::new(pscale(&self.num, c), self.den_plus, self.den_minus)
    }

    pub fn scale_poly(&self, c: &PolyScalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let num = self.num.iter().map(|x| x * c).collect();
        Self::new(num, self.den_plus, self.den_minus)
    }

    /// Apply `f` to every numerator coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&PolyScalar) -> PolyScalar) -> Self {
        Self::new(self.num.iter().map(f).collect(), self.den_plus, self.den_minus)
    }

    pub fn conj(&self) -> Self {
        // xn is real, the poles swap.
        XnRational::new(self.num.iter().map(|c| c.conj()).collect(), self.den_minus, self.den_plus)
    }

    /// Derivative in `xn`.
    pub fn d_xn(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let (a, b) = (self.den_plus, self.den_minus);
        if a == 0 && b == 0 {
            return Self::from_poly(pderiv(&self.num));
        }
        let one_plus = alloc::vec![PolyScalar::one(), PolyScalar::zero(), PolyScalar::one()];
        let t1 = pmul(&pderiv(&self.num), &one_plus);
        // a*(xn + i) + b*(xn - i)
        let lin = alloc::vec![
            PolyScalar::constant(GaussianRational::i().scale(&rat_int(a as i64 - b as i64))),
            PolyScalar::int((a + b) as i64),
        ];
        let t2 = pmul(&self.num, &lin);
        Self::new(padd(&t1, &pneg(&t2)), a + 1, b + 1)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse when the numerator is a nonzero constant times
    /// powers of `(xn - i)` and `(xn + i)`.
    pub fn inverse(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::NotInvertible);
        }
        let mut num = self.num.clone();
        let mut counts = [0u32; 2];
        for (slot, pole) in [Pole::Plus, Pole::Minus].into_iter().enumerate() {
            let s = pole.value();
            while num.len() > 1 && eval_at(&num, &s).is_zero() {
                num = div_linear(&num, &s).0;
                trim(&mut num);
                counts[slot] += 1;
            }
        }
        if num.len() != 1 {
            return Err(ScalarError::PoleOutsideAxis);
        }
        let c = num[0].as_constant().ok_or(ScalarError::NotInvertible)?;
        let cinv = c.inv().ok_or(ScalarError::NotInvertible)?;
        let top = pscale(&den_poly(self.den_plus, self.den_minus), &cinv);
        Ok(Self::new(top, counts[0], counts[1]))
    }

    /// Exact quotient `self / other`.
    pub fn checked_div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self * &other.inverse()?)
    }

    /// Partial-fraction decomposition over the poles `+i`, `-i`.
    pub fn pf_decompose(&self) -> PartialFractions {
        let d = den_poly(self.den_plus, self.den_minus);
        let poly_part = poly_quotient(&self.num, &d);
        let mut terms = Vec::new();
        for pole in [Pole::Plus, Pole::Minus] {
            for (order, coeff) in self.principal_part(pole) {
                terms.push(PfTerm { pole, order, coeff });
            }
        }
        PartialFractions { poly_part, terms }
    }

    /// Principal part at `pole` as (order, coefficient) pairs, highest order first.
    fn principal_part(&self, pole: Pole) -> Vec<(u32, PolyScalar)> {
        let (a, b) = match pole {
            Pole::Plus => (self.den_plus, self.den_minus),
            Pole::Minus => (self.den_minus, self.den_plus),
        };
        if a == 0 || self.is_zero() {
            return Vec::new();
        }
        let s = pole.value();
        let shifted = taylor_shift(&self.num, &s);
        // (t + 2s)^(-b) = (2s)^(-b) * sum_j C(-b, j) (t / 2s)^j
        let two_s = s.scale(&rat_int(2));
        let inv_two_s = two_s.inv().expect("nonzero");
        let base = inv_two_s.pow(b);
        let mut e: Vec<GaussianRational> = Vec::with_capacity(a as usize);
        for j in 0..a as i64 {
            let c = binomial(-(b as i64), j);
            e.push(base.scale(&c) * inv_two_s.pow(j as u32));
        }
        let mut out = Vec::new();
        for k in 0..a as usize {
            let mut g = PolyScalar::zero();
            for j in 0..=k {
                if let Some(nk) = shifted.get(k - j) {
                    g.add_assign_ref(&nk.scale(&e[j]));
                }
            }
            if !g.is_zero() {
                out.push((a - k as u32, g));
            }
        }
        out
    }

    /// Coefficient of `(xn - pole)^(-1)`.
    pub fn residue_at(&self, pole: Pole) -> PolyScalar {
        self.principal_part(pole)
            .into_iter()
            .find(|(order, _)| *order == 1)
            .map(|(_, c)| c)
            .unwrap_or_default()
    }

    /// `true` when the numerator degree is below the denominator degree.
    pub fn decays(&self) -> bool {
        match self.num_degree() {
            None => true,
            Some(d) => (d as u32) < self.den_plus + self.den_minus,
        }
    }

    /// Sum of the principal parts at `pole` (requires decay).
    pub fn project(&self, pole: Pole) -> Result<Self, ScalarError> {
        if !self.decays() {
            return Err(ScalarError::NonDecaying);
        }
        let mut acc = Self::zero();
        for (order, coeff) in self.principal_part(pole) {
            let (dp, dm) = match pole {
                Pole::Plus => (order, 0),
                Pole::Minus => (0, order),
            };
            acc = &acc + &Self::new(alloc::vec![coeff], dp, dm);
        }
        Ok(acc)
    }

    /// Part with poles at `+i` (analytic in the lower half plane).
    pub fn pi_plus(&self) -> Result<Self, ScalarError> {
        self.project(Pole::Plus)
    }

    pub fn pi_minus(&self) -> Result<Self, ScalarError> {
        self.project(Pole::Minus)
    }

    /// Contour functional over a curve enclosing `+i`: `i * Res(+i)`.
    pub fn pi_prime(&self) -> Result<PolyScalar, ScalarError> {
        if !self.decays() {
            return Err(ScalarError::NonDecaying);
        }
        Ok(self.residue_at(Pole::Plus).scale(&GaussianRational::i()))
    }

    /// Integral over the real line, closed in the upper half plane.
    pub fn integrate_real_line(&self) -> Result<PolyScalar, ScalarError> {
        let deg = match self.num_degree() {
            None => return Ok(PolyScalar::zero()),
            Some(d) => d as u32,
        };
        let total = self.den_plus + self.den_minus;
        if deg + 2 > total {
            return Err(ScalarError::Integrability { numerator_degree: deg, denominator_degree: total });
        }
        let two_pi_i = PolyScalar::var(Var::Pi).scale(&GaussianRational::new(Rational::zero(), rat_int(2)));
        Ok(&self.residue_at(Pole::Plus) * &two_pi_i)
    }
}

/// Quotient of polynomial division by a monic polynomial.
fn poly_quotient(n: &[PolyScalar], d: &[PolyScalar]) -> XnPoly {
    let dd = d.len() - 1;
    if n.len() <= dd {
        return Vec::new();
    }
    let mut r = n.to_vec();
    let mut q: XnPoly = alloc::vec![PolyScalar::zero(); n.len() - dd];
    for k in (0..q.len()).rev() {
        let lead = r[k + dd].clone();
        if lead.is_zero() {
            continue;
        }
        for (j, dj) in d.iter().enumerate() {
            if let Some(c) = dj.as_constant() {
                if !c.is_zero() {
                    r[k + j].sub_assign_ref(&lead.scale(&c));
                }
            }
        }
        q[k] = lead;
    }
    trim(&mut q);
    q
}

impl From<PolyScalar> for XnRational {
    fn from(c: PolyScalar) -> Self {
        XnRational::constant(c)
    }
}

impl Neg for &XnRational {
    type Output = XnRational;
    fn neg(self) -> XnRational {
        XnRational { num: pneg(&self.num), den_plus: self.den_plus, den_minus: self.den_minus }
    }
}

impl Neg for XnRational {
    type Output = XnRational;
    fn neg(self) -> XnRational {
        -&self
    }
}

impl Add<&XnRational> for &XnRational {
    type Output = XnRational;
    fn add(self, o: &XnRational) -> XnRational {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den_plus == o.den_plus && self.den_minus == o.den_minus {
            return XnRational::new(padd(&self.num, &o.num), self.den_plus, self.den_minus);
        }
        let dp = self.den_plus.max(o.den_plus);
        let dm = self.den_minus.max(o.den_minus);
        XnRational::new(padd(&self.lift(dp, dm), &o.lift(dp, dm)), dp, dm)
    }
}

impl Sub<&XnRational> for &XnRational {
    type Output = XnRational;
    fn sub(self, o: &XnRational) -> XnRational {
        self + &(-o)
    }
}

impl Mul<&XnRational> for &XnRational {
    type Output = XnRational;
    fn mul(self, o: &XnRational) -> XnRational {
        if self.is_zero() || o.is_zero() {
            return XnRational::zero();
        }
        XnRational::new(pmul(&self.num, &o.num), self.den_plus + o.den_plus, self.den_minus + o.den_minus)
    }
}

macro_rules! forward_owned_xn {
    ($tr:ident, $m:ident) => {
        impl $tr<XnRational> for XnRational {
            type Output = XnRational;
            fn $m(self, o: XnRational) -> XnRational {
                (&self).$m(&o)
            }
        }
        impl $tr<&XnRational> for XnRational {
            type Output = XnRational;
            fn $m(self, o: &XnRational) -> XnRational {
                (&self).$m(o)
            }
        }
        impl $tr<XnRational> for &XnRational {
            type Output = XnRational;
            fn $m(self, o: XnRational) -> XnRational {
                self.$m(&o)
            }
        }
    };
}
forward_owned_xn!(Add, add);
forward_owned_xn!(Sub, sub);
forward_owned_xn!(Mul, mul);

fn fmt_xn_poly(num: &[PolyScalar]) -> alloc::string::String {
    use alloc::string::{String, ToString};
    let mut parts: Vec<(bool, String)> = Vec::new();
    for (k, c) in num.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let power = match k {
            0 => String::new(),
            1 => String::from("xn"),
            _ => alloc::format!("xn^{}", k),
        };
        let cs = c.to_string();
        let single = c.len() == 1 && !cs.contains(" + ") && !cs.contains(" - ");
        let (neg, body) = if single && cs.starts_with('-') { (true, cs[1..].to_string()) } else { (false, cs) };
        let text = if power.is_empty() {
            if single { body } else { alloc::format!("({})", body) }
        } else if body == "1" {
            power
        } else if single {
            alloc::format!("{} * {}", body, power)
        } else {
            alloc::format!("({}) * {}", body, power)
        };
        parts.push((neg, text));
    }
    let mut out = String::new();
    for (k, (neg, t)) in parts.iter().enumerate() {
        if k == 0 {
            if *neg {
                out.push('-');
            }
        } else {
            out.push_str(if *neg { " - " } else { " + " });
        }
        out.push_str(t);
    }
    out
}

impl fmt::Display for XnRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let top = fmt_xn_poly(&self.num);
        if self.den_plus == 0 && self.den_minus == 0 {
            return f.write_str(&top);
        }
        let mut den = Vec::new();
        let fac = |base: &str, e: u32| if e == 1 { alloc::format!("({})", base) } else { alloc::format!("({})^{}", base, e) };
        if self.den_plus > 0 {
            den.push(fac("xn - i", self.den_plus));
        }
        if self.den_minus > 0 {
            den.push(fac("xn + i", self.den_minus));
        }
        let den = den.join(" * ");
        let den = if self.den_plus > 0 && self.den_minus > 0 { alloc::format!("({})", den) } else { den };
        write!(f, "({}) / {}", top, den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xn() -> XnRational {
        XnRational::xn()
    }

    #[test]
    fn gcd_reduction() {
        // (xn - i) / (xn - i)^2 = 1/(xn - i)
        let num = alloc::vec![PolyScalar::constant(-GaussianRational::i()), PolyScalar::one()];
        let f = XnRational::new(num, 2, 0);
        assert_eq!(f, XnRational::new(alloc::vec![PolyScalar::one()], 1, 0));
        // (1 + xn^2)/(1 + xn^2) = 1
        let g = &(&XnRational::one() + &(&xn() * &xn())) * &XnRational::inv_one_plus_xn2(1);
        assert_eq!(g, XnRational::one());
    }

    #[test]
    fn partial_fractions_examples() {
        let f = XnRational::inv_one_plus_xn2(1);
        let pf = f.pf_decompose();
        let half_over_i = GaussianRational::i().inv().unwrap().scale(&crate::exact_scalars::rat(1, 2));
        assert!(pf.poly_part.is_empty());
        assert_eq!(pf.terms.len(), 2);
        assert_eq!(pf.terms[0], PfTerm { pole: Pole::Plus, order: 1, coeff: PolyScalar::constant(half_over_i.clone()) });
        assert_eq!(pf.terms[1], PfTerm { pole: Pole::Minus, order: 1, coeff: PolyScalar::constant(-half_over_i) });

        let g = &xn() * &XnRational::inv_one_plus_xn2(1);
        let pf = g.pf_decompose();
        assert_eq!(pf.terms[0].coeff, PolyScalar::frac(1, 2));
        assert_eq!(pf.terms[1].coeff, PolyScalar::frac(1, 2));

        let h = XnRational::new(alloc::vec![PolyScalar::one()], 2, 0);
        let pf = h.pf_decompose();
        assert_eq!(pf.terms, alloc::vec![PfTerm { pole: Pole::Plus, order: 2, coeff: PolyScalar::one() }]);
        assert_eq!(pf.recompose(), h);
    }

    #[test]
    fn residues() {
        let f = XnRational::inv_one_plus_xn2(1);
        assert_eq!(f.residue_at(Pole::Plus), PolyScalar::constant(GaussianRational::i().inv().unwrap().scale(&crate::exact_scalars::rat(1, 2))));
        let g = XnRational::new(alloc::vec![PolyScalar::one()], 0, 3);
        assert!(g.residue_at(Pole::Plus).is_zero());
    }

    #[test]
    fn real_line_integrals() {
        let pi = PolyScalar::var(Var::Pi);
        assert_eq!(XnRational::inv_one_plus_xn2(2).integrate_real_line().unwrap(), pi.scale(&GaussianRational::frac(1, 2)));
        let f = (&xn() * &xn()).scale(&GaussianRational::int(16)) * XnRational::inv_one_plus_xn2(4);
        assert_eq!(f.integrate_real_line().unwrap(), pi);
        let lower = XnRational::new(alloc::vec![PolyScalar::one()], 0, 2);
        assert!(lower.integrate_real_line().unwrap().is_zero());
        assert!(matches!(xn().integrate_real_line(), Err(ScalarError::Integrability { .. })));
    }

    #[test]
    fn derivative_of_inverse_square() {
        // d/dxn (1+xn^2)^-1 = -2xn/(1+xn^2)^2
        let d = XnRational::inv_one_plus_xn2(1).d_xn();
        let expect = xn().scale(&GaussianRational::int(-2)) * XnRational::inv_one_plus_xn2(2);
        assert_eq!(d, expect);
    }

    #[test]
    fn inverse_of_one_plus_xn2() {
        let s = &XnRational::one() + &(&xn() * &xn());
        assert_eq!(s.inverse().unwrap(), XnRational::inv_one_plus_xn2(1));
        let bad = &XnRational::int_const(2) + &xn();
        assert_eq!(bad.inverse(), Err(ScalarError::PoleOutsideAxis));
    }

    impl XnRational {
        fn int_const(v: i64) -> Self {
            XnRational::constant(PolyScalar::int(v))
        }
    }
}
