use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::gaussian::{GaussianRational, Rational};

/// Indeterminates of the polynomial ring. The derived order is the global
/// registry order used for canonical printing.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    /// Tangential covector component `xi_k`, `1 <= k <= n-1`.
    Xi(u8),
    /// First normal derivative of the boundary metric factor at the base point.
    Hp,
    /// Torsion coefficient `A[i,s,t]`, always stored with `s < t`.
    A(u8, u8, u8),
    /// Symbolic manifold dimension (heat-coefficient polynomials).
    M,
    /// Contracted curvature placeholder.
    Rijij,
    Pi,
    /// Measure of the unit cosphere of the boundary.
    Omega,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Xi(k) => write!(f, "xi_{}", k),
            Var::Hp => f.write_str("hp"),
            Var::A(i, s, t) => write!(f, "A[{},{},{}]", i, s, t),
            Var::M => f.write_str("m"),
            Var::Rijij => f.write_str("Rijij"),
            Var::Omega => f.write_str("Omega"),
            Var::Pi => f.write_str("pi"),
        }
    }
}

/// Sparse exponent vector, sorted by variable, exponents strictly positive.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(alloc::vec![(v, e)])
        }
    }

    pub fn from_pairs(mut pairs: Vec<(Var, u32)>) -> Self {
        pairs.retain(|p| p.1 > 0);
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Var, u32)> = Vec::with_capacity(pairs.len());
        for (v, e) in pairs {
            match out.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => out.push((v, e)),
            }
        }
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.iter().find(|p| p.0 == v).map_or(0, |p| p.1)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|p| p.1).sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &o.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / o` if `o` divides `self`.
    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        let mut out = self.0.clone();
        for &(v, e) in &o.0 {
            let pos = out.iter().position(|p| p.0 == v)?;
            if out[pos].1 < e {
                return None;
            }
            out[pos].1 -= e;
        }
        out.retain(|p| p.1 > 0);
        Some(Monomial(out))
    }

    /// Split into (factors satisfying `pred`, the rest).
    pub fn split(&self, pred: impl Fn(Var) -> bool) -> (Monomial, Monomial) {
        let (a, b): (Vec<_>, Vec<_>) = self.0.iter().partition(|p| pred(p.0));
        (Monomial(a), Monomial(b))
    }

    /// Greatest common divisor of two monomials.
    pub fn gcd(&self, o: &Monomial) -> Monomial {
        let mut out = Vec::new();
        for &(v, e) in &self.0 {
            let f = o.exponent(v);
            if f > 0 {
                out.push((v, e.min(f)));
            }
        }
        Monomial(out)
    }
}

impl Ord for Monomial {
    /// Lexicographic order on dense exponent vectors in registry order.
    fn cmp(&self, o: &Self) -> Ordering {
        let mut k = 0;
        loop {
            match (self.0.get(k), o.0.get(k)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(a), Some(b)) => {
                    if a.0 == b.0 {
                        if a.1 != b.1 {
                            return a.1.cmp(&b.1);
                        }
                    } else if a.0 < b.0 {
                        return Ordering::Greater;
                    } else {
                        return Ordering::Less;
                    }
                }
            }
            k += 1;
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        for &(v, e) in &self.0 {
            if !first {
                f.write_str(" * ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", v)?;
            } else {
                write!(f, "{}^{}", v, e)?;
            }
        }
        Ok(())
    }
}

/// Skew-normalized torsion indeterminate: `A[i,s,t] = -A[i,t,s]`, `A[i,t,t] = 0`.
/// Returns `None` for the vanishing diagonal, otherwise the stored variable and
/// the sign relating it to the requested index order.
pub fn torsion_var(i: u8, s: u8, t: u8) -> Option<(Var, i64)> {
    match s.cmp(&t) {
        Ordering::Equal => None,
        Ordering::Less => Some((Var::A(i, s, t), 1)),
        Ordering::Greater => Some((Var::A(i, t, s), -1)),
    }
}

/// Exact multivariate polynomial over the Gaussian rationals.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct PolyScalar {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl PolyScalar {
    pub fn zero() -> Self {
        PolyScalar { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn int(v: i64) -> Self {
        Self::constant(GaussianRational::int(v))
    }

    pub fn frac(num: i64, den: i64) -> Self {
        Self::constant(GaussianRational::frac(num, den))
    }

    pub fn i() -> Self {
        Self::constant(GaussianRational::i())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn rational(q: Rational) -> Self {
        Self::constant(GaussianRational::real(q))
    }

    pub fn term(m: Monomial, c: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        PolyScalar { terms }
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v, 1), GaussianRational::one())
    }

    /// `A[i,s,t]` with skew normalization applied.
    pub fn torsion(i: u8, s: u8, t: u8) -> Self {
        match torsion_var(i, s, t) {
            None => Self::zero(),
            Some((v, sign)) => Self::term(Monomial::var(v, 1), GaussianRational::int(sign)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Constant value if the polynomial has no indeterminates.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                if m.is_one() {
                    Some(c.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add_assign_ref(&mut self, o: &PolyScalar) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c);
        }
    }

    pub fn sub_assign_ref(&mut self, o: &PolyScalar) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), &-c);
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> PolyScalar {
        if c.is_zero() {
            return PolyScalar::zero();
        }
        PolyScalar { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn scale_rational(&self, q: &Rational) -> PolyScalar {
        self.scale(&GaussianRational::real(q.clone()))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> PolyScalar {
        PolyScalar { terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect() }
    }

    /// Exact division by a monomial; `None` if some term is not divisible.
    pub fn div_monomial(&self, m: &Monomial) -> Option<PolyScalar> {
        let mut terms = BTreeMap::new();
        for (k, v) in &self.terms {
            terms.insert(k.div(m)?, v.clone());
        }
        Some(PolyScalar { terms })
    }

    pub fn pow(&self, e: u32) -> PolyScalar {
        let mut acc = PolyScalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Conjugate the coefficients; indeterminates are treated as real.
    pub fn conj(&self) -> PolyScalar {
        PolyScalar { terms: self.terms.iter().map(|(m, v)| (m.clone(), v.conj())).collect() }
    }

    /// Largest total exponent of the variables selected by `pred` over all terms.
    pub fn degree_in(&self, pred: impl Fn(Var) -> bool) -> u32 {
        self.terms
            .keys()
            .map(|m| m.factors().iter().filter(|p| pred(p.0)).map(|p| p.1).sum())
            .max()
            .unwrap_or(0)
    }

    /// All variables occurring in the polynomial, in registry order.
    pub fn variables(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.terms.keys().flat_map(|m| m.factors().iter().map(|p| p.0)).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// Replace every occurrence of `v` by `value`.
    pub fn substitute(&self, v: Var, value: &PolyScalar) -> PolyScalar {
        let mut out = PolyScalar::zero();
        let mut powers: Vec<PolyScalar> = alloc::vec![PolyScalar::one()];
        for (m, c) in &self.terms {
            let e = m.exponent(v) as usize;
            if e == 0 {
                out.add_term(m.clone(), c);
                continue;
            }
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let rest = m.div(&Monomial::var(v, e as u32)).unwrap();
            let piece = powers[e].mul_monomial(&rest).scale(c);
            out.add_assign_ref(&piece);
        }
        out
    }

    /// Apply a linear map to the coefficient of each monomial's `pred`-part:
    /// returns the list of (cofactor monomial, coefficient polynomial) pairs,
    /// where the coefficient polynomial contains only `pred` variables.
    pub fn collect_by(&self, pred: impl Fn(Var) -> bool) -> BTreeMap<Monomial, PolyScalar> {
        let mut out: BTreeMap<Monomial, PolyScalar> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (inner, outer) = m.split(&pred);
            out.entry(outer).or_default().add_term(inner, c);
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// Normal form modulo `xi_1^2 + ... + xi_{n-1}^2 = 1`: the highest tangential
    /// component appears at most linearly.
    pub fn reduce_unit_sphere(&self, n: u8) -> PolyScalar {
        if n < 3 {
            // one tangential direction: xi_1^2 = 1
            let mut out = PolyScalar::zero();
            for (m, c) in &self.terms {
                let e = m.exponent(Var::Xi(1));
                let rest = m.div(&Monomial::var(Var::Xi(1), e)).unwrap();
                out.add_term(rest.mul(&Monomial::var(Var::Xi(1), e % 2)), c);
            }
            return out;
        }
        let top = Var::Xi(n - 1);
        let mut rest_sq = PolyScalar::one();
        for k in 1..n - 1 {
            rest_sq.sub_assign_ref(&PolyScalar::var(Var::Xi(k)).pow(2));
        }
        let mut powers: Vec<PolyScalar> = alloc::vec![PolyScalar::one()];
        let mut out = PolyScalar::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(top);
            if e < 2 {
                out.add_term(m.clone(), c);
                continue;
            }
            let q = (e / 2) as usize;
            while powers.len() <= q {
                let next = powers.last().unwrap() * &rest_sq;
                powers.push(next);
            }
            let base = m.div(&Monomial::var(top, e)).unwrap().mul(&Monomial::var(top, e % 2));
            out.add_assign_ref(&powers[q].mul_monomial(&base).scale(c));
        }
        out
    }

    /// Common monomial factor of all terms restricted to variables selected by `pred`.
    pub fn common_factor(&self, pred: impl Fn(Var) -> bool) -> Monomial {
        let mut it = self.terms.keys();
        let first = match it.next() {
            Some(m) => m.split(&pred).0,
            None => return Monomial::one(),
        };
        it.fold(first, |acc, m| acc.gcd(m))
    }
}

impl From<GaussianRational> for PolyScalar {
    fn from(c: GaussianRational) -> Self {
        PolyScalar::constant(c)
    }
}

impl From<Var> for PolyScalar {
    fn from(v: Var) -> Self {
        PolyScalar::var(v)
    }
}

impl Neg for &PolyScalar {
    type Output = PolyScalar;
    fn neg(self) -> PolyScalar {
        PolyScalar { terms: self.terms.iter().map(|(m, v)| (m.clone(), -v)).collect() }
    }
}

impl Neg for PolyScalar {
    type Output = PolyScalar;
    fn neg(self) -> PolyScalar {
        -&self
    }
}

impl Add<&PolyScalar> for &PolyScalar {
    type Output = PolyScalar;
    fn add(self, o: &PolyScalar) -> PolyScalar {
        let mut out = self.clone();
        out.add_assign_ref(o);
        out
    }
}

impl Sub<&PolyScalar> for &PolyScalar {
    type Output = PolyScalar;
    fn sub(self, o: &PolyScalar) -> PolyScalar {
        let mut out = self.clone();
        out.sub_assign_ref(o);
        out
    }
}

impl Mul<&PolyScalar> for &PolyScalar {
    type Output = PolyScalar;
    fn mul(self, o: &PolyScalar) -> PolyScalar {
        if self.is_zero() || o.is_zero() {
            return PolyScalar::zero();
        }
        if let Some(c) = o.as_constant() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_constant() {
            return o.scale(&c);
        }
        let mut out = PolyScalar::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

macro_rules! forward_owned_poly {
    ($tr:ident, $m:ident) => {
        impl $tr<PolyScalar> for PolyScalar {
            type Output = PolyScalar;
            fn $m(self, o: PolyScalar) -> PolyScalar {
                (&self).$m(&o)
            }
        }
        impl $tr<&PolyScalar> for PolyScalar {
            type Output = PolyScalar;
            fn $m(self, o: &PolyScalar) -> PolyScalar {
                (&self).$m(o)
            }
        }
        impl $tr<PolyScalar> for &PolyScalar {
            type Output = PolyScalar;
            fn $m(self, o: PolyScalar) -> PolyScalar {
                self.$m(&o)
            }
        }
    };
}
forward_owned_poly!(Add, add);
forward_owned_poly!(Sub, sub);
forward_owned_poly!(Mul, mul);

impl fmt::Display for PolyScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::print::canonical(self, None))
    }
}

/// Convenience for building a string of a polynomial without grouping.
pub fn poly_string(p: &PolyScalar) -> String {
    super::print::canonical(p, None)
}
