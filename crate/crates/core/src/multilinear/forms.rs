use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::exact_scalars::{GaussianRational, PolyScalar};

use super::MultilinearError;

/// Element of the complexified exterior algebra on real covectors
/// `e^1 .. e^{2n}`, where `e^j` and `e^{j+n}` are paired by the complex structure.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FormElem {
    n: u8,
    comps: BTreeMap<u32, PolyScalar>,
}

fn below(mask: u32, a: u32) -> u32 {
    (mask & ((1u32 << a) - 1)).count_ones()
}

impl FormElem {
    /// Zero form; `n` is the complex dimension (at most 15).
    pub fn zero(n: u8) -> Self {
        assert!((1..=15).contains(&n), "complex dimension out of range: {n}");
        FormElem { n, comps: BTreeMap::new() }
    }

    /// Basis form `e^S` for the index set encoded in `mask` (bit `a-1` for `e^a`).
    pub fn basis(n: u8, mask: u32) -> Self {
        let mut f = Self::zero(n);
        assert!(mask >> (2 * n) == 0, "basis mask exceeds 2n covectors");
        f.comps.insert(mask, PolyScalar::one());
        f
    }

    /// One-form `sum_a v_a e^a`, `v` of length `2n`.
    pub fn covector(n: u8, v: &[PolyScalar]) -> Self {
        assert_eq!(v.len(), 2 * n as usize);
        let mut f = Self::zero(n);
        for (a, c) in v.iter().enumerate() {
            if !c.is_zero() {
                f.comps.insert(1 << a, c.clone());
            }
        }
        f
    }

    /// `xi_hat = sum_j (xi_j + i xi_{j+n}) (e^j - i e^{j+n})` for a real covector `xi` of length `2n`.
    pub fn xihat(n: u8, xi: &[PolyScalar]) -> Self {
        assert_eq!(xi.len(), 2 * n as usize);
        let nn = n as usize;
        let mut v = alloc::vec![PolyScalar::zero(); 2 * nn];
        for j in 0..nn {
            let zeta = &xi[j] + &xi[j + nn].scale(&GaussianRational::i());
            v[j] = zeta.clone();
            v[j + nn] = zeta.scale(&-GaussianRational::i());
        }
        Self::covector(n, &v)
    }

    pub fn dim(&self) -> u8 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (u32, &PolyScalar)> {
        self.comps.iter().map(|(m, c)| (*m, c))
    }

    pub fn component(&self, mask: u32) -> PolyScalar {
        self.comps.get(&mask).cloned().unwrap_or_default()
    }

    fn add_comp(&mut self, mask: u32, c: &PolyScalar) {
        if c.is_zero() {
            return;
        }
        let mut cur = self.comps.remove(&mask).unwrap_or_default();
        cur.add_assign_ref(c);
        if !cur.is_zero() {
            self.comps.insert(mask, cur);
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self, MultilinearError> {
        if self.n != o.n {
            return Err(MultilinearError::DimensionMismatch { left: self.n, right: o.n });
        }
        let mut out = self.clone();
        for (m, c) in &o.comps {
            out.add_comp(*m, c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &PolyScalar) -> Self {
        let mut out = Self::zero(self.n);
        for (m, v) in &self.comps {
            out.add_comp(*m, &(v * c));
        }
        out
    }

    /// Coefficients of a one-form, `None` if some component has degree != 1.
    fn as_covector(&self) -> Option<Vec<(u32, &PolyScalar)>> {
        self.comps.iter().map(|(m, c)| if m.count_ones() == 1 { Some((m.trailing_zeros(), c)) } else { None }).collect()
    }
}

/// Exterior multiplication `w -> xihat ^ w`.
pub fn eps(xihat: &FormElem, w: &FormElem) -> Result<FormElem, MultilinearError> {
    let v = xihat.as_covector().ok_or(MultilinearError::NotCovector)?;
    if xihat.n != w.n {
        return Err(MultilinearError::DimensionMismatch { left: xihat.n, right: w.n });
    }
    let mut out = FormElem::zero(w.n);
    for (mask, c) in &w.comps {
        for &(a, va) in &v {
            if mask & (1 << a) != 0 {
                continue;
            }
            let sign = if below(*mask, a) % 2 == 0 { 1 } else { -1 };
            out.add_comp(mask | (1 << a), &(va * c).scale(&GaussianRational::int(sign)));
        }
    }
    Ok(out)
}

/// Contraction with `xihat`, conjugate-linear in `xihat`.
pub fn iota(xihat: &FormElem, w: &FormElem) -> Result<FormElem, MultilinearError> {
    let v = xihat.as_covector().ok_or(MultilinearError::NotCovector)?;
    if xihat.n != w.n {
        return Err(MultilinearError::DimensionMismatch { left: xihat.n, right: w.n });
    }
    let mut out = FormElem::zero(w.n);
    for (mask, c) in &w.comps {
        for &(a, va) in &v {
            if mask & (1 << a) == 0 {
                continue;
            }
            let sign = if below(*mask, a) % 2 == 0 { 1 } else { -1 };
            out.add_comp(mask & !(1 << a), &(&va.conj() * c).scale(&GaussianRational::int(sign)));
        }
    }
    Ok(out)
}

/// Factor of an operator word built from `eps(xihat)` and `iota(xihat)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FormFactor {
    Eps,
    Iota,
}

/// Linear combination of words in `eps(xihat)` and `iota(xihat)` for a fixed
/// `xihat`. Words act right to left.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FormOp {
    xihat: FormElem,
    terms: Vec<(PolyScalar, Vec<FormFactor>)>,
}

impl FormOp {
    pub fn zero(xihat: &FormElem) -> Self {
        FormOp { xihat: xihat.clone(), terms: Vec::new() }
    }

    /// `c * id`.
    pub fn scalar(xihat: &FormElem, c: PolyScalar) -> Self {
        FormOp { xihat: xihat.clone(), terms: alloc::vec![(c, Vec::new())] }
    }

    pub fn word(xihat: &FormElem, c: PolyScalar, word: &[FormFactor]) -> Self {
        FormOp { xihat: xihat.clone(), terms: alloc::vec![(c, word.to_vec())] }
    }

    pub fn xihat(&self) -> &FormElem {
        &self.xihat
    }

    pub fn terms(&self) -> &[(PolyScalar, Vec<FormFactor>)] {
        &self.terms
    }

    pub fn add(&self, o: &FormOp) -> FormOp {
        let mut terms = self.terms.clone();
        terms.extend(o.terms.iter().cloned());
        FormOp { xihat: self.xihat.clone(), terms }
    }

    pub fn scale(&self, c: &PolyScalar) -> FormOp {
        FormOp { xihat: self.xihat.clone(), terms: self.terms.iter().map(|(k, w)| (k * c, w.clone())).collect() }
    }

    /// `self ∘ o`.
    pub fn compose(&self, o: &FormOp) -> FormOp {
        let mut terms = Vec::new();
        for (ca, wa) in &self.terms {
            for (cb, wb) in &o.terms {
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                terms.push((ca * cb, w));
            }
        }
        FormOp { xihat: self.xihat.clone(), terms }
    }

    pub fn apply(&self, w: &FormElem) -> Result<FormElem, MultilinearError> {
        let mut out = FormElem::zero(w.dim());
        for (c, word) in &self.terms {
            let mut cur = w.clone();
            for f in word.iter().rev() {
                cur = match f {
                    FormFactor::Eps => eps(&self.xihat, &cur)?,
                    FormFactor::Iota => iota(&self.xihat, &cur)?,
                };
            }
            out = out.checked_add(&cur.scale(c))?;
        }
        Ok(out)
    }

    /// Compare the actions of two operators on every basis form of degree `k`.
    pub fn agrees_on_degree(&self, o: &FormOp, k: u32) -> Result<bool, MultilinearError> {
        let n = self.xihat.dim();
        for mask in 0u32..(1u32 << (2 * n)) {
            if mask.count_ones() != k {
                continue;
            }
            let b = FormElem::basis(n, mask);
            if self.apply(&b)? != o.apply(&b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
