use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::exact_scalars::{GaussianRational, PolyScalar, ScalarError, XnRational};

use super::MultilinearError;

/// Square of every generator. Flipping this to `+1` changes every trace
/// identity downstream.
pub const GAMMA_SQUARE: i64 = -1;

/// Largest supported dimension (words are stored as bit masks).
pub const MAX_DIM: u8 = 16;

/// Indices `1..=n` contained in a word mask, ascending.
pub fn word_indices(mask: u32) -> Vec<u8> {
    (0..32).filter(|b| mask & (1 << b) != 0).map(|b| b as u8 + 1).collect()
}

/// Product of two canonical words: (sign, resulting word).
pub fn word_product(a: u32, b: u32) -> (i64, u32) {
    let mut swaps = 0u32;
    let mut bb = b;
    while bb != 0 {
        let y = bb.trailing_zeros();
        bb &= bb - 1;
        let above = if y >= 31 { 0 } else { a & !((1u32 << (y + 1)) - 1) };
        swaps += above.count_ones();
    }
    let common = (a & b).count_ones();
    let mut sign = if swaps % 2 == 0 { 1 } else { -1 };
    if common % 2 == 1 {
        sign *= GAMMA_SQUARE;
    }
    (sign, a ^ b)
}

/// Element of the complex Clifford algebra on `n` generators with
/// coefficients in [`XnRational`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CliffordElem {
    dim: u8,
    words: BTreeMap<u32, XnRational>,
}

impl CliffordElem {
    fn check_dim(n: u8) {
        assert!(n >= 2 && n % 2 == 0 && n <= MAX_DIM, "Clifford dimension must be even and at most {MAX_DIM}, got {n}");
    }

    pub fn zero(n: u8) -> Self {
        Self::check_dim(n);
        CliffordElem { dim: n, words: BTreeMap::new() }
    }

    pub fn scalar(n: u8, c: XnRational) -> Self {
        Self::from_word_coeff(n, 0, c)
    }

    pub fn identity(n: u8) -> Self {
        Self::scalar(n, XnRational::one())
    }

    fn from_word_coeff(n: u8, mask: u32, c: XnRational) -> Self {
        let mut e = Self::zero(n);
        if !c.is_zero() {
            e.words.insert(mask, c);
        }
        e
    }

    /// Generator `gamma_k`, `1 <= k <= n`.
    pub fn gamma(n: u8, k: u8) -> Self {
        assert!(k >= 1 && k <= n, "generator index {k} out of range 1..={n}");
        Self::from_word_coeff(n, 1 << (k - 1), XnRational::one())
    }

    /// Product `gamma_{k1} gamma_{k2} ...` in the given (not necessarily sorted) order.
    pub fn product_of(n: u8, ks: &[u8]) -> Self {
        let mut acc = Self::identity(n);
        for &k in ks {
            acc = &acc * &Self::gamma(n, k);
        }
        acc
    }

    /// Canonical basis word with coefficient `c`.
    pub fn word(n: u8, mask: u32, c: XnRational) -> Self {
        assert!(mask >> n == 0, "word uses generators beyond dimension {n}");
        Self::from_word_coeff(n, mask, c)
    }

    pub fn dim(&self) -> u8 {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> impl Iterator<Item = (u32, &XnRational)> {
        self.words.iter().map(|(m, c)| (*m, c))
    }

    pub fn coefficient(&self, mask: u32) -> XnRational {
        self.words.get(&mask).cloned().unwrap_or_default()
    }

    pub fn scalar_part(&self) -> XnRational {
        self.coefficient(0)
    }

    pub fn is_scalar(&self) -> bool {
        self.words.keys().all(|&m| m == 0)
    }

    fn add_word(&mut self, mask: u32, c: &XnRational) {
        if c.is_zero() {
            return;
        }
        let cur = self.words.remove(&mask).unwrap_or_default();
        let next = &cur + c;
        if !next.is_zero() {
            self.words.insert(mask, next);
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self, MultilinearError> {
        self.same_dim(o)?;
        let mut out = self.clone();
        for (m, c) in &o.words {
            out.add_word(*m, c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self, MultilinearError> {
        self.same_dim(o)?;
        let mut acc: BTreeMap<u32, XnRational> = BTreeMap::new();
        for (ma, ca) in &self.words {
            for (mb, cb) in &o.words {
                let (sign, w) = word_product(*ma, *mb);
                let mut prod = ca * cb;
                if sign < 0 {
                    prod = -prod;
                }
                let slot = acc.entry(w).or_default();
                *slot = &*slot + &prod;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(CliffordElem { dim: self.dim, words: acc })
    }

    fn same_dim(&self, o: &Self) -> Result<(), MultilinearError> {
        if self.dim == o.dim {
            Ok(())
        } else {
            Err(MultilinearError::DimensionMismatch { left: self.dim, right: o.dim })
        }
    }

    pub fn scale(&self, c: &XnRational) -> Self {
        self.map_coeffs(|x| x * c)
    }

    pub fn scale_poly(&self, c: &PolyScalar) -> Self {
        self.map_coeffs(|x| x.scale_poly(c))
    }

    pub fn scale_gaussian(&self, c: &GaussianRational) -> Self {
        self.map_coeffs(|x| x.scale(c))
    }

    pub fn map_coeffs(&self, f: impl Fn(&XnRational) -> XnRational) -> Self {
        let mut words = BTreeMap::new();
        for (m, c) in &self.words {
            let v = f(c);
            if !v.is_zero() {
                words.insert(*m, v);
            }
        }
        CliffordElem { dim: self.dim, words }
    }

    pub fn try_map_coeffs(&self, f: impl Fn(&XnRational) -> Result<XnRational, ScalarError>) -> Result<Self, ScalarError> {
        let mut words = BTreeMap::new();
        for (m, c) in &self.words {
            let v = f(c)?;
            if !v.is_zero() {
                words.insert(*m, v);
            }
        }
        Ok(CliffordElem { dim: self.dim, words })
    }

    /// Derivative in `xn` applied coefficientwise.
    pub fn d_xn_coeffs(&self) -> Self {
        self.map_coeffs(|c| c.d_xn())
    }

    /// Trace in the spinor representation: `2^(n/2)` times the identity coefficient.
    pub fn spinor_trace(&self) -> XnRational {
        let size = 1i64 << (self.dim / 2);
        self.scalar_part().scale(&GaussianRational::int(size))
    }

    /// Reverse of every word (anti-automorphism), used in tests.
    pub fn reversion(&self) -> Self {
        let mut out = Self::zero(self.dim);
        for (m, c) in &self.words {
            let k = m.count_ones() as usize;
            let sign = if (k * k.saturating_sub(1) / 2) % 2 == 0 { 1 } else { -1 };
            out.add_word(*m, &c.scale(&GaussianRational::int(sign)));
        }
        out
    }
}

impl Add<&CliffordElem> for &CliffordElem {
    type Output = CliffordElem;
    fn add(self, o: &CliffordElem) -> CliffordElem {
        self.checked_add(o).expect("Clifford dimension mismatch")
    }
}

impl Sub<&CliffordElem> for &CliffordElem {
    type Output = CliffordElem;
    fn sub(self, o: &CliffordElem) -> CliffordElem {
        self.checked_add(&-o).expect("Clifford dimension mismatch")
    }
}

impl Mul<&CliffordElem> for &CliffordElem {
    type Output = CliffordElem;
    fn mul(self, o: &CliffordElem) -> CliffordElem {
        self.checked_mul(o).expect("Clifford dimension mismatch")
    }
}

impl Neg for &CliffordElem {
    type Output = CliffordElem;
    fn neg(self) -> CliffordElem {
        self.map_coeffs(|c| -c)
    }
}

macro_rules! forward_owned_cl {
    ($tr:ident, $m:ident) => {
        impl $tr<CliffordElem> for CliffordElem {
            type Output = CliffordElem;
            fn $m(self, o: CliffordElem) -> CliffordElem {
                (&self).$m(&o)
            }
        }
        impl $tr<&CliffordElem> for CliffordElem {
            type Output = CliffordElem;
            fn $m(self, o: &CliffordElem) -> CliffordElem {
                (&self).$m(o)
            }
        }
        impl $tr<CliffordElem> for &CliffordElem {
            type Output = CliffordElem;
            fn $m(self, o: CliffordElem) -> CliffordElem {
                self.$m(&o)
            }
        }
    };
}
forward_owned_cl!(Add, add);
forward_owned_cl!(Sub, sub);
forward_owned_cl!(Mul, mul);

impl fmt::Display for CliffordElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.words.is_empty() {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = Vec::new();
        for (m, c) in &self.words {
            let gens: Vec<String> = word_indices(*m).iter().map(|k| alloc::format!("gamma({})", k)).collect();
            if gens.is_empty() {
                parts.push(alloc::format!("({})", c));
            } else {
                parts.push(alloc::format!("({}) * {}", c, gens.join(" * ")));
            }
        }
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_scalars::Var;

    fn g(n: u8, k: u8) -> CliffordElem {
        CliffordElem::gamma(n, k)
    }

    #[test]
    fn generator_relations() {
        for n in [2u8, 4, 6, 8] {
            for a in 1..=n {
                for b in 1..=n {
                    let anti = &(&g(n, a) * &g(n, b)) + &(&g(n, b) * &g(n, a));
                    let expect = if a == b { CliffordElem::identity(n).scale_gaussian(&GaussianRational::int(2 * GAMMA_SQUARE)) } else { CliffordElem::zero(n) };
                    assert_eq!(anti, expect, "n={n} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn spec_products() {
        let n = 4;
        let g12 = &g(n, 1) * &g(n, 2);
        assert_eq!(&g12 * &g(n, 2), -&g(n, 1));
        assert_eq!(&g12 * &g12, -&CliffordElem::identity(n));
        // c(xi') c(xi') = -|xi'|^2
        let mut c = CliffordElem::zero(n);
        for k in 1..n {
            c = &c + &g(n, k).scale_poly(&PolyScalar::var(Var::Xi(k)));
        }
        let sq = (&c * &c).map_coeffs(|x| x.map_coeffs(|p| p.reduce_unit_sphere(n)));
        assert_eq!(sq, -&CliffordElem::identity(n));
    }

    #[test]
    fn traces() {
        let n4 = &g(4, 4) * &g(4, 4);
        assert_eq!(n4.spinor_trace(), XnRational::constant(PolyScalar::int(-4)));
        assert_eq!(CliffordElem::identity(6).spinor_trace(), XnRational::constant(PolyScalar::int(8)));
        assert!((&g(4, 1) * &g(4, 2)).spinor_trace().is_zero());
        // tr[d_xn c(xi') . c(xi')] = -2 hp at |xi'| = 1
        let mut c = CliffordElem::zero(4);
        for k in 1..4 {
            c = &c + &g(4, k).scale_poly(&PolyScalar::var(Var::Xi(k)));
        }
        let dc = c.scale_poly(&PolyScalar::var(Var::Hp).scale(&GaussianRational::frac(1, 2)));
        let t = (&dc * &c).spinor_trace().map_coeffs(|p| p.reduce_unit_sphere(4));
        assert_eq!(t, XnRational::constant(PolyScalar::var(Var::Hp).scale(&GaussianRational::int(-2))));
    }

    #[test]
    fn dimension_mismatch() {
        assert_eq!(g(4, 1).checked_mul(&g(6, 1)), Err(MultilinearError::DimensionMismatch { left: 4, right: 6 }));
    }

    #[test]
    fn volume_element_squares_to_one() {
        let w = CliffordElem::product_of(4, &[1, 2, 3, 4]);
        assert_eq!(&w * &w, CliffordElem::identity(4));
    }
}
