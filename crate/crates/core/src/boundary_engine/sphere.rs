//! Monomial moments over the unit sphere of the boundary cotangent fiber.

use num_traits::One;

use crate::exact_scalars::{rat_int, Monomial, PolyScalar, Rational, Var};

fn double_factorial_odd(a: u32) -> Rational {
    // (2a-1)!!
    let mut acc = Rational::one();
    let mut k = 1i64;
    while k < 2 * a as i64 {
        acc *= rat_int(k);
        k += 2;
    }
    acc
}

/// `∫ xi^(2a) dsigma / Omega` over `S^{d-1} ⊂ R^d` for an exponent vector.
/// Any odd exponent gives zero.
pub fn moment(exponents: &[u32], d: u32) -> Rational {
    if exponents.iter().any(|e| e % 2 == 1) {
        return Rational::from_integer(0.into());
    }
    let mut num = Rational::one();
    let mut total = 0u32;
    for &e in exponents {
        num *= double_factorial_odd(e / 2);
        total += e / 2;
    }
    let mut den = Rational::one();
    for j in 1..=total {
        den *= rat_int((d + 2 * j - 2) as i64);
    }
    num / den
}

/// Integrate every `xi` monomial of `p` over `|xi'| = 1` in dimension `n`
/// (fiber `R^{n-1}`), producing a multiple of `Omega`.
pub fn integrate_sphere(p: &PolyScalar, n: u8) -> PolyScalar {
    let d = (n - 1) as u32;
    let omega = Monomial::var(Var::Omega, 1);
    let mut out = PolyScalar::zero();
    for (m, c) in p.terms() {
        let (xi, rest) = m.split(|v| matches!(v, Var::Xi(_)));
        let exps: alloc::vec::Vec<u32> = (1..n).map(|k| xi.exponent(Var::Xi(k))).collect();
        let mom = moment(&exps, d);
        if mom == Rational::from_integer(0.into()) {
            continue;
        }
        out.add_term(rest.mul(&omega), &c.scale(&mom));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_scalars::{rat, GaussianRational};

    #[test]
    fn low_moments() {
        assert_eq!(moment(&[0, 0, 0], 3), rat_int(1));
        assert_eq!(moment(&[2, 0, 0], 3), rat(1, 3));
        assert_eq!(moment(&[1, 1, 0], 3), rat_int(0));
        assert_eq!(moment(&[4, 0, 0], 3), rat(3, 15));
        assert_eq!(moment(&[2, 2, 0], 3), rat(1, 15));
        assert_eq!(moment(&[2, 0, 0, 0, 0], 5), rat(1, 5));
    }

    #[test]
    fn moments_respect_sphere_relation() {
        // sum_i xi_i^2 = 1 integrates to Omega
        for d in 2..7u32 {
            let mut s = Rational::from_integer(0.into());
            for i in 0..d as usize {
                let mut e = alloc::vec![0; d as usize];
                e[i] = 2;
                s += moment(&e, d);
            }
            assert_eq!(s, rat_int(1));
            // (sum xi_i^2)^2 = 1 as well
            let mut s4 = Rational::from_integer(0.into());
            for i in 0..d as usize {
                for j in 0..d as usize {
                    let mut e = alloc::vec![0; d as usize];
                    e[i] += 2;
                    e[j] += 2;
                    s4 += moment(&e, d);
                }
            }
            assert_eq!(s4, rat_int(1));
        }
    }

    #[test]
    fn integrates_polynomials() {
        let x1 = PolyScalar::var(Var::Xi(1));
        let p = &(&x1 * &x1) * &PolyScalar::var(Var::Hp);
        let expect = PolyScalar::term(Monomial::from_pairs(alloc::vec![(Var::Hp, 1), (Var::Omega, 1)]), GaussianRational::frac(1, 3));
        assert_eq!(integrate_sphere(&p, 4), expect);
        assert!(integrate_sphere(&x1, 4).is_zero());
    }
}
