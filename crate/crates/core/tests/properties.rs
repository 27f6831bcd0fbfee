//! Algebraic invariants of the exact scalar and Clifford layers.

use proptest::prelude::*;

use wres_core::exact_scalars::{rat, GaussianRational, Monomial, PolyScalar, Var, XnRational};
use wres_core::multilinear::{CliffordElem, GAMMA_SQUARE};

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4).prop_map(|(a, b, c, d)| GaussianRational::new(rat(a, b), rat(c, d)))
}

fn monomial() -> impl Strategy<Value = Monomial> {
    prop_oneof![
        Just(Monomial::one()),
        Just(Monomial::var(Var::Hp, 1)),
        Just(Monomial::var(Var::Xi(1), 1)),
        Just(Monomial::var(Var::Xi(2), 2)),
        Just(Monomial::from_pairs(vec![(Var::Hp, 1), (Var::A(1, 1, 2), 1)])),
    ]
}

fn poly() -> impl Strategy<Value = PolyScalar> {
    prop::collection::vec((monomial(), gaussian()), 0..3).prop_map(|ts| {
        let mut p = PolyScalar::zero();
        for (m, c) in ts {
            p.add_term(m, &c);
        }
        p
    })
}

fn rational() -> impl Strategy<Value = XnRational> {
    (prop::collection::vec(poly(), 0..4), 0u32..=3, 0u32..=3).prop_map(|(num, dp, dm)| XnRational::new(num, dp, dm))
}

fn decaying() -> impl Strategy<Value = XnRational> {
    (1u32..=3, 1u32..=3).prop_flat_map(|(dp, dm)| {
        let max_deg = (dp + dm) as usize;
        prop::collection::vec(poly(), 0..max_deg).prop_map(move |num| XnRational::new(num, dp, dm))
    })
}

fn clifford(n: u8) -> impl Strategy<Value = CliffordElem> {
    let full = (1u32 << n) - 1;
    prop::collection::vec((0..=full, gaussian(), prop::bool::weighted(0.2)), 0..5).prop_map(move |ws| {
        let mut e = CliffordElem::zero(n);
        for (mask, c, rational_coeff) in ws {
            let coeff = if rational_coeff { XnRational::new(vec![PolyScalar::constant(c)], 1, 1) } else { XnRational::gaussian(c) };
            e = &e + &CliffordElem::word(n, mask, coeff);
        }
        e
    })
}

fn dim() -> impl Strategy<Value = u8> {
    prop_oneof![Just(2u8), Just(4), Just(6), Just(8)]
}

fn triple() -> impl Strategy<Value = (CliffordElem, CliffordElem, CliffordElem)> {
    dim().prop_flat_map(|n| (clifford(n), clifford(n), clifford(n)))
}

#[test]
fn generators_anticommute() {
    for n in [2u8, 4, 6, 8, 10] {
        let one = CliffordElem::identity(n);
        for i in 1..=n {
            for j in 1..=n {
                let (gi, gj) = (CliffordElem::gamma(n, i), CliffordElem::gamma(n, j));
                let anti = &(&gi * &gj) + &(&gj * &gi);
                let want = if i == j { one.scale_gaussian(&GaussianRational::int(2 * GAMMA_SQUARE)) } else { CliffordElem::zero(n) };
                assert_eq!(anti, want, "n = {n}, i = {i}, j = {j}");
            }
        }
        assert_eq!(one.spinor_trace(), XnRational::gaussian(GaussianRational::int(1 << (n / 2))));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn clifford_product_is_associative_and_distributive((a, b, c) in triple()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!((&a * &b).reversion(), &b.reversion() * &a.reversion());
    }

    #[test]
    fn trace_is_cyclic((a, b, c) in triple()) {
        prop_assert_eq!((&a * &b).spinor_trace(), (&b * &a).spinor_trace());
        let abc = &(&a * &b) * &c;
        let bca = &(&b * &c) * &a;
        prop_assert_eq!(abc.spinor_trace(), bca.spinor_trace());
    }

    #[test]
    fn projections_are_complementary_idempotents(f in decaying()) {
        let p = f.pi_plus().unwrap();
        let m = f.pi_minus().unwrap();
        prop_assert_eq!(&p + &m, f.clone());
        prop_assert_eq!(p.pi_plus().unwrap(), p.clone());
        prop_assert!(p.pi_minus().unwrap().is_zero());
        prop_assert!(m.pi_plus().unwrap().is_zero());
        prop_assert_eq!(p.den_minus(), 0);
        prop_assert_eq!(m.den_plus(), 0);
    }

    #[test]
    fn partial_fractions_recompose(f in rational()) {
        let pf = f.pf_decompose();
        prop_assert_eq!(pf.recompose(), f.clone());
        for t in &pf.terms {
            prop_assert!(t.order >= 1);
        }
    }

    #[test]
    fn contour_functional_is_the_plus_residue(f in decaying()) {
        // i Res(+i) f = (1/2 pi) * integral of pi+ f over the real line, both sides exact
        let lhs = f.pi_prime().unwrap();
        let p = f.pi_plus().unwrap();
        if let Ok(int) = p.integrate_real_line() {
            let pi = Monomial::var(Var::Pi, 1);
            let rhs = int.div_monomial(&pi).expect("carries a factor pi").scale(&GaussianRational::frac(1, 2));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn derivative_obeys_leibniz(f in rational(), g in rational()) {
        prop_assert_eq!((&f * &g).d_xn(), &(&f.d_xn() * &g) + &(&f * &g.d_xn()));
    }
}
