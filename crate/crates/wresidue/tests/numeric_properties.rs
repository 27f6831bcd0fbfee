//! Exact objects against independent double-precision computations.

use std::sync::OnceLock;

use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use statrs::function::gamma::gamma;

use wres_core::boundary_engine::integrate_sphere;
use wres_core::exact_scalars::{rat, GaussianRational, Monomial, PolyScalar, Var, XnRational};
use wres_core::multilinear::CliffordElem;
use wres_core::symbol_engine::{build_operator_jet, BaseOperator, OperatorSpec, SymbolJet, Torsion};
use wresidue::numeric_oracle::eval::eval_xn_at;
use wresidue::numeric_oracle::gamma::trace;
use wresidue::numeric_oracle::quadrature::integrate_real_line;
use wresidue::numeric_oracle::symbols::NumericModel;
use wresidue::numeric_oracle::{evaluate_numeric, GammaRep, ParamDraw};

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + b.norm())
}

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4).prop_map(|(a, b, c, d)| GaussianRational::new(rat(a, b), rat(c, d)))
}

fn coefficient(n: u8) -> impl Strategy<Value = PolyScalar> {
    let vars = vec![
        Monomial::one(),
        Monomial::var(Var::Hp, 1),
        Monomial::var(Var::Xi(1), 1),
        Monomial::var(Var::Xi(n - 1), 2),
        Monomial::from_pairs(vec![(Var::Xi(1), 1), (Var::A(1, 2, n), 1)]),
    ];
    prop::collection::vec((proptest::sample::select(vars), gaussian()), 1..3).prop_map(|ts| {
        let mut p = PolyScalar::zero();
        for (m, c) in ts {
            p.add_term(m, &c);
        }
        p
    })
}

fn dim() -> impl Strategy<Value = u8> {
    prop_oneof![Just(2u8), Just(4), Just(6)]
}

fn clifford_case() -> impl Strategy<Value = (CliffordElem, CliffordElem, u64)> {
    dim().prop_flat_map(|n| {
        let full = (1u32 << n) - 1;
        let elem = move || {
            prop::collection::vec((0..=full, prop::collection::vec(coefficient(n), 1..3), 0u32..=2, 0u32..=2), 1..5).prop_map(move |ws| {
                let mut e = CliffordElem::zero(n);
                for (mask, num, dp, dm) in ws {
                    e = &e + &CliffordElem::word(n, mask, XnRational::new(num, dp, dm));
                }
                e
            })
        };
        (elem(), elem(), any::<u64>())
    })
}

/// Numerator of degree at most `dp + dm - 2`, so the real-line integral converges.
fn integrable() -> impl Strategy<Value = (XnRational, u64)> {
    (1u32..=3, 1u32..=3).prop_flat_map(|(dp, dm)| {
        let len = (dp + dm - 1) as usize;
        (prop::collection::vec(coefficient(4), 1..=len), any::<u64>()).prop_map(move |(num, seed)| (XnRational::new(num, dp, dm), seed))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn symbolic_trace_matches_matrix_trace((a, b, seed) in clifford_case()) {
        let n = a.dim();
        let rep = GammaRep::new(n).unwrap();
        let d = ParamDraw::sample(n, &mut ChaCha8Rng::seed_from_u64(seed));
        let prod = &a * &b;
        let symbolic = evaluate_numeric(&prod.spinor_trace(), &d, &rep).unwrap();
        let ma = evaluate_numeric(&a, &d, &rep).unwrap();
        let mb = evaluate_numeric(&b, &d, &rep).unwrap();
        let matrix = trace(&(ma * mb));
        prop_assert!(close(symbolic, matrix, 1e-9), "symbolic {symbolic} vs matrix {matrix}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn line_integral_matches_quadrature((f, seed) in integrable()) {
        let d = ParamDraw::sample(4, &mut ChaCha8Rng::seed_from_u64(seed));
        let rep = GammaRep::new(4).unwrap();
        let exact = evaluate_numeric(&f.integrate_real_line().unwrap(), &d, &rep).unwrap();
        let quad = integrate_real_line(|x| eval_xn_at(&f, Complex64::new(x, 0.0), &d).unwrap(), 1e-13, 1e-12).unwrap();
        prop_assert!(close(exact, quad.value, 1e-8), "exact {exact} vs quadrature {}", quad.value);
    }

    #[test]
    fn sphere_moments_match_the_gamma_formula(n in prop_oneof![Just(4u8), Just(6), Just(8)], exps in prop::collection::vec(0u32..=4, 7)) {
        let dcoords = (n - 1) as usize;
        let exps = &exps[..dcoords];
        let mono = Monomial::from_pairs(exps.iter().enumerate().filter(|(_, e)| **e > 0).map(|(k, e)| (Var::Xi(k as u8 + 1), *e)).collect());
        let got = integrate_sphere(&PolyScalar::term(mono, GaussianRational::one()), n);
        let rep = GammaRep::new(n).unwrap();
        let got = evaluate_numeric(&got, &ParamDraw::flat(n), &rep).unwrap();
        let want = if exps.iter().any(|e| e % 2 == 1) {
            0.0
        } else {
            let total: u32 = exps.iter().sum();
            2.0 * exps.iter().map(|e| gamma((*e as f64 + 1.0) / 2.0)).product::<f64>() / gamma((total as f64 + dcoords as f64) / 2.0)
        };
        prop_assert!(close(got, Complex64::new(want, 0.0), 1e-12), "{got} vs {want}");
    }
}

fn jets(n: u8) -> &'static [(BaseOperator, SymbolJet)] {
    static J4: OnceLock<Vec<(BaseOperator, SymbolJet)>> = OnceLock::new();
    static J6: OnceLock<Vec<(BaseOperator, SymbolJet)>> = OnceLock::new();
    let cell = if n == 4 { &J4 } else { &J6 };
    cell.get_or_init(|| {
        [BaseOperator::DInv, BaseOperator::DStarInv, BaseOperator::DInvSq, BaseOperator::DStarInvSq]
            .into_iter()
            .map(|op| (op, build_operator_jet(&OperatorSpec::new(op, n).with_torsion(Torsion::FULL)).unwrap()))
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    // sigma_r(s xi', s xin) = s^r sigma_r(xi', xin): exact components on |xi'| = 1
    // against the matrix model at a rescaled covector
    #[test]
    fn symbol_components_are_homogeneous(n in prop_oneof![Just(4u8), Just(6)], seed in any::<u64>(), s in 0.2f64..5.0) {
        let rep = GammaRep::new(n).unwrap();
        let d = ParamDraw::sample(n, &mut ChaCha8Rng::seed_from_u64(seed));
        let model = NumericModel::new(&rep, &d, Torsion::FULL);
        let xi: Vec<f64> = d.xi_prime.iter().map(|x| x * s).collect();
        let z = Complex64::new(d.xn * s, 0.0);
        for (op, jet) in jets(n) {
            let top = op.leading_order();
            let num = model.jet(*op, &xi, z).unwrap();
            let pairs = [
                (evaluate_numeric(jet.value(top).unwrap(), &d, &rep).unwrap(), &num.top, top),
                (evaluate_numeric(&jet.d_x_n(top).unwrap(), &d, &rep).unwrap(), &num.top_dx, top),
                (evaluate_numeric(jet.value(top - 1).unwrap(), &d, &rep).unwrap(), &num.next, top - 1),
            ];
            for (exact, scaled, r) in pairs {
                let want = exact * Complex64::new(s.powi(r), 0.0);
                let err = (scaled - &want).norm();
                prop_assert!(err <= 1e-10 * (1.0 + want.norm()), "{op:?} order {r}: deviation {err}");
            }
        }
    }
}
