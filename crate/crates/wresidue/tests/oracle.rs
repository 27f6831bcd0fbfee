//! Exact boundary terms against the quadrature oracle.

use num_complex::Complex64;

use wres_core::boundary_engine::{compute_phi, CaseOracle, OracleQuery, OraclePolicy, Winner};
use wres_core::exact_scalars::{rat, PolyScalar, Var};
use wres_core::heat_nonminimal::{Dim, HeatParams};
use wres_core::symbol_engine::{BaseOperator, OperatorSpec, Torsion};
use wresidue::cli_dsl::{Preset, Projector, RunConfig};
use wresidue::numeric_oracle::{evaluate_numeric, numeric_case, numeric_total, richardson_wres, GammaRep, ParamDraw, QuadratureOracle};

const TOL: f64 = 1e-8;

fn check_all_cases(left: &OperatorSpec, right: &OperatorSpec, draws: &[ParamDraw]) {
    let phi = compute_phi(left, right, &[], None, OraclePolicy::Mismatches).unwrap();
    let rep = GammaRep::new(phi.n).unwrap();
    for c in &phi.cases {
        let numeric = numeric_case(c.indices, left, right, draws).unwrap();
        for (x, d) in numeric.iter().zip(draws) {
            let exact = evaluate_numeric(&c.value, d, &rep).unwrap();
            assert!((exact - x).norm() <= TOL * x.norm().max(1.0), "case {}: exact {exact} vs numeric {x}", c.label);
        }
    }
    let total = numeric_total(left, right, draws).unwrap();
    for (x, d) in total.iter().zip(draws) {
        let exact: Complex64 = evaluate_numeric(&phi.total, d, &rep).unwrap();
        assert!((exact - x).norm() <= TOL * x.norm().max(1.0), "total: exact {exact} vs numeric {x}");
    }
}

#[test]
fn dirac4_and_chiral4_cases_agree_with_quadrature() {
    let draws = ParamDraw::seeded(4, 7, 3);
    for p in [Preset::Sec3, Preset::Sec6] {
        let cfg = RunConfig::preset(p);
        check_all_cases(&cfg.left_spec(), &cfg.right_spec(), &draws);
    }
}

#[test]
fn torsion_toggles_and_minus_projector_agree_with_quadrature() {
    let draws = ParamDraw::seeded(4, 11, 2);
    let mut cfg = RunConfig::preset(Preset::Custom);
    cfg.n = 4;
    for (torsion, projector) in [
        (Torsion::NONE, Projector::None),
        (Torsion { three_form: true, vectorial: false }, Projector::None),
        (Torsion { three_form: false, vectorial: true }, Projector::ChiralMinus),
    ] {
        cfg.torsion = torsion;
        cfg.projector = projector;
        check_all_cases(&cfg.left_spec(), &cfg.right_spec(), &draws);
    }
}

#[test]
fn dirac6_total_agrees_with_quadrature() {
    let cfg = RunConfig::preset(Preset::Sec5);
    let draws = ParamDraw::seeded(6, 3, 2);
    check_all_cases(&cfg.left_spec(), &cfg.right_spec(), &draws);
}

#[test]
fn arbitration_picks_the_engine_over_a_perturbed_target() {
    let cfg = RunConfig::preset(Preset::Sec3);
    let (left, right) = (cfg.left_spec(), cfg.right_spec());
    let phi = compute_phi(&left, &right, &[], None, OraclePolicy::Mismatches).unwrap();
    let wrong = &phi.total + &PolyScalar::var(Var::Hp);
    let q = OracleQuery { key: "total", left: &left, right: &right, p1: phi.p1, p2: phi.p2, indices: None };
    let oracle = QuadratureOracle::new(5, 4);
    let v = oracle.arbitrate(&q, &phi.total, &wrong).unwrap();
    assert_eq!(v.winner(), Winner::Engine, "{v:?}");
    assert_eq!(v.engine_agree, 4);
    let v = oracle.arbitrate(&q, &wrong, &phi.total).unwrap();
    assert_eq!(v.winner(), Winner::Target, "{v:?}");
}

#[test]
fn unsupported_operators_fail_cleanly() {
    let left = OperatorSpec::new(BaseOperator::D, 4);
    let right = OperatorSpec::new(BaseOperator::DInv, 4);
    assert!(numeric_total(&left, &right, &ParamDraw::seeded(4, 1, 1)).is_err());
}

#[test]
fn richardson_limits() {
    let pole = richardson_wres(&HeatParams::new(Dim::Value(4), 4, rat(2, 1), rat(2, 1)), 1.0, 1e-6).unwrap();
    assert!(pole.passed(), "{pole:?}");
    assert_eq!(pole.exact, 0.0);
    let (got, want) = pole.slope.unwrap();
    assert!((got - want).abs() < 1e-6 && (want + std::f64::consts::PI.powi(2) / 3.0).abs() < 1e-12, "{got} {want}");
    let regular = richardson_wres(&HeatParams::new(Dim::Value(6), 2, rat(3, 2), rat(1, 2)), 0.7, 1e-6).unwrap();
    assert!(regular.passed(), "{regular:?}");
    assert!(regular.exact.abs() > 1e-3);
}
