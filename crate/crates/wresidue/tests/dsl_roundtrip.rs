use proptest::prelude::*;

use wres_core::symbol_engine::BaseOperator;
use wresidue::cli_dsl::{parse_expr, BinOp, CliffAtom, Expr, Func, Indet};

fn index() -> impl Strategy<Value = u8> {
    1u8..=255
}

fn indet() -> impl Strategy<Value = Indet> {
    prop_oneof![
        Just(Indet::Hp),
        Just(Indet::Pi),
        Just(Indet::Omega),
        Just(Indet::M),
        Just(Indet::Rijij),
        Just(Indet::Xn),
        Just(Indet::SumA),
        index().prop_map(Indet::Xi),
        (index(), index(), index()).prop_map(|(i, s, t)| Indet::A(i, s, t)),
    ]
}

fn cliff() -> impl Strategy<Value = CliffAtom> {
    prop_oneof![Just(CliffAtom::XiPrime), Just(CliffAtom::Xi), Just(CliffAtom::Dxn), Just(CliffAtom::OmegaG), index().prop_map(CliffAtom::Gamma)]
}

fn operator() -> impl Strategy<Value = BaseOperator> {
    prop_oneof![
        Just(BaseOperator::D),
        Just(BaseOperator::DStar),
        Just(BaseOperator::DInv),
        Just(BaseOperator::DStarInv),
        Just(BaseOperator::DInvSq),
        Just(BaseOperator::DStarInvSq),
    ]
}

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (0u64..=i64::MAX as u64).prop_map(Expr::Int),
        Just(Expr::I),
        indet().prop_map(Expr::Var),
        cliff().prop_map(Expr::Cliff),
        (operator(), -6i32..=2).prop_map(|(o, r)| Expr::Sigma(o, r)),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(5, 48, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            (prop_oneof![Just(BinOp::Add), Just(BinOp::Sub), Just(BinOp::Mul), Just(BinOp::Div)], inner.clone(), inner.clone())
                .prop_map(|(op, a, b)| Expr::bin(op, a, b)),
            (inner.clone(), -7i32..=7).prop_map(|(e, k)| Expr::Pow(Box::new(e), k)),
            (proptest::sample::select(Func::ALL.to_vec()), inner).prop_map(|(f, e)| Expr::call(f, e)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn parse_print_parse_is_idempotent(e in expr()) {
        let printed = e.to_string();
        let once = parse_expr(&printed).map_err(|err| TestCaseError::fail(format!("{printed}: {err}")))?;
        prop_assert_eq!(&once, &e);
        let twice = parse_expr(&once.to_string()).unwrap();
        prop_assert_eq!(twice.to_string(), printed);
        prop_assert_eq!(twice, once);
    }
}

#[test]
fn whitespace_and_newlines_do_not_matter() {
    let a = parse_expr("int_xn( 1 /\n (1 + xn ^ 2) )").unwrap();
    let b = parse_expr("int_xn(1/(1+xn^2))").unwrap();
    assert_eq!(a, b);
}
