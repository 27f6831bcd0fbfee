use super::*;

fn spec(b: BaseOperator, n: u8) -> OperatorSpec {
    OperatorSpec::new(b, n)
}

fn x() -> XnRational {
    XnRational::xn()
}

#[test]
fn leading_parametrix_is_i_c_xi_over_norm() {
    for n in [4u8, 6] {
        let q = build_operator_jet(&spec(BaseOperator::DInv, n)).unwrap();
        assert_eq!(q.leading_order(), -1);
        let expect = c_xi(n).scale_gaussian(&GaussianRational::i()).scale(&XnRational::inv_one_plus_xn2(1));
        assert_eq!(q.value(-1).unwrap(), &expect);
    }
}

#[test]
fn parametrix_times_symbol_is_identity() {
    let n = 4;
    let d = build_dirac_symbols(&spec(BaseOperator::D, n)).unwrap();
    let q = invert_symbol(&d, 2).unwrap();
    let top = specialize(&(d.value(1).unwrap() * q.value(-1).unwrap()));
    assert_eq!(top, CliffordElem::identity(n));
    // order -1 of q o d must vanish as well
    let prod = compose(&q, &d, BaseOperator::DInv).unwrap();
    assert_eq!(prod.value(0).unwrap(), &CliffordElem::identity(n));
    assert!(prod.value(-1).unwrap().is_zero());
}

#[test]
fn squared_parametrix_matches_inverse_of_square() {
    // Two routes: q o q versus invert(D o D).
    for n in [4u8, 6] {
        let d = build_dirac_symbols(&spec(BaseOperator::D, n)).unwrap();
        let q = invert_symbol(&d, 2).unwrap();
        let qq = square_inverse_symbol(&q, 2).unwrap();

        let dd = compose(&d, &d, BaseOperator::D).unwrap();
        let lead = dd.value(2).unwrap();
        assert!(lead.is_scalar());
        assert_eq!(lead.scalar_part(), xi_norm_sq());
        let inv_top = invert_leading(lead).unwrap();
        assert_eq!(qq.value(-2).unwrap(), &inv_top);

        let dinv = specialize(&-&(&(&inv_top * dd.entry(2).unwrap().dxn.as_ref().unwrap()) * &inv_top));
        let inner = &(dd.value(1).unwrap() * &inv_top) + &(&lead.d_xn_coeffs() * &dinv).scale_gaussian(&-GaussianRational::i());
        let next = specialize(&-&(&inv_top * &inner));
        assert_eq!(qq.value(-3).unwrap(), &next, "n={n}");
    }
}

#[test]
fn squared_leading_symbol() {
    let q = build_operator_jet(&spec(BaseOperator::DInvSq, 4)).unwrap();
    let top = q.value(-2).unwrap();
    assert_eq!(top, &CliffordElem::scalar(4, XnRational::inv_one_plus_xn2(1)));
    let d2 = q.d_xi_n_jet().d_xi_n_jet();
    // second xn-derivative of 1/(1+xn^2) is (6 xn^2 - 2)/(1+xn^2)^3
    let expect = (&(&x() * &x()).scale(&GaussianRational::int(6)) - &XnRational::gaussian(GaussianRational::int(2))) * XnRational::inv_one_plus_xn2(3);
    assert_eq!(d2.value(-2).unwrap().scalar_part(), expect);
}

#[test]
fn order_zero_split_matches_full_sum() {
    let n = 4;
    let parts = order_zero_parts(n);
    let mut full = CliffordElem::zero(n);
    for i in 1..=n {
        for s in 1..=n {
            for t in 1..=n {
                let a = PolyScalar::torsion(i, s, t);
                if !a.is_zero() {
                    full = &full + &CliffordElem::product_of(n, &[i, s, t]).scale_poly(&a.scale(&GaussianRational::frac(1, 4)));
                }
            }
        }
    }
    assert_eq!(&parts.three_form + &parts.vectorial, full);
}

#[test]
fn adjoint_flips_vectorial_part_only() {
    let n = 4;
    let d = build_dirac_symbols(&spec(BaseOperator::D, n)).unwrap();
    let ds = build_dirac_symbols(&spec(BaseOperator::DStar, n)).unwrap();
    assert_eq!(d.value(1).unwrap(), ds.value(1).unwrap());
    let diff = d.value(0).unwrap() - ds.value(0).unwrap();
    assert_eq!(diff, order_zero_parts(n).vectorial.scale_gaussian(&GaussianRational::int(2)));
    let plain = build_dirac_symbols(&spec(BaseOperator::D, n).with_torsion(Torsion::NONE)).unwrap();
    assert_eq!(plain.value(0).unwrap(), &order_zero_parts(n).metric);
}

#[test]
fn derivative_slices() {
    let q = build_operator_jet(&spec(BaseOperator::DInv, 4)).unwrap();
    assert!(q.d_x_n(-1).is_ok());
    assert_eq!(q.d_x_n(-2), Err(SymbolError::DerivativeUnavailable(-2)));
    assert_eq!(q.value(-3), Err(SymbolError::OrderUnavailable(-3)));
    assert!(q.d_x_prime(-1, 2).unwrap().is_zero());
    let av = q.availability();
    assert_eq!(av.value.into_iter().collect::<Vec<_>>(), alloc::vec![-2, -1]);
}

#[test]
fn projections_split_symbol() {
    let q = build_operator_jet(&spec(BaseOperator::DInv, 4)).unwrap();
    let v = q.value(-1).unwrap();
    let sum = &pi_plus(v).unwrap() + &pi_minus(v).unwrap();
    assert_eq!(&sum, v);
    // pi^+ of i c(xi)/(1+xn^2) at the normal slot: gamma_n coefficient is i xn/(1+xn^2),
    // whose +i part is (i/2)/(xn - i).
    let gn = pi_plus(v).unwrap().coefficient(1 << 3);
    assert_eq!(gn, XnRational::new(alloc::vec![PolyScalar::constant(GaussianRational::frac(1, 2) * GaussianRational::i())], 1, 0));
}

#[test]
fn invalid_specs() {
    assert!(matches!(build_dirac_symbols(&spec(BaseOperator::D, 5)), Err(SymbolError::UnsupportedSpec(_))));
    let q = build_operator_jet(&spec(BaseOperator::DInv, 4)).unwrap();
    assert!(matches!(invert_symbol(&q, 2), Err(SymbolError::UnsupportedSpec(_))));
    assert!(matches!(invert_symbol(&build_dirac_symbols(&spec(BaseOperator::D, 4)).unwrap(), 3), Err(SymbolError::UnsupportedSpec(_))));
}
