//! Type checking and exact evaluation of expressions.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

use wres_core::boundary_engine::integrate_sphere;
use wres_core::exact_scalars::print::{canonical, normal_trace};
use wres_core::exact_scalars::{GaussianRational, PolyScalar, ScalarError, Var, XnRational};
use wres_core::multilinear::CliffordElem;
use wres_core::symbol_engine::{self, build_operator_jet, BaseOperator, OperatorSpec, SymbolError, SymbolJet, Torsion};

use super::ast::{BinOp, CliffAtom, Expr, Func, Indet};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Ty {
    Scalar,
    Clifford,
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ty::Scalar => "scalar",
            Ty::Clifford => "Clifford",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum TypeError {
    #[error("division by a Clifford-valued expression `{0}`")]
    CliffordDivisor(String),
    #[error("negative power of a Clifford-valued expression `{0}`")]
    CliffordInverse(String),
    #[error("{func} expects a {want} argument, got {got} `{arg}`")]
    Argument { func: &'static str, want: Ty, got: Ty, arg: String },
    #[error("d_xn applies only to a stored symbol `sigma(op, order)`, got `{0}`")]
    NotASymbol(String),
}

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum EvalError {
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error("index out of range for dimension {n}: {what}")]
    Index { n: u8, what: String },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Symbol(#[from] SymbolError),
    #[error("{0} needs an argument independent of xn")]
    DependsOnXn(&'static str),
    #[error("expected a constant value, got one depending on xn: {0}")]
    NotConstant(String),
    #[error("expected a scalar value")]
    NotScalar,
}

/// Static type of `e`. Decides every rule without evaluating.
pub fn type_of(e: &Expr) -> Result<Ty, TypeError> {
    Ok(match e {
        Expr::Int(_) | Expr::I | Expr::Var(_) => Ty::Scalar,
        Expr::Cliff(_) | Expr::Sigma(..) => Ty::Clifford,
        Expr::Neg(x) => type_of(x)?,
        Expr::Bin(op, a, b) => {
            let (ta, tb) = (type_of(a)?, type_of(b)?);
            if *op == BinOp::Div && tb == Ty::Clifford {
                return Err(TypeError::CliffordDivisor(b.to_string()));
            }
            if ta == Ty::Clifford || tb == Ty::Clifford {
                Ty::Clifford
            } else {
                Ty::Scalar
            }
        }
        Expr::Pow(b, k) => {
            let t = type_of(b)?;
            if t == Ty::Clifford && *k < 0 {
                return Err(TypeError::CliffordInverse(b.to_string()));
            }
            t
        }
        Expr::Call(f, a) => {
            let want = |want: Ty| -> Result<(), TypeError> {
                let got = type_of(a)?;
                if got == want {
                    Ok(())
                } else {
                    Err(TypeError::Argument { func: f.name(), want, got, arg: a.to_string() })
                }
            };
            match f {
                Func::PiPlus | Func::PiPrime | Func::DXin => type_of(a)?,
                Func::DXn => {
                    if !matches!(**a, Expr::Sigma(..)) {
                        return Err(TypeError::NotASymbol(a.to_string()));
                    }
                    Ty::Clifford
                }
                Func::Trace => {
                    want(Ty::Clifford)?;
                    Ty::Scalar
                }
                Func::IntXn | Func::IntSphere => {
                    want(Ty::Scalar)?;
                    Ty::Scalar
                }
            }
        }
    })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Value {
    Scalar(XnRational),
    Clifford(CliffordElem),
}

impl Value {
    /// The value as a polynomial; fails when it is Clifford-valued or depends on `xn`.
    pub fn into_constant(self) -> Result<PolyScalar, EvalError> {
        match self {
            Value::Scalar(x) => x.as_constant().ok_or_else(|| EvalError::NotConstant(x.to_string())),
            Value::Clifford(_) => Err(EvalError::NotScalar),
        }
    }

    pub fn render(&self, n: u8) -> String {
        match self {
            Value::Scalar(x) => match x.as_constant() {
                Some(p) => canonical(&p, Some(n)),
                None => x.to_string(),
            },
            Value::Clifford(c) => c.to_string(),
        }
    }
}

/// Evaluation environment: the dimension and the torsion pieces used by `sigma`.
pub struct Context {
    pub n: u8,
    pub torsion: Torsion,
    jets: RefCell<HashMap<BaseOperator, SymbolJet>>,
}

impl Context {
    pub fn new(n: u8) -> Self {
        Context { n, torsion: Torsion::FULL, jets: RefCell::new(HashMap::new()) }
    }

    pub fn with_torsion(mut self, t: Torsion) -> Self {
        self.torsion = t;
        self
    }

    fn jet<T>(&self, op: BaseOperator, f: impl FnOnce(&SymbolJet) -> Result<T, SymbolError>) -> Result<T, EvalError> {
        let mut jets = self.jets.borrow_mut();
        if !jets.contains_key(&op) {
            let spec = OperatorSpec::new(op, self.n).with_torsion(self.torsion);
            jets.insert(op, build_operator_jet(&spec)?);
        }
        Ok(f(&jets[&op])?)
    }

    fn index(&self, ok: bool, what: impl FnOnce() -> String) -> Result<(), EvalError> {
        if ok {
            Ok(())
        } else {
            Err(EvalError::Index { n: self.n, what: what() })
        }
    }

    fn scalar_of(&self, v: Indet) -> Result<XnRational, EvalError> {
        let n = self.n;
        let p = |x: Var| XnRational::constant(PolyScalar::var(x));
        Ok(match v {
            Indet::Hp => p(Var::Hp),
            Indet::Pi => p(Var::Pi),
            Indet::Omega => p(Var::Omega),
            Indet::M => p(Var::M),
            Indet::Rijij => p(Var::Rijij),
            Indet::Xn => XnRational::xn(),
            Indet::SumA => XnRational::constant(normal_trace(n)),
            Indet::Xi(k) => {
                self.index(k < n, || format!("xi_{k} needs k < n"))?;
                p(Var::Xi(k))
            }
            Indet::A(i, s, t) => {
                self.index(i <= n && s <= n && t <= n, || format!("A[{i},{s},{t}]"))?;
                XnRational::constant(PolyScalar::torsion(i, s, t))
            }
        })
    }

    fn clifford_of(&self, a: CliffAtom) -> Result<CliffordElem, EvalError> {
        let n = self.n;
        Ok(match a {
            CliffAtom::XiPrime => symbol_engine::c_xi_prime(n),
            CliffAtom::Xi => symbol_engine::c_xi(n),
            CliffAtom::Dxn => symbol_engine::c_dxn(n),
            CliffAtom::Gamma(k) => {
                self.index(k <= n, || format!("gamma({k})"))?;
                CliffordElem::gamma(n, k)
            }
            CliffAtom::OmegaG => CliffordElem::product_of(n, &(1..=n).collect::<Vec<u8>>()),
        })
    }

    fn lift(&self, v: Value) -> CliffordElem {
        match v {
            Value::Clifford(c) => c,
            Value::Scalar(s) => CliffordElem::scalar(self.n, s),
        }
    }

    /// Type-check, then evaluate.
    pub fn eval(&self, e: &Expr) -> Result<Value, EvalError> {
        type_of(e)?;
        self.eval_checked(e)
    }

    /// Evaluate to a polynomial with no `xn` dependence.
    pub fn eval_constant(&self, e: &Expr) -> Result<PolyScalar, EvalError> {
        self.eval(e)?.into_constant()
    }

    fn eval_checked(&self, e: &Expr) -> Result<Value, EvalError> {
        Ok(match e {
            Expr::Int(v) => Value::Scalar(XnRational::constant(PolyScalar::int(*v as i64))),
            Expr::I => Value::Scalar(XnRational::gaussian(GaussianRational::i())),
            Expr::Var(v) => Value::Scalar(self.scalar_of(*v)?),
            Expr::Cliff(a) => Value::Clifford(self.clifford_of(*a)?),
            Expr::Sigma(op, r) => Value::Clifford(self.jet(*op, |j| j.value(*r).cloned())?),
            Expr::Neg(x) => match self.eval_checked(x)? {
                Value::Scalar(s) => Value::Scalar(-s),
                Value::Clifford(c) => Value::Clifford(-&c),
            },
            Expr::Bin(op, a, b) => {
                let (va, vb) = (self.eval_checked(a)?, self.eval_checked(b)?);
                match (op, va, vb) {
                    (BinOp::Div, x, Value::Scalar(d)) => {
                        let inv = d.inverse()?;
                        match x {
                            Value::Scalar(s) => Value::Scalar(&s * &inv),
                            Value::Clifford(c) => Value::Clifford(c.scale(&inv)),
                        }
                    }
                    (BinOp::Div, _, Value::Clifford(_)) => unreachable!("rejected by the type checker"),
                    (op, Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(match op {
                        BinOp::Add => &x + &y,
                        BinOp::Sub => &x - &y,
                        _ => &x * &y,
                    }),
                    (BinOp::Mul, Value::Scalar(x), Value::Clifford(c)) | (BinOp::Mul, Value::Clifford(c), Value::Scalar(x)) => {
                        Value::Clifford(c.scale(&x))
                    }
                    (op, x, y) => {
                        let (x, y) = (self.lift(x), self.lift(y));
                        Value::Clifford(match op {
                            BinOp::Add => &x + &y,
                            BinOp::Sub => &x - &y,
                            _ => &x * &y,
                        })
                    }
                }
            }
            Expr::Pow(b, k) => match self.eval_checked(b)? {
                Value::Scalar(s) => {
                    let base = if *k < 0 { s.inverse()? } else { s };
                    Value::Scalar(base.pow(k.unsigned_abs()))
                }
                Value::Clifford(c) => {
                    let mut acc = CliffordElem::identity(self.n);
                    for _ in 0..*k {
                        acc = &acc * &c;
                    }
                    Value::Clifford(acc)
                }
            },
            Expr::Call(f, a) => self.call(*f, a)?,
        })
    }

    fn call(&self, f: Func, a: &Expr) -> Result<Value, EvalError> {
        if f == Func::DXn {
            let Expr::Sigma(op, r) = a else { unreachable!("rejected by the type checker") };
            return Ok(Value::Clifford(self.jet(*op, |j| j.d_x_n(*r))?));
        }
        let v = self.eval_checked(a)?;
        Ok(match (f, v) {
            (Func::PiPlus, Value::Scalar(s)) => Value::Scalar(s.pi_plus()?),
            (Func::PiPlus, Value::Clifford(c)) => Value::Clifford(symbol_engine::pi_plus(&c)?),
            (Func::PiPrime, Value::Scalar(s)) => Value::Scalar(XnRational::constant(s.pi_prime()?)),
            (Func::PiPrime, Value::Clifford(c)) => Value::Clifford(symbol_engine::pi_prime(&c)?),
            (Func::DXin, Value::Scalar(s)) => Value::Scalar(s.d_xn()),
            (Func::DXin, Value::Clifford(c)) => Value::Clifford(c.d_xn_coeffs()),
            (Func::Trace, Value::Clifford(c)) => Value::Scalar(c.spinor_trace()),
            (Func::IntXn, Value::Scalar(s)) => Value::Scalar(XnRational::constant(s.integrate_real_line()?)),
            (Func::IntSphere, Value::Scalar(s)) => {
                let p = s.as_constant().ok_or(EvalError::DependsOnXn("int_sphere"))?;
                Value::Scalar(XnRational::constant(integrate_sphere(&p, self.n)))
            }
            _ => unreachable!("rejected by the type checker"),
        })
    }
}

/// Parse and evaluate to a polynomial in dimension `n`.
pub fn eval_str(src: &str, n: u8) -> Result<PolyScalar, String> {
    let e = super::parser::parse_expr(src).map_err(|e| e.to_string())?;
    Context::new(n).eval_constant(&e).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli_dsl::parser::parse_expr;

    fn ev(src: &str, n: u8) -> Value {
        Context::new(n).eval(&parse_expr(src).unwrap()).unwrap()
    }

    #[test]
    fn trace_of_normal_square() {
        assert_eq!(ev("trace( c(dxn)*c(dxn) )", 4), Value::Scalar(XnRational::constant(PolyScalar::int(-4))));
        assert_eq!(ev("trace( c(dxn)*c(dxn) )", 6), Value::Scalar(XnRational::constant(PolyScalar::int(-8))));
    }

    #[test]
    fn line_integral() {
        // int 1/(1 + xn^2) = pi
        assert_eq!(eval_str("int_xn(1/(1+xn^2))", 4).unwrap(), PolyScalar::var(Var::Pi));
        // pi' of 1/(1+xn^2): i * Res(+i) = 1/2
        assert_eq!(eval_str("pi_prime(1/(1+xn^2))", 4).unwrap(), PolyScalar::frac(1, 2));
    }

    #[test]
    fn sphere_and_torsion() {
        assert_eq!(eval_str("int_sphere(xi_1^2)", 4).unwrap(), PolyScalar::var(Var::Omega).scale(&GaussianRational::frac(1, 3)));
        assert_eq!(eval_str("A[2,1,3] + A[2,3,1]", 4).unwrap(), PolyScalar::zero());
        assert_eq!(eval_str("sumA - A[1,1,4] - A[2,2,4] - A[3,3,4]", 4).unwrap(), PolyScalar::zero());
    }

    #[test]
    fn projection_of_symbol_quotient() {
        let v = ev("pi_plus( i*c(xi)/(1+xn^2) )", 4);
        let Value::Clifford(c) = v else { panic!() };
        // c(xi)/(1+xn^2) = (c(xi') + xn gamma_n)/(1+xn^2); the gamma_n part has pi_plus = 1/(2(xn - i))
        let g = c.coefficient(1 << 3);
        assert_eq!(g, XnRational::new(vec![PolyScalar::constant(GaussianRational::frac(1, 2) * GaussianRational::i())], 1, 0));
    }

    #[test]
    fn stored_symbols() {
        let v = ev("sigma(Dinv, -1) - i*c(xi)/(1+xn^2)", 4);
        assert_eq!(v, Value::Clifford(CliffordElem::zero(4)), "{}", v.render(4));
        let Value::Clifford(d) = ev("d_xn(sigma(Dinv, -1))", 4) else { panic!() };
        assert!(!d.is_zero());
    }

    #[test]
    fn type_errors() {
        let t = |s: &str| type_of(&parse_expr(s).unwrap());
        assert!(matches!(t("1/c(xi)"), Err(TypeError::CliffordDivisor(_))));
        assert!(matches!(t("trace(hp)"), Err(TypeError::Argument { .. })));
        assert!(matches!(t("int_xn(gamma(1))"), Err(TypeError::Argument { .. })));
        assert!(matches!(t("d_xn(c(xi))"), Err(TypeError::NotASymbol(_))));
        assert!(matches!(t("c(xi)^-1"), Err(TypeError::CliffordInverse(_))));
        assert_eq!(t("hp*c(xi) + 1"), Ok(Ty::Clifford));
        assert!(matches!(Context::new(4).eval(&parse_expr("gamma(5)").unwrap()), Err(EvalError::Index { .. })));
    }

    #[test]
    fn chirality_squares_to_one_in_dimension_four() {
        assert_eq!(ev("omega_g*omega_g", 4), Value::Clifford(CliffordElem::identity(4)));
        let p = "(1 + omega_g)/2";
        assert_eq!(ev(&format!("({p})*({p}) - {p}"), 4), Value::Clifford(CliffordElem::zero(4)));
    }
}
