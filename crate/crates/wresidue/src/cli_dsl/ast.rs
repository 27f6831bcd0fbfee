//! Expression tree and its printer.
//!
//! The printer inserts parentheses only where the grammar needs them, so
//! `parse(print(e)) == e` for every tree.

use std::fmt;

use wres_core::symbol_engine::BaseOperator;

/// Scalar indeterminates and named constants.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Indet {
    Hp,
    Pi,
    Omega,
    M,
    Rijij,
    /// Normal covector component.
    Xn,
    /// `A[1,1,n] + ... + A[n-1,n-1,n]`
    SumA,
    Xi(u8),
    A(u8, u8, u8),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum CliffAtom {
    /// `c(xi')`
    XiPrime,
    /// `c(xi) = c(xi') + xn c(dxn)`
    Xi,
    /// `c(dxn)`
    Dxn,
    Gamma(u8),
    /// `gamma_1 ... gamma_n`
    OmegaG,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    fn prec(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Func {
    PiPlus,
    PiPrime,
    /// derivative in the normal covector component
    DXin,
    /// normal derivative of a stored symbol
    DXn,
    Trace,
    IntXn,
    IntSphere,
}

impl Func {
    pub const ALL: [Func; 7] = [Func::PiPlus, Func::PiPrime, Func::DXin, Func::DXn, Func::Trace, Func::IntXn, Func::IntSphere];

    pub fn name(self) -> &'static str {
        match self {
            Func::PiPlus => "pi_plus",
            Func::PiPrime => "pi_prime",
            Func::DXin => "d_xin",
            Func::DXn => "d_xn",
            Func::Trace => "trace",
            Func::IntXn => "int_xn",
            Func::IntSphere => "int_sphere",
        }
    }

    pub fn from_name(s: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == s)
    }
}

/// Operator names accepted inside `sigma(...)`.
pub const SYMBOL_OPS: [(&str, BaseOperator); 6] = [
    ("D", BaseOperator::D),
    ("Dstar", BaseOperator::DStar),
    ("Dinv", BaseOperator::DInv),
    ("Dstarinv", BaseOperator::DStarInv),
    ("Dinv2", BaseOperator::DInvSq),
    ("Dstarinv2", BaseOperator::DStarInvSq),
];

pub fn symbol_op_name(b: BaseOperator) -> &'static str {
    SYMBOL_OPS.iter().find(|(_, o)| *o == b).map(|(s, _)| *s).unwrap_or("?")
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Expr {
    Int(u64),
    I,
    Var(Indet),
    Cliff(CliffAtom),
    /// Homogeneous part of the given order of an operator symbol.
    Sigma(BaseOperator, i32),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Call(Func, Box<Expr>),
}

impl Expr {
    pub fn bin(op: BinOp, a: Expr, b: Expr) -> Expr {
        Expr::Bin(op, Box::new(a), Box::new(b))
    }

    pub fn call(f: Func, a: Expr) -> Expr {
        Expr::Call(f, Box::new(a))
    }

    fn prec(&self) -> u8 {
        match self {
            Expr::Bin(op, ..) => op.prec(),
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.prec() < min {
            f.write_str("(")?;
            self.write_at(f, 0)?;
            return f.write_str(")");
        }
        match self {
            Expr::Int(v) => write!(f, "{v}"),
            Expr::I => f.write_str("i"),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Cliff(c) => write!(f, "{c}"),
            Expr::Sigma(op, r) => write!(f, "sigma({}, {})", symbol_op_name(*op), r),
            Expr::Neg(x) => {
                f.write_str("-")?;
                x.write_at(f, 3)
            }
            Expr::Bin(op, a, b) => {
                a.write_at(f, op.prec())?;
                write!(f, " {} ", op.symbol())?;
                b.write_at(f, op.prec() + 1)
            }
            Expr::Pow(b, e) => {
                b.write_at(f, 5)?;
                write!(f, "^{e}")
            }
            Expr::Call(func, a) => {
                write!(f, "{}(", func.name())?;
                a.write_at(f, 0)?;
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

impl fmt::Display for Indet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Indet::Hp => f.write_str("hp"),
            Indet::Pi => f.write_str("pi"),
            Indet::Omega => f.write_str("Omega"),
            Indet::M => f.write_str("m"),
            Indet::Rijij => f.write_str("Rijij"),
            Indet::Xn => f.write_str("xn"),
            Indet::SumA => f.write_str("sumA"),
            Indet::Xi(k) => write!(f, "xi_{k}"),
            Indet::A(i, s, t) => write!(f, "A[{i},{s},{t}]"),
        }
    }
}

impl fmt::Display for CliffAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliffAtom::XiPrime => f.write_str("c(xi')"),
            CliffAtom::Xi => f.write_str("c(xi)"),
            CliffAtom::Dxn => f.write_str("c(dxn)"),
            CliffAtom::Gamma(k) => write!(f, "gamma({k})"),
            CliffAtom::OmegaG => f.write_str("omega_g"),
        }
    }
}
