//! Tokenizer and recursive-descent parser. The grammar is in `docs/grammar.md`.

use std::collections::BTreeSet;
use std::fmt;

use super::ast::{BinOp, CliffAtom, Expr, Func, Indet, SYMBOL_OPS};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParseError {
    /// 1-based.
    pub line: usize,
    /// 1-based, counted in characters.
    pub column: usize,
    pub found: String,
    pub expected: BTreeSet<String>,
}

impl ParseError {
    pub fn at_eof(&self) -> bool {
        self.found == "end of input"
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let exp: Vec<&str> = self.expected.iter().map(String::as_str).collect();
        write!(f, "parse error at line {}, column {}: found {}", self.line, self.column, self.found)?;
        if !exp.is_empty() {
            write!(f, ", expected one of: {}", exp.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    Int(String),
    Ident(String),
    Punct(char),
    Invalid(char),
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(s) => format!("integer `{s}`"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Punct(c) => format!("`{c}`"),
        Tok::Invalid(c) => format!("invalid character `{c}`"),
        Tok::Eof => String::from("end of input"),
    }
}

fn lex(src: &str) -> Vec<Token> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut line, mut col) = (1usize, 1usize);
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        if c == '\n' {
            line += 1;
            col = 1;
            k += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            k += 1;
            continue;
        }
        let start = (line, col);
        let take = |k: &mut usize, col: &mut usize, pred: &dyn Fn(char) -> bool| {
            let b = *k;
            while *k < chars.len() && pred(chars[*k]) {
                *k += 1;
                *col += 1;
            }
            chars[b..*k].iter().collect::<String>()
        };
        let tok = if c.is_ascii_digit() {
            Tok::Int(take(&mut k, &mut col, &|c| c.is_ascii_digit()))
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = take(&mut k, &mut col, &|c| c.is_ascii_alphanumeric() || c == '_');
            if k < chars.len() && chars[k] == '\'' {
                s.push('\'');
                k += 1;
                col += 1;
            }
            Tok::Ident(s)
        } else {
            k += 1;
            col += 1;
            if "+-*/^()[],".contains(c) {
                Tok::Punct(c)
            } else {
                Tok::Invalid(c)
            }
        };
        out.push(Token { tok, line: start.0, column: start.1 });
    }
    out.push(Token { tok: Tok::Eof, line, column: col });
    out
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    expected: BTreeSet<String>,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn advance(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        self.expected.clear();
        t
    }

    fn fail(&self) -> ParseError {
        let t = &self.toks[self.pos];
        ParseError { line: t.line, column: t.column, found: describe(&t.tok), expected: self.expected.clone() }
    }

    fn eat_punct(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Punct(c) {
            self.advance();
            true
        } else {
            self.expected.insert(format!("`{c}`"));
            false
        }
    }

    fn expect_punct(&mut self, c: char) -> PResult<()> {
        if self.eat_punct(c) {
            Ok(())
        } else {
            Err(self.fail())
        }
    }

    fn integer(&mut self) -> PResult<u64> {
        if let Tok::Int(s) = self.peek().clone() {
            return match s.parse::<u64>().ok().filter(|v| *v <= i64::MAX as u64) {
                Some(v) => {
                    self.advance();
                    Ok(v)
                }
                None => {
                    self.expected.insert(String::from("integer below 2^63"));
                    Err(self.fail())
                }
            };
        }
        self.expected.insert(String::from("integer"));
        Err(self.fail())
    }

    fn small(&mut self) -> PResult<u8> {
        let v = self.integer()?;
        // error position: the integer just consumed
        u8::try_from(v).ok().filter(|x| *x > 0).ok_or_else(|| {
            let t = &self.toks[self.pos - 1];
            ParseError {
                line: t.line,
                column: t.column,
                found: describe(&t.tok),
                expected: BTreeSet::from([String::from("index in 1..=255")]),
            }
        })
    }

    fn signed(&mut self) -> PResult<i32> {
        let neg = self.eat_punct('-');
        let v = self.integer()?;
        let v = i32::try_from(v).map_err(|_| {
            let t = &self.toks[self.pos - 1];
            ParseError { line: t.line, column: t.column, found: describe(&t.tok), expected: BTreeSet::from([String::from("integer below 2^31")]) }
        })?;
        Ok(if neg { -v } else { v })
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut acc = self.term()?;
        loop {
            let op = if self.eat_punct('+') {
                BinOp::Add
            } else if self.eat_punct('-') {
                BinOp::Sub
            } else {
                return Ok(acc);
            };
            let rhs = self.term()?;
            acc = Expr::bin(op, acc, rhs);
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut acc = self.unary()?;
        loop {
            let op = if self.eat_punct('*') {
                BinOp::Mul
            } else if self.eat_punct('/') {
                BinOp::Div
            } else {
                return Ok(acc);
            };
            let rhs = self.unary()?;
            acc = Expr::bin(op, acc, rhs);
        }
    }

    fn unary(&mut self) -> PResult<Expr> {
        if *self.peek() == Tok::Punct('-') {
            self.advance();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> PResult<Expr> {
        let base = self.primary()?;
        if self.eat_punct('^') {
            let e = self.signed()?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn primary(&mut self) -> PResult<Expr> {
        match self.peek().clone() {
            Tok::Int(_) => Ok(Expr::Int(self.integer()?)),
            Tok::Punct('(') => {
                self.advance();
                let e = self.expr()?;
                self.expect_punct(')')?;
                Ok(e)
            }
            Tok::Ident(name) => self.named(&name),
            _ => {
                self.expected.insert(String::from("expression"));
                Err(self.fail())
            }
        }
    }

    fn named(&mut self, name: &str) -> PResult<Expr> {
        let simple = match name {
            "i" => Some(Expr::I),
            "hp" => Some(Expr::Var(Indet::Hp)),
            "pi" => Some(Expr::Var(Indet::Pi)),
            "Omega" => Some(Expr::Var(Indet::Omega)),
            "m" => Some(Expr::Var(Indet::M)),
            "Rijij" => Some(Expr::Var(Indet::Rijij)),
            "xn" => Some(Expr::Var(Indet::Xn)),
            "sumA" => Some(Expr::Var(Indet::SumA)),
            "omega_g" => Some(Expr::Cliff(CliffAtom::OmegaG)),
            _ => None,
        };
        if let Some(e) = simple {
            self.advance();
            return Ok(e);
        }
        if let Some(k) = name.strip_prefix("xi_").and_then(|s| s.parse::<u8>().ok()).filter(|k| *k > 0) {
            self.advance();
            return Ok(Expr::Var(Indet::Xi(k)));
        }
        if let Some(f) = Func::from_name(name) {
            self.advance();
            self.expect_punct('(')?;
            let e = self.expr()?;
            self.expect_punct(')')?;
            return Ok(Expr::call(f, e));
        }
        match name {
            "A" => {
                self.advance();
                self.expect_punct('[')?;
                let i = self.small()?;
                self.expect_punct(',')?;
                let s = self.small()?;
                self.expect_punct(',')?;
                let t = self.small()?;
                self.expect_punct(']')?;
                Ok(Expr::Var(Indet::A(i, s, t)))
            }
            "c" => {
                self.advance();
                self.expect_punct('(')?;
                let atom = match self.peek() {
                    Tok::Ident(s) if s == "xi'" => CliffAtom::XiPrime,
                    Tok::Ident(s) if s == "xi" => CliffAtom::Xi,
                    Tok::Ident(s) if s == "dxn" => CliffAtom::Dxn,
                    _ => {
                        for e in ["`xi'`", "`xi`", "`dxn`"] {
                            self.expected.insert(String::from(e));
                        }
                        return Err(self.fail());
                    }
                };
                self.advance();
                self.expect_punct(')')?;
                Ok(Expr::Cliff(atom))
            }
            "gamma" => {
                self.advance();
                self.expect_punct('(')?;
                let k = self.small()?;
                self.expect_punct(')')?;
                Ok(Expr::Cliff(CliffAtom::Gamma(k)))
            }
            "sigma" => {
                self.advance();
                self.expect_punct('(')?;
                let op = match self.peek() {
                    Tok::Ident(s) => SYMBOL_OPS.iter().find(|(n, _)| n == s).map(|(_, o)| *o),
                    _ => None,
                };
                let Some(op) = op else {
                    for (n, _) in SYMBOL_OPS {
                        self.expected.insert(format!("`{n}`"));
                    }
                    return Err(self.fail());
                };
                self.advance();
                self.expect_punct(',')?;
                let r = self.signed()?;
                self.expect_punct(')')?;
                Ok(Expr::Sigma(op, r))
            }
            _ => {
                self.expected.insert(String::from("expression"));
                Err(self.fail())
            }
        }
    }
}

pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { toks: lex(src), pos: 0, expected: BTreeSet::new() };
    let e = p.expr()?;
    if *p.peek() != Tok::Eof {
        p.expected.insert(String::from("end of input"));
        return Err(p.fail());
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use wres_core::symbol_engine::BaseOperator;

    #[test]
    fn quotient_under_projection() {
        let e = parse_expr("pi_plus( i*c(xi)/(1+xn^2) )").unwrap();
        let Expr::Call(Func::PiPlus, inner) = e else { panic!("not a projection") };
        assert!(matches!(*inner, Expr::Bin(BinOp::Div, _, _)));
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(parse_expr("1 - 2 - 3").unwrap().to_string(), "1 - 2 - 3");
        let e = parse_expr("1 - 2 - 3").unwrap();
        assert!(matches!(&e, Expr::Bin(BinOp::Sub, a, _) if matches!(**a, Expr::Bin(BinOp::Sub, _, _))));
        let e = parse_expr("-xn^2").unwrap();
        assert!(matches!(e, Expr::Neg(_)));
        let e = parse_expr("2*hp/3").unwrap();
        assert!(matches!(&e, Expr::Bin(BinOp::Div, a, _) if matches!(**a, Expr::Bin(BinOp::Mul, _, _))));
        assert_eq!(parse_expr("xn^-2").unwrap(), Expr::Pow(Box::new(Expr::Var(Indet::Xn)), -2));
    }

    #[test]
    fn atoms() {
        assert_eq!(parse_expr("A[1, 2,3]").unwrap(), Expr::Var(Indet::A(1, 2, 3)));
        assert_eq!(parse_expr("c(xi')").unwrap(), Expr::Cliff(CliffAtom::XiPrime));
        assert_eq!(parse_expr("sigma(Dstarinv2, -3)").unwrap(), Expr::Sigma(BaseOperator::DStarInvSq, -3));
        assert_eq!(parse_expr("xi_3").unwrap(), Expr::Var(Indet::Xi(3)));
    }

    #[test]
    fn eof_error() {
        let e = parse_expr("pi_plus(").unwrap_err();
        assert!(e.at_eof());
        assert_eq!((e.line, e.column), (1, 9));
        assert_eq!(e.expected, BTreeSet::from([String::from("expression")]));
    }

    #[test]
    fn positions_and_expected_sets() {
        let e = parse_expr("hp +\n  c(foo)").unwrap_err();
        assert_eq!((e.line, e.column), (2, 5));
        assert!(e.expected.contains("`xi'`") && e.expected.contains("`dxn`"));
        let e = parse_expr("hp hp").unwrap_err();
        assert_eq!(e.column, 4);
        for t in ["`+`", "`-`", "`*`", "`/`", "`^`", "end of input"] {
            assert!(e.expected.contains(t), "{t} missing from {:?}", e.expected);
        }
        let e = parse_expr("1 + $").unwrap_err();
        assert_eq!(e.found, "invalid character `$`");
        let e = parse_expr("A[0,1,2]").unwrap_err();
        assert_eq!(e.column, 3);
    }
}
