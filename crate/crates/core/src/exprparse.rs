//! Text syntax for scalars, rational functions and planar vector fields.
//!
//! ```text
//! expr    = term { ("+" | "-") term }
//! term    = unary { ("*" | "/") unary }
//! unary   = "-" unary | power
//! power   = atom [ "^" exponent ]
//! exponent= ["-"] (int | "(" ["-"] int ")") [ "^" exponent ]
//! atom    = int | name | "sqrt" "(" ["-"] int ")" | "(" expr ")"
//! ```
//!
//! `^` binds tighter than unary minus, so `-x^2` is `-(x^2)`, and it is
//! right-associative. There is no implicit multiplication.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{BiPoly, Scalar};
use crate::odeforms::PlanarVectorField;
use crate::{Poly, RatFunc};

/// Numeric values for named parameters.
pub type Bindings = BTreeMap<String, Scalar>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ast {
    Int(BigInt),
    Sym(String),
    Sqrt(BigInt),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Op(char),
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
}

impl Lexer {
    fn new(src: &str) -> Result<Self> {
        let chars: Vec<(usize, char)> = src.char_indices().collect();
        let mut toks = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let (pos, c) = chars[i];
            match c {
                _ if c.is_whitespace() => i += 1,
                '0'..='9' => {
                    let mut j = i;
                    while j < chars.len() && chars[j].1.is_ascii_digit() {
                        j += 1;
                    }
                    let text: String = chars[i..j].iter().map(|(_, c)| c).collect();
                    toks.push((Tok::Int(text.parse().expect("digits")), pos));
                    i = j;
                }
                'a'..='z' | 'A'..='Z' | '_' => {
                    let mut j = i;
                    while j < chars.len() && (chars[j].1.is_ascii_alphanumeric() || chars[j].1 == '_') {
                        j += 1;
                    }
                    toks.push((Tok::Name(chars[i..j].iter().map(|(_, c)| c).collect()), pos));
                    i = j;
                }
                '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                    toks.push((Tok::Op(c), pos));
                    i += 1;
                }
                '\u{2212}' => {
                    toks.push((Tok::Op('-'), pos));
                    i += 1;
                }
                '\u{b7}' | '\u{d7}' => {
                    toks.push((Tok::Op('*'), pos));
                    i += 1;
                }
                _ => {
                    return Err(Error::Syntax {
                        pos,
                        expected: "number, name, operator or parenthesis".into(),
                    })
                }
            }
        }
        toks.push((Tok::End, src.len()));
        Ok(Lexer { toks })
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &str) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            expected: expected.into(),
        })
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if *self.peek() == Tok::Op(c) {
            self.bump();
            Ok(())
        } else {
            self.fail(&format!("'{c}'"))
        }
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Op('+') => {
                    self.bump();
                    lhs = Ast::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Op('-') => {
                    self.bump();
                    lhs = Ast::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Ast> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Op('*') => {
                    self.bump();
                    lhs = Ast::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Op('/') => {
                    self.bump();
                    let pos = self.pos();
                    let rhs = self.unary()?;
                    if matches!(&rhs, Ast::Int(n) if n.is_zero()) {
                        return Err(Error::Syntax {
                            pos,
                            expected: "nonzero divisor".into(),
                        });
                    }
                    lhs = Ast::Div(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Ast> {
        if *self.peek() == Tok::Op('-') {
            self.bump();
            return Ok(Ast::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Ast> {
        let base = self.atom()?;
        if *self.peek() == Tok::Op('^') {
            self.bump();
            let e = self.exponent()?;
            return Ok(Ast::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn signed_int(&mut self) -> Result<BigInt> {
        let neg = if *self.peek() == Tok::Op('-') {
            self.bump();
            true
        } else {
            false
        };
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(if neg { -n } else { n })
            }
            _ => self.fail("integer"),
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        let pos = self.pos();
        let base = if *self.peek() == Tok::Op('(') {
            self.bump();
            let n = self.signed_int()?;
            self.expect(')')?;
            n
        } else {
            self.signed_int()?
        };
        let value = if *self.peek() == Tok::Op('^') {
            self.bump();
            let e = self.exponent()?;
            if e < 0 {
                return Err(Error::Syntax {
                    pos,
                    expected: "integer-valued exponent".into(),
                });
            }
            let e = u32::try_from(e).map_err(|_| Error::Syntax {
                pos,
                expected: "smaller exponent".into(),
            })?;
            num_traits::pow::checked_pow(base, e as usize).ok_or(Error::Syntax {
                pos,
                expected: "smaller exponent".into(),
            })?
        } else {
            base
        };
        value.to_i64().filter(|v| v.abs() <= 10_000).ok_or(Error::Syntax {
            pos,
            expected: "exponent of at most 10000 in size".into(),
        })
    }

    fn atom(&mut self) -> Result<Ast> {
        if matches!(self.peek(), Tok::End | Tok::Op(_)) && *self.peek() != Tok::Op('(') {
            return self.fail("number, name, sqrt(...) or '('");
        }
        match self.bump() {
            Tok::Int(n) => Ok(Ast::Int(n)),
            Tok::Name(s) if s == "sqrt" => {
                self.expect('(')?;
                let n = self.signed_int()?;
                self.expect(')')?;
                Ok(Ast::Sqrt(n))
            }
            Tok::Name(s) => Ok(Ast::Sym(s)),
            Tok::Op('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => unreachable!("checked above"),
        }
    }
}

/// Parses `src` into an expression tree.
pub fn parse_ast(src: &str) -> Result<Ast> {
    let mut p = Parser {
        toks: Lexer::new(src)?.toks,
        at: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.fail("operator or end of input");
    }
    Ok(e)
}

/// Values an expression can be evaluated into.
trait Algebra: Sized + Clone {
    fn scalar(c: Scalar) -> Self;
    fn var(name: &str) -> Option<Self>;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Result<Self>;
    fn inv(&self) -> Result<Self>;
    fn is_zero(&self) -> bool;
}

struct OneVar(RatFunc);

impl Clone for OneVar {
    fn clone(&self) -> Self {
        OneVar(self.0.clone())
    }
}

fn div_zero() -> Error {
    Error::Invalid("division by zero".into())
}

impl Algebra for OneVar {
    fn scalar(c: Scalar) -> Self {
        OneVar(RatFunc::constant(c))
    }
    fn var(_: &str) -> Option<Self> {
        Some(OneVar(RatFunc::x()))
    }
    fn add(&self, o: &Self) -> Self {
        OneVar(&self.0 + &o.0)
    }
    fn sub(&self, o: &Self) -> Self {
        OneVar(&self.0 - &o.0)
    }
    fn mul(&self, o: &Self) -> Self {
        OneVar(&self.0 * &o.0)
    }
    fn div(&self, o: &Self) -> Result<Self> {
        if o.0.is_zero() {
            return Err(div_zero());
        }
        Ok(OneVar(&self.0 / &o.0))
    }
    fn inv(&self) -> Result<Self> {
        OneVar::scalar(Scalar::one()).div(self)
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

#[derive(Clone)]
struct TwoVar(BiPoly);

impl Algebra for TwoVar {
    fn scalar(c: Scalar) -> Self {
        TwoVar(BiPoly::constant(c))
    }
    fn var(name: &str) -> Option<Self> {
        match name {
            "x" => Some(TwoVar(BiPoly::x())),
            "y" => Some(TwoVar(BiPoly::y())),
            _ => None,
        }
    }
    fn add(&self, o: &Self) -> Self {
        TwoVar(&self.0 + &o.0)
    }
    fn sub(&self, o: &Self) -> Self {
        TwoVar(&self.0 - &o.0)
    }
    fn mul(&self, o: &Self) -> Self {
        TwoVar(&self.0 * &o.0)
    }
    fn div(&self, o: &Self) -> Result<Self> {
        if o.0.is_zero() {
            return Err(div_zero());
        }
        if !o.0.is_constant() {
            return Err(Error::Invalid("vector field components must be polynomials".into()));
        }
        let c = o.0.coeff(0, 0).checked_inv().ok_or_else(div_zero)?;
        Ok(TwoVar(self.0.scale(&c)))
    }
    fn inv(&self) -> Result<Self> {
        TwoVar::scalar(Scalar::one()).div(self)
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

fn eval<A: Algebra>(ast: &Ast, vars: &[&str], bind: &Bindings) -> Result<A> {
    Ok(match ast {
        Ast::Int(n) => A::scalar(Scalar::rational(BigRational::from_integer(n.clone()))),
        Ast::Sqrt(n) => {
            let c = Scalar::rational(BigRational::from_integer(n.clone())).try_sqrt()?;
            A::scalar(c)
        }
        Ast::Sym(s) => {
            if let Some(v) = bind.get(s) {
                A::scalar(v.clone())
            } else if vars.contains(&s.as_str()) {
                A::var(s).expect("declared variable")
            } else {
                return Err(Error::Invalid(format!("unbound name '{s}' (use --param {s}=VALUE)")));
            }
        }
        Ast::Neg(a) => A::scalar(Scalar::zero()).sub(&eval(a, vars, bind)?),
        Ast::Add(a, b) => eval::<A>(a, vars, bind)?.add(&eval(b, vars, bind)?),
        Ast::Sub(a, b) => eval::<A>(a, vars, bind)?.sub(&eval(b, vars, bind)?),
        Ast::Mul(a, b) => eval::<A>(a, vars, bind)?.mul(&eval(b, vars, bind)?),
        Ast::Div(a, b) => eval::<A>(a, vars, bind)?.div(&eval(b, vars, bind)?)?,
        Ast::Pow(a, e) => {
            let base = eval::<A>(a, vars, bind)?;
            if *e < 0 && base.is_zero() {
                return Err(div_zero());
            }
            let b = if *e < 0 { base.inv()? } else { base };
            let mut acc = A::scalar(Scalar::one());
            let mut sq = b;
            let mut k = e.unsigned_abs();
            while k > 0 {
                if k & 1 == 1 {
                    acc = acc.mul(&sq);
                }
                k >>= 1;
                if k > 0 {
                    sq = sq.mul(&sq);
                }
            }
            acc
        }
    })
}

/// Rational function in `var` with parameters taken from `bind`.
pub fn parse_ratfunc(src: &str, var: &str, bind: &Bindings) -> Result<RatFunc> {
    let ast = parse_ast(src)?;
    Ok(eval::<OneVar>(&ast, &[var], bind)?.0)
}

/// A constant expression.
pub fn parse_scalar(src: &str, bind: &Bindings) -> Result<Scalar> {
    let r = eval::<OneVar>(&parse_ast(src)?, &[], bind)?.0;
    Ok(r.as_poly().map(|p| p.coeff(0)).expect("no variable in scope"))
}

/// Polynomial in `x` and `y`.
pub fn parse_bipoly(src: &str, bind: &Bindings) -> Result<BiPoly> {
    Ok(eval::<TwoVar>(&parse_ast(src)?, &["x", "y"], bind)?.0)
}

/// `"P; Q"` with polynomial components in `x` and `y`.
pub fn parse_vectorfield(src: &str, bind: &Bindings) -> Result<PlanarVectorField> {
    let Some((p, q)) = src.split_once(';') else {
        return Err(Error::Syntax {
            pos: src.len(),
            expected: "';' between the two components".into(),
        });
    };
    let off = p.len() + 1;
    let pp = parse_bipoly(p, bind)?;
    let qq = parse_bipoly(q, bind).map_err(|e| match e {
        Error::Syntax { pos, expected } => Error::Syntax { pos: pos + off, expected },
        other => other,
    })?;
    PlanarVectorField::new(pp, qq)
}

/// `NAME=VALUE` with a constant right-hand side (earlier bindings in scope).
pub fn parse_binding(src: &str, bind: &Bindings) -> Result<(String, Scalar)> {
    let Some((name, value)) = src.split_once('=') else {
        return Err(Error::Syntax {
            pos: src.len(),
            expected: "NAME=VALUE".into(),
        });
    };
    let name = name.trim();
    let ok = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if !ok || name == "sqrt" {
        return Err(Error::Syntax {
            pos: 0,
            expected: "parameter name".into(),
        });
    }
    Ok((name.to_string(), parse_scalar(value, bind)?))
}

/// Deterministic text that parses back to the same value.
pub trait Canonical {
    fn print_canonical(&self) -> String;
}

impl Canonical for Scalar {
    fn print_canonical(&self) -> String {
        self.to_text()
    }
}

impl Canonical for RatFunc {
    fn print_canonical(&self) -> String {
        self.to_text("x")
    }
}

impl Canonical for Poly {
    fn print_canonical(&self) -> String {
        self.to_text("x")
    }
}

impl Canonical for BiPoly {
    fn print_canonical(&self) -> String {
        self.to_text("x", "y")
    }
}

impl Canonical for PlanarVectorField {
    fn print_canonical(&self) -> String {
        format!("{}; {}", self.p.print_canonical(), self.q.print_canonical())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn none() -> Bindings {
        Bindings::new()
    }

    fn rf(src: &str) -> RatFunc {
        parse_ratfunc(src, "x", &none()).unwrap()
    }

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    #[test]
    fn precedence_table() {
        let cases = [
            ("-2^2", "-4"),
            ("2^3^2", "512"),
            ("2^-1", "1/2"),
            ("2^(-2)", "1/4"),
            ("1-2-3", "-4"),
            ("12/2/3", "2"),
            ("2*3+4", "10"),
            ("2+3*4", "14"),
            ("-3*-2", "6"),
            ("(1+2)^2", "9"),
            ("--2", "2"),
            ("2^2*3", "12"),
            ("sqrt(8)", "2*sqrt(2)"),
            ("sqrt(-4)", "2*sqrt(-1)"),
        ];
        for (src, want) in cases {
            assert_eq!(parse_scalar(src, &none()).unwrap().to_text(), want, "{src}");
        }
    }

    #[test]
    fn whittaker_shape() {
        let mut b = none();
        b.insert("k".into(), q(1, 2));
        b.insert("m".into(), q(0, 1));
        let r = parse_ratfunc("1/4 - k/x + (4*m^2-1)/(4*x^2)", "x", &b).unwrap();
        let expect = crate::specialfn::WhittakerParams { kappa: q(1, 2), mu: q(0, 1) }.rho();
        assert_eq!(r, expect);
    }

    #[test]
    fn radical_pole() {
        let r = rf("1/(x-sqrt(2))");
        assert_eq!(r.denom().coeff(0), -Scalar::sqrt_int(2));
        assert_eq!(rf(&r.print_canonical()), r);
    }

    #[test]
    fn errors() {
        let b = none();
        assert!(matches!(parse_ratfunc("x +", "x", &b), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse_ratfunc("x/0", "x", &b), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_ratfunc("2x", "x", &b), Err(Error::Syntax { pos: 1, .. })));
        assert!(matches!(parse_ratfunc("x^y", "x", &b), Err(Error::Syntax { .. })));
        assert!(matches!(parse_ratfunc("k*x", "x", &b), Err(Error::Invalid(_))));
        assert!(matches!(parse_ratfunc("1/(x-x)", "x", &b), Err(Error::Invalid(_))));
        assert!(matches!(parse_ratfunc("(x", "x", &b), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_vectorfield("x/y; 1", &b), Err(Error::Invalid(_))));
    }

    #[test]
    fn vector_fields() {
        let mut b = none();
        b.insert("e".into(), q(2, 1));
        b.insert("l".into(), q(-1, 3));
        let v = parse_vectorfield("x; e*x + l*y", &b).unwrap();
        assert_eq!(v.print_canonical(), "x; 2*x - 1/3*y");
        let c = parse_vectorfield("1; 0", &b).unwrap();
        assert_eq!(parse_vectorfield(&c.print_canonical(), &b).unwrap(), c);
        let w = parse_vectorfield("y; x^3", &b).unwrap();
        assert_eq!(parse_vectorfield(&w.print_canonical(), &b).unwrap(), w);
    }

    #[test]
    fn bindings() {
        let mut b = none();
        let (n, v) = parse_binding("k=1/2", &b).unwrap();
        b.insert(n, v);
        let (n, v) = parse_binding("m = 2*k + sqrt(3)", &b).unwrap();
        assert_eq!(n, "m");
        assert_eq!(v, &Scalar::one() + &Scalar::sqrt_int(3));
        assert!(parse_binding("2k=1", &b).is_err());
    }
}
