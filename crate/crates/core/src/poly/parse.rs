//! Recursive-descent parser for the expression grammar
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' INTEGER)?
//! atom   := NUMBER | IDENT | FUNC '(' expr ')' | '(' expr ')'
//! ```
//!
//! `FUNC` is `sin` or `cos`. Polynomials are the expressions without function
//! calls whose divisors are nonzero constants.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Polynomial, Rational, Ring, VarTable};
use crate::error::{Error, ParseError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
        }
    }
}

/// Expression tree over the variables of a [`VarTable`].
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Rational),
    Var(usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
    Call(Func, Box<Expr>),
}

impl Expr {
    pub fn num(n: i64) -> Expr {
        Expr::Num(Rational::from_integer(BigInt::from(n)))
    }

    pub fn is_polynomial(&self) -> bool {
        match self {
            Expr::Num(_) | Expr::Var(_) => true,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.is_polynomial() && b.is_polynomial()
            }
            Expr::Div(a, b) => a.is_polynomial() && b.constant_value().is_some_and(|c| !c.is_zero()),
            Expr::Neg(a) | Expr::Pow(a, _) => a.is_polynomial(),
            Expr::Call(..) => false,
        }
    }

    /// Value of a variable-free, call-free expression.
    pub fn constant_value(&self) -> Option<Rational> {
        match self {
            Expr::Num(c) => Some(c.clone()),
            Expr::Var(_) | Expr::Call(..) => None,
            Expr::Add(a, b) => Some(a.constant_value()? + b.constant_value()?),
            Expr::Sub(a, b) => Some(a.constant_value()? - b.constant_value()?),
            Expr::Mul(a, b) => Some(a.constant_value()? * b.constant_value()?),
            Expr::Div(a, b) => {
                let d = b.constant_value()?;
                if d.is_zero() {
                    None
                } else {
                    Some(a.constant_value()? / d)
                }
            }
            Expr::Neg(a) => Some(-a.constant_value()?),
            Expr::Pow(a, e) => Some(num_traits::pow(a.constant_value()?, *e as usize)),
        }
    }

    /// Converts to a canonical polynomial, rejecting transcendental parts.
    pub fn to_polynomial(&self, ring: &Ring) -> Result<Polynomial> {
        Ok(match self {
            Expr::Num(c) => Polynomial::constant(ring, c.clone()),
            Expr::Var(i) => ring.var(*i),
            Expr::Add(a, b) => a.to_polynomial(ring)? + b.to_polynomial(ring)?,
            Expr::Sub(a, b) => a.to_polynomial(ring)? - b.to_polynomial(ring)?,
            Expr::Mul(a, b) => a.to_polynomial(ring)? * b.to_polynomial(ring)?,
            Expr::Div(a, b) => {
                let num = a.to_polynomial(ring)?;
                let den = b.to_polynomial(ring)?;
                match den.constant_value() {
                    Some(c) if !c.is_zero() => num.scale(&c.recip()),
                    _ => {
                        return Err(Error::UndeclaredTranscendental(
                            self.render(ring.vars()),
                        ))
                    }
                }
            }
            Expr::Neg(a) => -a.to_polynomial(ring)?,
            Expr::Pow(a, e) => a.to_polynomial(ring)?.pow(*e),
            Expr::Call(..) => {
                return Err(Error::UndeclaredTranscendental(self.render(ring.vars())))
            }
        })
    }

    /// Symbolic partial derivative with respect to variable `v`.
    pub fn derivative(&self, v: usize) -> Expr {
        use Expr::*;
        let b = Box::new;
        match self {
            Num(_) => Expr::num(0),
            Var(i) => Expr::num(if *i == v { 1 } else { 0 }),
            Add(p, q) => Add(b(p.derivative(v)), b(q.derivative(v))),
            Sub(p, q) => Sub(b(p.derivative(v)), b(q.derivative(v))),
            Mul(p, q) => Add(
                b(Mul(b(p.derivative(v)), q.clone())),
                b(Mul(p.clone(), b(q.derivative(v)))),
            ),
            Div(p, q) => Div(
                b(Sub(
                    b(Mul(b(p.derivative(v)), q.clone())),
                    b(Mul(p.clone(), b(q.derivative(v)))),
                )),
                b(Pow(q.clone(), 2)),
            ),
            Neg(p) => Neg(b(p.derivative(v))),
            Pow(_, 0) => Expr::num(0),
            Pow(p, e) => Mul(
                b(Mul(b(Expr::num(*e as i64)), b(Pow(p.clone(), e - 1)))),
                b(p.derivative(v)),
            ),
            Call(Func::Sin, p) => Mul(b(Call(Func::Cos, p.clone())), b(p.derivative(v))),
            Call(Func::Cos, p) => Neg(b(Mul(b(Call(Func::Sin, p.clone())), b(p.derivative(v))))),
        }
    }

    /// Visits every function call and every non-constant division, innermost first.
    pub fn for_each_atom(&self, f: &mut impl FnMut(&Expr)) {
        match self {
            Expr::Num(_) | Expr::Var(_) => {}
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.for_each_atom(f);
                b.for_each_atom(f);
            }
            Expr::Div(a, b) => {
                a.for_each_atom(f);
                b.for_each_atom(f);
                if b.constant_value().is_none() {
                    f(self);
                }
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.for_each_atom(f),
            Expr::Call(_, a) => {
                a.for_each_atom(f);
                f(self);
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Num(c) if !c.is_integer() || c < &Rational::zero() => 2,
            _ => 5,
        }
    }

    /// Text form that parses back to an equal tree.
    pub fn render(&self, vars: &VarTable) -> String {
        struct Show<'a>(&'a Expr, &'a VarTable);
        impl fmt::Display for Show<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.write(f, self.1)
            }
        }
        Show(self, vars).to_string()
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, vars: &VarTable) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, e: &Expr, min: u8| -> fmt::Result {
            if e.precedence() < min {
                f.write_str("(")?;
                e.write(f, vars)?;
                f.write_str(")")
            } else {
                e.write(f, vars)
            }
        };
        match self {
            Expr::Num(c) => {
                if c < &Rational::zero() {
                    write!(f, "-{}", -c)
                } else {
                    write!(f, "{c}")
                }
            }
            Expr::Var(i) => f.write_str(vars.name(*i)),
            Expr::Add(a, b) => {
                wrap(f, a, 1)?;
                f.write_str(" + ")?;
                wrap(f, b, 2)
            }
            Expr::Sub(a, b) => {
                wrap(f, a, 1)?;
                f.write_str(" - ")?;
                wrap(f, b, 2)
            }
            Expr::Mul(a, b) => {
                wrap(f, a, 2)?;
                f.write_str("*")?;
                wrap(f, b, 3)
            }
            Expr::Div(a, b) => {
                wrap(f, a, 2)?;
                f.write_str("/")?;
                wrap(f, b, 3)
            }
            Expr::Neg(a) => {
                f.write_str("-")?;
                wrap(f, a, 3)
            }
            Expr::Pow(a, e) => {
                wrap(f, a, 5)?;
                write!(f, "^{e}")
            }
            Expr::Call(func, a) => {
                write!(f, "{}(", func.name())?;
                a.write(f, vars)?;
                f.write_str(")")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
    End,
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    vars: &'a VarTable,
    line: usize,
    col0: usize,
}

fn tokenize(text: &str, line: usize, col0: usize) -> std::result::Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Num(s.parse().unwrap()), start));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), start));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Sym(c), i));
            i += 1;
        } else {
            return Err(ParseError::new(line, col0 + i, format!("unexpected character `{c}`")));
        }
    }
    out.push((Tok::End, chars.len()));
    Ok(out)
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.col0 + self.toks[self.pos].1, msg)
    }

    fn describe(&self) -> String {
        match self.peek() {
            Tok::Num(n) => format!("number `{n}`"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::End => "end of input".to_string(),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == &Tok::Sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> std::result::Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> std::result::Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.peek() == &Tok::Sym('/') {
                let at = self.pos;
                self.pos += 1;
                let rhs = self.unary()?;
                if rhs.constant_value().is_some_and(|c| c.is_zero()) {
                    self.pos = at;
                    return Err(self.err("division by zero"));
                }
                lhs = Expr::Div(Box::new(lhs), Box::new(rhs));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> std::result::Result<Expr, ParseError> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> std::result::Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().clone() {
                Tok::Num(n) => {
                    let e = u32::try_from(&n).map_err(|_| self.err("exponent too large"))?;
                    self.pos += 1;
                    Ok(Expr::Pow(Box::new(base), e))
                }
                _ => Err(self.err(format!(
                    "expected a non-negative integer exponent, found {}",
                    self.describe()
                ))),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> std::result::Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.pos += 1;
                Ok(Expr::Num(Rational::from_integer(n)))
            }
            Tok::Ident(name) => {
                let func = match name.as_str() {
                    "sin" => Some(Func::Sin),
                    "cos" => Some(Func::Cos),
                    _ => None,
                };
                if let Some(func) = func {
                    self.pos += 1;
                    if !self.eat('(') {
                        return Err(self.err(format!("expected `(` after `{name}`")));
                    }
                    let arg = self.expr()?;
                    if !self.eat(')') {
                        return Err(self.err(format!("expected `)`, found {}", self.describe())));
                    }
                    return Ok(Expr::Call(func, Box::new(arg)));
                }
                match self.vars.index_of(&name) {
                    Some(i) => {
                        self.pos += 1;
                        if self.peek() == &Tok::Sym('(') {
                            return Err(self.err(format!("`{name}` is not a function")));
                        }
                        Ok(Expr::Var(i))
                    }
                    None => Err(self.err(format!("unknown variable `{name}`"))),
                }
            }
            Tok::Sym('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err(format!("expected `)`, found {}", self.describe())));
                }
                Ok(e)
            }
            _ => Err(self.err(format!("expected an operand, found {}", self.describe()))),
        }
    }
}

/// Parses an expression; `line` and `column` locate `text` inside a larger
/// document for error reporting.
pub fn parse_expr(
    vars: &VarTable,
    text: &str,
    line: usize,
    column: usize,
) -> std::result::Result<Expr, ParseError> {
    let toks = tokenize(text, line, column)?;
    let mut p = Parser {
        toks,
        pos: 0,
        vars,
        line,
        col0: column,
    };
    if p.peek() == &Tok::End {
        return Err(p.err("empty expression"));
    }
    let e = p.expr()?;
    if p.peek() != &Tok::End {
        return Err(p.err(format!("expected an operator, found {}", p.describe())));
    }
    Ok(e)
}

pub fn parse_polynomial(ring: &Ring, text: &str) -> Result<Polynomial> {
    parse_expr(ring.vars(), text, 1, 1)?.to_polynomial(ring)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, ratio};

    fn ring() -> Ring {
        Ring::with_names(["x1", "x2", "x3"]).unwrap()
    }

    #[test]
    fn precedence_and_signs() {
        let r = ring();
        assert_eq!(r.parse("-x1^2").unwrap(), -r.parse("x1*x1").unwrap());
        assert_eq!(r.parse("2*x1 - 3/4").unwrap().constant_value(), None);
        let p = r.parse("(x1 + 1)^2 - x1^2 - 2*x1").unwrap();
        assert!(p.is_one());
        assert_eq!(r.parse("x1/2").unwrap(), r.parse("1/2*x1").unwrap());
        assert_eq!(
            r.parse("3/6").unwrap().constant_value(),
            Some(ratio(1, 2))
        );
        assert_eq!(r.parse("  x2 ^ 3 ").unwrap().evaluate(&[rat(0), rat(2), rat(0)]).unwrap(), rat(8));
    }

    #[test]
    fn positioned_errors() {
        let r = ring();
        let err = parse_expr(r.vars(), "x1 + * x2", 4, 10).unwrap_err();
        assert_eq!(err.position.line, 4);
        assert_eq!(err.position.column, 15);
        let err = parse_expr(r.vars(), "x1 + y", 1, 1).unwrap_err();
        assert!(err.message.contains("unknown variable"));
        assert_eq!(err.position.column, 6);
        assert!(parse_expr(r.vars(), "x1^-1", 1, 1).is_err());
        assert!(parse_expr(r.vars(), "x1/0", 1, 1).is_err());
        assert!(parse_expr(r.vars(), "(x1", 1, 1).is_err());
        assert!(parse_expr(r.vars(), "", 1, 1).is_err());
    }

    #[test]
    fn transcendental_rejected_as_polynomial() {
        let r = ring();
        assert!(matches!(
            r.parse("sin(x1)"),
            Err(Error::UndeclaredTranscendental(_))
        ));
        assert!(matches!(
            r.parse("1/(x1 + 1)"),
            Err(Error::UndeclaredTranscendental(_))
        ));
    }

    #[test]
    fn render_round_trips() {
        let r = ring();
        for text in [
            "x1 - (x2 - x3)",
            "-(x1 + 1)^2*cos(x3)/(2 - sin(x3)^2)",
            "x1^2*x2 - 3/4*x3 + 7",
            "-x1*-x2",
            "(x1*x2)^3",
        ] {
            let e = parse_expr(r.vars(), text, 1, 1).unwrap();
            let again = parse_expr(r.vars(), &e.render(r.vars()), 1, 1).unwrap();
            assert_eq!(e, again, "{text} -> {}", e.render(r.vars()));
        }
    }

    #[test]
    fn symbolic_derivative_matches_polynomial_derivative() {
        let r = ring();
        let e = parse_expr(r.vars(), "(x1 + x2)^3*x3 - x1/5", 1, 1).unwrap();
        for v in 0..3 {
            assert_eq!(
                e.derivative(v).to_polynomial(&r).unwrap(),
                e.to_polynomial(&r).unwrap().partial_derivative(v)
            );
        }
    }
}
