//! Expression trees in one complex variable `z`.
//!
//! Grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := base ('^' integer)?
//! base   := number | 'i' | 'z' | 'exp(' expr ')' | 'sin(' expr ')'
//!         | 'cos(' expr ')' | '(' expr ')' | '-' base
//! ```
//!
//! Numbers are decimal literals. Complex constants are written by
//! composition (`1+2*i`); subtrees free of `z` are folded into a single
//! constant after parsing, so `1+2*i` becomes one [`Expr::Const`].

use crate::error::ParseError;
use crate::Point;
use std::fmt;

/// Smallest denominator magnitude accepted during evaluation.
pub const DIVISION_GUARD: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(Point),
    Var,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Neg(Box<Expr>),
    Exp(Box<Expr>),
    Sin(Box<Expr>),
    Cos(Box<Expr>),
}

/// A guarded division or negative power met a near-zero base.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GuardTripped;

impl Expr {
    pub fn constant(c: Point) -> Self {
        Expr::Const(c)
    }

    pub fn real(x: f64) -> Self {
        Expr::Const(Point::new(x, 0.0))
    }

    pub fn eval(&self, z: Point) -> Result<Point, GuardTripped> {
        Ok(match self {
            Expr::Const(c) => *c,
            Expr::Var => z,
            Expr::Add(a, b) => a.eval(z)? + b.eval(z)?,
            Expr::Sub(a, b) => a.eval(z)? - b.eval(z)?,
            Expr::Mul(a, b) => a.eval(z)? * b.eval(z)?,
            Expr::Div(a, b) => {
                let num = a.eval(z)?;
                let den = b.eval(z)?;
                if den.norm() < DIVISION_GUARD {
                    return Err(GuardTripped);
                }
                num / den
            }
            Expr::Pow(base, k) => {
                let b = base.eval(z)?;
                if *k < 0 && b.norm() < DIVISION_GUARD {
                    return Err(GuardTripped);
                }
                b.powi(*k)
            }
            Expr::Neg(a) => -a.eval(z)?,
            Expr::Exp(a) => a.eval(z)?.exp(),
            Expr::Sin(a) => a.eval(z)?.sin(),
            Expr::Cos(a) => a.eval(z)?.cos(),
        })
    }

    fn is_const(&self) -> bool {
        matches!(self, Expr::Const(_))
    }

    /// Collapses every `z`-free subtree whose value is finite and guard-safe.
    pub fn fold_constants(self) -> Expr {
        let folded = match self {
            Expr::Add(a, b) => Expr::Add(Box::new(a.fold_constants()), Box::new(b.fold_constants())),
            Expr::Sub(a, b) => Expr::Sub(Box::new(a.fold_constants()), Box::new(b.fold_constants())),
            Expr::Mul(a, b) => Expr::Mul(Box::new(a.fold_constants()), Box::new(b.fold_constants())),
            Expr::Div(a, b) => Expr::Div(Box::new(a.fold_constants()), Box::new(b.fold_constants())),
            Expr::Pow(a, k) => Expr::Pow(Box::new(a.fold_constants()), k),
            Expr::Neg(a) => Expr::Neg(Box::new(a.fold_constants())),
            Expr::Exp(a) => Expr::Exp(Box::new(a.fold_constants())),
            Expr::Sin(a) => Expr::Sin(Box::new(a.fold_constants())),
            Expr::Cos(a) => Expr::Cos(Box::new(a.fold_constants())),
            leaf => return leaf,
        };
        let foldable = match &folded {
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => a.is_const() && b.is_const(),
            Expr::Pow(a, _) | Expr::Neg(a) | Expr::Exp(a) | Expr::Sin(a) | Expr::Cos(a) => a.is_const(),
            _ => false,
        };
        if foldable {
            if let Ok(c) = folded.eval(Point::new(0.0, 0.0)) {
                if c.re.is_finite() && c.im.is_finite() {
                    return Expr::Const(c);
                }
            }
        }
        folded
    }
}

fn write_real(f: &mut fmt::Formatter<'_>, x: f64) -> fmt::Result {
    if x.is_sign_negative() {
        write!(f, "-{}", -x)
    } else {
        write!(f, "{x}")
    }
}

/// Prints in the input grammar with every compound node parenthesized, so
/// reparsing a parsed tree reproduces it exactly.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) if c.im == 0.0 && c.re.is_sign_positive() => write!(f, "{}", c.re),
            Expr::Const(c) if c.im == 0.0 => write!(f, "(-{})", -c.re),
            Expr::Const(c) if c.re == 0.0 && c.re.is_sign_positive() && c.im == 1.0 => f.write_str("i"),
            Expr::Const(c) => {
                f.write_str("(")?;
                write_real(f, c.re)?;
                f.write_str(" + ")?;
                write_real(f, c.im)?;
                f.write_str("*i)")
            }
            Expr::Var => f.write_str("z"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Pow(a, k) => write!(f, "({a}^{k})"),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Exp(a) => write!(f, "exp({a})"),
            Expr::Sin(a) => write!(f, "sin({a})"),
            Expr::Cos(a) => write!(f, "cos({a})"),
        }
    }
}

const BASE_START: &[&str] = &["number", "'i'", "'z'", "'exp('", "'sin('", "'cos('", "'('", "'-'"];

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&mut self) -> Option<char> {
        let rest = &self.src[self.pos..];
        let trimmed = rest.trim_start();
        self.pos += rest.len() - trimmed.len();
        trimmed.chars().next()
    }

    fn error(&mut self, expected: &[&'static str]) -> ParseError {
        ParseError {
            position: self.pos,
            expected: expected.to_vec(),
            found: self.peek(),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char, label: &'static str) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&[label]))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
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

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.base()?;
        if self.eat('^') {
            let k = self.integer()?;
            Ok(Expr::Pow(Box::new(base), k))
        } else {
            Ok(base)
        }
    }

    fn integer(&mut self) -> Result<i32, ParseError> {
        self.peek();
        let start = self.pos;
        let rest = &self.src[start..];
        let sign = usize::from(rest.starts_with('-'));
        let digits = rest[sign..].bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.error(&["integer"]));
        }
        let text = &rest[..sign + digits];
        let k = text.parse().map_err(|_| ParseError {
            position: start,
            expected: vec!["integer in 32-bit range"],
            found: text.chars().next(),
        })?;
        self.pos += sign + digits;
        Ok(k)
    }

    fn number(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        let bytes = &self.src.as_bytes()[start..];
        let int = bytes.iter().take_while(|b| b.is_ascii_digit()).count();
        let mut len = int;
        if bytes.get(len) == Some(&b'.') {
            len += 1 + bytes[len + 1..].iter().take_while(|b| b.is_ascii_digit()).count();
        }
        if len == 0 || (int == 0 && len == 1) {
            return Err(self.error(&["number"]));
        }
        let value: f64 = self.src[start..start + len]
            .parse()
            .map_err(|_| self.error(&["number"]))?;
        self.pos += len;
        Ok(Expr::real(value))
    }

    fn call(&mut self, wrap: fn(Box<Expr>) -> Expr) -> Result<Expr, ParseError> {
        let inner = self.expr()?;
        self.expect(')', "')'")?;
        Ok(wrap(Box::new(inner)))
    }

    fn base(&mut self) -> Result<Expr, ParseError> {
        let Some(c) = self.peek() else {
            return Err(self.error(BASE_START));
        };
        match c {
            '0'..='9' | '.' => self.number(),
            '(' => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(')', "')'")?;
                Ok(inner)
            }
            '-' => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.base()?)))
            }
            c if c.is_ascii_alphabetic() => {
                let start = self.pos;
                let word_len = self.src[start..].bytes().take_while(u8::is_ascii_alphabetic).count();
                let word = &self.src[start..start + word_len];
                let wrap: fn(Box<Expr>) -> Expr = match word {
                    "z" => {
                        self.pos += 1;
                        return Ok(Expr::Var);
                    }
                    "i" => {
                        self.pos += 1;
                        return Ok(Expr::Const(Point::i()));
                    }
                    "exp" => Expr::Exp,
                    "sin" => Expr::Sin,
                    "cos" => Expr::Cos,
                    _ => return Err(self.error(BASE_START)),
                };
                // The function name and its parenthesis form one token.
                if self.src[start + word_len..].starts_with('(') {
                    self.pos = start + word_len + 1;
                    self.call(wrap)
                } else {
                    self.pos = start + word_len;
                    Err(ParseError {
                        position: self.pos,
                        expected: vec!["'('"],
                        found: self.src[self.pos..].chars().next(),
                    })
                }
            }
            _ => Err(self.error(BASE_START)),
        }
    }
}

/// Parses and constant-folds an expression.
pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { src: text, pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.error(&["'+'", "'-'", "'*'", "'/'", "'^'", "end of input"]));
    }
    Ok(e.fold_constants())
}
