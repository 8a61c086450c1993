//! Expression trees for constraint strings such as `exp(x1) - x2 >= 0`.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! constraint := expr (("<=" | ">=" | "=" | "==") expr)?
//! expr       := term (("+" | "-") term)*
//! term       := unary ("*" unary)*
//! unary      := ("-" | "+") unary | power
//! power      := atom ("^" integer)?
//! atom       := number | "x" index | "exp" "(" expr ")" | "(" expr ")"
//! ```
//!
//! A bare expression means `expr <= 0`.

use std::fmt;

use crate::poly::Polynomial;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("parse error at column {}: {msg}", .pos + 1)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { pos, msg: msg.into() })
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    /// Zero-based variable index.
    Var(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Exp(Box<Expr>),
}

impl Expr {
    pub fn eval(&self, x: &[f64]) -> f64 {
        match self {
            Expr::Const(c) => *c,
            Expr::Var(j) => x[*j],
            Expr::Neg(a) => -a.eval(x),
            Expr::Add(a, b) => a.eval(x) + b.eval(x),
            Expr::Sub(a, b) => a.eval(x) - b.eval(x),
            Expr::Mul(a, b) => a.eval(x) * b.eval(x),
            Expr::Pow(a, k) => a.eval(x).powi(*k as i32),
            Expr::Exp(a) => a.eval(x).exp(),
        }
    }

    /// Same tree evaluated on magnitudes, a bound on intermediate sizes.
    pub fn eval_abs(&self, x: &[f64]) -> f64 {
        match self {
            Expr::Const(c) => c.abs(),
            Expr::Var(j) => x[*j].abs(),
            Expr::Neg(a) => a.eval_abs(x),
            Expr::Add(a, b) | Expr::Sub(a, b) => a.eval_abs(x) + b.eval_abs(x),
            Expr::Mul(a, b) => a.eval_abs(x) * b.eval_abs(x),
            Expr::Pow(a, k) => a.eval_abs(x).powi(*k as i32),
            Expr::Exp(a) => a.eval(x).exp(),
        }
    }

    pub fn max_var(&self) -> Option<usize> {
        match self {
            Expr::Const(_) => None,
            Expr::Var(j) => Some(*j),
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Exp(a) => a.max_var(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => a.max_var().max(b.max_var()),
        }
    }

    /// Expands to a polynomial; `None` if the tree contains `exp`.
    pub fn to_polynomial(&self, dim: usize) -> Option<Polynomial> {
        Some(match self {
            Expr::Const(c) => Polynomial::constant(dim, *c),
            Expr::Var(j) => Polynomial::var(dim, *j),
            Expr::Neg(a) => a.to_polynomial(dim)?.scale(-1.0),
            Expr::Add(a, b) => a.to_polynomial(dim)?.add(&b.to_polynomial(dim)?).ok()?,
            Expr::Sub(a, b) => a.to_polynomial(dim)?.sub(&b.to_polynomial(dim)?).ok()?,
            Expr::Mul(a, b) => a.to_polynomial(dim)?.mul(&b.to_polynomial(dim)?).ok()?,
            Expr::Pow(a, k) => a.to_polynomial(dim)?.pow(*k),
            Expr::Exp(_) => return None,
        })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Var(j) => write!(f, "x{}", j + 1),
            Expr::Neg(a) => write!(f, "-({a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "{a}*{b}"),
            Expr::Pow(a, k) => write!(f, "({a})^{k}"),
            Expr::Exp(a) => write!(f, "exp({a})"),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    dim: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s.as_bytes()) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return err(start, "expected a nonnegative integer exponent");
            }
            let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
            let k: u32 = match text.parse() {
                Ok(k) => k,
                Err(_) => return err(start, "exponent too large"),
            };
            if self.peek() == Some(b'^') {
                return err(self.pos, "chained exponents need parentheses");
            }
            return Ok(Expr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let start = match self.peek() {
            None => return err(self.pos, "unexpected end of input"),
            Some(_) => self.pos,
        };
        let c = self.src[start];
        if c == b'(' {
            self.pos += 1;
            let e = self.expr()?;
            if !self.eat(")") {
                return err(self.pos, "expected ')'");
            }
            return Ok(e);
        }
        if c.is_ascii_digit() || c == b'.' {
            return self.number();
        }
        if self.eat("exp") {
            if !self.eat("(") {
                return err(self.pos, "expected '(' after exp");
            }
            let e = self.expr()?;
            if !self.eat(")") {
                return err(self.pos, "expected ')'");
            }
            return Ok(Expr::Exp(Box::new(e)));
        }
        if c == b'x' {
            self.pos += 1;
            let s = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let text = std::str::from_utf8(&self.src[s..self.pos]).expect("ascii digits");
            let j: usize = match text.parse() {
                Ok(j) => j,
                Err(_) => return err(s, "expected variable index after 'x'"),
            };
            if j == 0 || j > self.dim {
                return err(start, format!("variable x{j} outside x1..x{}", self.dim));
            }
            return Ok(Expr::Var(j - 1));
        }
        err(start, format!("unexpected character '{}'", c as char))
    }

    fn number(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        let s = self.src;
        while self.pos < s.len() && (s[self.pos].is_ascii_digit() || s[self.pos] == b'.') {
            self.pos += 1;
        }
        if self.pos < s.len() && (s[self.pos] == b'e' || s[self.pos] == b'E') {
            let save = self.pos;
            self.pos += 1;
            if self.pos < s.len() && (s[self.pos] == b'+' || s[self.pos] == b'-') {
                self.pos += 1;
            }
            let ds = self.pos;
            while self.pos < s.len() && s[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if ds == self.pos {
                // Not an exponent after all, e.g. `2exp(x1)` is still an error later.
                self.pos = save;
            }
        }
        let text = std::str::from_utf8(&s[start..self.pos]).expect("ascii");
        match text.parse::<f64>() {
            Ok(v) => Ok(Expr::Const(v)),
            Err(_) => err(start, format!("malformed number '{text}'")),
        }
    }
}

/// Parses a bare expression over `x1..x{dim}`.
pub fn parse_expr(src: &str, dim: usize) -> Result<Expr, ParseError> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, dim };
    let e = p.expr()?;
    if p.peek().is_some() {
        return err(p.pos, "unexpected trailing input");
    }
    Ok(e)
}

/// Parses a constraint and returns its normalized `g(x) <= 0` parts
/// (two for an equality).
pub fn parse_constraint(src: &str, dim: usize) -> Result<Vec<Expr>, ParseError> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, dim };
    let lhs = p.expr()?;
    let at = {
        p.skip_ws();
        p.pos
    };
    let rel = if p.eat("<=") {
        "<="
    } else if p.eat(">=") {
        ">="
    } else if p.eat("==") || p.eat("=") {
        "="
    } else if p.eat("<") || p.eat(">") {
        return err(at, "strict inequalities define open sets; use <= or >=");
    } else if p.peek().is_none() {
        return Ok(vec![lhs]);
    } else {
        return err(at, "expected a comparison operator or end of input");
    };
    let rhs = p.expr()?;
    if p.peek().is_some() {
        return err(p.pos, "unexpected trailing input");
    }
    let le = Expr::Sub(Box::new(lhs.clone()), Box::new(rhs.clone()));
    let ge = Expr::Sub(Box::new(rhs), Box::new(lhs));
    Ok(match rel {
        "<=" => vec![le],
        ">=" => vec![ge],
        _ => vec![le, ge],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_eval() {
        let e = parse_expr("x2^3 - x1^2 - x1*x2 + 1", 2).unwrap();
        assert_eq!(e.eval(&[0.0, 0.0]), 1.0);
        assert_eq!(e.eval(&[1.0, 2.0]), 8.0 - 1.0 - 2.0 + 1.0);
        assert_eq!(parse_expr("-x1^2", 1).unwrap().eval(&[3.0]), -9.0);
        assert_eq!(parse_expr("2*(x1+1)^2", 1).unwrap().eval(&[1.0]), 8.0);
        assert_eq!(parse_expr("1.5e1 - x1", 1).unwrap().eval(&[5.0]), 10.0);
    }

    #[test]
    fn exp_constraint_normalizes() {
        let g = parse_constraint("exp(x1) - x2 >= 0", 2).unwrap();
        assert_eq!(g.len(), 1);
        assert!((g[0].eval(&[0.0, 2.0]) - 1.0).abs() < 1e-15);
        assert!(g[0].eval(&[1.0, 1.0]) < 0.0);
    }

    #[test]
    fn equality_splits() {
        let g = parse_constraint("x1 = x2", 2).unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(g[0].eval(&[1.0, 3.0]), -2.0);
        assert_eq!(g[1].eval(&[1.0, 3.0]), 2.0);
    }

    #[test]
    fn to_polynomial_expands() {
        let e = parse_expr("(x1*x2 - 1)^2 + 4*x1^2", 2).unwrap();
        let p = e.to_polynomial(2).unwrap();
        assert_eq!(p.degree(), Some(4));
        assert_eq!(p.coeff(&[2, 2]), 1.0);
        assert_eq!(p.coeff(&[1, 1]), -2.0);
        assert_eq!(p.coeff(&[2, 0]), 4.0);
        assert_eq!(p.coeff(&[0, 0]), 1.0);
        assert!(parse_expr("exp(x1)", 1).unwrap().to_polynomial(1).is_none());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_expr("x1 + * x2", 2).unwrap_err();
        assert_eq!(e.pos, 5);
        let e = parse_expr("x3", 2).unwrap_err();
        assert_eq!(e.pos, 0);
        assert!(parse_constraint("x1 < 0", 1).is_err());
        assert!(parse_expr("x1^", 1).is_err());
        assert!(parse_expr("(x1", 1).is_err());
        assert!(parse_expr("x1 / 2", 1).is_err());
    }
}
