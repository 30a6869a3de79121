//! Recursive-descent parser for polynomial systems.
//!
//! Grammar (polynomials separated by `;`):
//!
//! ```text
//! system := expr (';' expr)* ';'?
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' INT)?
//! atom   := INT ('/' INT)? | IDENT | '(' expr ')'
//! ```
//!
//! Identifiers are `T1..TN` (series variables) and `X1..Xn` (unknowns), with
//! the aliases `X, Y, Z` for `X1, X2, X3` when `n <= 3` and `T` for `T1`
//! when `N = 1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::FieldDescriptor;
use crate::poly::{PolySystem, Polynomial};
use crate::series::GradedSeries;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyExpr {
    Int(BigInt),
    /// `a/b` literal, kept unreduced.
    Rational(BigInt, BigInt),
    /// `T_{i+1}`.
    SeriesVar(usize),
    /// `X_{i+1}`.
    Unknown(usize),
    Neg(Box<PolyExpr>),
    Add(Box<PolyExpr>, Box<PolyExpr>),
    Sub(Box<PolyExpr>, Box<PolyExpr>),
    Mul(Box<PolyExpr>, Box<PolyExpr>),
    Pow(Box<PolyExpr>, u32),
}

impl PolyExpr {
    fn precedence(&self) -> u8 {
        match self {
            PolyExpr::Add(..) | PolyExpr::Sub(..) => 1,
            PolyExpr::Mul(..) => 2,
            PolyExpr::Neg(_) => 3,
            PolyExpr::Pow(..) => 4,
            _ => 5,
        }
    }

    fn write(&self, out: &mut String, min_prec: u8) {
        let wrap = self.precedence() < min_prec;
        if wrap {
            out.push('(');
        }
        match self {
            PolyExpr::Int(n) => out.push_str(&n.to_string()),
            PolyExpr::Rational(a, b) => out.push_str(&format!("{a}/{b}")),
            PolyExpr::SeriesVar(i) => out.push_str(&format!("T{}", i + 1)),
            PolyExpr::Unknown(i) => out.push_str(&format!("X{}", i + 1)),
            PolyExpr::Neg(a) => {
                out.push('-');
                a.write(out, 3);
            }
            PolyExpr::Add(a, b) | PolyExpr::Sub(a, b) => {
                a.write(out, 1);
                out.push_str(if matches!(self, PolyExpr::Add(..)) { " + " } else { " - " });
                b.write(out, 2);
            }
            PolyExpr::Mul(a, b) => {
                a.write(out, 2);
                out.push('*');
                b.write(out, 3);
            }
            PolyExpr::Pow(a, e) => {
                a.write(out, 5);
                out.push_str(&format!("^{e}"));
            }
        }
        if wrap {
            out.push(')');
        }
    }

    /// Canonical text; parsing it gives back the same tree.
    pub fn render(&self) -> String {
        let mut s = String::new();
        self.write(&mut s, 0);
        s
    }

    /// Expands the expression into a polynomial over `field`.
    pub fn to_polynomial(&self, field: FieldDescriptor, num_series_vars: usize, unknowns: usize) -> Result<Polynomial> {
        let constant = |s: GradedSeries| Polynomial::constant(s, unknowns);
        Ok(match self {
            PolyExpr::Int(n) => {
                let r = BigRational::from_integer(n.clone());
                constant(GradedSeries::constant(field.from_rational(&r)?, num_series_vars))
            }
            PolyExpr::Rational(a, b) => {
                let r = BigRational::new(a.clone(), b.clone());
                constant(GradedSeries::constant(field.from_rational(&r)?, num_series_vars))
            }
            PolyExpr::SeriesVar(i) => constant(GradedSeries::variable(field, num_series_vars, *i)),
            PolyExpr::Unknown(i) => Polynomial::unknown(field, num_series_vars, unknowns, *i),
            PolyExpr::Neg(a) => a.to_polynomial(field, num_series_vars, unknowns)?.neg(),
            PolyExpr::Add(a, b) => a
                .to_polynomial(field, num_series_vars, unknowns)?
                .add(&b.to_polynomial(field, num_series_vars, unknowns)?)?,
            PolyExpr::Sub(a, b) => a
                .to_polynomial(field, num_series_vars, unknowns)?
                .sub(&b.to_polynomial(field, num_series_vars, unknowns)?)?,
            PolyExpr::Mul(a, b) => a
                .to_polynomial(field, num_series_vars, unknowns)?
                .mul(&b.to_polynomial(field, num_series_vars, unknowns)?)?,
            PolyExpr::Pow(a, e) => a.to_polynomial(field, num_series_vars, unknowns)?.pow(*e)?,
        })
    }

    /// Highest unknown index used, plus one.
    pub fn unknowns_used(&self) -> usize {
        match self {
            PolyExpr::Unknown(i) => i + 1,
            PolyExpr::Neg(a) | PolyExpr::Pow(a, _) => a.unknowns_used(),
            PolyExpr::Add(a, b) | PolyExpr::Sub(a, b) | PolyExpr::Mul(a, b) => a.unknowns_used().max(b.unknowns_used()),
            _ => 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Semi,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ';' => Some(Tok::Semi),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Token { tok, line: l0, col: c0 });
            i += 1;
            col += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Token { tok: Tok::Int(digits.parse().unwrap()), line: l0, col: c0 });
        } else if c.is_ascii_alphabetic() {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), line: l0, col: c0 });
        } else {
            return Err(Error::SyntaxError { line: l0, col: c0, message: format!("unexpected character `{c}`") });
        }
        col += i - start;
    }
    out.push(Token { tok: Tok::End, line, col });
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    num_series_vars: usize,
    unknowns: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        let t = self.peek();
        Err(Error::SyntaxError { line: t.line, col: t.col, message: message.into() })
    }

    fn system(&mut self) -> Result<Vec<PolyExpr>> {
        let mut out = vec![self.expr()?];
        loop {
            match self.peek().tok {
                Tok::Semi => {
                    self.bump();
                    if self.peek().tok == Tok::End {
                        break;
                    }
                    out.push(self.expr()?);
                }
                Tok::End => break,
                _ => return self.error("expected `;` or end of input"),
            }
        }
        Ok(out)
    }

    fn expr(&mut self) -> Result<PolyExpr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    lhs = PolyExpr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = PolyExpr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<PolyExpr> {
        let mut lhs = self.unary()?;
        while self.peek().tok == Tok::Star {
            self.bump();
            lhs = PolyExpr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        if self.peek().tok == Tok::Slash {
            return self.error("division is only allowed inside rational literals a/b");
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<PolyExpr> {
        if self.peek().tok == Tok::Minus {
            self.bump();
            return Ok(PolyExpr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<PolyExpr> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let t = self.peek().clone();
        match t.tok {
            Tok::Int(n) => {
                self.bump();
                let e: u32 = n.try_into().map_err(|_| Error::SyntaxError {
                    line: t.line,
                    col: t.col,
                    message: "exponent too large".into(),
                })?;
                Ok(PolyExpr::Pow(Box::new(base), e))
            }
            Tok::Minus => Err(Error::NegativeExponent { line: t.line, col: t.col }),
            _ => self.error("expected an integer exponent"),
        }
    }

    fn atom(&mut self) -> Result<PolyExpr> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Int(n) => {
                self.bump();
                if self.peek().tok != Tok::Slash {
                    return Ok(PolyExpr::Int(n));
                }
                self.bump();
                let d = self.peek().clone();
                match d.tok {
                    Tok::Int(den) if !den.is_zero() => {
                        self.bump();
                        Ok(PolyExpr::Rational(n, den))
                    }
                    Tok::Int(_) => self.error("zero denominator"),
                    _ => self.error("expected a denominator"),
                }
            }
            Tok::Ident(name) => {
                self.bump();
                self.resolve(&name, t.line, t.col)
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                if self.peek().tok != Tok::RParen {
                    return self.error("expected `)`");
                }
                self.bump();
                Ok(e)
            }
            Tok::End => self.error("unexpected end of input"),
            _ => self.error("expected a number, variable or `(`"),
        }
    }

    fn resolve(&self, name: &str, line: usize, col: usize) -> Result<PolyExpr> {
        let unknown = || Error::UnknownVariable { name: name.to_string(), line, col };
        let alias = match name {
            "X" if self.unknowns <= 3 => Some(PolyExpr::Unknown(0)),
            "Y" if self.unknowns <= 3 => Some(PolyExpr::Unknown(1)),
            "Z" if self.unknowns <= 3 => Some(PolyExpr::Unknown(2)),
            "T" if self.num_series_vars == 1 => Some(PolyExpr::SeriesVar(0)),
            _ => None,
        };
        if let Some(e) = alias {
            let ok = match e {
                PolyExpr::Unknown(i) => i < self.unknowns,
                _ => true,
            };
            return if ok { Ok(e) } else { Err(unknown()) };
        }
        let (head, digits) = name.split_at(1);
        let index: usize = digits.parse().map_err(|_| unknown())?;
        if index == 0 {
            return Err(unknown());
        }
        match head {
            "T" if index <= self.num_series_vars => Ok(PolyExpr::SeriesVar(index - 1)),
            "X" if index <= self.unknowns => Ok(PolyExpr::Unknown(index - 1)),
            _ => Err(unknown()),
        }
    }
}

/// Parses a `;`-separated list of expressions.
pub fn parse_exprs(text: &str, num_series_vars: usize, unknowns: usize) -> Result<Vec<PolyExpr>> {
    let mut p = Parser { tokens: lex(text)?, pos: 0, num_series_vars, unknowns };
    p.system()
}

/// Number of unknowns a text refers to, using the widest alias set.
pub fn infer_unknowns(text: &str, num_series_vars: usize) -> Result<usize> {
    // aliases X, Y, Z are only available for n <= 3
    let has_alias = text.split(|c: char| !c.is_ascii_alphanumeric()).any(|w| matches!(w, "X" | "Y" | "Z"));
    let exprs = parse_exprs(text, num_series_vars, if has_alias { 3 } else { 64 })?;
    let n = exprs.iter().map(PolyExpr::unknowns_used).max().unwrap_or(0).max(1);
    Ok(n)
}

/// Parses a polynomial system with coefficients in `descriptor`.
pub fn parse_poly(text: &str, num_series_vars: usize, unknowns: usize, descriptor: FieldDescriptor) -> Result<PolySystem> {
    if num_series_vars == 0 || unknowns == 0 {
        return Err(Error::BadParameters("need at least one series variable and one unknown".into()));
    }
    let exprs = parse_exprs(text, num_series_vars, unknowns)?;
    let polys = exprs
        .iter()
        .map(|e| e.to_polynomial(descriptor, num_series_vars, unknowns))
        .collect::<Result<Vec<_>>>()?;
    let source = exprs.iter().map(PolyExpr::render).collect::<Vec<_>>().join("; ");
    PolySystem::new(polys, source)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Order;

    fn q() -> FieldDescriptor {
        FieldDescriptor::Rationals
    }

    #[test]
    fn norm_form_family() {
        let sys = parse_poly("X^2 - Z*Y^2", 2, 3, q()).unwrap();
        assert_eq!(sys.source, "X1^2 - X3*X2^2");
        assert_eq!(sys.polys.len(), 1);
        let p = &sys.polys[0];
        let terms: Vec<_> = p.terms().map(|(e, c)| (e.clone(), c.to_string())).collect();
        assert_eq!(terms, vec![(vec![0, 2, 1], "-1".to_string()), (vec![2, 0, 0], "1".to_string())]);
    }

    #[test]
    fn smooth_and_family_member() {
        let sys = parse_poly("X", 1, 1, q()).unwrap();
        assert_eq!(sys.source, "X1");
        let sys = parse_poly("X^2 - (T1^2 + T2^3)*Y^2", 2, 2, q()).unwrap();
        let p = &sys.polys[0];
        let coeff: Vec<_> = p.terms().map(|(_, c)| c.to_string()).collect();
        assert_eq!(coeff, vec!["-T1^2 - T2^3", "1"]);
        let t1 = GradedSeries::variable(q(), 2, 0);
        // X = T1, Y = 1 gives -T2^3
        assert_eq!(sys.ord_at(&[t1, GradedSeries::one(q(), 2)]).unwrap(), Order::Finite(3));
    }

    #[test]
    fn rational_literals() {
        let sys = parse_poly("1/2*X - 3/4", 1, 1, q()).unwrap();
        assert_eq!(sys.source, "1/2*X1 - 3/4");
        let f3 = FieldDescriptor::prime(3).unwrap();
        let sys = parse_poly("1/2*X", 1, 1, f3).unwrap();
        let c: Vec<_> = sys.polys[0].terms().map(|(_, c)| c.to_string()).collect();
        assert_eq!(c, vec!["2"]);
        assert!(matches!(parse_poly("1/3*X", 1, 1, f3), Err(Error::NonReducibleModQ { .. })));
    }

    #[test]
    fn systems_and_aliases() {
        let sys = parse_poly("X - T; Y^2;", 1, 2, q()).unwrap();
        assert_eq!(sys.polys.len(), 2);
        assert_eq!(sys.source, "X1 - T1; X2^2");
        assert_eq!(infer_unknowns("X^2 - Z*Y^2", 2).unwrap(), 3);
        assert_eq!(infer_unknowns("X1*X4", 2).unwrap(), 4);
        assert_eq!(infer_unknowns("T1 + 1", 2).unwrap(), 1);
    }

    #[test]
    fn error_positions() {
        assert_eq!(
            parse_poly("X^2 +\n  * Y", 1, 2, q()),
            Err(Error::SyntaxError { line: 2, col: 3, message: "expected a number, variable or `(`".into() })
        );
        assert_eq!(
            parse_poly("X + W", 1, 2, q()),
            Err(Error::UnknownVariable { name: "W".into(), line: 1, col: 5 })
        );
        assert_eq!(
            parse_poly("T3*X", 2, 1, q()),
            Err(Error::UnknownVariable { name: "T3".into(), line: 1, col: 1 })
        );
        assert_eq!(parse_poly("X^-2", 1, 1, q()), Err(Error::NegativeExponent { line: 1, col: 3 }));
        assert!(matches!(parse_poly("X/Y", 1, 2, q()), Err(Error::SyntaxError { .. })));
        assert!(matches!(parse_poly("(X + 1", 1, 1, q()), Err(Error::SyntaxError { .. })));
        assert!(matches!(parse_poly("1/0", 1, 1, q()), Err(Error::SyntaxError { .. })));
        assert!(matches!(parse_poly("X $ 1", 1, 1, q()), Err(Error::SyntaxError { line: 1, col: 3, .. })));
        // Z is X3 and does not exist with two unknowns
        assert!(matches!(parse_poly("Z", 1, 2, q()), Err(Error::UnknownVariable { .. })));
    }

    #[test]
    fn render_precedence() {
        let e = parse_exprs("-(X*Y) + (X - Y) - (X + Y) + (-X)^2 + -X^2 + 1/2^3", 1, 2).unwrap();
        assert_eq!(e[0].render(), "-(X1*X2) + (X1 - X2) - (X1 + X2) + (-X1)^2 + -X1^2 + 1/2^3");
        let e = parse_exprs("X*(Y*X)", 1, 2).unwrap();
        assert_eq!(e[0].render(), "X1*(X2*X1)");
    }
}
