//! Text grammar for polynomial expressions and the canonical formatter.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := atom ('^' nonneg-integer)?
//! atom     := rational | 'i' | 'zeta' '(' integer ')' | variable | '(' expr ')' | '-' factor
//! rational := integer ('/' positive-integer)?
//! ```
//!
//! Complex regime variables: `z zbar x xbar y ybar`. Real regime variables:
//! `x1..xd`, `h1..hd`, `h[r]1..h[r]d`. Whitespace is insignificant and
//! implicit multiplication is not accepted.

mod format;
mod lexer;

use num_integer::Integer;
use num_traits::Zero;

pub use format::{format, format_coefficient};

use crate::error::{Error, Result};
use crate::numbers::{BigInt, BigRational, CyclotomicField, CyclotomicNumber};
use crate::poly::{SparsePolynomial, Var};
use lexer::{Token, TokenKind};

/// Largest accepted exponent.
pub const MAX_EXPONENT: u32 = 1 << 16;
/// Largest accepted `zeta(L)` order.
pub const MAX_ZETA_ORDER: u32 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Complex,
    Real { d: u16 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExprSource {
    pub text: String,
    pub regime: Regime,
    /// Coefficient field order to parse into; defaults to the smallest order
    /// containing every `i` / `zeta(L)` literal.
    pub order: Option<u32>,
}

impl ExprSource {
    pub fn complex(text: impl Into<String>) -> Self {
        ExprSource {
            text: text.into(),
            regime: Regime::Complex,
            order: None,
        }
    }

    pub fn real(text: impl Into<String>, d: u16) -> Self {
        ExprSource {
            text: text.into(),
            regime: Regime::Real { d },
            order: None,
        }
    }

    pub fn with_order(mut self, order: u32) -> Self {
        self.order = Some(order);
        self
    }
}

#[derive(Debug, Clone)]
enum Expr {
    Rational(BigRational),
    Zeta(u32),
    Var(Var),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    fn zeta_order(&self) -> u32 {
        match self {
            Expr::Rational(_) | Expr::Var(_) => 1,
            Expr::Zeta(l) => *l,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.zeta_order().lcm(&b.zeta_order())
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.zeta_order(),
        }
    }

    fn eval(&self, field: &std::sync::Arc<CyclotomicField>) -> SparsePolynomial {
        match self {
            Expr::Rational(r) => SparsePolynomial::rational_constant(field, r.clone()),
            Expr::Zeta(l) => {
                let stride = (field.order() / l) as i64;
                SparsePolynomial::constant(CyclotomicNumber::zeta_pow(field, stride))
            }
            Expr::Var(v) => SparsePolynomial::var(field, *v),
            Expr::Add(a, b) => &a.eval(field) + &b.eval(field),
            Expr::Sub(a, b) => &a.eval(field) - &b.eval(field),
            Expr::Mul(a, b) => &a.eval(field) * &b.eval(field),
            Expr::Neg(a) => -a.eval(field),
            Expr::Pow(a, e) => a.eval(field).pow(*e),
        }
    }
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    regime: Regime,
    src: &'a str,
}

fn syntax(offset: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        offset,
        message: message.into(),
    }
}

impl<'a> Parser<'a> {
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

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek().kind {
                TokenKind::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                TokenKind::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while self.peek().kind == TokenKind::Star {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek().kind != TokenKind::Caret {
            return Ok(base);
        }
        self.bump();
        let tok = self.bump();
        match tok.kind {
            TokenKind::Int(n) => {
                let e = u32::try_from(&n)
                    .ok()
                    .filter(|&e| e <= MAX_EXPONENT)
                    .ok_or_else(|| {
                        syntax(tok.offset, format!("exponent exceeds {MAX_EXPONENT}"))
                    })?;
                Ok(Expr::Pow(Box::new(base), e))
            }
            _ => Err(syntax(
                tok.offset,
                "expected a non-negative integer exponent",
            )),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let tok = self.bump();
        match tok.kind {
            TokenKind::Int(n) => {
                if self.peek().kind != TokenKind::Slash {
                    return Ok(Expr::Rational(BigRational::from_integer(n)));
                }
                self.bump();
                let den = self.bump();
                match den.kind {
                    TokenKind::Int(d) if !d.is_zero() => Ok(Expr::Rational(BigRational::new(n, d))),
                    _ => Err(syntax(
                        den.offset,
                        "expected a positive integer denominator",
                    )),
                }
            }
            TokenKind::Minus => Ok(Expr::Neg(Box::new(self.factor()?))),
            TokenKind::LParen => {
                let inner = self.expr()?;
                let close = self.bump();
                if close.kind != TokenKind::RParen {
                    return Err(syntax(close.offset, "expected ')'"));
                }
                Ok(inner)
            }
            TokenKind::Ident(name) => self.identifier(&name, tok.offset),
            TokenKind::End => Err(syntax(tok.offset, "unexpected end of input")),
            _ => Err(syntax(
                tok.offset,
                format!("unexpected '{}'", &self.src[tok.offset..tok.end]),
            )),
        }
    }

    fn identifier(&mut self, name: &str, offset: usize) -> Result<Expr> {
        let complex = self.regime == Regime::Complex;
        match name {
            "i" if complex => return Ok(Expr::Zeta(4)),
            "i" => return Err(syntax(offset, "'i' is not allowed in the real regime")),
            "zeta" if complex => return self.zeta(),
            "zeta" => return Err(syntax(offset, "'zeta' is not allowed in the real regime")),
            _ => {}
        }
        let var = match (self.regime, name) {
            (Regime::Complex, "z") => Some(Var::Z),
            (Regime::Complex, "zbar") => Some(Var::Zbar),
            (Regime::Complex, "x") => Some(Var::X),
            (Regime::Complex, "xbar") => Some(Var::Xbar),
            (Regime::Complex, "y") => Some(Var::Y),
            (Regime::Complex, "ybar") => Some(Var::Ybar),
            (Regime::Real { d }, _) => real_variable(name)
                .filter(|v| v.coordinate_index().is_some_and(|i| i >= 1 && i <= d)),
            _ => None,
        };
        var.map(Expr::Var)
            .ok_or_else(|| syntax(offset, format!("unknown variable '{name}'")))
    }

    fn zeta(&mut self) -> Result<Expr> {
        let open = self.bump();
        if open.kind != TokenKind::LParen {
            return Err(syntax(open.offset, "expected '(' after zeta"));
        }
        let tok = self.bump();
        let order = match tok.kind {
            TokenKind::Int(n) => u32::try_from(&n)
                .ok()
                .filter(|&l| (1..=MAX_ZETA_ORDER).contains(&l))
                .ok_or_else(|| {
                    syntax(
                        tok.offset,
                        format!("zeta order must be in 1..={MAX_ZETA_ORDER}"),
                    )
                })?,
            _ => return Err(syntax(tok.offset, "expected zeta order")),
        };
        let close = self.bump();
        if close.kind != TokenKind::RParen {
            return Err(syntax(close.offset, "expected ')'"));
        }
        Ok(Expr::Zeta(order))
    }
}

fn real_variable(name: &str) -> Option<Var> {
    let digits = |s: &str| -> Option<u16> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) || s.starts_with('0') {
            return None;
        }
        s.parse().ok()
    };
    if let Some(rest) = name.strip_prefix('x') {
        return digits(rest).map(Var::Coord);
    }
    let rest = name.strip_prefix('h')?;
    if let Some(fam) = rest.strip_prefix('[') {
        let (r, i) = fam.split_once(']')?;
        return Some(Var::FamilyStep(digits(r)?, digits(i)?));
    }
    digits(rest).map(Var::Step)
}

/// Parses an expression into a canonical polynomial.
pub fn parse(src: &ExprSource) -> Result<SparsePolynomial> {
    let tokens = lexer::tokenize(&src.text)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        regime: src.regime,
        src: &src.text,
    };
    let ast = p.expr()?;
    let tail = p.peek().clone();
    if tail.kind != TokenKind::End {
        return Err(syntax(
            tail.offset,
            format!("unexpected '{}'", &src.text[tail.offset..tail.end]),
        ));
    }
    let natural = ast.zeta_order();
    let order = src.order.unwrap_or(natural);
    if order == 0 || !order.is_multiple_of(natural) {
        return Err(Error::domain(format!(
            "literals need Q(zeta_{natural}), which does not embed in Q(zeta_{order})"
        )));
    }
    let field = CyclotomicField::new(order)?;
    Ok(ast.eval(&field))
}

/// Parses a rational literal `p` or `p/q` (used for CLI vectors).
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::domain(format!("not a rational: '{t}'")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| Error::domain(format!("not a rational: '{t}'")))?;
    if d <= BigInt::zero() {
        return Err(Error::domain(format!(
            "denominator must be positive in '{t}'"
        )));
    }
    Ok(BigRational::new(n, d))
}
