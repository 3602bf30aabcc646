use num_traits::{One, Zero};

use crate::numbers::{BigRational, CyclotomicNumber};
use crate::poly::{Monomial, SparsePolynomial};

fn rational_text(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `r·atom` with unit coefficients elided; an empty atom means a bare number.
fn scaled(r: &BigRational, atom: &str) -> String {
    if atom.is_empty() {
        rational_text(r)
    } else if r.is_one() {
        atom.to_string()
    } else if (-r).is_one() {
        format!("-{atom}")
    } else {
        format!("{}*{atom}", rational_text(r))
    }
}

fn join_signed(pieces: impl IntoIterator<Item = String>) -> String {
    let mut out = String::new();
    for (k, piece) in pieces.into_iter().enumerate() {
        if k == 0 {
            out.push_str(&piece);
        } else if let Some(rest) = piece.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&piece);
        }
    }
    out
}

/// Text of a field element: plain rationals for L ≤ 2, `a + b*i` for L = 4,
/// and `zeta(L)^k` atoms otherwise.
pub fn format_coefficient(c: &CyclotomicNumber) -> String {
    if let Some(r) = c.as_rational() {
        return rational_text(r);
    }
    let order = c.order();
    let pieces = c
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, r)| !r.is_zero())
        .map(|(j, r)| {
            let atom = match (order, j) {
                (_, 0) => String::new(),
                (4, 1) => "i".to_string(),
                (_, 1) => format!("zeta({order})"),
                (_, j) => format!("zeta({order})^{j}"),
            };
            scaled(r, &atom)
        });
    join_signed(pieces)
}

fn term_text(m: &Monomial, c: &CyclotomicNumber) -> String {
    let atom = if m.is_one() {
        String::new()
    } else {
        m.to_string()
    };
    match c.as_rational() {
        Some(r) => scaled(r, &atom),
        None if atom.is_empty() => format_coefficient(c),
        None => format!("({})*{atom}", format_coefficient(c)),
    }
}

/// Canonical text: terms by descending total degree, then by the global
/// variable order. Parsing the result (at the same coefficient order)
/// reproduces the polynomial.
pub fn format(p: &SparsePolynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut terms: Vec<(&Monomial, &CyclotomicNumber)> = p.terms().collect();
    terms.sort_by(|a, b| a.0.display_cmp(b.0));
    join_signed(terms.into_iter().map(|(m, c)| term_text(m, c)))
}
