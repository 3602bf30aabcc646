#![allow(dead_code)]

use std::sync::Arc;

use feqlab_core::numbers::{rat, totient};
use feqlab_core::poly::Monomial;
use feqlab_core::{BigRational, CyclotomicField, CyclotomicNumber, SparsePolynomial, Var};
use proptest::prelude::*;

pub fn q(p: i64, d: i64) -> BigRational {
    rat(p, d).unwrap()
}

pub fn small_rational() -> impl Strategy<Value = BigRational> {
    (-9i64..=9, 1i64..=5).prop_map(|(p, d)| q(p, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = BigRational> {
    small_rational().prop_filter("nonzero", |r| *r != q(0, 1))
}

pub fn cyclotomic(field: Arc<CyclotomicField>) -> impl Strategy<Value = CyclotomicNumber> {
    let n = totient(field.order()) as usize;
    proptest::collection::vec(small_rational(), n)
        .prop_map(move |cs| CyclotomicNumber::from_coeffs(&field, &cs))
}

/// Random polynomial with coefficients in `field`, over `vars`, each
/// exponent ≤ `max_exp`, with up to `max_terms` terms.
pub fn polynomial(
    field: Arc<CyclotomicField>,
    vars: Vec<Var>,
    max_exp: u32,
    max_terms: usize,
) -> impl Strategy<Value = SparsePolynomial> {
    let nv = vars.len();
    let term = (
        proptest::collection::vec(0..=max_exp, nv),
        cyclotomic(field.clone()),
    );
    proptest::collection::vec(term, 0..=max_terms).prop_map(move |terms| {
        let mut acc = SparsePolynomial::zero(&field);
        for (exps, c) in terms {
            let m = Monomial::from_pairs(vars.iter().copied().zip(exps));
            acc = &acc + &SparsePolynomial::term(m, c);
        }
        acc
    })
}

pub fn rational_polynomial(
    vars: Vec<Var>,
    max_exp: u32,
    max_terms: usize,
) -> impl Strategy<Value = SparsePolynomial> {
    polynomial(CyclotomicField::rational(), vars, max_exp, max_terms)
}

pub fn coords(d: u16) -> Vec<Var> {
    (1..=d).map(Var::Coord).collect()
}

pub fn monomial_poly(field: &Arc<CyclotomicField>, pairs: &[(Var, u32)]) -> SparsePolynomial {
    SparsePolynomial::term(
        Monomial::from_pairs(pairs.iter().copied()),
        CyclotomicNumber::one(field),
    )
}
