//! Conversion between complex form (z, zbar) and real form (u, w) with z = u + i·w.

use std::sync::Arc;

use super::{Bindings, SparsePolynomial, Var};
use crate::error::{Error, Result};
use crate::numbers::{rat, CyclotomicField, CyclotomicNumber};

/// Real part u of z = u + i·w.
pub const REAL_PART: Var = Var::Coord(1);
/// Imaginary part w of z = u + i·w.
pub const IMAG_PART: Var = Var::Coord(2);

fn imaginary_unit(field: &Arc<CyclotomicField>) -> Result<CyclotomicNumber> {
    if !field.order().is_multiple_of(4) {
        return Err(Error::domain(format!(
            "Q(zeta_{}) does not contain i",
            field.order()
        )));
    }
    Ok(CyclotomicNumber::zeta_pow(
        field,
        (field.order() / 4) as i64,
    ))
}

fn only_vars(p: &SparsePolynomial, allowed: &[Var]) -> Result<()> {
    match p.variables().into_iter().find(|v| !allowed.contains(v)) {
        Some(v) => Err(Error::domain(format!("unexpected variable {v}"))),
        None => Ok(()),
    }
}

/// Rewrites p(u, w) in terms of z, zbar inside `field` (which must contain i).
pub fn complexify(p: &SparsePolynomial, field: &Arc<CyclotomicField>) -> Result<SparsePolynomial> {
    only_vars(p, &[REAL_PART, IMAG_PART])?;
    let i = imaginary_unit(field)?;
    let half = rat(1, 2)?;
    let p = p.lift_to(field)?;
    let z = SparsePolynomial::var(field, Var::Z);
    let zb = SparsePolynomial::var(field, Var::Zbar);
    let mut b = Bindings::new();
    b.insert(REAL_PART, (&z + &zb).scale_rational(&half));
    // (z − zbar) / (2i) = −i·(z − zbar)/2
    b.insert(IMAG_PART, (&z - &zb).try_scale(&(-&i).scale(&half))?);
    p.substitute(&b)
}

/// Rewrites q(z, zbar) in terms of u, w via z = u + i·w.
pub fn realize(q: &SparsePolynomial) -> Result<SparsePolynomial> {
    only_vars(q, &[Var::Z, Var::Zbar])?;
    let field = q.field().clone();
    let i = imaginary_unit(&field)?;
    let u = SparsePolynomial::var(&field, REAL_PART);
    let iw = SparsePolynomial::var(&field, IMAG_PART).try_scale(&i)?;
    let mut b = Bindings::new();
    b.insert(Var::Z, &u + &iw);
    b.insert(Var::Zbar, &u - &iw);
    q.substitute(&b)
}
