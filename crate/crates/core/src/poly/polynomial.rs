use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{Monomial, Var};
use crate::error::{Error, Result};
use crate::numbers::{BigInt, BigRational, CyclotomicField, CyclotomicNumber};

/// Simultaneous substitution map.
pub type Bindings = BTreeMap<Var, SparsePolynomial>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoeffKind {
    Rational,
    Cyclotomic(u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Degrees {
    /// Total degree; −1 for the zero polynomial.
    pub total: i64,
    pub per_var: BTreeMap<Var, u32>,
}

/// Polynomial in canonical form: no zero coefficients are stored and every
/// coefficient lives in `field`.
#[derive(Clone)]
pub struct SparsePolynomial {
    field: Arc<CyclotomicField>,
    terms: BTreeMap<Monomial, CyclotomicNumber>,
}

impl SparsePolynomial {
    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        SparsePolynomial {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// The zero polynomial with rational coefficients.
    pub fn rational_zero() -> Self {
        Self::zero(&CyclotomicField::rational())
    }

    pub fn constant(c: CyclotomicNumber) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn rational_constant(field: &Arc<CyclotomicField>, r: BigRational) -> Self {
        Self::constant(CyclotomicNumber::from_rational(field, r))
    }

    pub fn integer(field: &Arc<CyclotomicField>, n: i64) -> Self {
        Self::constant(CyclotomicNumber::from_integer(field, n))
    }

    pub fn var(field: &Arc<CyclotomicField>, v: Var) -> Self {
        Self::term(Monomial::var(v), CyclotomicNumber::one(field))
    }

    pub fn term(m: Monomial, c: CyclotomicNumber) -> Self {
        let mut out = Self::zero(c.field());
        if !c.is_zero() {
            out.terms.insert(m, c);
        }
        out
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn order(&self) -> u32 {
        self.field.order()
    }

    pub fn kind(&self) -> CoeffKind {
        if self.field.order() == 1 {
            CoeffKind::Rational
        } else {
            CoeffKind::Cyclotomic(self.field.order())
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &CyclotomicNumber)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> CyclotomicNumber {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| CyclotomicNumber::zero(&self.field))
    }

    /// Constant value, if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<CyclotomicNumber> {
        match self.terms.len() {
            0 => Some(CyclotomicNumber::zero(&self.field)),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.pairs().iter().map(|&(v, _)| v))
            .collect()
    }

    fn insert_add(&mut self, m: Monomial, c: CyclotomicNumber) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = slot.get() + &c;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    fn check_kind(&self, other: &Self) -> Result<()> {
        if self.field.order() == other.field.order() {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "coefficient kind mismatch: {:?} vs {:?}",
                self.kind(),
                other.kind()
            )))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_kind(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_kind(other)?;
        let mut out = Self::zero(&self.field);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert_add(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    /// Multiplies by a scalar; the scalar must be rational or live in this field.
    pub fn try_scale(&self, c: &CyclotomicNumber) -> Result<Self> {
        let c = if c.order() == self.order() {
            c.clone()
        } else if let Some(r) = c.as_rational() {
            CyclotomicNumber::from_rational(&self.field, r.clone())
        } else {
            return Err(Error::domain(format!(
                "scalar of order {} does not match coefficient order {}",
                c.order(),
                self.order()
            )));
        };
        let mut out = Self::zero(&self.field);
        if c.is_zero() {
            return Ok(out);
        }
        for (m, v) in &self.terms {
            out.terms.insert(m.clone(), v * &c);
        }
        Ok(out)
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        let mut out = Self::zero(&self.field);
        if r.is_zero() {
            return out;
        }
        for (m, v) in &self.terms {
            out.terms.insert(m.clone(), v.scale(r));
        }
        out
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::integer(&self.field, 1);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Re-expresses the coefficients in `field`.
    pub fn lift_to(&self, field: &Arc<CyclotomicField>) -> Result<Self> {
        if field.order() == self.order() {
            return Ok(self.clone());
        }
        let mut out = Self::zero(field);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c.lift_to(field)?);
        }
        Ok(out)
    }

    /// Simultaneous substitution; unbound variables pass through.
    pub fn substitute(&self, bindings: &Bindings) -> Result<Self> {
        for b in bindings.values() {
            self.check_kind(b)?;
        }
        let mut powers: BTreeMap<Var, Vec<SparsePolynomial>> = BTreeMap::new();
        let mut out = Self::zero(&self.field);
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut product = Self::constant(c.clone());
            for &(v, e) in m.pairs() {
                match bindings.get(&v) {
                    Some(target) => {
                        let cache = powers
                            .entry(v)
                            .or_insert_with(|| vec![Self::integer(&self.field, 1)]);
                        while cache.len() <= e as usize {
                            let next = cache.last().unwrap() * target;
                            cache.push(next);
                        }
                        product = &product * &cache[e as usize];
                    }
                    None => kept.push((v, e)),
                }
            }
            let rest = Monomial::from_pairs(kept);
            for (pm, pc) in product.terms {
                out.insert_add(pm.mul(&rest), pc);
            }
        }
        Ok(out)
    }

    /// Conjugates coefficients and swaps each variable with its conjugate partner.
    pub fn conj(&self) -> Self {
        let mut out = Self::zero(&self.field);
        for (m, c) in &self.terms {
            out.insert_add(m.map_vars(Var::conjugate), c.conj());
        }
        out
    }

    /// Replaces every variable by another variable (a renaming).
    pub fn rename(&self, f: impl Fn(Var) -> Var) -> Self {
        let mut out = Self::zero(&self.field);
        for (m, c) in &self.terms {
            out.insert_add(m.map_vars(&f), c.clone());
        }
        out
    }

    pub fn degrees(&self) -> Degrees {
        let mut per_var = BTreeMap::new();
        let mut total = -1i64;
        for m in self.terms.keys() {
            total = total.max(m.total_degree() as i64);
            for &(v, e) in m.pairs() {
                let slot = per_var.entry(v).or_insert(0);
                *slot = (*slot).max(e);
            }
        }
        Degrees { total, per_var }
    }

    pub fn total_degree(&self) -> i64 {
        self.degrees().total
    }

    pub fn differentiate(&self, v: Var) -> Self {
        let mut out = Self::zero(&self.field);
        for (m, c) in &self.terms {
            if let Some((e, lowered)) = m.lower(v) {
                out.insert_add(
                    lowered,
                    c.scale(&BigRational::from_integer(BigInt::from(e))),
                );
            }
        }
        out
    }

    /// ∂²/∂u² + ∂²/∂w².
    pub fn laplacian(&self, u: Var, w: Var) -> Self {
        let uu = self.differentiate(u).differentiate(u);
        let ww = self.differentiate(w).differentiate(w);
        &uu + &ww
    }

    /// Exact value at a point; every variable of `self` must be assigned.
    pub fn evaluate(
        &self,
        assignment: &BTreeMap<Var, CyclotomicNumber>,
    ) -> Result<CyclotomicNumber> {
        let mut acc = CyclotomicNumber::zero(&self.field);
        let mut cache: BTreeMap<(Var, u32), CyclotomicNumber> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut value = c.clone();
            for &(v, e) in m.pairs() {
                let base = assignment
                    .get(&v)
                    .ok_or_else(|| Error::domain(format!("no value bound for variable {v}")))?;
                let p = match cache.get(&(v, e)) {
                    Some(p) => p.clone(),
                    None => {
                        let p = base.pow(e);
                        cache.insert((v, e), p.clone());
                        p
                    }
                };
                value = value.try_mul(&p)?;
            }
            acc = acc.try_add(&value)?;
        }
        Ok(acc)
    }
}

impl PartialEq for SparsePolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.field.order() == other.field.order() && self.terms == other.terms
    }
}

impl Eq for SparsePolynomial {}

impl std::fmt::Debug for SparsePolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Poly[{}](", self.order())?;
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c:?}*{m}")?;
        }
        write!(f, ")")
    }
}

impl Neg for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn neg(self) -> SparsePolynomial {
        SparsePolynomial {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for SparsePolynomial {
    type Output = SparsePolynomial;
    fn neg(self) -> SparsePolynomial {
        -&self
    }
}

// Panicking operator forms for internal use where kinds are known to agree.
macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&SparsePolynomial> for &SparsePolynomial {
            type Output = SparsePolynomial;
            fn $method(self, rhs: &SparsePolynomial) -> SparsePolynomial {
                self.$checked(rhs).expect("coefficient kind mismatch")
            }
        }
        impl $trait<SparsePolynomial> for SparsePolynomial {
            type Output = SparsePolynomial;
            fn $method(self, rhs: SparsePolynomial) -> SparsePolynomial {
                (&self).$checked(&rhs).expect("coefficient kind mismatch")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
