use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::qpoly::{self, QPoly};
use super::{BigInt, BigRational};
use crate::error::{Error, Result};

pub fn totient(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Coefficients of Φ_n in ascending degree, computed as
/// (xⁿ − 1) / Π_{d | n, d < n} Φ_d by exact division.
pub fn cyclotomic_polynomial(n: u32) -> Result<Vec<BigRational>> {
    if n == 0 {
        return Err(Error::domain("cyclotomic polynomial order must be >= 1"));
    }
    Ok(cyclotomic_qpoly(n))
}

fn cyclotomic_qpoly(n: u32) -> QPoly {
    let mut numer: QPoly = vec![BigRational::zero(); n as usize + 1];
    numer[0] = -BigRational::one();
    numer[n as usize] = BigRational::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let (q, r) = qpoly::divrem(&numer, &cyclotomic_qpoly(d));
        debug_assert!(r.is_empty());
        numer = q;
    }
    numer
}

/// The field Q(ζ_L) in the power basis {1, ζ, …, ζ^{φ(L)−1}}.
pub struct CyclotomicField {
    order: u32,
    degree: usize,
    /// `powers[j]` is ζ^j reduced mod Φ_L, for 0 ≤ j < L.
    powers: Vec<Vec<BigInt>>,
}

impl CyclotomicField {
    pub fn new(order: u32) -> Result<Arc<Self>> {
        if order == 0 {
            return Err(Error::domain("cyclotomic order must be >= 1"));
        }
        static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CyclotomicField>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(f) = cache.lock().expect("field cache poisoned").get(&order) {
            return Ok(f.clone());
        }
        let field = Self::build(order);
        cache
            .lock()
            .expect("field cache poisoned")
            .insert(order, field.clone());
        Ok(field)
    }

    fn build(order: u32) -> Arc<Self> {
        let modulus = cyclotomic_qpoly(order);
        let degree = modulus.len() - 1;
        let int_modulus: Vec<BigInt> = modulus.iter().map(|c| c.to_integer()).collect();
        let mut powers = Vec::with_capacity(order as usize);
        let mut current = vec![BigInt::zero(); degree];
        current[0] = BigInt::one();
        for _ in 0..order {
            powers.push(current.clone());
            // multiply by ζ, then fold the overflow back using the monic modulus
            let top = current[degree - 1].clone();
            for j in (1..degree).rev() {
                current[j] = current[j - 1].clone();
            }
            current[0] = BigInt::zero();
            if !top.is_zero() {
                for j in 0..degree {
                    current[j] -= &top * &int_modulus[j];
                }
            }
        }
        Arc::new(CyclotomicField {
            order,
            degree,
            powers,
        })
    }

    /// The rational field, Q(ζ₁).
    pub fn rational() -> Arc<Self> {
        static RATIONAL: OnceLock<Arc<CyclotomicField>> = OnceLock::new();
        RATIONAL
            .get_or_init(|| Self::new(1).expect("order 1 is valid"))
            .clone()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// φ(L), the dimension over Q.
    pub fn degree(&self) -> usize {
        self.degree
    }
}

impl fmt::Debug for CyclotomicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.order)
    }
}

/// Element of Q(ζ_L), canonically reduced modulo Φ_L.
#[derive(Clone)]
pub struct CyclotomicNumber {
    field: Arc<CyclotomicField>,
    coeffs: Vec<BigRational>,
}

pub fn zeta_pow(order: u32, k: i64) -> Result<CyclotomicNumber> {
    Ok(CyclotomicNumber::zeta_pow(&CyclotomicField::new(order)?, k))
}

/// Σ_{k<N} θ^{kt} for θ a primitive N-th root of unity inside Q(ζ_L), L = lcm(2N, 4).
pub fn root_power_sum(n: u32, t: u64) -> Result<CyclotomicNumber> {
    if n == 0 {
        return Err(Error::domain("N must be >= 1"));
    }
    let order = (2 * n).lcm(&4);
    let field = CyclotomicField::new(order)?;
    let step = (order / n) as i64;
    let theta_t = CyclotomicNumber::zeta_pow(&field, step * (t % order as u64) as i64);
    let mut acc = CyclotomicNumber::zero(&field);
    let mut power = CyclotomicNumber::one(&field);
    for _ in 0..n {
        acc = &acc + &power;
        power = &power * &theta_t;
    }
    Ok(acc)
}

fn resolve_field(a: &CyclotomicNumber, b: &CyclotomicNumber) -> Result<Arc<CyclotomicField>> {
    if a.field.order == b.field.order {
        Ok(a.field.clone())
    } else if a.field.degree == 1 {
        Ok(b.field.clone())
    } else if b.field.degree == 1 {
        Ok(a.field.clone())
    } else {
        Err(Error::domain(format!(
            "incompatible cyclotomic orders {} and {}",
            a.field.order, b.field.order
        )))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl CyclotomicNumber {
    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        CyclotomicNumber {
            field: field.clone(),
            coeffs: vec![BigRational::zero(); field.degree],
        }
    }

    pub fn one(field: &Arc<CyclotomicField>) -> Self {
        Self::from_rational(field, BigRational::one())
    }

    pub fn from_rational(field: &Arc<CyclotomicField>, value: BigRational) -> Self {
        let mut out = Self::zero(field);
        out.coeffs[0] = value;
        out
    }

    pub fn from_integer(field: &Arc<CyclotomicField>, value: i64) -> Self {
        Self::from_rational(field, BigRational::from_integer(BigInt::from(value)))
    }

    /// A rational number in Q = Q(ζ₁).
    pub fn rational(value: BigRational) -> Self {
        Self::from_rational(&CyclotomicField::rational(), value)
    }

    /// Builds an element from coefficients on the power basis; reduces when
    /// more than φ(L) coefficients are supplied.
    pub fn from_coeffs(field: &Arc<CyclotomicField>, coeffs: &[BigRational]) -> Self {
        let mut out = Self::zero(field);
        for (j, c) in coeffs.iter().enumerate() {
            out.add_scaled_power(j, c);
        }
        out
    }

    /// ζ_L^k, any integer k.
    pub fn zeta_pow(field: &Arc<CyclotomicField>, k: i64) -> Self {
        let j = k.rem_euclid(field.order as i64) as usize;
        CyclotomicNumber {
            field: field.clone(),
            coeffs: field.powers[j]
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        }
    }

    fn add_scaled_power(&mut self, j: usize, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let row = &self.field.powers[j % self.field.order as usize];
        for (slot, p) in self.coeffs.iter_mut().zip(row) {
            if !p.is_zero() {
                *slot += c * BigRational::from_integer(p.clone());
            }
        }
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    /// Coefficients on the power basis, length φ(L).
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Re-expresses the value in Q(ζ_M); requires L | M unless the value is rational.
    pub fn lift_to(&self, field: &Arc<CyclotomicField>) -> Result<Self> {
        if field.order == self.field.order {
            return Ok(self.clone());
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(field, r.clone()));
        }
        if !field.order.is_multiple_of(self.field.order) {
            return Err(Error::domain(format!(
                "cannot embed Q(zeta_{}) into Q(zeta_{})",
                self.field.order, field.order
            )));
        }
        let stride = (field.order / self.field.order) as usize;
        let mut out = Self::zero(field);
        for (j, c) in self.coeffs.iter().enumerate() {
            out.add_scaled_power(j * stride, c);
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let field = resolve_field(self, other)?;
        let a = self.lift_to(&field)?;
        let b = other.lift_to(&field)?;
        Ok(CyclotomicNumber {
            field,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let field = resolve_field(self, other)?;
        if self.field.degree == 1 || other.field.degree == 1 {
            let (scalar, vector) = if self.field.degree == 1 {
                (&self.coeffs[0], other.lift_to(&field)?)
            } else {
                (&other.coeffs[0], self.lift_to(&field)?)
            };
            return Ok(vector.scale(scalar));
        }
        // integer convolution over a common denominator, then one normalisation per slot
        let (ia, da) = integer_form(&self.coeffs);
        let (ib, db) = integer_form(&other.coeffs);
        let d = field.degree;
        let mut wide = vec![BigInt::zero(); 2 * d - 1];
        for (i, x) in ia.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in ib.iter().enumerate() {
                if !y.is_zero() {
                    wide[i + j] += x * y;
                }
            }
        }
        let mut acc: Vec<BigInt> = wide[..d].to_vec();
        for (j, c) in wide.iter().enumerate().skip(d) {
            if c.is_zero() {
                continue;
            }
            for (slot, p) in acc.iter_mut().zip(&field.powers[j % field.order as usize]) {
                if !p.is_zero() {
                    *slot += c * p;
                }
            }
        }
        let denom = da * db;
        Ok(CyclotomicNumber {
            field,
            coeffs: acc
                .into_iter()
                .map(|n| BigRational::new(n, denom.clone()))
                .collect(),
        })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inv()?)
    }

    pub fn arith(&self, other: &Self, op: ArithOp) -> Result<Self> {
        match op {
            ArithOp::Add => self.try_add(other),
            ArithOp::Sub => self.try_sub(other),
            ArithOp::Mul => self.try_mul(other),
            ArithOp::Div => self.try_div(other),
        }
    }

    /// Multiplicative inverse: the product of the other Galois conjugates
    /// divided by the norm, which is rational.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::domain("division by zero"));
        }
        if self.field.degree == 1 {
            return Ok(Self::from_rational(&self.field, self.coeffs[0].recip()));
        }
        let order = self.field.order;
        let mut others = Self::one(&self.field);
        for k in (2..order).filter(|k| k.gcd(&order) == 1) {
            others = &others * &self.galois(k);
        }
        let norm = &others * self;
        let norm = norm.as_rational().expect("field norm is rational").clone();
        Ok(others.scale(&(BigRational::one() / norm)))
    }

    /// Image under the automorphism ζ ↦ ζ^k, gcd(k, L) = 1.
    fn galois(&self, k: u32) -> Self {
        let order = self.field.order as usize;
        let (ints, denom) = integer_form(&self.coeffs);
        let mut acc = vec![BigInt::zero(); self.field.degree];
        for (j, c) in ints.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, p) in acc
                .iter_mut()
                .zip(&self.field.powers[j * k as usize % order])
            {
                if !p.is_zero() {
                    *slot += c * p;
                }
            }
        }
        CyclotomicNumber {
            field: self.field.clone(),
            coeffs: acc
                .into_iter()
                .map(|n| BigRational::new(n, denom.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        CyclotomicNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
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

    /// Image under ζ ↦ ζ⁻¹ (complex conjugation in every embedding).
    pub fn conj(&self) -> Self {
        self.galois(self.field.order - 1)
    }
}

fn integer_form(coeffs: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let denom = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints = coeffs
        .iter()
        .map(|c| c.numer() * (&denom / c.denom()))
        .collect();
    (ints, denom)
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.coeffs == other.coeffs
    }
}

impl Eq for CyclotomicNumber {}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc{}[", self.field.order)?;
        for (j, c) in self.coeffs.iter().enumerate() {
            if j > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}

// Operator forms panic on incompatible orders; use the `try_*` methods at API boundaries.
macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&CyclotomicNumber> for &CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
                self.$checked(rhs).expect("cyclotomic order mismatch")
            }
        }
        impl $trait<CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                (&self).$checked(&rhs).expect("cyclotomic order mismatch")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl CyclotomicNumber {
    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn max_abs_coeff(&self) -> BigRational {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigRational::zero)
    }
}
