//! Linear operators of the mean-value and difference equations, acting on
//! polynomials symbolically.
//!
//! Complex-form operators take `f(z, zbar)` and return a polynomial in
//! `x, xbar, y, ybar`; real-form operators act on `x1..xd`, with symbolic
//! steps introduced as fresh variables so that "for all h" becomes a
//! polynomial identity.

use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numbers::{binomial, BigInt, BigRational, CyclotomicField, CyclotomicNumber};
use crate::poly::{Bindings, SparsePolynomial, Var};

/// Order N of the mean, dimension d, and the ambient field Q(ζ_L), L = lcm(2N, 4).
#[derive(Debug, Clone)]
pub struct EquationParams {
    n: u32,
    d: u32,
    field: Arc<CyclotomicField>,
}

impl EquationParams {
    pub fn new(n: u32, d: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("N must be >= 1"));
        }
        if d == 0 {
            return Err(Error::domain("d must be >= 1"));
        }
        let order = (2 * n).lcm(&4);
        Ok(EquationParams {
            n,
            d,
            field: CyclotomicField::new(order)?,
        })
    }

    /// Parameters for the complex-form equations, where d is irrelevant.
    pub fn complex(n: u32) -> Result<Self> {
        Self::new(n, 1)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn order(&self) -> u32 {
        self.field.order()
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    /// θ^k with θ = ζ_L^{L/N}, a primitive N-th root of unity.
    pub fn theta_pow(&self, k: i64) -> CyclotomicNumber {
        CyclotomicNumber::zeta_pow(&self.field, k * (self.order() / self.n) as i64)
    }

    /// η^k with η = ζ_L^{L/(2N)}, so η² = θ and η^N = −1.
    pub fn eta_pow(&self, k: i64) -> CyclotomicNumber {
        CyclotomicNumber::zeta_pow(&self.field, k * (self.order() / (2 * self.n)) as i64)
    }

    pub fn imaginary_unit(&self) -> CyclotomicNumber {
        CyclotomicNumber::zeta_pow(&self.field, (self.order() / 4) as i64)
    }

    fn var(&self, v: Var) -> SparsePolynomial {
        SparsePolynomial::var(&self.field, v)
    }
}

/// Checks that `f` is in z, zbar only and moves it into the ambient field.
fn complex_input(f: &SparsePolynomial, params: &EquationParams) -> Result<SparsePolynomial> {
    if let Some(v) = f
        .variables()
        .into_iter()
        .find(|v| !matches!(v, Var::Z | Var::Zbar))
    {
        return Err(Error::domain(format!(
            "expected a polynomial in z, zbar; found {v}"
        )));
    }
    f.lift_to(params.field())
}

/// H_y(f)(x) = (1/N)·Σ_{k<N} f(x + θᵏ·y).
pub fn knw_average(f: &SparsePolynomial, params: &EquationParams) -> Result<SparsePolynomial> {
    let f = complex_input(f, params)?;
    let (x, xb, y, yb) = (
        params.var(Var::X),
        params.var(Var::Xbar),
        params.var(Var::Y),
        params.var(Var::Ybar),
    );
    let mut acc = SparsePolynomial::zero(params.field());
    for k in 0..params.n() as i64 {
        let mut b = Bindings::new();
        b.insert(Var::Z, &x + &y.try_scale(&params.theta_pow(k))?);
        b.insert(Var::Zbar, &xb + &yb.try_scale(&params.theta_pow(-k))?);
        acc = &acc + &f.substitute(&b)?;
    }
    Ok(acc.scale_rational(&BigRational::new(BigInt::one(), BigInt::from(params.n()))))
}

/// Rescales y ↦ c·y (and ybar ↦ conj(c)·ybar) in an averaged polynomial.
pub fn scale_y(p: &SparsePolynomial, c: &CyclotomicNumber) -> Result<SparsePolynomial> {
    let field = p.field();
    let mut b = Bindings::new();
    b.insert(Var::Y, SparsePolynomial::var(field, Var::Y).try_scale(c)?);
    b.insert(
        Var::Ybar,
        SparsePolynomial::var(field, Var::Ybar).try_scale(&c.conj())?,
    );
    p.substitute(&b)
}

/// L_y(f) = H_y(f) − H_{ηy}(f); zero exactly when f solves the Haruki equation.
pub fn haruki_defect(f: &SparsePolynomial, params: &EquationParams) -> Result<SparsePolynomial> {
    let avg = knw_average(f, params)?;
    let rotated = scale_y(&avg, &params.eta_pow(1))?;
    avg.try_sub(&rotated)
}

/// H_y(f)(x) − f(x); zero exactly when f solves the KNW mean-value equation.
pub fn knw_defect(f: &SparsePolynomial, params: &EquationParams) -> Result<SparsePolynomial> {
    let lifted = complex_input(f, params)?;
    let at_x = lifted.rename(|v| match v {
        Var::Z => Var::X,
        Var::Zbar => Var::Xbar,
        other => other,
    });
    knw_average(f, params)?.try_sub(&at_x)
}

/// T_{a,b}(f)(z) = f(a·z + b), with zbar ↦ conj(a)·zbar + conj(b).
pub fn affine_transform(
    f: &SparsePolynomial,
    a: &CyclotomicNumber,
    b: &CyclotomicNumber,
) -> Result<SparsePolynomial> {
    let field = common_field(&[f.field(), a.field(), b.field()])?;
    let f = f.lift_to(&field)?;
    let (a, b) = (a.lift_to(&field)?, b.lift_to(&field)?);
    let z = SparsePolynomial::var(&field, Var::Z);
    let zb = SparsePolynomial::var(&field, Var::Zbar);
    let mut bind = Bindings::new();
    bind.insert(
        Var::Z,
        &z.try_scale(&a)? + &SparsePolynomial::constant(b.clone()),
    );
    bind.insert(
        Var::Zbar,
        &zb.try_scale(&a.conj())? + &SparsePolynomial::constant(b.conj()),
    );
    f.substitute(&bind)
}

/// Picks the single non-rational field among the inputs; rational ones embed.
fn common_field(fields: &[&Arc<CyclotomicField>]) -> Result<Arc<CyclotomicField>> {
    let mut chosen: Option<&Arc<CyclotomicField>> = None;
    for &f in fields {
        if f.degree() == 1 {
            continue;
        }
        match chosen {
            Some(c) if c.order() != f.order() => {
                return Err(Error::domain(format!(
                    "incompatible cyclotomic orders {} and {}",
                    c.order(),
                    f.order()
                )))
            }
            _ => chosen = Some(f),
        }
    }
    Ok(chosen.cloned().unwrap_or_else(|| fields[0].clone()))
}

fn max_coordinate(f: &SparsePolynomial) -> u16 {
    f.variables()
        .into_iter()
        .filter_map(|v| match v {
            Var::Coord(i) => Some(i),
            _ => None,
        })
        .max()
        .unwrap_or(0)
}

/// S_{a,b}(f)(x) = f(a·x + b) with the componentwise product a·x.
pub fn real_affine_transform(
    f: &SparsePolynomial,
    a: &[BigRational],
    b: &[BigRational],
) -> Result<SparsePolynomial> {
    if a.len() != b.len() {
        return Err(Error::domain(format!(
            "vector length mismatch: a has {}, b has {}",
            a.len(),
            b.len()
        )));
    }
    if (max_coordinate(f) as usize) > a.len() {
        return Err(Error::domain(format!(
            "polynomial uses x{} but vectors have length {}",
            max_coordinate(f),
            a.len()
        )));
    }
    let field = f.field();
    let mut bind = Bindings::new();
    for (k, (ak, bk)) in a.iter().zip(b).enumerate() {
        let xi = SparsePolynomial::var(field, Var::Coord(k as u16 + 1));
        bind.insert(
            Var::Coord(k as u16 + 1),
            &xi.scale_rational(ak) + &SparsePolynomial::rational_constant(field, bk.clone()),
        );
    }
    f.substitute(&bind)
}

/// Step of a difference operator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    /// Symbolic step h = (h1, …, hd).
    Symbolic,
    /// Symbolic step from the indexed family h[r] = (h[r]1, …, h[r]d).
    Family(u16),
    /// Concrete rational vector.
    Concrete(Vec<BigRational>),
}

impl Step {
    fn component(&self, field: &Arc<CyclotomicField>, i: u16) -> Result<SparsePolynomial> {
        Ok(match self {
            Step::Symbolic => SparsePolynomial::var(field, Var::Step(i)),
            Step::Family(r) => SparsePolynomial::var(field, Var::FamilyStep(*r, i)),
            Step::Concrete(v) => {
                let c = v.get(i as usize - 1).ok_or_else(|| {
                    Error::domain(format!(
                        "step vector of length {} does not cover x{i}",
                        v.len()
                    ))
                })?;
                SparsePolynomial::rational_constant(field, c.clone())
            }
        })
    }
}

/// f(x + k·h) for every coordinate variable present in f.
fn shift(f: &SparsePolynomial, step: &Step, k: i64) -> Result<SparsePolynomial> {
    let field = f.field();
    let factor = BigRational::from_integer(BigInt::from(k));
    let mut bind = Bindings::new();
    for i in 1..=max_coordinate(f) {
        let h = step.component(field, i)?.scale_rational(&factor);
        bind.insert(
            Var::Coord(i),
            &SparsePolynomial::var(field, Var::Coord(i)) + &h,
        );
    }
    f.substitute(&bind)
}

/// Δ_h^N f(x) = Σ_k C(N,k)·(−1)^{N−k}·f(x + k·h).
pub fn forward_difference(f: &SparsePolynomial, n: u32, step: &Step) -> Result<SparsePolynomial> {
    let mut acc = SparsePolynomial::zero(f.field());
    for k in 0..=n {
        let mut c = BigRational::from_integer(binomial(n, k));
        if (n - k) % 2 == 1 {
            c = -c;
        }
        acc = &acc + &shift(f, step, k as i64)?.scale_rational(&c);
    }
    Ok(acc)
}

/// Δ_{h1…hs} f = Δ_{h1}(Δ_{h2…hs} f).
pub fn mixed_difference(f: &SparsePolynomial, steps: &[Step]) -> Result<SparsePolynomial> {
    if steps.is_empty() {
        return Err(Error::domain("mixed difference needs at least one step"));
    }
    steps
        .iter()
        .rev()
        .try_fold(f.clone(), |acc, step| forward_difference(&acc, 1, step))
}

/// Right-hand side of Djoković's identity:
/// Σ_{ε ∈ {0,1}^s} (−1)^{|ε|} Δ^s_{α_ε} f(x + β_ε), with
/// α_ε = −Σ_r ε_r·h_r / r and β_ε = Σ_r ε_r·h_r.
pub fn djokovic_rhs(f: &SparsePolynomial, steps: &[Vec<BigRational>]) -> Result<SparsePolynomial> {
    let s = steps.len();
    if s == 0 {
        return Err(Error::domain("Djokovic identity needs at least one step"));
    }
    if s > 20 {
        return Err(Error::domain("too many steps for 2^s expansion"));
    }
    let dim = steps[0].len();
    if steps.iter().any(|h| h.len() != dim) {
        return Err(Error::domain("step vectors must share one dimension"));
    }
    let mut acc = SparsePolynomial::zero(f.field());
    for mask in 0u32..(1 << s) {
        let mut alpha = vec![BigRational::zero(); dim];
        let mut beta = vec![BigRational::zero(); dim];
        for (r, h) in steps.iter().enumerate() {
            if mask & (1 << r) == 0 {
                continue;
            }
            let inv_r = BigRational::new(BigInt::one(), BigInt::from(r + 1));
            for (j, hj) in h.iter().enumerate() {
                alpha[j] -= hj * &inv_r;
                beta[j] += hj;
            }
        }
        let diff = forward_difference(f, s as u32, &Step::Concrete(alpha))?;
        let mut term = shift(&diff, &Step::Concrete(beta), 1)?;
        if mask.count_ones() % 2 == 1 {
            term = -term;
        }
        acc = &acc + &term;
    }
    Ok(acc)
}

/// True iff the mixed difference equals the Djoković right-hand side exactly.
pub fn djokovic_check(f: &SparsePolynomial, steps: &[Vec<BigRational>]) -> Result<bool> {
    let concrete: Vec<Step> = steps.iter().cloned().map(Step::Concrete).collect();
    Ok(mixed_difference(f, &concrete)? == djokovic_rhs(f, steps)?)
}
