use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::grid::{self, GridSpec};
use super::to_float;
use crate::error::{Error, Result};
use crate::numbers::binomial;
use crate::operators::EquationParams;
use crate::par::{self, Execution};
use crate::poly::{SparsePolynomial, Var};

/// Absolute tolerance for "solves" verdicts at |x|, |y| ≤ 2 and degrees ≤ 16.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanEquation {
    Knw,
    Haruki,
    Nagumo,
    Frechet,
}

impl fmt::Display for ScanEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScanEquation::Knw => "knw",
            ScanEquation::Haruki => "haruki",
            ScanEquation::Nagumo => "nagumo",
            ScanEquation::Frechet => "frechet",
        })
    }
}

impl FromStr for ScanEquation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "knw" => Ok(ScanEquation::Knw),
            "haruki" => Ok(ScanEquation::Haruki),
            "nagumo" => Ok(ScanEquation::Nagumo),
            "frechet" => Ok(ScanEquation::Frechet),
            other => Err(Error::domain(format!("unknown equation '{other}'"))),
        }
    }
}

impl ScanEquation {
    fn is_real(self) -> bool {
        self == ScanEquation::Frechet
    }
}

pub type ComplexFn = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;
pub type RealFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// Function under test: an exact polynomial, or a black-box closure.
#[derive(Clone)]
pub enum Candidate {
    Polynomial(SparsePolynomial),
    Complex(ComplexFn),
    Real(RealFn),
}

impl fmt::Debug for Candidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Candidate::Polynomial(p) => write!(f, "Polynomial({p:?})"),
            Candidate::Complex(_) => f.write_str("Complex(<fn>)"),
            Candidate::Real(_) => f.write_str("Real(<fn>)"),
        }
    }
}

/// Polynomial with float coefficients, evaluated by direct power products.
struct FloatPolynomial {
    terms: Vec<(Complex64, Vec<(Var, u32)>)>,
}

impl FloatPolynomial {
    fn new(p: &SparsePolynomial) -> Self {
        FloatPolynomial {
            terms: p
                .terms()
                .map(|(m, c)| (to_float(c), m.pairs().to_vec()))
                .collect(),
        }
    }

    fn eval(&self, value: impl Fn(Var) -> Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(c, pairs)| pairs.iter().fold(*c, |acc, &(v, e)| acc * value(v).powu(e)))
            .sum()
    }
}

type BoxedComplex = Box<dyn Fn(Complex64) -> Complex64 + Send + Sync>;
type BoxedReal = Box<dyn Fn(&[f64]) -> f64 + Send + Sync>;

enum Compiled {
    Complex(BoxedComplex),
    Real(BoxedReal),
}

fn compile(f: &Candidate, equation: ScanEquation, params: &EquationParams) -> Result<Compiled> {
    match (f, equation.is_real()) {
        (Candidate::Polynomial(p), false) => {
            if let Some(v) = p
                .variables()
                .into_iter()
                .find(|v| !matches!(v, Var::Z | Var::Zbar))
            {
                return Err(Error::domain(format!("expected z, zbar only; found {v}")));
            }
            let fp = FloatPolynomial::new(p);
            Ok(Compiled::Complex(Box::new(move |z: Complex64| {
                fp.eval(|v| if v == Var::Z { z } else { z.conj() })
            })))
        }
        (Candidate::Polynomial(p), true) => {
            let d = params.d();
            if let Some(v) = p.variables().into_iter().find(|v| match v {
                Var::Coord(i) => *i as u32 > d,
                _ => true,
            }) {
                return Err(Error::domain(format!("expected x1..x{d} only; found {v}")));
            }
            let fp = FloatPolynomial::new(p);
            Ok(Compiled::Real(Box::new(move |x: &[f64]| {
                fp.eval(|v| match v {
                    Var::Coord(i) => Complex64::new(x[i as usize - 1], 0.0),
                    _ => unreachable!("checked above"),
                })
                .re
            })))
        }
        (Candidate::Complex(g), false) => {
            let g = g.clone();
            Ok(Compiled::Complex(Box::new(move |z| g(z))))
        }
        (Candidate::Real(g), true) => {
            let g = g.clone();
            Ok(Compiled::Real(Box::new(move |x| g(x))))
        }
        (Candidate::Complex(_), true) => Err(Error::domain(
            "the Frechet equation needs a real-valued function of x1..xd",
        )),
        (Candidate::Real(_), false) => Err(Error::domain(
            "complex equations need a complex function of z",
        )),
    }
}

fn dims(equation: ScanEquation, params: &EquationParams) -> usize {
    if equation.is_real() {
        2 * params.d() as usize
    } else {
        4
    }
}

struct Roots {
    theta: Vec<Complex64>,
    eta: Complex64,
    binom: Vec<f64>,
}

impl Roots {
    fn new(params: &EquationParams) -> Self {
        let n = params.n();
        Roots {
            theta: (0..n)
                .map(|k| Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / n as f64))
                .collect(),
            eta: Complex64::from_polar(1.0, std::f64::consts::PI / n as f64),
            binom: (0..=n)
                .map(|k| num_traits::ToPrimitive::to_f64(&binomial(n, k)).unwrap_or(f64::NAN))
                .collect(),
        }
    }
}

fn residual_compiled(
    f: &Compiled,
    equation: ScanEquation,
    params: &EquationParams,
    roots: &Roots,
    point: &[f64],
) -> Complex64 {
    match f {
        Compiled::Complex(f) => {
            let x = Complex64::new(point[0], point[1]);
            let y = Complex64::new(point[2], point[3]);
            let n = params.n() as f64;
            let average = |y: Complex64| -> Complex64 {
                roots.theta.iter().map(|t| f(x + t * y)).sum::<Complex64>() / n
            };
            match equation {
                ScanEquation::Knw => average(y) - f(x),
                ScanEquation::Haruki => average(y) - average(roots.eta * y),
                ScanEquation::Nagumo => {
                    let fx = f(x);
                    let (lhs, rhs) = roots.theta.iter().fold((0.0, 0.0), |(l, r), t| {
                        let v = f(x + t * y);
                        (l + v.norm_sqr() - fx.norm_sqr(), r + (v - fx).norm_sqr())
                    });
                    Complex64::new(lhs - rhs, 0.0)
                }
                ScanEquation::Frechet => unreachable!("compiled as real"),
            }
        }
        Compiled::Real(f) => {
            let d = params.d() as usize;
            let (x, h) = point.split_at(d);
            let n = params.n();
            let mut shifted = vec![0.0; d];
            let mut acc = 0.0;
            for k in 0..=n {
                for j in 0..d {
                    shifted[j] = x[j] + k as f64 * h[j];
                }
                let sign = if (n - k).is_multiple_of(2) { 1.0 } else { -1.0 };
                acc += sign * roots.binom[k as usize] * f(&shifted);
            }
            Complex64::new(acc, 0.0)
        }
    }
}

/// Residual of `equation` at one sample point: (Re x, Im x, Re y, Im y) for the
/// complex equations, (x1..xd, h1..hd) for Fréchet. The mean-value residuals
/// are the normalized defects H_y f − f and H_y f − H_{ηy} f.
pub fn residual_at(
    f: &Candidate,
    equation: ScanEquation,
    params: &EquationParams,
    point: &[f64],
) -> Result<Complex64> {
    if point.len() != dims(equation, params) {
        return Err(Error::domain(format!(
            "point has {} coordinates, expected {}",
            point.len(),
            dims(equation, params)
        )));
    }
    let compiled = compile(f, equation, params)?;
    Ok(residual_compiled(
        &compiled,
        equation,
        params,
        &Roots::new(params),
        point,
    ))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub equation: ScanEquation,
    pub n: u32,
    pub d: u32,
    pub max_abs_residual: f64,
    /// Sample attaining the maximum (smallest grid index among ties).
    pub witness: Option<Vec<f64>>,
    pub witness_index: Option<usize>,
    pub samples_evaluated: usize,
    pub tolerance: f64,
    pub within_tolerance: bool,
    /// Samples where the residual was not finite.
    pub poisoned: Vec<Vec<f64>>,
}

pub fn residual_scan(
    f: &Candidate,
    equation: ScanEquation,
    params: &EquationParams,
    grid: &GridSpec,
    tolerance: f64,
) -> Result<ResidualReport> {
    residual_scan_with(f, equation, params, grid, tolerance, Execution::default())
}

/// Evaluates the residual at every grid point and reports the maximum.
pub fn residual_scan_with(
    f: &Candidate,
    equation: ScanEquation,
    params: &EquationParams,
    grid: &GridSpec,
    tolerance: f64,
    exec: Execution,
) -> Result<ResidualReport> {
    if tolerance.is_nan() || tolerance <= 0.0 {
        return Err(Error::domain("tolerance must be positive"));
    }
    let axes = grid.resolve(dims(equation, params))?;
    let total = grid::size(&axes)?;
    let compiled = compile(f, equation, params)?;
    let roots = Roots::new(params);
    let residuals = par::map_range(total, exec, |idx| {
        residual_compiled(
            &compiled,
            equation,
            params,
            &roots,
            &grid::point(&axes, idx),
        )
        .norm()
    });
    let mut best: Option<(f64, usize)> = None;
    let mut poisoned = Vec::new();
    for (idx, &r) in residuals.iter().enumerate() {
        if !r.is_finite() {
            poisoned.push(grid::point(&axes, idx));
        } else if best.is_none_or(|(b, _)| r > b) {
            best = Some((r, idx));
        }
    }
    let max_abs_residual = best.map_or(0.0, |(r, _)| r);
    Ok(ResidualReport {
        equation,
        n: params.n(),
        d: params.d(),
        max_abs_residual,
        witness: best.map(|(_, idx)| grid::point(&axes, idx)),
        witness_index: best.map(|(_, idx)| idx),
        samples_evaluated: total,
        tolerance,
        within_tolerance: max_abs_residual <= tolerance && poisoned.is_empty(),
        poisoned,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub index: usize,
    pub point: Vec<f64>,
    pub residual: f64,
}

pub fn falsify(
    f: &Candidate,
    equation: ScanEquation,
    params: &EquationParams,
    grid: &GridSpec,
    tolerance: f64,
) -> Result<Option<Witness>> {
    falsify_with(f, equation, params, grid, tolerance, Execution::default())
}

/// First grid point (in grid order) whose |residual| exceeds `tolerance`.
pub fn falsify_with(
    f: &Candidate,
    equation: ScanEquation,
    params: &EquationParams,
    grid: &GridSpec,
    tolerance: f64,
    exec: Execution,
) -> Result<Option<Witness>> {
    if tolerance.is_nan() || tolerance <= 0.0 {
        return Err(Error::domain("tolerance must be positive"));
    }
    let axes = grid.resolve(dims(equation, params))?;
    let total = grid::size(&axes)?;
    let compiled = compile(f, equation, params)?;
    let roots = Roots::new(params);
    let residual = |idx: usize| {
        residual_compiled(
            &compiled,
            equation,
            params,
            &roots,
            &grid::point(&axes, idx),
        )
        .norm()
    };
    Ok(
        par::find_first(total, exec, |idx| residual(idx) > tolerance).map(|index| Witness {
            index,
            point: grid::point(&axes, index),
            residual: residual(index),
        }),
    )
}
