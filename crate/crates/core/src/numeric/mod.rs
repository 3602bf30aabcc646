//! Floating-point embedding of cyclotomic values and residual scans of the
//! equations over sample grids, including the nonlinear Nagumo equation.

mod catalog;
mod grid;
mod scan;

pub use catalog::{catalog, CATALOG_NAMES};
pub use grid::{GridRange, GridSpec};
pub use scan::{
    falsify, falsify_with, residual_at, residual_scan, residual_scan_with, Candidate, ComplexFn,
    RealFn, ResidualReport, ScanEquation, Witness, DEFAULT_TOLERANCE,
};

use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::numbers::CyclotomicNumber;

/// Σ c_j·exp(2πij/L) in double precision.
pub fn to_float(a: &CyclotomicNumber) -> Complex64 {
    let order = a.order() as f64;
    a.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
        .map(|(j, c)| {
            let angle = std::f64::consts::TAU * j as f64 / order;
            Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), angle)
        })
        .sum()
}
