//! Named non-polynomial test functions available from the command line.

use std::sync::Arc;

use num_complex::Complex64;

use super::{Candidate, ComplexFn, RealFn};

pub const CATALOG_NAMES: &[&str] = &["exp", "sin", "abs"];

/// Looks up a catalog function, complex-valued for the mean-value equations
/// or real-valued in x1 for the Fréchet equation.
pub fn catalog(name: &str, real: bool) -> Option<Candidate> {
    if real {
        let f: RealFn = match name {
            "exp" => Arc::new(|x: &[f64]| x[0].exp()),
            "sin" => Arc::new(|x: &[f64]| x[0].sin()),
            "abs" => Arc::new(|x: &[f64]| x[0].abs()),
            _ => return None,
        };
        Some(Candidate::Real(f))
    } else {
        let f: ComplexFn = match name {
            "exp" => Arc::new(|z: Complex64| z.exp()),
            "sin" => Arc::new(|z: Complex64| z.sin()),
            "abs" => Arc::new(|z: Complex64| Complex64::new(z.norm(), 0.0)),
            _ => return None,
        };
        Some(Candidate::Complex(f))
    }
}
