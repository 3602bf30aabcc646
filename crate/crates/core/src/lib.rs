//! Exact symbolic engine for root-of-unity mean-value equations
//! (Kakutani–Nagumo–Walsh, Haruki) and Fréchet's difference equation.
//!
//! Scalars live in cyclotomic fields Q(ζ_L), polynomials are sparse over those
//! fields, and every functional equation is decided for polynomial inputs by
//! an exact zero test of its symbolic defect.

pub mod error;
pub mod numbers;
pub mod numeric;
pub mod operators;
pub mod par;
pub mod parser;
pub mod poly;
pub mod spaces;

pub use error::{Error, Result};
pub use numbers::{BigInt, BigRational, CyclotomicField, CyclotomicNumber};
pub use operators::{EquationParams, Step};
pub use par::Execution;
pub use poly::{SparsePolynomial, Var};
