//! Sparse multivariate polynomials over Q or Q(ζ_L).

mod forms;
mod monomial;
mod polynomial;
mod var;

pub use forms::{complexify, realize, IMAG_PART, REAL_PART};
pub use monomial::Monomial;
pub use polynomial::{Bindings, CoeffKind, Degrees, SparsePolynomial};
pub use var::Var;
