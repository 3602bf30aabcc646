//! Solution spaces: exact membership oracles, the bases the characterization
//! theorems predict, exhaustive monomial sweeps, and the corner-set lattice
//! that indexes affine-invariant monomial spans.

mod corners;
mod membership;

pub use corners::{downward_closure, minimal_corners, CornerSet, ExtNat};
pub use membership::{
    characterize, characterize_with, exponent_monomial, frechet_membership, haruki_membership,
    knw_membership, membership, solution_basis, theorem_predicate, CharacterizationReport,
    Equation, MonomialVerdict,
};
