//! Orthogonal families of idempotent operators: validity, summability and
//! sums, least upper bounds, products and common refinements.

mod family;
mod ops;

pub use family::{
    Affine, Coloring, FamilyDefect, IdempotentFamily, Pattern, Support, Term, Validation, DEFAULT_PROBE,
};
pub use ops::{
    common_eigenvector_search, lub_check, product_family, simultaneous_diagonalize_families, summability,
    sums_to_one, CommonEigenvector, LubReport, OrderCheck, SimultaneousOutcome, Summability,
};
