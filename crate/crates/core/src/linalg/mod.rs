//! Dense exact linear algebra on finite-dimensional spaces.

mod diag;
mod matrix;
mod subspace;

pub use diag::{
    commutant, diagonalize_finite, eigenspace, eigenvalues, joint_eigenprojections, matrix_span,
    minimal_polynomial, restriction_vanishes, simultaneous_diagonalize_finite, unflatten,
    vector_annihilator, Diagonalization, JointBlock, SimultaneousDiagonalization,
    SimultaneousFailure,
};
pub use matrix::Matrix;
pub use subspace::{SparseEchelon, SparseVec, Subspace};
