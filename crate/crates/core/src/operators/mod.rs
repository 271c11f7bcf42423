//! Operators on the space with countable basis `v_0, v_1, ...`, given as
//! eventually periodic banded matrices plus finite corrections.

mod closure;
pub(crate) mod operator;
mod torsion;

pub use closure::{
    closure_membership, diagonalizable_completion, eventually_diagonal_diagonalize, finite_field_diag_check,
    prop_operator_check, spectrum, ClosureVerdict, ClosureWitness, Eigenvalue, EventualDiagonalization,
    FiniteFieldDiag, SpectrumReport,
};
pub use operator::{apply, op_ring, truncate, FiniteVector, Operator, RingOp};
pub use torsion::{
    krylov_torsion, torsion_part_on_window, GrowthCertificate, TorsionReport, WindowTorsion, DEFAULT_DEPTH,
};
