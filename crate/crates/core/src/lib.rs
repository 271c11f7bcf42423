//! Exact linear algebra for diagonalizability questions over the rationals
//! and prime fields, on finite-dimensional spaces and on the space with a
//! countable basis.

pub mod error;
pub mod fields;
pub mod funcalg;
pub mod idempotents;
pub mod linalg;
pub mod operators;
pub mod suite;
pub mod text;
pub mod treegen;

pub use error::{Error, Result};
pub use fields::{EPSeq, FieldSpec, Polynomial, Scalar};
pub use linalg::Matrix;
pub use operators::{FiniteVector, Operator};
