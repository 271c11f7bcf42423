//! Exact scalars over Q and F_p, polynomials, and eventually periodic
//! sequences.

mod epseq;
mod poly;
mod scalar;

pub use epseq::{epseq_op, epseq_shift, normalize_parts, value_at, EPSeq, SeqOp};
pub use poly::{
    poly_splits_simply, poly_splits_simply_bounded, poly_squarefree_part, roots_in_field,
    NoSplitReason, Polynomial, SplitVerdict, DEFAULT_ROOT_BITS,
};
pub use scalar::{FieldSpec, Scalar};
