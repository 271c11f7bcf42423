//! Finite function algebras `K^X`, their duality with finite sets, and
//! finite-dimensional algebras given by structure constants.

mod algebra;
mod classical;
mod functions;

pub use algebra::{
    double_commutant_check, radical, radical_of_product, regular_representation, DoubleCommutantReport,
    FiniteAlgebra, RadicalProductReport, RegularRepresentation,
};
pub use classical::{classical_equivalences, crt_split, ClassicalReport, CrtSplit};
pub use functions::{
    dual_map, partition_subalgebra, spec0, spec_of_hom, subalgebra_partition, AlgebraHom, FunctionAlgebra,
    MaximalIdeal, Partition, SetMapRec,
};
