//! Exact calculus of Hochschild quasi-complexes and torsion algebras on
//! finite-dimensional algebras over `Q` and `F_p`.

pub mod algebra;
pub mod builtins;
pub mod cochain;
pub mod error;
pub mod field;
pub mod forms;
pub mod gerstenhaber;
pub mod hochschild;
mod kernel;
pub mod linalg;
pub mod random;
pub mod torsion;
pub mod workbench;

pub use algebra::{AlgebraSpec, Module, StructureConstants};
pub use cochain::{
    alt_cochain, associator3, bracket, comp, comp_i, graded_alt3, insert_pair, split_mu, Cochain,
    Endomorphism,
};
pub use error::{Error, Result};
pub use field::{scalar_arith, ArithOp, FieldSpec, Scalar};
pub use hochschild::{CoherenceReport, CoherenceWitness, QuasiComplex};
pub use torsion::{FunctionAlgebra, TorsionAlgebra};
