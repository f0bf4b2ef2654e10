//! Exact computations with differential graded algebras and bimodules over
//! the rationals and prime fields.

pub mod algebra;
pub mod complex;
pub mod error;
pub mod field;
pub mod free;
pub mod hochschild;
pub mod linalg;
pub mod suite;
pub mod theorems;

pub use algebra::{square_zero_extension, AlgebraMap, DGAlgebra, DGBimodule, PointedBimodule};
pub use complex::{ChainComplex, GradedMap, HomologyResult, Window};
pub use error::{DgaError, Result};
pub use field::{FieldSpec, Scalar};
pub use hochschild::{CohomologyGroup, CutoffPolicy, Status};
pub use linalg::{Matrix, SparseVec, Span};
