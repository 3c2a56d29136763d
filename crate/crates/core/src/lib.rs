//! Exact computations with twisted-cyclic multilinear forms and the N-homogeneous algebras they
//! define: regularity checks, graded dimensions, Koszul complexes, Frobenius quotients, twists and
//! Hopf-algebra presentations.
//!
//! Everything is computed over exact fields: the rationals and quadratic extensions
//! `Q[t]/(t^2 + c1 t + c0)`.

pub mod algebra;
pub mod error;
pub mod frobenius;
pub mod gallery;
pub mod hochschild;
pub mod hopf;
pub mod koszul;
pub mod linalg;
pub mod par;
pub mod preregularity;
pub mod scalar;
pub mod tensor;
pub mod twist;

pub use error::{Error, ErrorKind, Limits, Result};
pub use linalg::{Matrix, SparseVec, Subspace};
pub use scalar::{FieldDescriptor, QuadField, Rational, Scalar};
