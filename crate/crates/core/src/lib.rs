//! Exact computations with the faithful representation of the type D_n
//! BMW algebra: the representation matrices, their defining relations, the
//! sum-of-conjugates matrix and its kernel, explicit invariant subspaces,
//! and Specht-module dimension combinatorics for Hecke algebras of type D.

pub mod error;
pub mod field;
pub mod kernel;
pub mod linalg;
pub mod rep;
pub mod specht;
pub mod subspaces;

pub use error::{Error, Result};
pub use field::{
    BiLaurentPoly, FactoredForm, Field, LValue, PointSampler, RationalFunction, Q,
};
