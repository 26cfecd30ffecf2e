//! Exact computation of the irreducible components of the point variety of a
//! quantum polynomial algebra
//!
//! ```text
//! A_Q = C<x_0, …, x_n> / (x_i x_j - q_ij x_j x_i)
//! ```
//!
//! from its parameter matrix `Q`. The point variety is a union of coordinate
//! subspaces `P(S)` of `P^n`, one for each index set `S` on which `Q`
//! restricts to a rank-one matrix; its components are the maximal such `S`.
//!
//! ```
//! use qpoints::{components, parse_matrix_file};
//!
//! let q = parse_matrix_file("n = 2\nq 0 1 = -1\nq 0 2 = -1\nq 1 2 = -1").unwrap();
//! let v = components(&q);
//! assert_eq!(v.components().len(), 3); // the three coordinate lines
//! assert_eq!(v.dimension(), 1);
//! ```

pub mod cli;
pub mod components;
pub mod matrix;
pub mod parser;
pub mod scalar;

pub use components::{
    brute_force_components, components, components_with, dimension, membership, recursive_components, ComponentOptions,
    ComponentsError, PointVariety, ProjectivePoint,
};
pub use matrix::{IndexSubset, MatrixError, QuantumMatrix};
pub use parser::{format_matrix_file, format_scalar, parse_matrix_file, parse_scalar, ParseError};
pub use scalar::{Generator, ScalarError, UnitMonomial};
