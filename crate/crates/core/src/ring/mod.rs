//! Exact linear and multilinear algebra over Z/m.

pub mod action;
pub mod algebra;
pub mod howell;
pub mod linear;
pub mod zm;

pub use action::ActionTensor;
pub use algebra::{check_morphism, FiniteAlgebra};
pub use howell::{howell_form, independent, kernel, solve, Solver, Submodule};
pub use linear::{all_vectors, vec_ops, LinearMap};
pub use zm::Zm;
