//! Exact arithmetic substrate: scalars, polynomials in auxiliary variables,
//! linear algebra and finite algebras.

pub mod finite;
pub mod json;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod ring_elem;
pub mod scalar;

pub use finite::{AlgebraMorphism, FiniteAlgebra};
pub use parse::parse_poly;
pub use linalg::{classical_charpoly, solve_linear, LinearSolution, Matrix, Subspace};
pub use poly::MultiPoly;
pub use ring_elem::{determinant, RingElem};
pub use scalar::{Ring, Scalar};
