//! Exact computer-algebra kernel for divided powers, homogeneous polynomial
//! laws, the trace/norm correspondence and zero-cycle constructions.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod cycles;
pub mod error;
pub mod gamma;
pub mod laws;
pub mod trace_norm;
pub mod verify;

pub use error::{Error, Result};
