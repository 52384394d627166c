//! Exact construction, solution and tabulation of Schubert intersection
//! problems given by flags osculating the rational normal curve.

pub mod algebra;
pub mod combinatorics;
pub mod error;
pub mod harness;
pub mod model;
pub mod solver;

pub use error::{Error, Result};
