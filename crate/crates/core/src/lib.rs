//! Exact and asymptotic enumeration of connected labeled graphs and
//! multigraphs with a given number of vertices and excess.

pub mod arith;
pub mod asymptotics;
pub mod brute;
pub mod connected;
pub mod error;
pub mod kernel;
pub mod patchwork;
pub mod poly;
pub mod positive;
pub mod series;

pub use arith::BigRat;
pub use error::{Error, Result};
