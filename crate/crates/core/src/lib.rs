//! Exact wall-crossing computations: truncated torus series, quantum
//! dilogarithms, factorization into slope-ordered products, and the
//! verification suites built on top of them.

pub mod arith;
pub mod error;
pub mod lattice;
pub mod series;
pub mod engine;
pub mod gln;
pub mod hall;
pub mod qdilog;
pub mod quiver;
pub mod sampling;
pub mod scenarios;

pub use error::{Error, Result};
