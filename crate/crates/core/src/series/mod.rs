//! Truncated series: one-variable, torus (classical and quantum), and
//! classical torus automorphisms.

mod auto;
mod torus;
mod uni;

pub use auto::TorusAuto;
pub use torus::{ClassicalSeries, QuantumSeries, TorusArena, TorusSeries};
pub use uni::UniSeries;
