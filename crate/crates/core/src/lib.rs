//! Matching and Laplacian matching polynomials of small simple graphs,
//! certified real-root isolation, and exact analysis of how Laplacian
//! matching roots move when an edge is added.
//!
//! Everything that decides a verdict is exact integer or rational
//! arithmetic; floating point only appears in rendered reports.

pub mod analyzer;
pub mod census;
pub mod error;
pub mod generate;
pub mod graph;
pub mod graph6;
pub mod laplacian;
pub mod matching;
pub mod poly;
pub mod verify;

#[cfg(test)]
pub(crate) mod testing;

pub use error::{Error, Result};
pub use graph::{Graph, StructuralMetrics};
pub use graph6::{parse_graph6, write_graph6};
pub use poly::{IntPoly, RootSet};
