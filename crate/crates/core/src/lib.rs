//! Structural sparse-graph toolkit: tree-depth, low tree-depth
//! decompositions, shallow-minor densities, decomposition-based subgraph
//! counting, distance colorings, neighborhood covers and homomorphisms.
//!
//! Every fast routine has an exact brute-force counterpart at desk scale;
//! size limits are enforced with explicit refusals rather than heuristics.

pub mod applications;
pub mod bits;
pub mod catalog;
pub mod coloring;
pub mod counting;
pub mod decomposition;
pub mod density;
pub mod cliques;
pub mod error;
pub mod flow;
pub mod generators;
pub mod graph;
pub mod homomorphism;
pub mod io;
pub mod iso;
pub mod orientation;
pub mod traversal;
pub mod treedepth;
pub mod verdict;

pub use error::{Error, Result};
pub use graph::Graph;
pub use verdict::Verdict;
