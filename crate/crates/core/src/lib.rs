//! Exhaustive generation of the elimination forests of a chordal graph by
//! tree rotations, i.e. Hamilton paths (and cycles) on the skeleton of the
//! graph associahedron.
//!
//! The crate provides:
//!
//! - graph parsing, chordality recognition via lexicographic BFS and perfect
//!   elimination orderings ([`graph`], [`peo`]);
//! - the elimination-forest structure with rotations, deletion/insertion and
//!   the representative-permutation encoding ([`forest`], [`rotation`],
//!   [`insertion`]);
//! - three generators: a history-based greedy reference that works on any
//!   graph and detects failure, a history-free generator running in
//!   amortized O(σ) per forest on chordal graphs, and a loopless O(1)
//!   variant for trees ([`generator`]);
//! - exact counting of elimination forests and prediction of whether the
//!   generated Gray code closes into a cycle ([`analysis`]);
//! - brute-force oracles: exhaustive enumeration, the flip graph, Gray-code
//!   verification, and an independent minimal-jump generator over the
//!   representative permutations ([`verification`]);
//! - translations of the forests of special graph shapes into classical
//!   combinatorial objects: permutations, binary trees, partial
//!   permutations, bitstrings and signed permutations ([`encoders`]).

pub mod analysis;
pub mod encoders;
pub mod error;
pub mod families;
pub mod forest;
pub mod generator;
pub mod graph;
pub mod insertion;
pub mod peo;
pub mod rotation;
#[cfg(test)]
pub(crate) mod testutil;
pub mod verification;

pub use error::{Error, Result};
pub use forest::{ElimForest, ForestKey};
pub use graph::Graph;
pub use peo::PeoGraph;
