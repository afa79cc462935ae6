//! Edge-disjoint Steiner tree and T-connector packing.
//!
//! The crate is organised bottom-up:
//!
//! - [`graph`]: multigraphs with stable edge ids, unit-capacity cuts,
//!   splitting-off and the reduction of an instance to hypergraph form.
//! - [`matroid`]: graphic and hypergraphic matroid oracles, partition rank
//!   formulas, matroid-union base packing and the union exchange adjustment.
//! - [`fractional`]: exact rational polytope membership checks and
//!   degree-bounded rounding of fractional bases.
//! - [`packing`]: end-to-end spanning tree, Steiner tree and connector
//!   packing pipelines with verifiers, brute-force oracles and generators.
//! - [`cli`]: the `treepack` command-line front end.

pub mod capacity;
pub mod cli;
pub mod error;
pub mod fractional;
pub mod graph;
pub mod matroid;
pub mod packing;
pub mod rng;

pub use capacity::Capacity;
pub use error::{Error, Result};
