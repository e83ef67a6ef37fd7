//! Executable homotopy theory for finite graphs.
//!
//! The crate builds the categorical and cartesian closed structure on finite
//! graphs (products, exponential graphs, currying), enumerates the poset of
//! multihomomorphisms between two graphs, realizes posets and looped cliques
//! as simplicial complexes with GF(2) homology, decides homotopy of graph
//! maps through paths of maps, reduces graphs by folds, and evaluates the
//! topological lower bounds on chromatic number.
//!
//! Everything is a pure function of immutable values; results are
//! deterministic, canonically sorted, and guarded by explicit resource caps.
//!
//! The crate is `no_std` with `alloc`; file formats and the command line
//! front end live in the companion `homkit` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bitset;
pub mod bounds;
pub mod caps;
pub mod error;
pub mod exponential;
pub mod graph;
pub mod hom;
pub mod homotopy;
pub mod topology;

pub use bitset::BitSet;
pub use caps::Caps;
pub use error::{Error, Result};
pub use graph::{Graph, GraphMap, StandardGraph, VertexId};
