//! Tree-partition toolkit.
//!
//! A tree-partition of a graph partitions the vertices into bags so that
//! contracting each bag yields a forest; its width is the largest bag size,
//! and the tree-partition-width `tpw(G)` is the minimum width over all
//! tree-partitions. The crate provides:
//!
//! * core graph machinery with chordality certificates ([`graph`]),
//! * tree decompositions, exact/heuristic tree-width, and a balanced
//!   separator splitting a graph into edge-disjoint halves ([`decomp`]),
//! * tree-partitions, verification, chordal normalization, and an exact
//!   oracle for small graphs ([`partition`]),
//! * a recursive construction producing tree-partitions of width at most
//!   `gamma*(k+1)*(3*gamma*delta - 1)` with `gamma = 1 + sqrt(2)` for graphs
//!   of tree-width `k` and maximum degree `delta`, driven entirely by exact
//!   arithmetic in `Q(sqrt 2)` ([`construct`], [`quad`]),
//! * generators for structured instance families with analytic metadata
//!   ([`generators`]),
//! * closed-form width bounds and a sandwich audit tying formulas, the
//!   construction, and the oracles together ([`bounds`], [`experiment`]).
//!
//! Related reading: domino tree-width `dtw` satisfies `dtw(G) >= tpw(G) - 1`;
//! no domino machinery is implemented here.

pub mod bounds;
pub mod construct;
pub mod decomp;
pub mod error;
pub mod experiment;
pub mod generators;
pub mod graph;
pub mod partition;
pub mod quad;
pub mod rng;

pub use error::{Error, Result};
pub use graph::Graph;
