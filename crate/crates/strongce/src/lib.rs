//! Strong edge-coloring of multigraphs with maximum degree 4.
//!
//! A strong edge-coloring gives distinct colors to any two edges at distance
//! at most one (sharing a vertex, or joined by a third edge). This crate
//! constructs such colorings from arbitrary per-edge lists of 22 colors,
//! following a structure-driven case analysis: small-degree vertices, loops
//! and parallel edges, then short cycles (3, 4, 5), and finally 4-regular
//! graphs of girth at least 6. Exact backtracking solvers double as oracles
//! for the whole pipeline.

pub mod coloring;
pub mod engine;
pub mod gen;
pub mod graph;
pub mod hall;
pub mod io;
pub mod nullstellensatz;
pub mod oracle;
pub mod ordering;

pub use coloring::{ColorId, ListAssignment, PartialColoring, Verification};
pub use graph::{ConflictGraph, CycleWitness, EdgeId, Girth, MultiGraph, VertexId};
