//! 3-decompositions of cubic graphs.
//!
//! A 3-decomposition splits the edge set of a cubic graph into a spanning
//! tree, a 2-regular subgraph and a matching.

pub mod decomp;
pub mod extend;
pub mod generate;
pub mod graph;
pub mod pipeline;
mod search;
pub mod template;
