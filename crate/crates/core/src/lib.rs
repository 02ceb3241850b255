//! Structure and colouring of (P5, K1∪K3)-free and (P5, K1+(K1∪K3))-free graphs.
//!
//! [`graph`] holds the bitset graph type, [`recognize`] the induced-subgraph tests,
//! [`decompose`] the partition of a graph around a 5-hole with claim checkers,
//! [`coloring`] the constructive colourings, [`oracles`] exact searches used as ground
//! truth, [`generators`] named graphs and class streams, and [`harness`] the campaign
//! runner that ties them together.

pub mod coloring;
pub mod decompose;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod io;
pub mod iso;
pub mod oracles;
pub mod recognize;

pub use graph::{Graph, GraphError, VertexSet};
pub use recognize::{Forbidden, GraphClass};
