//! Core graph types: acyclic patterns, tournaments, colored tournaments,
//! ordered graphs, embeddings and directed partitions.

mod acyclic;
mod embedding;
pub mod generators;
mod ordered;
mod partition;
mod structure;
mod tournament;

pub use acyclic::AcyclicDigraph;
pub use embedding::{Embedding, EmbeddingError};
pub use ordered::OrderedGraph;
pub use partition::{DirectedPartition, PartitionError};
pub use structure::{
    degeneracy_order, edge_length_histogram, grading, height, height_partition, is_graded,
    replay_back_degree,
};
pub use tournament::{ColoredTournament, Tournament, MAX_VERTICES};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate or antiparallel edge between {0} and {1}")]
    DuplicateOrAntiparallelEdge(usize, usize),
    #[error("directed cycle through {0:?}")]
    CycleFound(Vec<usize>),
    #[error("color {color} outside [1, {k}]")]
    ColorOutOfRange { color: usize, k: usize },
    #[error("window [{a}, {b}] invalid for n = {n}")]
    BadWindow { a: usize, b: usize, n: usize },
    #[error("size {0} exceeds the supported budget")]
    TooLarge(usize),
}
