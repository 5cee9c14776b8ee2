use thiserror::Error;

use super::{AcyclicDigraph, Tournament};

/// An injective map V(H) → V(T).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Embedding {
    pub map: Vec<usize>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbeddingError {
    #[error("map has {got} entries, pattern has {want} vertices")]
    WrongLength { got: usize, want: usize },
    #[error("image {image} of vertex {vertex} is not a host vertex")]
    OutOfRange { vertex: usize, image: usize },
    #[error("vertices {0} and {1} share an image")]
    NotInjective(usize, usize),
    #[error("edge {0}→{1} is reversed in the host")]
    EdgeReversed(usize, usize),
}

impl Embedding {
    pub fn new(map: Vec<usize>) -> Self {
        Embedding { map }
    }

    /// Re-checks injectivity and orientation of every edge.
    pub fn validate(&self, h: &AcyclicDigraph, t: &Tournament) -> Result<(), EmbeddingError> {
        if self.map.len() != h.n() {
            return Err(EmbeddingError::WrongLength { got: self.map.len(), want: h.n() });
        }
        let mut owner = vec![usize::MAX; t.n()];
        for (v, &x) in self.map.iter().enumerate() {
            if x >= t.n() {
                return Err(EmbeddingError::OutOfRange { vertex: v, image: x });
            }
            if owner[x] != usize::MAX {
                return Err(EmbeddingError::NotInjective(owner[x], v));
            }
            owner[x] = v;
        }
        for &(u, v) in h.edges() {
            if !t.beats(self.map[u], self.map[v]) {
                return Err(EmbeddingError::EdgeReversed(u, v));
            }
        }
        Ok(())
    }
}
