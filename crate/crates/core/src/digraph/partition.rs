use thiserror::Error;

use super::AcyclicDigraph;

/// Ordered disjoint parts covering V(H); cross edges must point to later parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DirectedPartition {
    parts: Vec<Vec<usize>>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("vertex {0} is covered {1} times")]
    Cover(usize, usize),
    #[error("edge {0}→{1} points from a later part to an earlier one")]
    Backward(usize, usize),
    #[error("part {0} is not a forest")]
    PartNotForest(usize),
    #[error("part {0} is not independent")]
    PartNotIndependent(usize),
}

impl DirectedPartition {
    pub fn new(mut parts: Vec<Vec<usize>>) -> Self {
        for p in parts.iter_mut() {
            p.sort_unstable();
        }
        DirectedPartition { parts }
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part index of every vertex.
    pub fn part_of(&self, n: usize) -> Vec<usize> {
        let mut of = vec![usize::MAX; n];
        for (i, p) in self.parts.iter().enumerate() {
            for &v in p {
                of[v] = i;
            }
        }
        of
    }

    pub fn validate(&self, h: &AcyclicDigraph) -> Result<(), PartitionError> {
        let mut count = vec![0usize; h.n()];
        for p in &self.parts {
            for &v in p {
                count[v] += 1;
            }
        }
        if let Some(v) = (0..h.n()).find(|&v| count[v] != 1) {
            return Err(PartitionError::Cover(v, count[v]));
        }
        let of = self.part_of(h.n());
        for &(u, v) in h.edges() {
            if of[u] > of[v] {
                return Err(PartitionError::Backward(u, v));
            }
        }
        Ok(())
    }

    /// Validates the partition and that every part induces a forest.
    pub fn validate_forest_parts(&self, h: &AcyclicDigraph) -> Result<(), PartitionError> {
        self.validate(h)?;
        for (i, p) in self.parts.iter().enumerate() {
            if !h.induced(p).is_forest() {
                return Err(PartitionError::PartNotForest(i));
            }
        }
        Ok(())
    }

    /// Largest weakly connected component over all parts.
    pub fn max_component(&self, h: &AcyclicDigraph) -> usize {
        self.parts
            .iter()
            .flat_map(|p| h.induced(p).weak_components().into_iter().map(|c| c.len()))
            .max()
            .unwrap_or(0)
    }
}
