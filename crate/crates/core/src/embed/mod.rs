//! Greedy embedding into candidate sets, and the dense pairs left behind when
//! it fails.
//!
//! Density thresholds are evaluated by counting, for a vertex w and a set U, the
//! pairs (w, x), x ∈ U, that are *not* oriented the wanted way, including x = w.
//! This is what makes the dense pairs below exact under the pair-counting
//! convention where a shared vertex contributes no forward edge.

mod forest;
mod greedy;
mod inner;

pub use forest::{forest_dense_pair, forest_dense_pair_in, ForestOutcome};
pub use greedy::{
    find_dense_pair, find_dense_pair_in, greedy_embed, Branch, DenseOutcome, FailureWitness,
    GreedyOutcome,
};
pub use inner::{inner_stage, inner_stage_in, threshold_instance};

use thiserror::Error;

use crate::bitset::BitSet;
use crate::digraph::{GraphError, Tournament};
use crate::tourney::Host;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EmbedError {
    #[error("invalid parameter: {0}")]
    BadParameter(String),
    #[error("host has {got} vertices, at least {required} needed")]
    PreconditionTooSmall { required: u128, got: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("dense pair needs nonempty sets")]
    EmptySet,
    #[error("no valid candidate for pattern vertex {0}")]
    Stuck(usize),
    #[error("internal invariant broken: {0}")]
    Internal(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Vertex sets (W₁, W₂) with most ordered pairs oriented W₁ → W₂.
#[derive(Clone, Debug, PartialEq)]
pub struct DensePair {
    pub w1: Vec<usize>,
    pub w2: Vec<usize>,
    pub forward_count: u64,
    pub delta_achieved: f64,
}

impl DensePair {
    pub fn from_sets(host: &Host, w1: &BitSet, w2: &BitSet) -> Result<DensePair, EmbedError> {
        let (a, b) = (w1.count(), w2.count());
        if a == 0 || b == 0 {
            return Err(EmbedError::EmptySet);
        }
        let f = forward_count(host, w1, w2);
        Ok(DensePair {
            w1: w1.to_vec(),
            w2: w2.to_vec(),
            forward_count: f,
            delta_achieved: f as f64 / (a as f64 * b as f64),
        })
    }

    pub fn size(&self) -> usize {
        self.w1.len().min(self.w2.len())
    }

    /// Forward pairs are at least δ·|W₁|·|W₂| for δ = num/den.
    pub fn is_dense_ratio(&self, num: u64, den: u64) -> bool {
        self.forward_count as u128 * den as u128 >= num as u128 * self.w1.len() as u128 * self.w2.len() as u128
    }
}

/// Ordered pairs (w₁, w₂) ∈ W₁ × W₂ with w₁ → w₂.
pub fn forward_count(host: &Host, w1: &BitSet, w2: &BitSet) -> u64 {
    w1.iter().map(|w| host.out_row(w).intersection_count(w2) as u64).sum()
}

/// Fraction of the |W₁|·|W₂| ordered pairs that point from W₁ to W₂.
pub fn validate_dense_pair(t: &Tournament, w1: &[usize], w2: &[usize]) -> Result<f64, EmbedError> {
    if w1.is_empty() || w2.is_empty() {
        return Err(EmbedError::EmptySet);
    }
    let mut f = 0u64;
    for &a in w1 {
        for &b in w2 {
            if a >= t.n() || b >= t.n() {
                return Err(EmbedError::BadParameter(format!("vertex {} out of range", a.max(b))));
            }
            if a != b && t.beats(a, b) {
                f += 1;
            }
        }
    }
    Ok(f as f64 / (w1.len() as f64 * w2.len() as f64))
}

/// Non-forward pairs from w into `set`: in-neighbors plus w itself.
pub(crate) fn non_forward(host: &Host, w: usize, set: &BitSet) -> usize {
    host.in_row(w).intersection_count(set) + usize::from(set.contains(w))
}

/// Non-backward pairs from `set` into w: out-neighbors plus w itself.
pub(crate) fn non_backward(host: &Host, w: usize, set: &BitSet) -> usize {
    host.out_row(w).intersection_count(set) + usize::from(set.contains(w))
}
