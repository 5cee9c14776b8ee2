//! Exact small-scale Ramsey numbers: oriented (one or k colors) and ordered,
//! the reductions between ordered and oriented colorings, and enumeration of
//! oriented trees.

pub(crate) mod canon;
mod oriented;
mod ordered;
mod reductions;
pub(crate) mod small;
mod trees;

pub use oriented::{
    find_avoider, oriented_ramsey_1, oriented_ramsey_k, oriented_ramsey_k_with, oriented_ramsey_search,
    transitive_lower_bound, transitive_upper_bound, verify_avoider, AnnealOptions, Enumeration, RamseyBounds,
    EXHAUSTIVE_MAX_N, PLAIN_BUDGET,
};
pub use ordered::{count_ordered_copies, has_ordered_copy, ordered_ramsey, ordered_ramsey_with, EdgeColoring};
pub use reductions::{
    h_minus, h_plus, hamiltonian_order, lower_bound_coloring_from_ordered, merge_colors, monotone_copy_count,
    oriented_to_ordered_coloring, path_matching_digraph, random_matching,
};
pub use trees::{free_trees, oriented_trees, ORIENTED_TREE_MAX_N};

use thiserror::Error;

use crate::digraph::{ColoredTournament, GraphError, Tournament};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RamseyError {
    #[error("every host up to {max_n} vertices has an avoider; the value exceeds {max_n}")]
    Inconclusive { max_n: usize },
    #[error("{hosts} hosts on {n} vertices exceed the enumeration budget")]
    BudgetExceeded { n: usize, hosts: u128 },
    #[error("pattern has no Hamiltonian directed path")]
    NotHamiltonian,
    #[error("ordered graph is not a matching")]
    NotAMatching,
    #[error("a perfect matching needs an even vertex count, got {0}")]
    OddMatching(usize),
    #[error("invalid parameter: {0}")]
    BadParameter(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Extremal host on N − 1 vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Oriented(ColoredTournament),
    Ordered(EdgeColoring),
}

impl Witness {
    pub fn n(&self) -> usize {
        match self {
            Witness::Oriented(t) => t.n(),
            Witness::Ordered(c) => c.n(),
        }
    }

    pub fn tournament(&self) -> Option<&Tournament> {
        match self {
            Witness::Oriented(t) => Some(t.base()),
            Witness::Ordered(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamseyResult {
    pub value: usize,
    pub witness: Witness,
    /// Every host on `value` vertices was covered, directly or through an isomorphism class.
    pub exhaustive: bool,
    /// Hosts (or host classes, when pruned) examined over the whole scan.
    pub hosts_examined: u64,
    /// Avoiders kept at each vertex count 1, 2, …, value − 1 (classes when pruned).
    pub avoiders_per_level: Vec<u64>,
}
