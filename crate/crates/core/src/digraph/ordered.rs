use std::collections::BTreeSet;

use super::GraphError;

/// Undirected graph on [n] whose vertex order is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderedGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl OrderedGraph {
    /// Edges are normalized to (min, max); loops are rejected.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut set = BTreeSet::new();
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(GraphError::DuplicateOrAntiparallelEdge(u.min(v), u.max(v)));
            }
        }
        Ok(OrderedGraph { n, edges: set })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn is_matching(&self) -> bool {
        let mut seen = vec![false; self.n];
        for (u, v) in self.edges() {
            if seen[u] || seen[v] {
                return false;
            }
            seen[u] = true;
            seen[v] = true;
        }
        true
    }

    /// Same graph with the vertex order reversed (i ↦ n−1−i).
    pub fn reversed(&self) -> OrderedGraph {
        let n = self.n;
        let edges: Vec<_> = self.edges().map(|(u, v)| (n - 1 - v, n - 1 - u)).collect();
        OrderedGraph::new(n, &edges).expect("reversal preserves simplicity")
    }

    /// True when `other` is an ordered subgraph: some increasing map sends its edges to edges here.
    pub fn contains_ordered(&self, other: &OrderedGraph) -> bool {
        fn go(a: &OrderedGraph, b: &OrderedGraph, map: &mut Vec<usize>, next: usize) -> bool {
            let i = map.len();
            if i == b.n {
                return true;
            }
            for x in next..a.n {
                if (0..i).all(|j| !b.has_edge(j, i) || a.has_edge(map[j], x)) {
                    map.push(x);
                    if go(a, b, map, x + 1) {
                        return true;
                    }
                    map.pop();
                }
            }
            false
        }
        go(self, other, &mut Vec::new(), 0)
    }
}
