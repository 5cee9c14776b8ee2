use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::GraphError;

/// A simple oriented acyclic digraph with a stored topological order.
///
/// Edges are kept sorted; the topological order breaks ties by smallest index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AcyclicDigraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    topo: Vec<usize>,
    rank: Vec<usize>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
    max_degree: usize,
}

impl AcyclicDigraph {
    /// Validates a raw edge list (0-based) and builds the digraph.
    pub fn new(n: usize, raw: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for &(u, v) in raw {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            out_adj[u].push(v);
            in_adj[v].push(u);
        }
        for v in 0..n {
            out_adj[v].sort_unstable();
            in_adj[v].sort_unstable();
        }
        for u in 0..n {
            for w in out_adj[u].windows(2) {
                if w[0] == w[1] {
                    return Err(GraphError::DuplicateOrAntiparallelEdge(u, w[0]));
                }
            }
            for &v in &out_adj[u] {
                if out_adj[v].binary_search(&u).is_ok() {
                    return Err(GraphError::DuplicateOrAntiparallelEdge(u.min(v), u.max(v)));
                }
            }
        }

        let mut indeg: Vec<usize> = in_adj.iter().map(Vec::len).collect();
        let mut heap: BinaryHeap<Reverse<usize>> =
            (0..n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(Reverse(u)) = heap.pop() {
            topo.push(u);
            for &v in &out_adj[u] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    heap.push(Reverse(v));
                }
            }
        }
        if topo.len() < n {
            return Err(GraphError::CycleFound(cycle_witness(&in_adj, &indeg)));
        }
        let mut rank = vec![0; n];
        for (i, &v) in topo.iter().enumerate() {
            rank[v] = i;
        }
        let mut edges: Vec<(usize, usize)> = raw.to_vec();
        edges.sort_unstable();
        let max_degree = (0..n)
            .map(|v| out_adj[v].len() + in_adj[v].len())
            .max()
            .unwrap_or(0);
        Ok(AcyclicDigraph {
            n,
            edges,
            topo,
            rank,
            out_adj,
            in_adj,
            max_degree,
        })
    }

    pub fn empty(n: usize) -> Self {
        AcyclicDigraph::new(n, &[]).expect("empty digraph is acyclic")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn topo_order(&self) -> &[usize] {
        &self.topo
    }

    /// Position of `v` in the stored topological order.
    pub fn rank(&self, v: usize) -> usize {
        self.rank[v]
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.in_adj[v]
    }

    /// Neighbors in the underlying undirected graph, sorted.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut all: Vec<usize> = self.out_adj[v].iter().chain(&self.in_adj[v]).copied().collect();
        all.sort_unstable();
        all
    }

    pub fn degree(&self, v: usize) -> usize {
        self.out_adj[v].len() + self.in_adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.out_adj[u].binary_search(&v).is_ok()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.has_edge(u, v) || self.has_edge(v, u)
    }

    /// True when every edge (u,v) has u < v.
    pub fn is_forward_in_index_order(&self) -> bool {
        self.edges.iter().all(|&(u, v)| u < v)
    }

    /// Induced sub-digraph on `verts` (in the given order), reindexed to `0..verts.len()`.
    pub fn induced(&self, verts: &[usize]) -> AcyclicDigraph {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in verts.iter().enumerate() {
            pos[v] = i;
        }
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter(|&&(u, v)| pos[u] != usize::MAX && pos[v] != usize::MAX)
            .map(|&(u, v)| (pos[u], pos[v]))
            .collect();
        AcyclicDigraph::new(verts.len(), &edges).expect("induced subgraph of an acyclic digraph")
    }

    /// Longest incoming directed path (in vertices) ending at each vertex.
    pub fn levels(&self) -> Vec<usize> {
        let mut level = vec![1; self.n];
        for &v in &self.topo {
            for &w in &self.out_adj[v] {
                level[w] = level[w].max(level[v] + 1);
            }
        }
        level
    }

    pub fn height(&self) -> usize {
        self.levels().into_iter().max().unwrap_or(0)
    }

    /// Weakly connected components, each sorted, ordered by smallest member.
    pub fn weak_components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![s];
            comp[s] = id;
            let mut members = vec![];
            while let Some(v) = stack.pop() {
                members.push(v);
                for &w in self.out_adj[v].iter().chain(&self.in_adj[v]) {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// True when the underlying undirected graph is a forest.
    pub fn is_forest(&self) -> bool {
        self.edges.len() + self.weak_components().len() == self.n
    }
}

fn cycle_witness(in_adj: &[Vec<usize>], indeg: &[usize]) -> Vec<usize> {
    let n = in_adj.len();
    let alive: Vec<bool> = (0..n).map(|v| indeg[v] > 0).collect();
    let start = (0..n).find(|&v| alive[v]).expect("cycle exists");
    let mut seen = vec![usize::MAX; n];
    let mut path = Vec::new();
    let mut v = start;
    while seen[v] == usize::MAX {
        seen[v] = path.len();
        path.push(v);
        v = *in_adj[v]
            .iter()
            .find(|&&u| alive[u])
            .expect("alive vertex has an alive in-neighbor");
    }
    let mut cyc: Vec<usize> = path[seen[v]..].to_vec();
    cyc.reverse();
    let m = cyc.iter().enumerate().min_by_key(|&(_, &x)| x).map(|(i, _)| i).unwrap();
    cyc.rotate_left(m);
    cyc
}
