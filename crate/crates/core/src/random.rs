//! Random sparse digraphs: the pairings model for d-regular graphs, oriented
//! G(n,p), component structure and interval forest partitions.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::digraph::{AcyclicDigraph, DirectedPartition, GraphError};

pub const REJECTION_BUDGET: usize = 1000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RandomError {
    #[error("n·d = {n}·{d} is odd")]
    OddPoints { n: usize, d: usize },
    #[error("no simple pairing within {0} attempts")]
    RejectionBudget(usize),
    #[error("probability {0} outside [0, 1]")]
    BadProbability(f64),
    #[error("digraph is not forward in index order")]
    NotForward,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// (nd)! / ((nd/2)! · 2^{nd/2}), the number of perfect matchings on nd points.
pub fn pairing_count(n: usize, d: usize) -> Result<BigUint, RandomError> {
    let p = n * d;
    if p % 2 == 1 {
        return Err(RandomError::OddPoints { n, d });
    }
    let fact = |k: usize| (1..=k).fold(BigUint::from(1u32), |a, i| a * BigUint::from(i));
    Ok(fact(p) / (fact(p / 2) * (BigUint::from(1u32) << (p / 2))))
}

/// A uniform perfect matching on nd points; point x belongs to vertex x / d.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingOutcome {
    pub n: usize,
    pub d: usize,
    pub pairs: Vec<(usize, usize)>,
    /// Multigraph edges (u ≤ v), one per pair.
    pub edges: Vec<(usize, usize)>,
    pub simple: bool,
}

pub fn sample_pairing(n: usize, d: usize, seed: u64) -> Result<PairingOutcome, RandomError> {
    sample_pairing_with(n, d, &mut rng(seed))
}

fn sample_pairing_with(n: usize, d: usize, r: &mut ChaCha8Rng) -> Result<PairingOutcome, RandomError> {
    if (n * d) % 2 == 1 {
        return Err(RandomError::OddPoints { n, d });
    }
    // pair the lowest unmatched point with a uniform partner among the rest
    let mut free: Vec<usize> = (0..n * d).rev().collect();
    let mut pairs = Vec::with_capacity(n * d / 2);
    while let Some(a) = free.pop() {
        let k = r.gen_range(0..free.len());
        let b = free.remove(k);
        pairs.push((a, b));
    }
    let mut edges: Vec<(usize, usize)> = pairs
        .iter()
        .map(|&(a, b)| {
            let (u, v) = (a / d, b / d);
            (u.min(v), u.max(v))
        })
        .collect();
    edges.sort_unstable();
    let simple = edges.iter().all(|&(u, v)| u != v) && edges.windows(2).all(|w| w[0] != w[1]);
    Ok(PairingOutcome { n, d, pairs, edges, simple })
}

/// Random d-regular graph (pairings conditioned on simplicity), every edge
/// oriented toward the larger index.
pub fn sample_grd_oriented(n: usize, d: usize, seed: u64) -> Result<AcyclicDigraph, RandomError> {
    let mut r = rng(seed);
    for _ in 0..REJECTION_BUDGET {
        let p = sample_pairing_with(n, d, &mut r)?;
        if p.simple {
            return Ok(AcyclicDigraph::new(n, &p.edges)?);
        }
    }
    Err(RandomError::RejectionBudget(REJECTION_BUDGET))
}

pub fn sample_gnp_oriented(n: usize, p: f64, seed: u64) -> Result<AcyclicDigraph, RandomError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(RandomError::BadProbability(p));
    }
    let mut r = rng(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if r.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Ok(AcyclicDigraph::new(n, &edges)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentInfo {
    pub vertices: Vec<usize>,
    pub edges: usize,
    /// |E| − |V| + 1.
    pub cycle_count: usize,
}

/// Connected components of the underlying graph of G[S], sorted by smallest vertex.
pub fn component_analysis(g: &AcyclicDigraph, s: &[usize]) -> Vec<ComponentInfo> {
    let n = g.n();
    let mut inside = vec![false; n];
    for &v in s {
        inside[v] = true;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let inner: Vec<(usize, usize)> =
        g.edges().iter().copied().filter(|&(u, v)| inside[u] && inside[v]).collect();
    for &(u, v) in &inner {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut by_root: std::collections::BTreeMap<usize, ComponentInfo> = Default::default();
    let mut verts: Vec<usize> = s.to_vec();
    verts.sort_unstable();
    verts.dedup();
    for v in verts {
        let root = find(&mut parent, v);
        by_root
            .entry(root)
            .or_insert_with(|| ComponentInfo { vertices: vec![], edges: 0, cycle_count: 0 })
            .vertices
            .push(v);
    }
    for &(u, _) in &inner {
        let root = find(&mut parent, u);
        by_root.get_mut(&root).unwrap().edges += 1;
    }
    let mut out: Vec<ComponentInfo> = by_root.into_values().collect();
    for c in out.iter_mut() {
        c.cycle_count = c.edges + 1 - c.vertices.len();
    }
    out.sort_by_key(|c| c.vertices[0]);
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ForestPartitionOutcome {
    Success {
        partition: DirectedPartition,
        /// Number of nonempty parts.
        parts: usize,
        /// Largest weak component inside a part.
        max_component: usize,
    },
    /// Some interval induces a component with at least two cycles.
    Failure { interval: usize, component: Vec<usize>, cycles: usize },
}

/// Interval boundaries: `count` near-equal intervals, the first n mod count one longer.
pub fn intervals(n: usize, count: usize) -> Vec<(usize, usize)> {
    let (q, r) = (n / count, n % count);
    let mut out = Vec::with_capacity(count);
    let mut start = 0;
    for i in 0..count {
        let len = q + usize::from(i < r);
        out.push((start, start + len));
        start += len;
    }
    out
}

/// Splits [n] into 5d intervals; inside each, every unicyclic component is cut at
/// its smallest cycle vertex c: its vertices ≤ c stay in the first half-part and
/// the rest move to the second, so both halves are forests and cross edges point
/// forward. Empty parts are dropped.
pub fn random_forest_partition(h: &AcyclicDigraph, d: usize) -> Result<ForestPartitionOutcome, RandomError> {
    if !h.is_forward_in_index_order() {
        return Err(RandomError::NotForward);
    }
    let count = (5 * d).max(1);
    let mut parts = Vec::new();
    for (idx, (a, b)) in intervals(h.n(), count).into_iter().enumerate() {
        let block: Vec<usize> = (a..b).collect();
        let (mut first, mut second) = (Vec::new(), Vec::new());
        for comp in component_analysis(h, &block) {
            match comp.cycle_count {
                0 => first.extend(&comp.vertices),
                1 => {
                    let c = smallest_cycle_vertex(h, &comp.vertices);
                    for &v in &comp.vertices {
                        if v <= c {
                            first.push(v);
                        } else {
                            second.push(v);
                        }
                    }
                }
                k => {
                    return Ok(ForestPartitionOutcome::Failure {
                        interval: idx,
                        component: comp.vertices,
                        cycles: k,
                    })
                }
            }
        }
        for p in [first, second] {
            if !p.is_empty() {
                parts.push(p);
            }
        }
    }
    let partition = DirectedPartition::new(parts);
    let max_component = partition.max_component(h);
    Ok(ForestPartitionOutcome::Success { parts: partition.len(), partition, max_component })
}

/// Smallest vertex on the unique cycle of a unicyclic component: strip leaves
/// until only the cycle is left.
fn smallest_cycle_vertex(h: &AcyclicDigraph, comp: &[usize]) -> usize {
    let inside: std::collections::HashSet<usize> = comp.iter().copied().collect();
    let mut deg: std::collections::HashMap<usize, usize> = comp
        .iter()
        .map(|&v| (v, h.neighbors(v).into_iter().filter(|u| inside.contains(u)).count()))
        .collect();
    let mut stack: Vec<usize> = comp.iter().copied().filter(|v| deg[v] <= 1).collect();
    let mut gone = std::collections::HashSet::new();
    while let Some(v) = stack.pop() {
        if !gone.insert(v) {
            continue;
        }
        for u in h.neighbors(v) {
            if inside.contains(&u) && !gone.contains(&u) {
                let e = deg.get_mut(&u).unwrap();
                *e -= 1;
                if *e == 1 {
                    stack.push(u);
                }
            }
        }
    }
    *comp.iter().filter(|v| !gone.contains(v)).min().expect("component has a cycle")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::generators::transitive;

    #[test]
    fn pairing_counts() {
        assert_eq!(pairing_count(2, 1).unwrap(), BigUint::from(1u32));
        assert_eq!(pairing_count(2, 2).unwrap(), BigUint::from(3u32));
        assert_eq!(pairing_count(3, 2).unwrap(), BigUint::from(15u32));
        // (nd − 1)!! for larger values
        let dbl = (1..20u32).step_by(2).fold(BigUint::from(1u32), |a, k| a * BigUint::from(k));
        assert_eq!(pairing_count(5, 4).unwrap(), dbl);
        assert!(pairing_count(3, 3).is_err());
    }

    #[test]
    fn pairings_are_perfect_matchings() {
        for seed in 0..50 {
            let p = sample_pairing(10, 3, seed).unwrap();
            let mut pts: Vec<usize> = p.pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
            pts.sort_unstable();
            assert_eq!(pts, (0..30).collect::<Vec<_>>());
        }
        assert!(sample_pairing(20, 1, 4).unwrap().simple);
    }

    #[test]
    fn simple_outcomes_on_four_vertices_are_equifrequent() {
        // the simple 2-regular graphs on 4 labeled vertices are the three 4-cycles
        let mut freq = std::collections::HashMap::new();
        let trials = 6000u64;
        for s in 0..trials {
            let g = sample_grd_oriented(4, 2, s).unwrap();
            *freq.entry(g.edges().to_vec()).or_insert(0u64) += 1;
        }
        assert_eq!(freq.len(), 3);
        let sigma = (trials as f64 * (1.0 / 3.0) * (2.0 / 3.0)).sqrt();
        for &c in freq.values() {
            assert!((c as f64 - trials as f64 / 3.0).abs() <= 3.0 * sigma, "{freq:?}");
        }
    }

    #[test]
    fn grd_is_regular_and_forward() {
        for seed in 0..10 {
            let g = sample_grd_oriented(50, 3, seed).unwrap();
            assert!((0..50).all(|v| g.degree(v) == 3));
            assert!(g.is_forward_in_index_order());
        }
        assert!(sample_grd_oriented(5, 3, 0).is_err());
    }

    #[test]
    fn gnp_extremes_and_mean() {
        assert_eq!(sample_gnp_oriented(7, 0.0, 1).unwrap().edge_count(), 0);
        assert_eq!(sample_gnp_oriented(7, 1.0, 1).unwrap(), transitive(7));
        assert!(sample_gnp_oriented(3, 1.5, 1).is_err());
        let (n, p, trials) = (30usize, 0.2, 200u64);
        let pairs = (n * (n - 1) / 2) as f64;
        let total: usize = (0..trials).map(|s| sample_gnp_oriented(n, p, s).unwrap().edge_count()).sum();
        let mean = total as f64 / trials as f64;
        let sigma = (pairs * p * (1.0 - p) / trials as f64).sqrt();
        assert!((mean - p * pairs).abs() <= 4.0 * sigma, "mean {mean}");
    }

    fn dfs_cycle_rank(g: &AcyclicDigraph, s: &[usize]) -> usize {
        // cycle rank = non-tree edges of a DFS forest
        let inside: std::collections::HashSet<usize> = s.iter().copied().collect();
        let mut seen = std::collections::HashSet::new();
        let mut tree_edges = 0;
        for &r in s {
            if !seen.insert(r) {
                continue;
            }
            let mut stack = vec![r];
            while let Some(v) = stack.pop() {
                for u in g.neighbors(v) {
                    if inside.contains(&u) && seen.insert(u) {
                        tree_edges += 1;
                        stack.push(u);
                    }
                }
            }
        }
        let inner = g.edges().iter().filter(|(u, v)| inside.contains(u) && inside.contains(v)).count();
        inner - tree_edges
    }

    #[test]
    fn cycle_counts_match_dfs() {
        for seed in 0..1000u64 {
            let g = sample_gnp_oriented(12, 0.15, seed).unwrap();
            let s: Vec<usize> = (0..12).filter(|v| (seed >> (v % 8)) & 1 == 0 || v % 3 == 0).collect();
            let comps = component_analysis(&g, &s);
            let total: usize = comps.iter().map(|c| c.cycle_count).sum();
            assert_eq!(total, dfs_cycle_rank(&g, &s), "seed {seed}");
            assert_eq!(comps.iter().map(|c| c.vertices.len()).sum::<usize>(), s.len());
        }
    }

    #[test]
    fn tree_and_unicyclic_components() {
        let path = AcyclicDigraph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(component_analysis(&path, &[0, 1, 2, 3])[0].cycle_count, 0);
        let uni = AcyclicDigraph::new(5, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        let c = component_analysis(&uni, &[0, 1, 2, 3, 4]);
        assert_eq!(c.len(), 2);
        assert_eq!(c[0].cycle_count, 1);
        assert_eq!(smallest_cycle_vertex(&uni, &c[0].vertices), 0);
    }

    #[test]
    fn forest_partition_outcomes() {
        assert!(matches!(
            random_forest_partition(&transitive(40), 1).unwrap(),
            ForestPartitionOutcome::Failure { .. }
        ));
        let path = AcyclicDigraph::new(20, &(0..19).map(|i| (i, i + 1)).collect::<Vec<_>>()).unwrap();
        match random_forest_partition(&path, 2).unwrap() {
            ForestPartitionOutcome::Success { partition, parts, .. } => {
                assert_eq!(parts, 10);
                partition.validate_forest_parts(&path).unwrap();
            }
            f => panic!("{f:?}"),
        }
        for seed in 0..20 {
            let g = sample_grd_oriented(300, 3, seed).unwrap();
            if let ForestPartitionOutcome::Success { partition, parts, .. } = random_forest_partition(&g, 3).unwrap() {
                assert!(parts <= 30);
                partition.validate_forest_parts(&g).unwrap();
            }
        }
    }

    #[test]
    fn interval_lengths() {
        let iv = intervals(17, 5);
        assert_eq!(iv, vec![(0, 4), (4, 8), (8, 11), (11, 14), (14, 17)]);
    }
}
