use std::collections::BTreeMap;

use super::canon::canonical;
use super::RamseyError;
use crate::digraph::AcyclicDigraph;

/// Largest tree size enumerated (8⁶ labeled trees at the top).
pub const ORIENTED_TREE_MAX_N: usize = 8;

/// Labeled tree from a Prüfer sequence over [n], n ≥ 2.
fn prufer_decode(n: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf exists");
        edges.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Arc matrix: 1 for u→v, 2 for v→u, 0 for non-adjacent.
fn arc_matrix(n: usize, edges: &[(usize, usize)], directed: bool) -> Vec<u8> {
    let mut m = vec![0; n * n];
    for &(u, v) in edges {
        m[u * n + v] = 1;
        m[v * n + u] = if directed { 2 } else { 1 };
    }
    m
}

/// One edge list per unlabeled tree on n vertices.
pub fn free_trees(n: usize) -> Result<Vec<Vec<(usize, usize)>>, RamseyError> {
    if n == 0 || n > ORIENTED_TREE_MAX_N {
        return Err(RamseyError::BadParameter(format!("tree size {n} outside 1..={ORIENTED_TREE_MAX_N}")));
    }
    if n == 1 {
        return Ok(vec![Vec::new()]);
    }
    let mut classes = BTreeMap::new();
    let total = n.pow(n as u32 - 2);
    for mut code in 0..total {
        let seq: Vec<usize> = (0..n - 2)
            .map(|_| {
                let d = code % n;
                code /= n;
                d
            })
            .collect();
        let edges = prufer_decode(n, &seq);
        let key = canonical(n, &arc_matrix(n, &edges, false)).0;
        classes.entry(key).or_insert(edges);
    }
    Ok(classes.into_values().collect())
}

/// Every oriented tree on n vertices up to isomorphism: each free tree under
/// all 2^{n−1} orientations, deduplicated by digraph canonical form.
pub fn oriented_trees(n: usize) -> Result<Vec<AcyclicDigraph>, RamseyError> {
    let mut classes = BTreeMap::new();
    for tree in free_trees(n)? {
        for mask in 0..1u32 << tree.len() {
            let edges: Vec<(usize, usize)> =
                tree.iter().enumerate().map(|(b, &(u, v))| if mask >> b & 1 == 1 { (v, u) } else { (u, v) }).collect();
            let key = canonical(n, &arc_matrix(n, &edges, true)).0;
            classes.entry(key).or_insert(edges);
        }
    }
    classes.into_values().map(|e| Ok(AcyclicDigraph::new(n, &e)?)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ramsey::canon::canonical_brute;
    use std::collections::BTreeSet;

    #[test]
    fn counts_match_brute_force_classes() {
        for n in 1..=6 {
            let trees = oriented_trees(n).unwrap();
            let brute: BTreeSet<Vec<u8>> = trees.iter().map(|t| canonical_brute(n, &arc_matrix(n, t.edges(), true))).collect();
            assert_eq!(brute.len(), trees.len());
            for t in &trees {
                assert!(t.is_forest() && t.weak_components().len() == 1);
            }
        }
        let free: Vec<usize> = (1..=7).map(|n| free_trees(n).unwrap().len()).collect();
        assert_eq!(free, vec![1, 1, 1, 2, 3, 6, 11]);
        let oriented: Vec<usize> = (1..=6).map(|n| oriented_trees(n).unwrap().len()).collect();
        assert_eq!(oriented, vec![1, 1, 3, 8, 27, 91]);
    }
}
