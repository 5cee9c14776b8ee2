use super::{DensePair, EmbedError};
use crate::bitset::BitSet;
use crate::digraph::{AcyclicDigraph, Embedding, Tournament};
use crate::tourney::Host;

#[derive(Clone, Debug, PartialEq)]
pub enum ForestOutcome {
    /// φ(v) ∈ U_v for every v.
    Embedded(Embedding),
    /// All pairs between the two sets point W₁ → W₂; `component` is the tree that failed.
    Pair { pair: DensePair, component: Vec<usize> },
}

/// Embeds an oriented forest into per-vertex candidate sets, or returns a
/// 1-dense pair of size at least M/(4mΔ) where M = min |U_v| and m is the
/// largest component.
pub fn forest_dense_pair(h: &AcyclicDigraph, t: &Tournament, u: &[BitSet]) -> Result<ForestOutcome, EmbedError> {
    forest_dense_pair_in(&Host::from_tournament(t), h, u, true)
}

pub fn forest_dense_pair_in(
    host: &Host,
    h: &AcyclicDigraph,
    u: &[BitSet],
    enforce: bool,
) -> Result<ForestOutcome, EmbedError> {
    let n = h.n();
    if u.len() != n {
        return Err(EmbedError::BadParameter(format!("{} candidate sets for {n} vertices", u.len())));
    }
    if !h.is_forest() {
        return Err(EmbedError::PreconditionViolated("pattern is not an oriented forest".into()));
    }
    let delta = h.max_degree();
    let comps = h.weak_components();
    let m = comps.iter().map(|c| c.len()).max().unwrap_or(0);
    let big_m = u.iter().map(|s| s.count()).min().unwrap_or(0);
    let required = 3 * n * delta.max(1);
    if enforce && big_m < required {
        return Err(EmbedError::PreconditionTooSmall { required: required as u128, got: big_m });
    }
    let mut map = vec![usize::MAX; n];
    let mut used = BitSet::new(host.n());
    for comp in &comps {
        let sets: Vec<BitSet> = comp
            .iter()
            .map(|&v| {
                let mut s = u[v].clone();
                s.difference_with(&used);
                s
            })
            .collect();
        match tree_dense_pair(host, h, comp, &sets, delta.max(1))? {
            TreeResult::Embedded(images) => {
                for (&v, &x) in comp.iter().zip(&images) {
                    map[v] = x;
                    used.insert(x);
                }
            }
            TreeResult::Pair(pair) => {
                if enforce && delta > 0 {
                    let bound = big_m as f64 / (4.0 * m as f64 * delta as f64);
                    if (pair.size() as f64) < bound - 1e-9 {
                        return Err(EmbedError::Internal(format!("1-dense pair of size {} below {bound}", pair.size())));
                    }
                }
                return Ok(ForestOutcome::Pair { pair, component: comp.clone() });
            }
            TreeResult::Stuck(v) => return Err(EmbedError::Stuck(v)),
        }
    }
    Ok(ForestOutcome::Embedded(Embedding::new(map)))
}

enum TreeResult {
    Embedded(Vec<usize>),
    Pair(DensePair),
    Stuck(usize),
}

/// One weakly connected tree `comp` with candidate sets `sets` (aligned with comp).
fn tree_dense_pair(
    host: &Host,
    h: &AcyclicDigraph,
    comp: &[usize],
    sets: &[BitSet],
    delta: usize,
) -> Result<TreeResult, EmbedError> {
    let k = comp.len();
    let local = |v: usize| comp.binary_search(&v).expect("vertex in component");
    let m_prime = sets.iter().map(|s| s.count()).min().unwrap_or(0);
    let size = m_prime / k;
    if size == 0 {
        return Ok(TreeResult::Stuck(comp[0]));
    }
    // pairwise disjoint V_i ⊆ U_i of equal size, smallest indices first
    let mut taken = BitSet::new(host.n());
    let mut v_sets = Vec::with_capacity(k);
    for s in sets {
        let mut avail = s.clone();
        avail.difference_with(&taken);
        let pick = BitSet::from_indices(host.n(), avail.iter().take(size));
        if pick.count() < size {
            return Err(EmbedError::Internal("disjointification ran out of candidates".into()));
        }
        taken.union_with(&pick);
        v_sets.push(pick);
    }
    // BFS from the smallest vertex; reversed, every vertex precedes its parent
    let mut parent = vec![usize::MAX; k];
    let mut bfs = vec![0usize];
    let mut seen = vec![false; k];
    seen[0] = true;
    let mut i = 0;
    while i < bfs.len() {
        let a = bfs[i];
        i += 1;
        for w in h.neighbors(comp[a]) {
            let b = local(w);
            if !seen[b] {
                seen[b] = true;
                parent[b] = a;
                bfs.push(b);
            }
        }
    }
    let children = |a: usize| -> Vec<usize> { (0..k).filter(|&b| parent[b] == a).collect() };
    let threshold = size as f64 / (delta + 1) as f64;
    // W_a: images of a that extend to an embedding of the subtree below a
    let mut w: Vec<BitSet> = vec![BitSet::new(host.n()); k];
    let mut reach: Vec<Option<BitSet>> = vec![None; k];
    for &a in bfs.iter().rev() {
        let mut wa = v_sets[a].clone();
        for b in children(a) {
            let mut r = BitSet::new(host.n());
            let into_a = h.has_edge(comp[b], comp[a]);
            for x in w[b].iter() {
                r.union_with(if into_a { host.out_row(x) } else { host.in_row(x) });
            }
            wa.intersect_with(&r);
            reach[b] = Some(r);
        }
        w[a] = wa;
    }
    if !w[0].is_empty() {
        let mut img = vec![usize::MAX; k];
        for &a in &bfs {
            let mut cands = w[a].clone();
            if parent[a] != usize::MAX {
                let p = img[parent[a]];
                cands.intersect_with(if h.has_edge(comp[parent[a]], comp[a]) { host.out_row(p) } else { host.in_row(p) });
            }
            img[a] = cands.first().ok_or_else(|| EmbedError::Internal("top-down reconstruction failed".into()))?;
        }
        return Ok(TreeResult::Embedded(img));
    }
    // first vertex in the order whose W falls below the threshold
    let a = *bfs
        .iter()
        .rev()
        .find(|&&a| (w[a].count() as f64) < threshold)
        .expect("the root has an empty W");
    let mut best: Option<(usize, BitSet)> = None;
    for b in children(a) {
        let mut x = v_sets[a].clone();
        x.difference_with(reach[b].as_ref().expect("child processed"));
        if best.as_ref().is_none_or(|(_, bx)| x.count() > bx.count()) {
            best = Some((b, x));
        }
    }
    let (b, x) = best.ok_or_else(|| EmbedError::Internal("leaf below threshold".into()))?;
    // no vertex of W_b has the wanted edge to X, so every pair points the other way
    let pair = if h.has_edge(comp[b], comp[a]) {
        DensePair::from_sets(host, &x, &w[b])?
    } else {
        DensePair::from_sets(host, &w[b], &x)?
    };
    if pair.forward_count != (pair.w1.len() * pair.w2.len()) as u64 {
        return Err(EmbedError::Internal("forest pair is not 1-dense".into()));
    }
    Ok(TreeResult::Pair(pair))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::generators::*;
    use crate::embed::validate_dense_pair;
    use crate::tourney::random_tournament;

    fn all(n: usize, k: usize) -> Vec<BitSet> {
        vec![BitSet::full(n); k]
    }

    #[test]
    fn single_edge_and_star() {
        let t = random_tournament(10, 2);
        match forest_dense_pair(&dipath(2), &t, &all(10, 2)).unwrap() {
            ForestOutcome::Embedded(e) => e.validate(&dipath(2), &t).unwrap(),
            p => panic!("{p:?}"),
        }
        let tt = Tournament::transitive(40);
        let star = out_star(3);
        match forest_dense_pair(&star, &tt, &all(40, 4)).unwrap() {
            ForestOutcome::Embedded(e) => e.validate(&star, &tt).unwrap(),
            p => panic!("{p:?}"),
        }
        assert!(matches!(
            forest_dense_pair(&star, &tt, &all(20, 4)[..].iter().map(|_| BitSet::from_indices(40, 0..20)).collect::<Vec<_>>()),
            Err(EmbedError::PreconditionTooSmall { required: 36, got: 20 })
        ));
    }

    #[test]
    fn blocked_star_gives_a_full_pair() {
        // the center may only sit above all leaf candidates in a transitive host
        let tt = Tournament::transitive(80);
        let star = out_star(3);
        let mut u = vec![BitSet::from_indices(80, 40..80)];
        u.extend((0..3).map(|_| BitSet::from_indices(80, 0..40)));
        match forest_dense_pair(&star, &tt, &u).unwrap() {
            ForestOutcome::Pair { pair, .. } => {
                assert_eq!(validate_dense_pair(&tt, &pair.w1, &pair.w2).unwrap(), 1.0);
                assert!(pair.size() as f64 >= 40.0 / (4.0 * 4.0 * 3.0));
            }
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn random_forests_respect_sets_or_give_pairs() {
        for seed in 0..40u64 {
            let h = crate::random::sample_gnp_oriented(6, 0.3, seed).unwrap();
            if !h.is_forest() {
                continue;
            }
            let need = 3 * 6 * h.max_degree().max(1);
            let n = need * 2;
            let t = random_tournament(n, seed);
            let u: Vec<BitSet> = (0..6)
                .map(|v| BitSet::from_indices(n, (0..n).filter(|x| !(x + v * 7 + seed as usize).is_multiple_of(3))))
                .collect();
            match forest_dense_pair(&h, &t, &u).unwrap() {
                ForestOutcome::Embedded(e) => {
                    e.validate(&h, &t).unwrap();
                    assert!(e.map.iter().enumerate().all(|(v, &x)| u[v].contains(x)));
                }
                ForestOutcome::Pair { pair, .. } => {
                    assert_eq!(validate_dense_pair(&t, &pair.w1, &pair.w2).unwrap(), 1.0);
                }
            }
        }
    }
}
