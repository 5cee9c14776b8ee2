use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{forward_count, non_forward, EmbedError};
use crate::bitset::BitSet;
use crate::digraph::{AcyclicDigraph, Embedding, Tournament};
use crate::tourney::Host;

/// Embeds H with φ(v) ∈ V_v given |V_v| ≥ 4n and (V_i, V_j) being
/// (1 − 1/(8Δ²))-dense for every edge i → j. Both conditions are checked first.
pub fn inner_stage(h: &AcyclicDigraph, t: &Tournament, v: &[BitSet]) -> Result<Embedding, EmbedError> {
    inner_stage_in(&Host::from_tournament(t), h, v, true)
}

/// With `enforce` false the checks are skipped and a dead end is reported as `Stuck`.
pub fn inner_stage_in(host: &Host, h: &AcyclicDigraph, v: &[BitSet], enforce: bool) -> Result<Embedding, EmbedError> {
    let n = h.n();
    if v.len() != n {
        return Err(EmbedError::BadParameter(format!("{} sets for {n} vertices", v.len())));
    }
    let delta = h.max_degree() as u64;
    let scale = 8 * delta * delta;
    if enforce {
        if let Some(i) = (0..n).find(|&i| v[i].count() < 4 * n) {
            return Err(EmbedError::PreconditionViolated(format!(
                "|V_{i}| = {} is below 4n = {}",
                v[i].count(),
                4 * n
            )));
        }
        for &(i, j) in h.edges() {
            let f = forward_count(host, &v[i], &v[j]) as u128;
            let total = (v[i].count() * v[j].count()) as u128;
            if f * (scale as u128) < (scale as u128 - 1) * total {
                return Err(EmbedError::PreconditionViolated(format!(
                    "(V_{i}, V_{j}) has {f} of {total} pairs forward, below 1 − 1/(8Δ²)"
                )));
            }
        }
    }
    // drop from V_i every w with at least |V_j|/(4Δ) non-forward pairs into some V_j, i → j
    let u: Vec<BitSet> = (0..n)
        .map(|i| {
            let mut ui = v[i].clone();
            for &j in h.out_neighbors(i) {
                let lim = v[j].count() as u64;
                for w in v[i].iter() {
                    if non_forward(host, w, &v[j]) as u64 * 4 * delta >= lim {
                        ui.remove(w);
                    }
                }
            }
            ui
        })
        .collect();
    let mut map = vec![usize::MAX; n];
    let mut used = BitSet::new(host.n());
    for &x in h.topo_order() {
        let mut cands = u[x].clone();
        for &p in h.in_neighbors(x) {
            cands.intersect_with(host.out_row(map[p]));
        }
        cands.difference_with(&used);
        let Some(w) = cands.first() else {
            return Err(if enforce {
                EmbedError::Internal(format!("no candidate for vertex {x} despite valid preconditions"))
            } else {
                EmbedError::Stuck(x)
            });
        };
        map[x] = w;
        used.insert(w);
    }
    Ok(Embedding::new(map))
}

/// A host with one block of 4n vertices per pattern vertex (blocks in topological
/// order) where, for every edge i → j, exactly ⌊16n²/(8Δ²)⌋ block pairs are
/// reversed. All other orientations are random. Returns the host and the blocks.
pub fn threshold_instance(h: &AcyclicDigraph, seed: u64) -> (Tournament, Vec<BitSet>) {
    let n = h.n();
    let b = 4 * n;
    let total = n * b;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut block = vec![0usize; n];
    for (rank, &x) in h.topo_order().iter().enumerate() {
        block[x] = rank;
    }
    let delta = h.max_degree().max(1);
    let reversals = (b * b) / (8 * delta * delta);
    let mut flipped = std::collections::HashSet::new();
    for &(i, j) in h.edges() {
        let (bi, bj) = (block[i], block[j]);
        let mut pairs: Vec<(usize, usize)> =
            (0..b).flat_map(|p| (0..b).map(move |q| (bi * b + p, bj * b + q))).collect();
        pairs.shuffle(&mut rng);
        flipped.extend(pairs.into_iter().take(reversals));
    }
    let edge_blocks: std::collections::HashSet<(usize, usize)> =
        h.edges().iter().map(|&(i, j)| (block[i], block[j])).collect();
    let t = Tournament::from_fn(total, |x, y| {
        let (bx, by) = (x / b, y / b);
        if edge_blocks.contains(&(bx, by)) {
            !flipped.contains(&(x, y))
        } else {
            rng.gen::<bool>()
        }
    });
    let sets = (0..n).map(|x| BitSet::from_indices(total, block[x] * b..(block[x] + 1) * b)).collect();
    (t, sets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::generators::*;

    #[test]
    fn single_edge_between_forward_blocks() {
        let t = Tournament::transitive(16);
        let v = vec![BitSet::from_indices(16, 0..8), BitSet::from_indices(16, 8..16)];
        let e = inner_stage(&dipath(2), &t, &v).unwrap();
        e.validate(&dipath(2), &t).unwrap();
        let back = vec![v[1].clone(), v[0].clone()];
        assert!(matches!(inner_stage(&dipath(2), &t, &back), Err(EmbedError::PreconditionViolated(_))));
        let small = vec![BitSet::from_indices(16, 0..7), BitSet::from_indices(16, 8..16)];
        assert!(matches!(inner_stage(&dipath(2), &t, &small), Err(EmbedError::PreconditionViolated(_))));
    }

    #[test]
    fn leaves_may_share_a_set() {
        let h = out_star(2);
        let t = Tournament::transitive(24);
        let a = BitSet::from_indices(24, 0..12);
        let b = BitSet::from_indices(24, 12..24);
        let e = inner_stage(&h, &t, &[a, b.clone(), b]).unwrap();
        e.validate(&h, &t).unwrap();
    }

    #[test]
    fn threshold_instances_embed() {
        for seed in 0..12 {
            let h = crate::random::sample_gnp_oriented(5, 0.5, seed).unwrap();
            let (t, v) = threshold_instance(&h, seed);
            let e = inner_stage(&h, &t, &v).unwrap();
            e.validate(&h, &t).unwrap();
            assert!(e.map.iter().enumerate().all(|(x, &w)| v[x].contains(w)));
        }
    }
}
