use super::{non_backward, non_forward, DensePair, EmbedError};
use crate::bitset::BitSet;
use crate::digraph::{degeneracy_order, AcyclicDigraph, Embedding, Tournament};
use crate::tourney::Host;

/// State at the first step with no valid choice.
#[derive(Clone, Debug, PartialEq)]
pub struct FailureWitness {
    /// Position in the embedding order (0-based).
    pub step: usize,
    pub vertex: usize,
    /// Candidate sets U_j before the failed step, indexed by pattern vertex;
    /// entries for already placed vertices are their singleton images.
    pub candidates: Vec<BitSet>,
    /// The later neighbor blamed by most vertices of W₀ (ties to the earliest position).
    pub popular: Option<usize>,
    /// (w, blamed pattern vertex) for every w ∈ W₀.
    pub assigned: Vec<(usize, usize)>,
    pub w0: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum GreedyOutcome {
    Embedded(Embedding),
    Failed(FailureWitness),
}

/// Which orientation the failing step saw toward the popular neighbor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// v_t → v_j: the blamed vertices have few out-neighbors in U_j, so (U_j, W) is dense.
    OutNeighbor,
    /// v_j → v_t: few in-neighbors in U_j, so (W, U_j) is dense.
    InNeighbor,
}

#[derive(Clone, Debug, PartialEq)]
pub enum DenseOutcome {
    Embedded(Embedding),
    Pair { pair: DensePair, branch: Branch, witness: FailureWitness },
}

fn check_order(h: &AcyclicDigraph, order: &[usize]) -> Result<(), EmbedError> {
    let mut seen = vec![false; h.n()];
    if order.len() != h.n() || order.iter().any(|&v| v >= h.n() || std::mem::replace(&mut seen[v], true)) {
        return Err(EmbedError::BadParameter("order is not a permutation of V(H)".into()));
    }
    Ok(())
}

fn check_c(c: f64) -> Result<(), EmbedError> {
    if !(c > 0.0 && c <= 0.5) {
        return Err(EmbedError::BadParameter(format!("c = {c} outside (0, 1/2]")));
    }
    Ok(())
}

/// Greedy embedding along `order` with all candidate sets starting at V(T).
pub fn greedy_embed(h: &AcyclicDigraph, t: &Tournament, order: &[usize], c: f64) -> Result<GreedyOutcome, EmbedError> {
    check_c(c)?;
    greedy_in(&Host::from_tournament(t), h, order, c, &BitSet::full(t.n()))
}

pub(crate) fn greedy_in(
    host: &Host,
    h: &AcyclicDigraph,
    order: &[usize],
    c: f64,
    within: &BitSet,
) -> Result<GreedyOutcome, EmbedError> {
    check_order(h, order)?;
    let n = h.n();
    let big_n = within.count() as f64;
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut u: Vec<BitSet> = vec![within.clone(); n];
    let mut backs = vec![0i32; n];
    let mut map = vec![usize::MAX; n];
    for (s, &v) in order.iter().enumerate() {
        let later: Vec<usize> = {
            let mut l: Vec<usize> = h.neighbors(v).into_iter().filter(|&j| pos[j] > s).collect();
            l.sort_by_key(|&j| pos[j]);
            l
        };
        // first later neighbor whose look-ahead test w fails, if any
        let blame = |w: usize| -> Option<usize> {
            later.iter().copied().find(|&j| {
                let keep = if h.has_edge(v, j) { non_backward(host, w, &u[j]) } else { non_forward(host, w, &u[j]) };
                (keep as f64) < c * u[j].count() as f64
            })
        };
        let chosen = u[v].iter().find(|&w| blame(w).is_none());
        let Some(w) = chosen else {
            let w0 = u[v].to_vec();
            let assigned: Vec<(usize, usize)> = w0.iter().map(|&w| (w, blame(w).expect("w failed"))).collect();
            let popular = later
                .iter()
                .copied()
                .max_by_key(|&j| (assigned.iter().filter(|a| a.1 == j).count(), std::cmp::Reverse(pos[j])))
                .filter(|&j| assigned.iter().any(|a| a.1 == j));
            return Ok(GreedyOutcome::Failed(FailureWitness {
                step: s,
                vertex: v,
                candidates: u,
                popular,
                assigned,
                w0,
            }));
        };
        map[v] = w;
        u[v] = BitSet::from_indices(host.n(), [w]);
        for &j in order[s + 1..].iter() {
            if h.has_edge(v, j) {
                u[j].intersect_with(host.out_row(w));
                backs[j] += 1;
            } else if h.has_edge(j, v) {
                u[j].intersect_with(host.in_row(w));
                backs[j] += 1;
            }
            u[j].remove(w);
            let floor = c.powi(backs[j]) * big_n - (s + 1) as f64;
            if (u[j].count() as f64) < floor - 1e-9 * big_n.max(1.0) {
                return Err(EmbedError::Internal(format!(
                    "candidate set of vertex {j} fell to {} below {floor}",
                    u[j].count()
                )));
            }
        }
    }
    Ok(GreedyOutcome::Embedded(Embedding::new(map)))
}

/// Greedy embedding in a degeneracy order; on failure, the (1−c)-dense pair
/// of size at least c^d·N/(2Δ) read off from the failed step.
pub fn find_dense_pair(h: &AcyclicDigraph, t: &Tournament, c: f64) -> Result<DenseOutcome, EmbedError> {
    find_dense_pair_in(&Host::from_tournament(t), h, c, &BitSet::full(t.n()), true)
}

/// Same, restricted to the host vertices in `within`. With `enforce` false the
/// size precondition and the output size bound are not checked.
pub fn find_dense_pair_in(
    host: &Host,
    h: &AcyclicDigraph,
    c: f64,
    within: &BitSet,
    enforce: bool,
) -> Result<DenseOutcome, EmbedError> {
    check_c(c)?;
    let (d, order) = degeneracy_order(h);
    let delta = h.max_degree();
    let big_n = within.count();
    let n = h.n();
    let required = if delta == 0 { n as f64 } else { 2.0 * delta as f64 * n as f64 / c.powi(d as i32) };
    if enforce && (big_n as f64) < required - 1e-9 {
        return Err(EmbedError::PreconditionTooSmall { required: (required - 1e-9).ceil() as u128, got: big_n });
    }
    let w = match greedy_in(host, h, &order, c, within)? {
        GreedyOutcome::Embedded(e) => return Ok(DenseOutcome::Embedded(e)),
        GreedyOutcome::Failed(w) => w,
    };
    let Some(j) = w.popular else {
        return Err(if enforce {
            EmbedError::Internal(format!("failed at step {} with no candidates", w.step))
        } else {
            EmbedError::Stuck(w.vertex)
        });
    };
    let v = w.vertex;
    let uj = &w.candidates[j];
    let blamed: Vec<usize> = if h.has_edge(v, j) {
        w.w0.iter().copied().filter(|&x| (non_backward(host, x, uj) as f64) < c * uj.count() as f64).collect()
    } else {
        w.w0.iter().copied().filter(|&x| (non_forward(host, x, uj) as f64) < c * uj.count() as f64).collect()
    };
    let bset = BitSet::from_indices(host.n(), blamed);
    let (pair, branch) = if h.has_edge(v, j) {
        (DensePair::from_sets(host, uj, &bset)?, Branch::OutNeighbor)
    } else {
        (DensePair::from_sets(host, &bset, uj)?, Branch::InNeighbor)
    };
    if enforce {
        let bound = c.powi(d as i32) * big_n as f64 / (2.0 * delta as f64);
        if (pair.size() as f64) < bound - 1e-9 || pair.delta_achieved < 1.0 - c - 1e-12 {
            return Err(EmbedError::Internal(format!(
                "pair of size {} and density {} misses the guarantee",
                pair.size(),
                pair.delta_achieved
            )));
        }
    }
    Ok(DenseOutcome::Pair { pair, branch, witness: w })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::generators::*;
    use crate::embed::validate_dense_pair;
    use crate::tourney::{lex_power, paley, random_tournament};

    #[test]
    fn greedy_examples() {
        let t = random_tournament(5, 1);
        match greedy_embed(&dipath(2), &t, &[0, 1], 0.5).unwrap() {
            GreedyOutcome::Embedded(e) => e.validate(&dipath(2), &t).unwrap(),
            f => panic!("{f:?}"),
        }
        let c3 = paley(3).unwrap();
        assert!(matches!(greedy_embed(&transitive(3), &c3, &[0, 1, 2], 0.5).unwrap(), GreedyOutcome::Failed(_)));
        assert!(greedy_embed(&dipath(2), &t, &[0, 0], 0.5).is_err());
        assert!(greedy_embed(&dipath(2), &t, &[0, 1], 0.7).is_err());
    }

    #[test]
    fn precondition_size() {
        let t = random_tournament(191, 0);
        assert_eq!(
            find_dense_pair(&transitive(4), &t, 0.5),
            Err(EmbedError::PreconditionTooSmall { required: 192, got: 191 })
        );
        let single = AcyclicDigraph::empty(1);
        for n in 1..5 {
            assert!(matches!(
                find_dense_pair(&single, &random_tournament(n, 3), 0.5).unwrap(),
                DenseOutcome::Embedded(_)
            ));
        }
    }

    /// TT₂·C₃^m: every score is about N/4 or 3N/4, far from N/2.
    fn skewed(at_least: usize) -> Tournament {
        let mut m = 1;
        while 2 * 3usize.pow(m) < at_least {
            m += 1;
        }
        let blown = lex_power(&paley(3).unwrap(), m).unwrap();
        crate::tourney::lex_product(&Tournament::transitive(2), &blown).unwrap()
    }

    #[test]
    fn unbalanced_host_forces_a_pair() {
        // the middle of 0 → 2 → 1 is placed first and needs both many in- and out-neighbors
        let h = AcyclicDigraph::new(3, &[(0, 2), (2, 1)]).unwrap();
        assert_eq!(degeneracy_order(&h).1[0], 2);
        let t = skewed(54);
        match find_dense_pair(&h, &t, 0.5).unwrap() {
            DenseOutcome::Pair { pair, branch, witness } => {
                assert_eq!(witness.step, 0);
                assert_eq!(witness.w0.len(), 54);
                assert!(validate_dense_pair(&t, &pair.w1, &pair.w2).unwrap() >= 0.5);
                assert!(pair.size() as f64 >= 0.5 * 54.0 / 4.0);
                assert!(matches!(branch, Branch::OutNeighbor | Branch::InNeighbor));
            }
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn dichotomy_on_random_instances() {
        let mut pairs = 0;
        for seed in 0..60u64 {
            let hn = 2 + (seed % 3) as usize;
            let h = crate::random::sample_gnp_oriented(hn, 0.6, seed).unwrap();
            let c: f64 = [0.5, 0.4][(seed % 2) as usize];
            let (d, _) = degeneracy_order(&h);
            let need = if h.max_degree() == 0 { hn as f64 } else { 2.0 * h.max_degree() as f64 * hn as f64 / c.powi(d as i32) };
            let t = if seed % 3 == 0 {
                random_tournament(need.ceil() as usize + (seed % 7) as usize, seed)
            } else {
                skewed(need.ceil() as usize)
            };
            match find_dense_pair(&h, &t, c).unwrap() {
                DenseOutcome::Embedded(e) => e.validate(&h, &t).unwrap(),
                DenseOutcome::Pair { pair, .. } => {
                    pairs += 1;
                    assert!(validate_dense_pair(&t, &pair.w1, &pair.w2).unwrap() >= 1.0 - c - 1e-12);
                    let bound = c.powi(d as i32) * t.n() as f64 / (2.0 * h.max_degree() as f64);
                    assert!(pair.size() as f64 >= bound - 1e-9);
                }
            }
        }
        assert!(pairs > 0);
    }
}
