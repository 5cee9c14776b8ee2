use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::ordered::EdgeColoring;
use super::RamseyError;
use crate::digraph::{AcyclicDigraph, ColoredTournament, OrderedGraph, Tournament};
use crate::tourney::{search_embeddings, Host};

/// The vertex order v₁, …, v_n with consecutive vertices adjacent, if it exists
/// (it is then the unique topological order).
pub fn hamiltonian_order(h: &AcyclicDigraph) -> Option<Vec<usize>> {
    let order = h.topo_order();
    order.windows(2).all(|w| h.has_edge(w[0], w[1])).then(|| order.to_vec())
}

/// H⁺ on [n]: i ~ j iff v_i → v_j in the Hamiltonian order.
pub fn h_plus(h: &AcyclicDigraph) -> Result<OrderedGraph, RamseyError> {
    let order = hamiltonian_order(h).ok_or(RamseyError::NotHamiltonian)?;
    let mut pos = vec![0; h.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let edges: Vec<_> = h.edges().iter().map(|&(u, v)| (pos[u], pos[v])).collect();
    Ok(OrderedGraph::new(h.n(), &edges)?)
}

/// H⁺ with the vertex order reversed.
pub fn h_minus(h: &AcyclicDigraph) -> Result<OrderedGraph, RamseyError> {
    Ok(h_plus(h)?.reversed())
}

/// i → i+1 for every i, plus i → j for each matching edge i < j.
pub fn path_matching_digraph(m: &OrderedGraph) -> Result<AcyclicDigraph, RamseyError> {
    if !m.is_matching() {
        return Err(RamseyError::NotAMatching);
    }
    let n = m.n();
    let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    edges.extend(m.edges().filter(|&(i, j)| j != i + 1));
    Ok(AcyclicDigraph::new(n, &edges)?)
}

/// Uniform perfect matching on [n] from a seeded shuffle.
pub fn random_matching(n: usize, seed: u64) -> Result<OrderedGraph, RamseyError> {
    if n % 2 == 1 {
        return Err(RamseyError::OddMatching(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(&mut rng);
    let edges: Vec<_> = v.chunks(2).map(|p| (p[0], p[1])).collect();
    Ok(OrderedGraph::new(n, &edges)?)
}

/// The forward transitive tournament on [N] with pair {i, j} colored χ(i, j).
pub fn lower_bound_coloring_from_ordered(chi: &EdgeColoring) -> ColoredTournament {
    ColoredTournament::new(Tournament::transitive(chi.n()), chi.k(), |i, j| chi.color(i, j))
        .expect("colors lie in [1, k]")
}

/// With vertex v of T placed at position `position[v]`: χ'(i, j) for i < j is
/// χ when the vertex at i beats the vertex at j, and χ + k otherwise.
pub fn oriented_to_ordered_coloring(t: &ColoredTournament, position: &[usize]) -> Result<EdgeColoring, RamseyError> {
    let n = t.n();
    let mut at = vec![usize::MAX; n];
    if position.len() != n {
        return Err(RamseyError::BadParameter(format!("labeling has {} entries for {n} vertices", position.len())));
    }
    for (v, &p) in position.iter().enumerate() {
        if p >= n || at[p] != usize::MAX {
            return Err(RamseyError::BadParameter("labeling is not a bijection onto [N]".into()));
        }
        at[p] = v;
    }
    let k = t.k();
    EdgeColoring::new(n, 2 * k, |i, j| {
        let (u, w) = (at[i], at[j]);
        if t.base().beats(u, w) {
            t.color(u, w)
        } else {
            t.color(u, w) + k
        }
    })
}

/// Color `keep` becomes 1 and every other color becomes 2.
pub fn merge_colors(chi: &EdgeColoring, keep: usize) -> Result<EdgeColoring, RamseyError> {
    if chi.k() < 2 || keep == 0 || keep > chi.k() {
        return Err(RamseyError::BadParameter(format!("keep = {keep} with k = {}", chi.k())));
    }
    EdgeColoring::new(chi.n(), 2, |i, j| if chi.color(i, j) == keep { 1 } else { 2 })
}

/// Copies of a Hamiltonian `h` in color `c` of `t` whose positions along the
/// Hamiltonian path are strictly increasing (`increasing`) or strictly decreasing.
pub fn monotone_copy_count(
    h: &AcyclicDigraph,
    t: &ColoredTournament,
    c: usize,
    position: &[usize],
    increasing: bool,
) -> Result<u64, RamseyError> {
    let order = hamiltonian_order(h).ok_or(RamseyError::NotHamiltonian)?;
    let host = Host::color_class(t, c);
    let mut count = 0;
    search_embeddings(&host, h, None, &mut |map| {
        let ok = order.windows(2).all(|w| {
            let (a, b) = (position[map[w[0]]], position[map[w[1]]]);
            if increasing {
                a < b
            } else {
                a > b
            }
        });
        count += u64::from(ok);
        false
    });
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::generators::*;
    use crate::ramsey::{count_ordered_copies, has_ordered_copy, oriented_ramsey_k, ordered_ramsey};
    use crate::tourney::{count_in_host, random_tournament};
    use rand::Rng;

    fn og(n: usize, e: &[(usize, usize)]) -> OrderedGraph {
        OrderedGraph::new(n, e).unwrap()
    }

    #[test]
    fn plus_and_minus() {
        assert_eq!(h_plus(&dipath(3)).unwrap(), og(3, &[(0, 1), (1, 2)]));
        assert_eq!(h_plus(&transitive(3)).unwrap(), og(3, &[(0, 1), (0, 2), (1, 2)]));
        assert_eq!(h_plus(&matching(2)), Err(RamseyError::NotHamiltonian));
        assert_eq!(h_plus(&out_star(2)), Err(RamseyError::NotHamiltonian));
        // relabeled path 2 → 0 → 1
        let h = AcyclicDigraph::new(3, &[(2, 0), (0, 1), (2, 1)]).unwrap();
        assert_eq!(h_plus(&h).unwrap(), og(3, &[(0, 1), (0, 2), (1, 2)]));
        let g = AcyclicDigraph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 2)]).unwrap();
        assert_eq!(h_minus(&g).unwrap(), og(4, &[(2, 3), (1, 2), (0, 1), (1, 3)]));
    }

    #[test]
    fn path_matching_construction() {
        let m = og(4, &[(0, 2), (1, 3)]);
        let h = path_matching_digraph(&m).unwrap();
        assert_eq!(h.edge_count(), 5);
        assert_eq!(h.max_degree(), 3);
        assert_eq!(path_matching_digraph(&og(5, &[])).unwrap(), dipath(5));
        assert_eq!(path_matching_digraph(&og(3, &[(0, 1), (1, 2)])), Err(RamseyError::NotAMatching));
        for seed in 0..200 {
            let m = random_matching(12, seed).unwrap();
            assert!(m.is_matching() && m.edge_count() == 6);
            let h = path_matching_digraph(&m).unwrap();
            assert!(h.max_degree() <= 3);
            assert!(h_plus(&h).unwrap().contains_ordered(&m));
        }
        assert_eq!(random_matching(2, 0).unwrap(), og(2, &[(0, 1)]));
        assert_eq!(random_matching(3, 0), Err(RamseyError::OddMatching(3)));
    }

    #[test]
    fn matchings_on_four_points_are_uniform() {
        let trials = 30_000;
        let mut counts = std::collections::BTreeMap::new();
        for seed in 0..trials {
            let m = random_matching(4, seed).unwrap();
            *counts.entry(m.edges().collect::<Vec<_>>()).or_insert(0u64) += 1;
        }
        assert_eq!(counts.len(), 3);
        let sigma = (trials as f64 * (1.0 / 3.0) * (2.0 / 3.0)).sqrt();
        for &c in counts.values() {
            assert!((c as f64 - trials as f64 / 3.0).abs() < 3.0 * sigma, "{counts:?}");
        }
    }

    #[test]
    fn merging_and_recoloring() {
        let chi = EdgeColoring::new(5, 3, |i, j| 1 + (i + j) % 3).unwrap();
        let m = merge_colors(&chi, 2).unwrap();
        for i in 0..5 {
            for j in i + 1..5 {
                assert_eq!(m.color(i, j) == 1, chi.color(i, j) == 2);
            }
        }
        let two = EdgeColoring::new(4, 2, |i, j| 1 + (i * j) % 2).unwrap();
        assert_eq!(merge_colors(&two, 1).unwrap(), two);
        let fwd = ColoredTournament::new(Tournament::transitive(4), 1, |_, _| 1).unwrap();
        let id: Vec<usize> = (0..4).collect();
        assert!(oriented_to_ordered_coloring(&fwd, &id).unwrap().class(1).edge_count() == 6);
        let back = ColoredTournament::new(Tournament::transitive(4).reversed(), 1, |_, _| 1).unwrap();
        assert!(oriented_to_ordered_coloring(&back, &id).unwrap().class(2).edge_count() == 6);
        assert_eq!(lower_bound_coloring_from_ordered(&EdgeColoring::new(4, 1, |_, _| 1).unwrap()).base(), &Tournament::transitive(4));
    }

    /// Hamiltonian acyclic digraphs on n vertices: the path 0→…→n−1 plus any set of forward chords.
    fn hamiltonian_battery(n: usize) -> Vec<AcyclicDigraph> {
        let chords: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 2..n).map(move |j| (i, j))).collect();
        (0..1u32 << chords.len())
            .map(|mask| {
                let mut e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
                e.extend(chords.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &p)| p));
                AcyclicDigraph::new(n, &e).unwrap()
            })
            .collect()
    }

    #[test]
    fn transitive_coloring_counts_match_ordered_counts() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 2..=4 {
            for h in hamiltonian_battery(n) {
                let plus = h_plus(&h).unwrap();
                for big in n..=6 {
                    for k in 1..=2 {
                        let chi = EdgeColoring::new(big, k, |_, _| rng.gen_range(1..=k)).unwrap();
                        let t = lower_bound_coloring_from_ordered(&chi);
                        for c in 1..=k {
                            let oriented = count_in_host(&Host::color_class(&t, c), &h, u64::MAX);
                            assert_eq!(oriented, count_ordered_copies(&chi, c, &plus));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn recoloring_counts_match_monotone_copies() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for n in 2..=4 {
            for h in hamiltonian_battery(n) {
                let (plus, minus) = (h_plus(&h).unwrap(), h_minus(&h).unwrap());
                for big in n..=6 {
                    let k = 1 + big % 2;
                    let t = ColoredTournament::new(random_tournament(big, rng.gen()), k, |_, _| rng.gen_range(1..=k)).unwrap();
                    let mut pos: Vec<usize> = (0..big).collect();
                    pos.shuffle(&mut rng);
                    let chi = oriented_to_ordered_coloring(&t, &pos).unwrap();
                    for c in 1..=k {
                        let up = monotone_copy_count(&h, &t, c, &pos, true).unwrap();
                        let down = monotone_copy_count(&h, &t, c, &pos, false).unwrap();
                        assert_eq!(up, count_ordered_copies(&chi, c, &plus));
                        assert_eq!(down, count_ordered_copies(&chi, c + k, &minus));
                        let all = count_in_host(&Host::color_class(&t, c), &h, u64::MAX);
                        assert!(up + down <= all);
                    }
                }
            }
        }
    }

    #[test]
    fn oriented_values_dominate_ordered_values() {
        let mut battery: Vec<(AcyclicDigraph, usize)> = vec![(dipath(2), 2), (dipath(2), 3), (dipath(3), 2)];
        for n in 2..=4 {
            battery.extend(hamiltonian_battery(n).into_iter().map(|h| (h, 1)));
        }
        for (h, k) in battery {
            let plus = h_plus(&h).unwrap();
            let o = oriented_ramsey_k(&h, k, 8).unwrap();
            let r = ordered_ramsey(&vec![plus.clone(); k], 8).unwrap();
            assert!(o.value >= r.value, "{h:?} k={k}: {} < {}", o.value, r.value);
            // an ordered avoider lifts to an oriented one on the same vertex count
            let crate::ramsey::Witness::Ordered(w) = &r.witness else { unreachable!() };
            let t = lower_bound_coloring_from_ordered(w);
            assert!(crate::ramsey::verify_avoider(&h, &t));
            assert!((1..=k).all(|c| !has_ordered_copy(w, c, &plus)));
        }
    }
}
