//! Backtracking search for copies of an acyclic pattern in an oriented host.

use crate::bitset::BitSet;
use crate::digraph::{AcyclicDigraph, ColoredTournament, Embedding, Tournament};

/// Out/in neighborhood rows of an oriented graph (a tournament or one color class).
#[derive(Clone, Debug)]
pub struct Host {
    n: usize,
    out: Vec<BitSet>,
    inn: Vec<BitSet>,
}

impl Host {
    pub fn from_tournament(t: &Tournament) -> Host {
        let (out, inn) = t.rows();
        Host { n: t.n(), out, inn }
    }

    pub fn color_class(t: &ColoredTournament, c: usize) -> Host {
        let (out, inn) = t.color_rows(c);
        Host { n: t.n(), out, inn }
    }

    pub fn from_rows(out: Vec<BitSet>, inn: Vec<BitSet>) -> Host {
        Host { n: out.len(), out, inn }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn out_row(&self, v: usize) -> &BitSet {
        &self.out[v]
    }

    pub fn in_row(&self, v: usize) -> &BitSet {
        &self.inn[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.out[u].contains(v)
    }
}

struct Search<'a> {
    host: &'a Host,
    h: &'a AcyclicDigraph,
    base: Vec<BitSet>,
    nbrs: Vec<Vec<usize>>,
    map: Vec<usize>,
    used: BitSet,
    placed: usize,
}

impl Search<'_> {
    fn candidates(&self, v: usize) -> BitSet {
        let mut c = self.base[v].clone();
        for &u in self.h.in_neighbors(v) {
            if self.map[u] != usize::MAX {
                c.intersect_with(&self.host.out[self.map[u]]);
            }
        }
        for &u in self.h.out_neighbors(v) {
            if self.map[u] != usize::MAX {
                c.intersect_with(&self.host.inn[self.map[u]]);
            }
        }
        c.difference_with(&self.used);
        c
    }

    fn run(&mut self, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if self.placed == self.h.n() {
            return visit(&self.map);
        }
        let mut pick: Option<(usize, BitSet)> = None;
        for v in 0..self.h.n() {
            if self.map[v] != usize::MAX || self.nbrs[v].iter().all(|&u| self.map[u] == usize::MAX) {
                continue;
            }
            let c = self.candidates(v);
            let better = match &pick {
                None => true,
                Some((_, best)) => c.count() < best.count(),
            };
            if better {
                let empty = c.is_empty();
                pick = Some((v, c));
                if empty {
                    return false;
                }
            }
        }
        let (v, cands) = match pick {
            Some(p) => p,
            None => {
                let v = *self
                    .h
                    .topo_order()
                    .iter()
                    .find(|&&v| self.map[v] == usize::MAX)
                    .expect("an unplaced vertex remains");
                let mut c = self.base[v].clone();
                c.difference_with(&self.used);
                (v, c)
            }
        };
        for x in cands.iter() {
            self.map[v] = x;
            self.used.insert(x);
            self.placed += 1;
            let stop = self.run(visit);
            self.placed -= 1;
            self.used.remove(x);
            self.map[v] = usize::MAX;
            if stop {
                return true;
            }
        }
        false
    }
}

/// Visits embeddings of `h` into `host` (φ(v) restricted to `allowed[v]` when given)
/// until `visit` returns true. Returns whether the visit was stopped.
pub fn search_embeddings(
    host: &Host,
    h: &AcyclicDigraph,
    allowed: Option<&[BitSet]>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if h.n() > host.n() {
        return false;
    }
    let base: Vec<BitSet> = (0..h.n())
        .map(|v| {
            let need_out = h.out_neighbors(v).len();
            let need_in = h.in_neighbors(v).len();
            let mut b = BitSet::from_indices(
                host.n(),
                (0..host.n()).filter(|&x| host.out[x].count() >= need_out && host.inn[x].count() >= need_in),
            );
            if let Some(a) = allowed {
                b.intersect_with(&a[v]);
            }
            b
        })
        .collect();
    let mut s = Search {
        host,
        h,
        base,
        nbrs: (0..h.n()).map(|v| h.neighbors(v)).collect(),
        map: vec![usize::MAX; h.n()],
        used: BitSet::new(host.n()),
        placed: 0,
    };
    s.run(visit)
}

pub fn find_in_host(host: &Host, h: &AcyclicDigraph, allowed: Option<&[BitSet]>) -> Option<Embedding> {
    let mut found = None;
    search_embeddings(host, h, allowed, &mut |m| {
        found = Some(m.to_vec());
        true
    });
    found.map(Embedding::new)
}

/// Number of embeddings (injective, orientation-preserving maps), capped at `limit`.
pub fn count_in_host(host: &Host, h: &AcyclicDigraph, limit: u64) -> u64 {
    let mut n = 0u64;
    search_embeddings(host, h, None, &mut |_| {
        n += 1;
        n >= limit
    });
    n
}

/// A copy of `h` in `t`, if one exists.
pub fn contains_copy(t: &Tournament, h: &AcyclicDigraph) -> Option<Embedding> {
    find_in_host(&Host::from_tournament(t), h, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::generators::*;
    use crate::tourney::{paley, random_tournament};

    fn naive(t: &Tournament, h: &AcyclicDigraph) -> bool {
        fn go(t: &Tournament, h: &AcyclicDigraph, map: &mut Vec<usize>) -> bool {
            let v = map.len();
            if v == h.n() {
                return h.edges().iter().all(|&(a, b)| t.beats(map[a], map[b]));
            }
            for x in 0..t.n() {
                if !map.contains(&x) {
                    map.push(x);
                    if go(t, h, map) {
                        return true;
                    }
                    map.pop();
                }
            }
            false
        }
        go(t, h, &mut Vec::new())
    }

    #[test]
    fn examples() {
        let t = random_tournament(6, 3);
        let e = contains_copy(&t, &dipath(6)).expect("hamiltonian path");
        e.validate(&dipath(6), &t).unwrap();
        assert!(contains_copy(&paley(3).unwrap(), &transitive(3)).is_none());
        assert!(contains_copy(&paley(7).unwrap(), &transitive(4)).is_none());
        assert!(contains_copy(&paley(7).unwrap(), &transitive(3)).is_some());
    }

    #[test]
    fn agrees_with_naive_on_random_small_instances() {
        for seed in 0..300u64 {
            let tn = 3 + (seed % 5) as usize;
            let t = random_tournament(tn, seed);
            let hn = 2 + (seed % 4) as usize;
            let h = crate::random::sample_gnp_oriented(hn, 0.5, seed ^ 0xabc).unwrap();
            let got = contains_copy(&t, &h);
            assert_eq!(got.is_some(), naive(&t, &h), "seed {seed}");
            if let Some(e) = got {
                e.validate(&h, &t).unwrap();
            }
        }
    }

    #[test]
    fn counts_transitive_triangles() {
        // TT_3 copies in TT_5: one embedding per 3-subset
        let h = Host::from_tournament(&Tournament::transitive(5));
        assert_eq!(count_in_host(&h, &transitive(3), u64::MAX), 10);
        // P_2 embeddings are ordered edges
        assert_eq!(count_in_host(&h, &dipath(2), u64::MAX), 10);
    }
}
