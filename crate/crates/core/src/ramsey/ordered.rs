use rayon::prelude::*;

use super::oriented::{Enumeration, PLAIN_BUDGET};
use super::{RamseyError, RamseyResult, Witness};
use crate::digraph::OrderedGraph;

/// Largest labeled frontier the ordered enumerator keeps before giving up.
const FRONTIER_BUDGET: usize = 4_000_000;

/// A coloring of the complete graph on [n] with colors 1..=k.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeColoring {
    n: usize,
    k: usize,
    /// Pairs i<j in row order.
    colors: Vec<u8>,
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

impl EdgeColoring {
    /// `color(i, j)` is asked for i<j only.
    pub fn new(n: usize, k: usize, mut color: impl FnMut(usize, usize) -> usize) -> Result<Self, RamseyError> {
        if k == 0 || k > u8::MAX as usize {
            return Err(RamseyError::BadParameter(format!("k = {k}")));
        }
        let mut colors = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                let c = color(i, j);
                if c == 0 || c > k {
                    return Err(RamseyError::BadParameter(format!("color {c} outside [1, {k}] on {{{i}, {j}}}")));
                }
                colors.push(c as u8);
            }
        }
        Ok(EdgeColoring { n, k, colors })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn color(&self, u: usize, v: usize) -> usize {
        assert_ne!(u, v);
        let (i, j) = (u.min(v), u.max(v));
        self.colors[pair_index(self.n, i, j)] as usize
    }

    /// The ordered graph of edges with color `c`.
    pub fn class(&self, c: usize) -> OrderedGraph {
        let mut edges = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.color(i, j) == c {
                    edges.push((i, j));
                }
            }
        }
        OrderedGraph::new(self.n, &edges).expect("pairs are distinct")
    }

    fn masks(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![vec![0u32; self.n]; self.k];
        for i in 0..self.n {
            for j in i + 1..self.n {
                let c = self.color(i, j) - 1;
                adj[c][i] |= 1 << j;
                adj[c][j] |= 1 << i;
            }
        }
        adj
    }
}

/// Increasing maps of `g` into a host given by adjacency masks. With `last`,
/// the final vertex of `g` must land on that host vertex.
struct OrderedSearch<'a> {
    adj: &'a [u32],
    n: usize,
    back: Vec<Vec<usize>>,
    last: Option<usize>,
}

impl<'a> OrderedSearch<'a> {
    fn new(adj: &'a [u32], n: usize, g: &OrderedGraph, last: Option<usize>) -> Self {
        let mut back = vec![Vec::new(); g.n()];
        for (i, j) in g.edges() {
            back[j].push(i);
        }
        OrderedSearch { adj, n, back, last }
    }

    fn run(&self, map: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let j = map.len();
        let m = self.back.len();
        if j == m {
            return visit(map);
        }
        let lo = map.last().map_or(0, |&x| x + 1);
        let hi = match self.last {
            Some(x) if j + 1 == m => x + 1,
            Some(x) => x,
            None => self.n,
        };
        if lo >= hi {
            return false;
        }
        let range = |a: usize, b: usize| -> u32 {
            let upto = if b >= 32 { u32::MAX } else { (1u32 << b) - 1 };
            upto & !((1u32 << a) - 1)
        };
        let mut cand = range(lo, hi);
        if let (Some(x), true) = (self.last, j + 1 == m) {
            cand &= 1 << x;
        }
        for &i in &self.back[j] {
            cand &= self.adj[map[i]];
        }
        while cand != 0 {
            let x = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            map.push(x);
            if self.run(map, visit) {
                return true;
            }
            map.pop();
        }
        false
    }
}

fn check_host(chi: &EdgeColoring, c: usize) {
    assert!(chi.n() <= 32, "ordered search handles at most 32 vertices");
    assert!((1..=chi.k()).contains(&c), "color {c} outside [1, {}]", chi.k());
}

/// Some increasing map sends every edge of `g` to an edge of color `c`.
pub fn has_ordered_copy(chi: &EdgeColoring, c: usize, g: &OrderedGraph) -> bool {
    check_host(chi, c);
    let adj = chi.masks();
    OrderedSearch::new(&adj[c - 1], chi.n(), g, None).run(&mut Vec::new(), &mut |_| true)
}

/// Number of increasing maps sending every edge of `g` to an edge of color `c`.
pub fn count_ordered_copies(chi: &EdgeColoring, c: usize, g: &OrderedGraph) -> u64 {
    check_host(chi, c);
    let adj = chi.masks();
    let mut count = 0;
    OrderedSearch::new(&adj[c - 1], chi.n(), g, None).run(&mut Vec::new(), &mut |_| {
        count += 1;
        false
    });
    count
}

/// Per-color adjacency masks of a labeled coloring under construction.
type Masks = Vec<Vec<u32>>;

fn through_last(adj: &Masks, n: usize, gs: &[OrderedGraph]) -> bool {
    gs.iter().enumerate().any(|(c, g)| {
        g.n() <= n && OrderedSearch::new(&adj[c], n, g, Some(n - 1)).run(&mut Vec::new(), &mut |_| true)
    })
}

fn masks_to_coloring(adj: &Masks, n: usize) -> EdgeColoring {
    EdgeColoring::new(n, adj.len(), |i, j| adj.iter().position(|m| m[i] >> j & 1 == 1).expect("pair colored") + 1)
        .expect("colors in range")
}

fn extend(adj: &Masks, n: usize, mut code: u64, k: u64) -> Masks {
    let mut a = adj.clone();
    for row in a.iter_mut() {
        row.push(0);
    }
    for u in 0..n {
        let c = (code % k) as usize;
        code /= k;
        a[c][u] |= 1 << n;
        a[c][n] |= 1 << u;
    }
    a
}

/// r_<(G₁, …, G_k): the least N ≤ `nmax` such that every k-coloring of the
/// complete graph on [N] has an ordered copy of G_i in color i for some i.
pub fn ordered_ramsey(gs: &[OrderedGraph], nmax: usize) -> Result<RamseyResult, RamseyError> {
    ordered_ramsey_with(gs, nmax, Enumeration::Pruned)
}

/// `Pruned` grows labeled avoiders on [N] from avoiders on [N − 1] (restricting
/// to the first N − 1 vertices keeps every ordered copy), checking only copies
/// that end at the new vertex; `Plain` scans every coloring.
pub fn ordered_ramsey_with(gs: &[OrderedGraph], nmax: usize, mode: Enumeration) -> Result<RamseyResult, RamseyError> {
    let k = gs.len();
    if k == 0 || k > 8 || nmax > 32 {
        return Err(RamseyError::BadParameter("need 1..=8 patterns and max N ≤ 32".into()));
    }
    if gs.iter().any(|g| g.n() == 0) {
        return Err(RamseyError::BadParameter("empty ordered pattern".into()));
    }
    let kk = k as u64;
    let mut frontier: Vec<Masks> = vec![vec![Vec::new(); k]];
    let mut examined = 0u64;
    let mut per_level = Vec::new();
    for n in 1..=nmax {
        let next: Vec<Masks> = match mode {
            Enumeration::Pruned => {
                let choices = kk.pow(n as u32 - 1);
                examined += frontier.len() as u64 * choices;
                frontier
                    .par_iter()
                    .flat_map_iter(|a| {
                        (0..choices).map(move |code| extend(a, n - 1, code, kk)).filter(|b| !through_last(b, n, gs))
                    })
                    .collect()
            }
            Enumeration::Plain => {
                let hosts = (kk as u128).checked_pow((n * (n - 1) / 2) as u32).unwrap_or(u128::MAX);
                if hosts > PLAIN_BUDGET {
                    return Err(RamseyError::BudgetExceeded { n, hosts });
                }
                let build = |mut code: u64| -> Masks {
                    let mut a: Masks = vec![Vec::new(); k];
                    for v in 0..n {
                        let digit = code % kk.pow(v as u32);
                        code /= kk.pow(v as u32);
                        a = extend(&a, v, digit, kk);
                    }
                    a
                };
                let hit = (0..hosts as u64).into_par_iter().find_first(|&code| {
                    let a = build(code);
                    !gs.iter().enumerate().any(|(c, g)| {
                        OrderedSearch::new(&a[c], n, g, None).run(&mut Vec::new(), &mut |_| true)
                    })
                });
                examined += hit.map_or(hosts as u64, |c| c + 1);
                hit.map(build).into_iter().collect()
            }
        };
        if next.is_empty() {
            let prev = frontier.into_iter().next().expect("frontier is non-empty");
            return Ok(RamseyResult {
                value: n,
                witness: Witness::Ordered(masks_to_coloring(&prev, n - 1)),
                exhaustive: true,
                hosts_examined: examined,
                avoiders_per_level: per_level,
            });
        }
        if next.len() > FRONTIER_BUDGET {
            return Err(RamseyError::BudgetExceeded { n, hosts: next.len() as u128 });
        }
        per_level.push(next.len() as u64);
        frontier = next;
    }
    Err(RamseyError::Inconclusive { max_n: nmax })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn og(n: usize, e: &[(usize, usize)]) -> OrderedGraph {
        OrderedGraph::new(n, e).unwrap()
    }

    #[test]
    fn counting_agrees_with_subgraph_test() {
        let chi = EdgeColoring::new(6, 2, |i, j| 1 + (i * 7 + j * 3) % 2).unwrap();
        let pats = [og(3, &[(0, 1), (1, 2)]), og(4, &[(0, 2), (1, 3)]), og(4, &[(0, 3), (1, 2)]), og(3, &[(0, 1), (0, 2), (1, 2)])];
        for g in &pats {
            for c in 1..=2 {
                assert_eq!(has_ordered_copy(&chi, c, g), chi.class(c).contains_ordered(g));
                assert_eq!(has_ordered_copy(&chi, c, g), count_ordered_copies(&chi, c, g) > 0);
            }
        }
        // K₄ in one color: C(4,3) increasing triples
        let mono = EdgeColoring::new(4, 1, |_, _| 1).unwrap();
        assert_eq!(count_ordered_copies(&mono, 1, &pats[3]), 4);
    }

    #[test]
    fn small_values() {
        let edge = og(2, &[(0, 1)]);
        assert_eq!(ordered_ramsey(&[edge.clone(), edge.clone()], 5).unwrap().value, 2);
        let path = og(3, &[(0, 1), (1, 2)]);
        assert_eq!(ordered_ramsey(std::slice::from_ref(&path), 5).unwrap().value, 3);
        // monotone paths with 3 vertices in 2 colors: (3−1)² + 1
        assert_eq!(ordered_ramsey(&[path.clone(), path.clone()], 7).unwrap().value, 5);
        let k3 = og(3, &[(0, 1), (0, 2), (1, 2)]);
        assert_eq!(ordered_ramsey(&[k3.clone(), k3.clone()], 7).unwrap().value, 6);
    }

    #[test]
    fn plain_agrees_with_pruned() {
        let pats = [og(3, &[(0, 1), (1, 2)]), og(3, &[(0, 2)]), og(4, &[(0, 2), (1, 3)]), og(3, &[(0, 1), (0, 2), (1, 2)])];
        for a in &pats {
            for b in &pats {
                let x = ordered_ramsey_with(&[a.clone(), b.clone()], 5, Enumeration::Plain);
                let y = ordered_ramsey_with(&[a.clone(), b.clone()], 5, Enumeration::Pruned);
                assert_eq!(x.as_ref().map(|r| r.value), y.as_ref().map(|r| r.value));
                if let Ok(r) = y {
                    let Witness::Ordered(w) = &r.witness else { unreachable!() };
                    assert!(!has_ordered_copy(w, 1, a) && !has_ordered_copy(w, 2, b));
                }
            }
        }
    }

    #[test]
    fn crossing_matching_two_colors() {
        let m = og(4, &[(0, 2), (1, 3)]);
        let r = ordered_ramsey(&[m.clone(), m.clone()], 8).unwrap();
        // each color class is then non-crossing, so at most 2N − 3 edges per color
        assert!(r.value <= 8);
        let Witness::Ordered(w) = &r.witness else { unreachable!() };
        assert!(!has_ordered_copy(w, 1, &m) && !has_ordered_copy(w, 2, &m));
        assert_eq!(w.n() + 1, r.value);
    }
}
