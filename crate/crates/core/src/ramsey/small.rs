use crate::digraph::{AcyclicDigraph, ColoredTournament, Tournament};

/// Largest host the mask representation holds.
pub(crate) const MASK_BITS: usize = 32;

/// A k-colored tournament on at most 32 vertices kept as per-color bit masks.
/// Arc values: `2c + 1` means u→v in color c (0-based), `2c` means v→u in color c.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Small {
    pub n: usize,
    pub k: usize,
    pub out: Vec<Vec<u32>>,
    pub inn: Vec<Vec<u32>>,
}

impl Small {
    pub fn empty(k: usize) -> Small {
        Small { n: 0, k, out: vec![Vec::new(); k], inn: vec![Vec::new(); k] }
    }

    pub fn arc(&self, u: usize, v: usize) -> u8 {
        for c in 0..self.k {
            if self.out[c][u] >> v & 1 == 1 {
                return 2 * c as u8 + 1;
            }
            if self.inn[c][u] >> v & 1 == 1 {
                return 2 * c as u8;
            }
        }
        unreachable!("every pair carries an arc")
    }

    fn set_arc(&mut self, u: usize, v: usize, a: u8) {
        let c = (a / 2) as usize;
        let (from, to) = if a % 2 == 1 { (u, v) } else { (v, u) };
        self.out[c][from] |= 1 << to;
        self.inn[c][to] |= 1 << from;
    }

    /// Adds a vertex; `arcs[u]` is the arc value from the new vertex to old vertex u.
    pub fn extended(&self, arcs: &[u8]) -> Small {
        let mut s = self.clone();
        let v = self.n;
        s.n += 1;
        for c in 0..self.k {
            s.out[c].push(0);
            s.inn[c].push(0);
        }
        for (u, &a) in arcs.iter().enumerate() {
            s.set_arc(v, u, a);
        }
        s
    }

    /// Base-2k digits over pairs i<j in row order give arc(i, j).
    pub fn from_code(n: usize, k: usize, mut code: u64) -> Small {
        let mut s = Small { n, k, out: vec![vec![0; n]; k], inn: vec![vec![0; n]; k] };
        let base = 2 * k as u64;
        for i in 0..n {
            for j in i + 1..n {
                s.set_arc(i, j, (code % base) as u8);
                code /= base;
            }
        }
        s
    }

    /// Vertex p of the result is vertex perm[p] here.
    #[cfg(test)]
    pub fn relabeled(&self, perm: &[usize]) -> Small {
        let n = self.n;
        let mut s = Small { n, k: self.k, out: vec![vec![0; n]; self.k], inn: vec![vec![0; n]; self.k] };
        for p in 0..n {
            for q in p + 1..n {
                s.set_arc(p, q, self.arc(perm[p], perm[q]));
            }
        }
        s
    }

    /// Row-major arc matrix, diagonal zero.
    pub fn matrix(&self) -> Vec<u8> {
        let n = self.n;
        let mut m = vec![0; n * n];
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    m[u * n + v] = self.arc(u, v);
                }
            }
        }
        m
    }

    #[cfg(test)]
    pub fn from_colored(t: &ColoredTournament) -> Small {
        let n = t.n();
        assert!(n <= MASK_BITS);
        let mut s = Small { n, k: t.k(), out: vec![vec![0; n]; t.k()], inn: vec![vec![0; n]; t.k()] };
        for i in 0..n {
            for j in i + 1..n {
                let c = t.color(i, j) as u8 - 1;
                s.set_arc(i, j, 2 * c + u8::from(t.base().forward_bit(i, j)));
            }
        }
        s
    }

    pub fn to_colored(&self) -> ColoredTournament {
        let base = Tournament::from_fn(self.n, |i, j| self.arc(i, j) % 2 == 1);
        ColoredTournament::new(base, self.k, |i, j| (self.arc(i, j) / 2) as usize + 1)
            .expect("colors lie in range")
    }
}

/// A pattern laid out in a search order where each vertex sees as many
/// earlier neighbors as possible.
#[derive(Clone, Debug)]
pub(crate) struct Pattern {
    order: Vec<usize>,
    /// Earlier positions j with order[j] → order[i].
    from: Vec<Vec<usize>>,
    /// Earlier positions j with order[i] → order[j].
    to: Vec<Vec<usize>>,
}

impl Pattern {
    /// `root`, when given, is placed first.
    pub fn new(h: &AcyclicDigraph, root: Option<usize>) -> Pattern {
        let n = h.n();
        let mut placed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        if let Some(r) = root {
            placed[r] = true;
            order.push(r);
        }
        while order.len() < n {
            let v = (0..n)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| (h.neighbors(v).iter().filter(|&&u| placed[u]).count(), h.degree(v), n - v))
                .expect("an unplaced vertex remains");
            placed[v] = true;
            order.push(v);
        }
        let pos: Vec<usize> = {
            let mut p = vec![0; n];
            for (i, &v) in order.iter().enumerate() {
                p[v] = i;
            }
            p
        };
        let from = order.iter().map(|&v| h.in_neighbors(v).iter().map(|&u| pos[u]).filter(|&j| j < pos[v]).collect()).collect();
        let to = order.iter().map(|&v| h.out_neighbors(v).iter().map(|&u| pos[u]).filter(|&j| j < pos[v]).collect()).collect();
        Pattern { order, from, to }
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    /// Runs over embeddings into the color-`c` arcs of `s` whose first vertex is
    /// `first` (when given); `visit` gets the image of every pattern vertex and
    /// returns true to stop. Returns whether the visit stopped.
    pub fn search(&self, s: &Small, c: usize, first: Option<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if self.n() > s.n {
            return false;
        }
        let mut pos_img = vec![0usize; self.n()];
        let mut img = vec![0usize; self.n()];
        let all = if s.n == 32 { u32::MAX } else { (1u32 << s.n) - 1 };
        self.go(s, c, first, 0, all, &mut pos_img, &mut img, visit)
    }

    #[allow(clippy::too_many_arguments)]
    fn go(
        &self,
        s: &Small,
        c: usize,
        first: Option<usize>,
        i: usize,
        free: u32,
        pos_img: &mut [usize],
        img: &mut [usize],
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if i == self.n() {
            return visit(img);
        }
        let mut cand = free;
        if i == 0 {
            if let Some(x) = first {
                cand &= 1 << x;
            }
        }
        for &j in &self.from[i] {
            cand &= s.out[c][pos_img[j]];
        }
        for &j in &self.to[i] {
            cand &= s.inn[c][pos_img[j]];
        }
        while cand != 0 {
            let x = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            pos_img[i] = x;
            img[self.order[i]] = x;
            if self.go(s, c, first, i + 1, free & !(1 << x), pos_img, img, visit) {
                return true;
            }
        }
        false
    }

    pub fn found(&self, s: &Small, c: usize, first: Option<usize>) -> bool {
        self.search(s, c, first, &mut |_| true)
    }
}

/// One pattern per choice of first vertex, for searching copies through a fixed host vertex.
#[derive(Clone, Debug)]
pub(crate) struct Rooted {
    pub whole: Pattern,
    pub by_root: Vec<Pattern>,
}

impl Rooted {
    pub fn new(h: &AcyclicDigraph) -> Rooted {
        Rooted { whole: Pattern::new(h, None), by_root: (0..h.n()).map(|r| Pattern::new(h, Some(r))).collect() }
    }

    /// Some color class holds a copy.
    pub fn mono(&self, s: &Small) -> bool {
        (0..s.k).any(|c| self.whole.found(s, c, None))
    }

    /// Some color class holds a copy through host vertex `x`.
    pub fn mono_through(&self, s: &Small, x: usize) -> bool {
        (0..s.k).any(|c| self.by_root.iter().any(|p| p.found(s, c, Some(x))))
    }

    /// Copies in color c using both host vertices x and y, capped at `cap`.
    pub fn count_through_pair(&self, s: &Small, c: usize, x: usize, y: usize, cap: u64) -> u64 {
        let mut count = 0;
        for p in &self.by_root {
            p.search(s, c, Some(x), &mut |img| {
                if img.contains(&y) {
                    count += 1;
                }
                count >= cap
            });
            if count >= cap {
                break;
            }
        }
        count
    }

    pub fn count(&self, s: &Small, c: usize, cap: u64) -> u64 {
        let mut count = 0;
        self.whole.search(s, c, None, &mut |_| {
            count += 1;
            count >= cap
        });
        count
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::generators::*;
    use crate::tourney::{contains_copy, count_in_host, random_tournament, Host};

    #[test]
    fn codes_and_relabeling_round_trip() {
        for code in 0..64u64 {
            let s = Small::from_code(4, 1, code);
            assert_eq!(Small::from_colored(&s.to_colored()), s);
            let r = s.relabeled(&[2, 0, 3, 1]);
            for p in 0..4 {
                for q in 0..4 {
                    if p != q {
                        assert_eq!(r.arc(p, q), s.arc([2, 0, 3, 1][p], [2, 0, 3, 1][q]));
                    }
                }
            }
        }
        let s = Small::from_code(3, 2, 0b11_10_01);
        assert_eq!((s.arc(0, 1), s.arc(0, 2), s.arc(1, 2)), (1, 2, 3));
        assert_eq!(s.arc(1, 0), 0);
    }

    #[test]
    fn mask_search_agrees_with_bitset_search() {
        let patterns = [dipath(4), transitive(3), out_star(3), directed_grid(2, 2), matching(2)];
        for seed in 0..40 {
            let t = random_tournament(7, seed);
            let s = Small::from_colored(&ColoredTournament::new(t.clone(), 1, |_, _| 1).unwrap());
            for h in &patterns {
                let r = Rooted::new(h);
                assert_eq!(r.mono(&s), contains_copy(&t, h).is_some());
                assert_eq!(r.count(&s, 0, u64::MAX), count_in_host(&Host::from_tournament(&t), h, u64::MAX));
                let through = (0..7).filter(|&x| r.mono_through(&s, x)).count();
                assert!(r.mono(&s) == (through > 0));
            }
        }
    }
}
