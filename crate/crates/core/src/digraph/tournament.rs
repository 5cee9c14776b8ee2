use super::GraphError;
use crate::bitset::BitSet;

/// Largest vertex count a tournament may have (bit matrix of about 16 MiB).
pub const MAX_VERTICES: usize = 1 << 14;

/// A tournament stored as an upper-triangular bit array: bit (i,j), i<j, is set iff i→j.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tournament {
    n: usize,
    bits: Vec<u64>,
}

#[inline]
fn tri_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

impl Tournament {
    pub fn try_from_fn(n: usize, mut forward: impl FnMut(usize, usize) -> bool) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n));
        }
        let pairs = n * n.saturating_sub(1) / 2;
        let mut bits = vec![0u64; pairs.div_ceil(64)];
        let mut idx = 0;
        for i in 0..n {
            for j in i + 1..n {
                if forward(i, j) {
                    bits[idx >> 6] |= 1 << (idx & 63);
                }
                idx += 1;
            }
        }
        Ok(Tournament { n, bits })
    }

    /// Builds from a predicate telling, for i<j, whether i→j.
    pub fn from_fn(n: usize, forward: impl FnMut(usize, usize) -> bool) -> Self {
        Tournament::try_from_fn(n, forward).expect("tournament within size budget")
    }

    pub fn transitive(n: usize) -> Self {
        Tournament::from_fn(n, |_, _| true)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Orientation bit for the pair i<j.
    #[inline]
    pub fn forward_bit(&self, i: usize, j: usize) -> bool {
        let k = tri_index(self.n, i, j);
        (self.bits[k >> 6] >> (k & 63)) & 1 == 1
    }

    /// True iff u→v.
    #[inline]
    pub fn beats(&self, u: usize, v: usize) -> bool {
        if u < v {
            self.forward_bit(u, v)
        } else if v < u {
            !self.forward_bit(v, u)
        } else {
            false
        }
    }

    /// Orients the pair so that u→v.
    pub fn set(&mut self, u: usize, v: usize) {
        assert_ne!(u, v);
        let (i, j, bit) = if u < v { (u, v, true) } else { (v, u, false) };
        let k = tri_index(self.n, i, j);
        if bit {
            self.bits[k >> 6] |= 1 << (k & 63);
        } else {
            self.bits[k >> 6] &= !(1 << (k & 63));
        }
    }

    pub fn flip(&mut self, u: usize, v: usize) {
        if self.beats(u, v) {
            self.set(v, u)
        } else {
            self.set(u, v)
        }
    }

    pub fn out_degree(&self, v: usize) -> usize {
        (0..self.n).filter(|&w| self.beats(v, w)).count()
    }

    pub fn scores(&self) -> Vec<usize> {
        let mut s = vec![0; self.n];
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.forward_bit(i, j) {
                    s[i] += 1;
                } else {
                    s[j] += 1;
                }
            }
        }
        s
    }

    pub fn out_set(&self, v: usize) -> BitSet {
        BitSet::from_indices(self.n, (0..self.n).filter(|&w| self.beats(v, w)))
    }

    /// Out- and in-neighborhood rows for every vertex.
    pub fn rows(&self) -> (Vec<BitSet>, Vec<BitSet>) {
        let mut out = vec![BitSet::new(self.n); self.n];
        let mut inn = vec![BitSet::new(self.n); self.n];
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.forward_bit(i, j) {
                    out[i].insert(j);
                    inn[j].insert(i);
                } else {
                    out[j].insert(i);
                    inn[i].insert(j);
                }
            }
        }
        (out, inn)
    }

    /// Sub-tournament on `verts`, vertex i of the result being verts[i].
    pub fn induced(&self, verts: &[usize]) -> Tournament {
        Tournament::from_fn(verts.len(), |a, b| self.beats(verts[a], verts[b]))
    }

    pub fn reversed(&self) -> Tournament {
        Tournament::from_fn(self.n, |i, j| !self.forward_bit(i, j))
    }

    /// Adds one vertex whose out-neighborhood among the old vertices is `beats_mask`.
    pub fn extended(&self, beats_old: impl Fn(usize) -> bool) -> Tournament {
        let n = self.n;
        Tournament::from_fn(n + 1, |i, j| if j == n { !beats_old(i) } else { self.forward_bit(i, j) })
    }
}

/// A tournament with a color in [1, k] on every pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColoredTournament {
    base: Tournament,
    k: usize,
    colors: Vec<u8>,
}

impl ColoredTournament {
    pub fn new(
        base: Tournament,
        k: usize,
        mut color: impl FnMut(usize, usize) -> usize,
    ) -> Result<Self, GraphError> {
        let n = base.n();
        let mut colors = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                let c = color(i, j);
                if c == 0 || c > k || k > u8::MAX as usize {
                    return Err(GraphError::ColorOutOfRange { color: c, k });
                }
                colors.push(c as u8);
            }
        }
        Ok(ColoredTournament { base, k, colors })
    }

    pub fn base(&self) -> &Tournament {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Color of the unordered pair {u, v}.
    pub fn color(&self, u: usize, v: usize) -> usize {
        let (i, j) = if u < v { (u, v) } else { (v, u) };
        self.colors[tri_index(self.n(), i, j)] as usize
    }

    /// Rows of the oriented graph formed by the edges of color `c`.
    pub fn color_rows(&self, c: usize) -> (Vec<BitSet>, Vec<BitSet>) {
        let n = self.n();
        let mut out = vec![BitSet::new(n); n];
        let mut inn = vec![BitSet::new(n); n];
        for i in 0..n {
            for j in i + 1..n {
                if self.color(i, j) != c {
                    continue;
                }
                let (a, b) = if self.base.forward_bit(i, j) { (i, j) } else { (j, i) };
                out[a].insert(b);
                inn[b].insert(a);
            }
        }
        (out, inn)
    }
}
