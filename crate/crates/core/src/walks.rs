//! (R, f, s)-walks: run-length sequences on a tournament R where every back-edge
//! v_i ← v_j (i < j) is separated by more than f(min(a_i, a_j)).

use std::fmt;

use rayon::prelude::*;

use crate::digraph::{Embedding, Tournament};
use crate::mesh::MonotoneFunction;
use crate::tourney::max_transitive_subtournament;

/// Runs (v_i, a_i) with v_i ∈ V(R) and a_i ≥ 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Walk {
    pub runs: Vec<(usize, u64)>,
}

/// First violated condition; positions are 0-based run indices.
#[derive(Clone, Debug, PartialEq)]
pub enum WalkViolation {
    VertexOutOfRange { i: usize, v: usize },
    RunOutOfRange { i: usize, a: u64 },
    ConsecutiveEqual { i: usize },
    /// v_i ← v_j with a_{(i,j)} ≤ f(min(a_i, a_j)).
    BackEdge { i: usize, j: usize, gap: u64, bound: f64 },
}

impl fmt::Display for WalkViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WalkViolation::VertexOutOfRange { i, v } => write!(f, "run {}: vertex {} not in R", i + 1, v + 1),
            WalkViolation::RunOutOfRange { i, a } => write!(f, "run {}: a = {a} out of range", i + 1),
            WalkViolation::ConsecutiveEqual { i } => write!(f, "runs {} and {} repeat a vertex", i + 1, i + 2),
            WalkViolation::BackEdge { i, j, gap, bound } => {
                write!(f, "back-edge between runs {} and {}: gap {gap} ≤ f = {bound}", i + 1, j + 1)
            }
        }
    }
}

impl Walk {
    pub fn new(runs: Vec<(usize, u64)>) -> Self {
        Walk { runs }
    }

    pub fn ell(&self) -> usize {
        self.runs.len()
    }

    /// Σ a_i.
    pub fn length(&self) -> u64 {
        self.runs.iter().map(|r| r.1).sum()
    }

    /// max a_i, or 0 for the empty walk.
    pub fn s(&self) -> u64 {
        self.runs.iter().map(|r| r.1).max().unwrap_or(0)
    }

    /// The run-length decoded vertex sequence.
    pub fn decode(&self) -> Vec<usize> {
        self.runs.iter().flat_map(|&(v, a)| std::iter::repeat_n(v, a as usize)).collect()
    }

    /// Run-length encoding of a vertex sequence.
    pub fn encode(seq: &[usize]) -> Self {
        let mut runs: Vec<(usize, u64)> = Vec::new();
        for &v in seq {
            match runs.last_mut() {
                Some((u, a)) if *u == v => *a += 1,
                _ => runs.push((v, 1)),
            }
        }
        Walk { runs }
    }
}

/// Checks 1 ≤ a_i ≤ s, v_i ≠ v_{i+1}, and the back-edge gap condition, in that order per run.
pub fn is_valid_walk(r: &Tournament, f: &MonotoneFunction, s: u64, w: &Walk) -> Result<(), WalkViolation> {
    for (i, &(v, a)) in w.runs.iter().enumerate() {
        if v >= r.n() {
            return Err(WalkViolation::VertexOutOfRange { i, v });
        }
        if a < 1 || a > s {
            return Err(WalkViolation::RunOutOfRange { i, a });
        }
        if i + 1 < w.runs.len() && w.runs[i + 1].0 == v {
            return Err(WalkViolation::ConsecutiveEqual { i });
        }
    }
    // prefix[k] = a_0 + … + a_{k−1}
    let mut prefix = vec![0u64; w.runs.len() + 1];
    for (k, r) in w.runs.iter().enumerate() {
        prefix[k + 1] = prefix[k] + r.1;
    }
    // a violation needs gap ≤ f(min(a_i, a_j)) ≤ f(s), so only a trailing window of i matters
    let cap = f.eval(s);
    let mut lo = 0;
    for j in 0..w.runs.len() {
        while lo < j && (prefix[j] - prefix[lo + 1]) as f64 > cap {
            lo += 1;
        }
        for i in lo..j {
            let (vi, ai) = w.runs[i];
            let (vj, aj) = w.runs[j];
            if r.beats(vj, vi) {
                let gap = prefix[j] - prefix[i + 1];
                let bound = f.eval(ai.min(aj));
                if gap as f64 <= bound {
                    return Err(WalkViolation::BackEdge { i, j, gap, bound });
                }
            }
        }
    }
    Ok(())
}

/// Projects φ(0), …, φ(n−1) to the first coordinate of R^m (R on `r` vertices)
/// and run-length encodes the result.
pub fn extract_walk(r: usize, m: u32, phi: &Embedding) -> Walk {
    let block = (r as u64).pow(m.saturating_sub(1)) as usize;
    let seq: Vec<usize> = phi.map.iter().map(|&x| x / block).collect();
    Walk::encode(&seq)
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthEstimate {
    pub s: u64,
    /// Longest length found.
    pub length: u64,
    /// True when the search space was exhausted, so `length` is L_{R,f}(s).
    pub exact: bool,
    pub ratio: f64,
    pub best: Walk,
    pub nodes: u64,
}

struct Search<'a> {
    r: &'a Tournament,
    f: &'a MonotoneFunction,
    s: u64,
    max_runs: usize,
    budget: u64,
    nodes: u64,
    runs: Vec<(usize, u64)>,
    prefix: Vec<u64>,
    best: Vec<(usize, u64)>,
    best_depth: Option<usize>,
    best_len: u64,
    exhausted: bool,
}

impl Search<'_> {
    fn fits(&self, v: usize, a: u64) -> bool {
        let j = self.runs.len();
        if self.runs.last().is_some_and(|r| r.0 == v) {
            return false;
        }
        // gaps grow toward earlier runs and f is nondecreasing, so stop past f(s)
        let cap = self.f.eval(self.s);
        for i in (0..j).rev() {
            let gap = (self.prefix[j] - self.prefix[i + 1]) as f64;
            if gap > cap {
                break;
            }
            let (vi, ai) = self.runs[i];
            if self.r.beats(v, vi) && gap <= self.f.eval(ai.min(a)) {
                return false;
            }
        }
        true
    }

    /// The best walk so far, which may still be a prefix of the current path.
    fn best_runs(&self) -> &[(usize, u64)] {
        match self.best_depth {
            Some(d) => &self.runs[..d],
            None => &self.best,
        }
    }

    fn record(&mut self) {
        let len = *self.prefix.last().unwrap();
        if len > self.best_len || (len == self.best_len && self.runs.as_slice() < self.best_runs()) {
            self.best_len = len;
            self.best_depth = Some(self.runs.len());
        }
    }

    fn pop(&mut self) {
        if self.best_depth == Some(self.runs.len()) {
            self.best = self.runs.clone();
            self.best_depth = None;
        }
        self.runs.pop();
        self.prefix.pop();
    }

    /// Depth-first with an explicit stack; walks can run to millions of runs.
    fn dfs(&mut self) {
        let moves: Vec<(usize, u64)> = (0..self.r.n()).flat_map(|v| (1..=self.s).rev().map(move |a| (v, a))).collect();
        self.record();
        let mut cursor = vec![0usize];
        while let Some(c) = cursor.last_mut() {
            if self.runs.len() >= self.max_runs || *c >= moves.len() {
                cursor.pop();
                if !cursor.is_empty() {
                    self.pop();
                }
                continue;
            }
            if self.nodes >= self.budget {
                self.exhausted = true;
                break;
            }
            let (v, a) = moves[*c];
            *c += 1;
            if !self.fits(v, a) {
                continue;
            }
            self.nodes += 1;
            let len = *self.prefix.last().unwrap();
            self.runs.push((v, a));
            self.prefix.push(len + a);
            self.record();
            cursor.push(0);
        }
        if let Some(d) = self.best_depth.take() {
            self.best = self.runs[..d].to_vec();
        }
    }
}

/// Longest (R, f, s)-walk by depth-first search, extensions in (vertex ascending,
/// run length descending) order. `budget` caps visited nodes across all branches.
pub fn longest_walk(r: &Tournament, f: &MonotoneFunction, s: u64, budget: u64) -> GrowthEstimate {
    longest_walk_capped(r, f, s, usize::MAX, budget)
}

/// Same, over walks with at most `max_runs` runs. Exactness then refers to that class.
pub fn longest_walk_capped(r: &Tournament, f: &MonotoneFunction, s: u64, max_runs: usize, budget: u64) -> GrowthEstimate {
    let s = s.max(1);
    let first: Vec<(usize, u64)> = (0..r.n()).flat_map(|v| (1..=s).rev().map(move |a| (v, a))).collect();
    if max_runs == 0 || first.is_empty() {
        return GrowthEstimate { s, length: 0, exact: true, ratio: 0.0, best: Walk::new(Vec::new()), nodes: 0 };
    }
    // every first move gets an equal share of the budget
    let share = (budget / first.len() as u64).max(1);
    let results: Vec<(u64, Vec<(usize, u64)>, u64, bool)> = first
        .par_iter()
        .map(|&(v, a)| {
            let mut st = Search {
                r,
                f,
                s,
                max_runs,
                budget: share,
                nodes: 1,
                runs: vec![(v, a)],
                prefix: vec![0, a],
                best: Vec::new(),
                best_depth: None,
                best_len: 0,
                exhausted: false,
            };
            st.dfs();
            (st.best_len, st.best, st.nodes, st.exhausted)
        })
        .collect();
    let mut length = 0;
    let mut best = Vec::new();
    let mut nodes = 0;
    let mut exact = true;
    for (l, b, n, ex) in results {
        nodes += n;
        exact &= !ex;
        if l > length || (l == length && b < best) {
            length = l;
            best = b;
        }
    }
    GrowthEstimate { s, length, exact, ratio: length as f64 / s as f64, best: Walk::new(best), nodes }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ShortnessRow {
    pub s: u64,
    pub length: u64,
    pub exact: bool,
    /// L ≤ 2st (with L a lower bound unless `exact`).
    pub within_2st: bool,
    /// L(s'') ≤ f(s'') for every s'' ≤ s probed so far.
    pub within_f: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ShortnessReport {
    pub t: usize,
    /// R has no transitive subtournament on t vertices; None when R is too large to check.
    pub r_tt_free: Option<bool>,
    /// f(s) > 6st² at every probed s.
    pub f_large_enough: bool,
    /// t ≥ 10⁶, the threshold the asymptotic argument needs.
    pub t_meets_threshold: bool,
    pub rows: Vec<ShortnessRow>,
}

impl ShortnessReport {
    pub fn notes(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.t_meets_threshold {
            out.push(format!("t = {} is below 10^6: outside the recursive bound's hypothesis", self.t));
        }
        match self.r_tt_free {
            Some(false) => out.push(format!("R contains a transitive subtournament on {} vertices", self.t)),
            None => out.push("R is too large to check for transitive subtournaments".into()),
            Some(true) => {}
        }
        if !self.f_large_enough {
            out.push("f(s) ≤ 6st² at some probed s".into());
        }
        out
    }
}

/// Empirical check of which shortness inequalities hold over `s_range`. Each s
/// runs [`longest_walk`] with `budget`; inexact rows only give lower bounds.
pub fn shortness_probe(
    r: &Tournament,
    f: &MonotoneFunction,
    s_range: std::ops::RangeInclusive<u64>,
    t: usize,
    budget: u64,
) -> ShortnessReport {
    let tt = max_transitive_subtournament(r).ok().map(|w| w.size);
    let mut rows = Vec::new();
    let mut within_f = true;
    let mut f_large_enough = true;
    let lo = *s_range.start();
    // L(s'') for s'' below the range also enters the second condition
    for s in 1..lo {
        let g = longest_walk(r, f, s, budget);
        within_f &= g.length as f64 <= f.eval(s);
    }
    for s in s_range {
        let g = longest_walk(r, f, s, budget);
        within_f &= g.length as f64 <= f.eval(s);
        f_large_enough &= f.eval(s) > 6.0 * (s * (t * t) as u64) as f64;
        rows.push(ShortnessRow {
            s,
            length: g.length,
            exact: g.exact,
            within_2st: g.length <= 2 * s * t as u64,
            within_f,
        });
    }
    ShortnessReport { t, r_tt_free: tt.map(|k| k < t), f_large_enough, t_meets_threshold: t >= 1_000_000, rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tourney::paley;

    fn c3() -> Tournament {
        paley(3).unwrap()
    }

    fn konst(c: f64) -> MonotoneFunction {
        MonotoneFunction::constant(c).unwrap()
    }

    #[test]
    fn validity_examples() {
        let r = c3();
        assert_eq!(is_valid_walk(&r, &konst(5.0), 1, &Walk::new(vec![(0, 1)])), Ok(()));
        // 0→1→2→0: runs 0 and 2 form a back-edge with gap 1
        let w = Walk::new(vec![(0, 1), (1, 1), (2, 1)]);
        assert_eq!(
            is_valid_walk(&r, &konst(5.0), 1, &w),
            Err(WalkViolation::BackEdge { i: 0, j: 2, gap: 1, bound: 5.0 })
        );
        assert_eq!(is_valid_walk(&r, &konst(0.5), 1, &w), Ok(()));
        let tt = Tournament::transitive(3);
        assert_eq!(is_valid_walk(&tt, &konst(1e9), 4, &Walk::new(vec![(0, 4), (1, 2), (2, 3)])), Ok(()));
        assert_eq!(
            is_valid_walk(&tt, &konst(1.0), 2, &Walk::new(vec![(0, 3)])),
            Err(WalkViolation::RunOutOfRange { i: 0, a: 3 })
        );
        assert_eq!(
            is_valid_walk(&tt, &konst(1.0), 2, &Walk::new(vec![(0, 1), (0, 1)])),
            Err(WalkViolation::ConsecutiveEqual { i: 0 })
        );
    }

    #[test]
    fn run_length_round_trip() {
        let seq = vec![2, 2, 0, 1, 1, 1, 2];
        let w = Walk::encode(&seq);
        assert_eq!(w.runs, vec![(2, 2), (0, 1), (1, 3), (2, 1)]);
        assert_eq!(w.decode(), seq);
        assert_eq!((w.length(), w.s(), w.ell()), (7, 3, 4));
    }

    #[test]
    fn extraction_projects_first_coordinate() {
        // R on 3 vertices, m = 2: x ↦ x / 3
        let phi = Embedding::new(vec![0, 1, 2, 4, 8, 7]);
        assert_eq!(extract_walk(3, 2, &phi).runs, vec![(0, 3), (1, 1), (2, 2)]);
        let all_in_one = Embedding::new(vec![3, 4, 5]);
        assert_eq!(extract_walk(3, 2, &all_in_one).ell(), 1);
        let m1 = Embedding::new(vec![2, 0, 1]);
        assert!(extract_walk(3, 1, &m1).runs.iter().all(|r| r.1 == 1));
    }

    /// Longest walk over every sequence of at most `max_runs` runs.
    fn enumerate_all(r: &Tournament, f: &MonotoneFunction, s: u64, max_runs: usize) -> u64 {
        let moves: Vec<(usize, u64)> = (0..r.n()).flat_map(|v| (1..=s).map(move |a| (v, a))).collect();
        let mut best = 0;
        let mut stack: Vec<Vec<(usize, u64)>> = vec![Vec::new()];
        while let Some(w) = stack.pop() {
            let walk = Walk::new(w.clone());
            if is_valid_walk(r, f, s, &walk).is_err() {
                continue;
            }
            best = best.max(walk.length());
            if w.len() < max_runs {
                for &m in &moves {
                    let mut x = w.clone();
                    x.push(m);
                    stack.push(x);
                }
            }
        }
        best
    }

    #[test]
    fn search_matches_enumeration() {
        let hosts = [Tournament::transitive(2), Tournament::transitive(3), c3()];
        for r in &hosts {
            for f in [konst(0.5), konst(2.0), konst(5.0), MonotoneFunction::table(vec![1.0, 3.0, 4.0]).unwrap()] {
                for s in 1..=3 {
                    let g = longest_walk_capped(r, &f, s, 6, 10_000_000);
                    assert!(g.exact);
                    assert_eq!(g.length, enumerate_all(r, &f, s, 6), "{} s={s}", f.describe());
                    is_valid_walk(r, &f, s, &g.best).unwrap();
                }
            }
        }
    }

    #[test]
    fn small_cases() {
        // one vertex: a single run
        let one = Tournament::transitive(1);
        let g = longest_walk(&one, &konst(1.0), 4, 1000);
        assert_eq!((g.length, g.exact), (4, true));
        // TT₂ with tiny f: (0, s), (1, s) and nothing more
        let g = longest_walk(&Tournament::transitive(2), &konst(1e-9), 3, 1000);
        assert_eq!((g.length, g.exact), (6, true));
        // C₃ with s = 1 and f ≡ 5: no back-edge fits, so at most two runs
        let g = longest_walk(&c3(), &konst(5.0), 1, 100_000);
        assert_eq!((g.length, g.exact), (2, true));
    }

    #[test]
    fn unbounded_walks_hit_the_budget() {
        // C₃ with f below 1: cycling 0,1,2,… never violates anything
        let g = longest_walk(&c3(), &konst(0.5), 1, 5_000);
        assert!(!g.exact);
        assert!(g.length > 100);
    }

    #[test]
    fn probe_reports_hypotheses() {
        let r = paley(7).unwrap();
        let rep = shortness_probe(&r, &konst(40.0), 1..=2, 4, 200_000);
        assert_eq!(rep.r_tt_free, Some(true));
        assert!(!rep.t_meets_threshold);
        assert!(rep.notes().iter().any(|n| n.contains("10^6")));
        assert_eq!(rep.rows.len(), 2);
        for row in &rep.rows {
            assert!(row.exact);
            assert!(row.within_2st);
        }
    }
}

#[cfg(test)]
mod mesh_tests {
    use super::*;
    use crate::bitset::BitSet;
    use crate::mesh::{build_interval_mesh, verify_interval_mesh};
    use crate::tourney::{lex_power, paley, search_embeddings, Host};
    use rand::{Rng, SeedableRng};

    #[test]
    fn extracted_walks_are_valid() {
        let mut checked = 0;
        for seed in 0..30u64 {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let (r, m, n) = match seed % 3 {
                0 => (paley(3).unwrap(), 1 + (seed % 3) as u32, 6),
                1 => (paley(7).unwrap(), 2, 10),
                _ => (paley(7).unwrap(), 3, 14),
            };
            let f = MonotoneFunction::constant([0.5, 1.0, 2.0][(seed / 3 % 3) as usize]).unwrap();
            let h = build_interval_mesh(&f, n);
            verify_interval_mesh(&h, &f).unwrap();
            let t = lex_power(&r, m).unwrap();
            let host = Host::from_tournament(&t);
            let allowed: Vec<BitSet> =
                (0..n).map(|_| BitSet::from_indices(t.n(), (0..t.n()).filter(|_| rng.gen_bool(0.7)))).collect();
            let mut found = None;
            search_embeddings(&host, &h, Some(&allowed), &mut |map| {
                found = Some(map.to_vec());
                true
            });
            let Some(map) = found else { continue };
            let phi = Embedding::new(map);
            phi.validate(&h, &t).unwrap();
            let w = extract_walk(r.n(), m, &phi);
            assert_eq!(w.length(), n as u64);
            is_valid_walk(&r, &f, w.s(), &w).unwrap();
            checked += 1;
        }
        assert!(checked >= 15, "only {checked} embeddings found");
    }
}
