use std::collections::HashMap;

use super::TourneyError;
use crate::digraph::Tournament;

pub const DEFAULT_BUDGET: usize = 64;
const MEMO_LIMIT: usize = 24;

/// A transitive subtournament listed source first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TTWitness {
    pub size: usize,
    pub vertices: Vec<usize>,
}

impl TTWitness {
    pub fn is_transitive_in(&self, t: &Tournament) -> bool {
        self.vertices.len() == self.size
            && self
                .vertices
                .iter()
                .enumerate()
                .all(|(i, &a)| self.vertices[i + 1..].iter().all(|&b| t.beats(a, b)))
    }
}

pub fn max_transitive_subtournament(t: &Tournament) -> Result<TTWitness, TourneyError> {
    max_transitive_with_budget(t, DEFAULT_BUDGET)
}

/// Exact maximum via maxtt(S) = 1 + max_{v∈S} maxtt(S ∩ N⁺(v)): memoized on
/// subsets up to 24 vertices, branch-and-bound from a greedy incumbent above that.
pub fn max_transitive_with_budget(t: &Tournament, budget: usize) -> Result<TTWitness, TourneyError> {
    let n = t.n();
    if n > budget.min(64) {
        return Err(TourneyError::BudgetExceeded { n, budget: budget.min(64) });
    }
    if n == 0 {
        return Ok(TTWitness { size: 0, vertices: vec![] });
    }
    let out: Vec<u64> = (0..n)
        .map(|v| (0..n).filter(|&w| t.beats(v, w)).fold(0u64, |m, w| m | 1 << w))
        .collect();
    let all = if n == 64 { !0 } else { (1u64 << n) - 1 };
    let vertices = if n <= MEMO_LIMIT {
        let mut memo = HashMap::new();
        let mut s = all;
        let mut vs = Vec::new();
        while s != 0 {
            let want = memo_rec(s, &out, &mut memo);
            let v = ones(s)
                .find(|&v| 1 + memo_rec(s & out[v], &out, &mut memo) == want)
                .expect("some vertex realizes the maximum");
            vs.push(v);
            s &= out[v];
        }
        vs
    } else {
        let mut best = greedy(all, &out);
        let mut cur = Vec::new();
        branch(all, &out, &mut cur, &mut best);
        best
    };
    Ok(TTWitness { size: vertices.len(), vertices })
}

fn ones(mut s: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if s == 0 {
            None
        } else {
            let v = s.trailing_zeros() as usize;
            s &= s - 1;
            Some(v)
        }
    })
}

fn memo_rec(s: u64, out: &[u64], memo: &mut HashMap<u64, u32>) -> u32 {
    if s == 0 {
        return 0;
    }
    if s & (s - 1) == 0 {
        return 1;
    }
    if let Some(&v) = memo.get(&s) {
        return v;
    }
    let mut best = 0;
    for v in ones(s) {
        let sub = s & out[v];
        if sub.count_ones() < best {
            continue;
        }
        best = best.max(1 + memo_rec(sub, out, memo));
    }
    memo.insert(s, best);
    best
}

fn greedy(mut s: u64, out: &[u64]) -> Vec<usize> {
    let mut vs = Vec::new();
    while s != 0 {
        let v = ones(s).max_by_key(|&v| ((s & out[v]).count_ones(), std::cmp::Reverse(v))).unwrap();
        vs.push(v);
        s &= out[v];
    }
    vs
}

fn branch(s: u64, out: &[u64], cur: &mut Vec<usize>, best: &mut Vec<usize>) {
    if cur.len() > best.len() {
        *best = cur.clone();
    }
    if s == 0 || cur.len() + s.count_ones() as usize <= best.len() {
        return;
    }
    let mut order: Vec<usize> = ones(s).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse((s & out[v]).count_ones()), v));
    for v in order {
        let sub = s & out[v];
        if cur.len() + 1 + sub.count_ones() as usize <= best.len() {
            continue;
        }
        cur.push(v);
        branch(sub, out, cur, best);
        cur.pop();
    }
}
