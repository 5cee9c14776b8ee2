use std::collections::BTreeMap;

use super::code::{codeword_graph, labeling_stats, LabelingStats, PrefixLabeling};
use super::PrefixError;
use crate::bitset::BitSet;
use crate::digraph::{degeneracy_order, AcyclicDigraph, Embedding, Tournament};
use crate::embed::{
    find_dense_pair_in, forest_dense_pair_in, forward_count, non_backward, non_forward, DenseOutcome, DensePair, ForestOutcome,
};
use crate::tourney::Host;

const EPS: f64 = 1e-9;

/// One set per codeword. Sets of codewords adjacent under ρ form δ-dense pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct Skeleton {
    pub sets: BTreeMap<String, BitSet>,
    pub delta: f64,
    /// Splits that called a dense-pair step, in DFS order.
    pub splits: Vec<SplitRecord>,
}

/// Which side of a split was built first and with what parameter.
#[derive(Clone, Debug, PartialEq)]
pub struct SplitRecord {
    pub prefix: String,
    /// '0' unless a₁(x) < a₀(x), in which case the roles of 0/1 and in/out are swapped.
    pub first: char,
    pub c_x: f64,
    pub pair_size: usize,
}

impl Skeleton {
    pub fn size(&self) -> usize {
        self.sets.values().map(|s| s.count()).min().unwrap_or(0)
    }

    pub fn set(&self, x: &str) -> Option<&BitSet> {
        self.sets.get(x)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SkeletonOutcome {
    Skeleton(Skeleton),
    /// A dense-pair step embedded H outright.
    Embedded(Embedding),
}

/// (c^d/(4^{d+1}Δ))^depth · comp^{−d}: the guaranteed skeleton size as a fraction of N.
pub fn skeleton_bound(c: f64, d: usize, max_degree: usize, depth: usize, comp: f64) -> f64 {
    let per_level = c.powi(d as i32) / (4f64.powi(d as i32 + 1) * max_degree.max(1) as f64);
    per_level.powi(depth as i32) * comp.powi(-(d as i32))
}

fn phase(p: &str, detail: impl ToString) -> PrefixError {
    PrefixError::PhaseFailed { phase: p.to_string(), detail: detail.to_string() }
}

/// Every pair x ≺ y of codewords adjacent under ρ has at least δ|V_x||V_y| pairs
/// oriented V_x → V_y (a shared vertex counts as not forward).
pub fn validate_skeleton(t: &Tournament, h: &AcyclicDigraph, rho: &PrefixLabeling, s: &Skeleton) -> Result<(), PrefixError> {
    validate_in(&Host::from_tournament(t), h, rho, s)
}

fn validate_in(host: &Host, h: &AcyclicDigraph, rho: &PrefixLabeling, s: &Skeleton) -> Result<(), PrefixError> {
    let code = rho.code();
    for x in &code {
        match s.sets.get(x) {
            Some(v) if !v.is_empty() => {}
            _ => return Err(phase("skeleton validation", format!("codeword {x:?} has no set"))),
        }
    }
    let adj = codeword_graph(h, rho, &code);
    for (i, nb) in adj.iter().enumerate() {
        for &j in nb.iter().filter(|&&j| j > i) {
            let (vx, vy) = (&s.sets[&code[i]], &s.sets[&code[j]]);
            let f = forward_count(host, vx, vy);
            let total = (vx.count() * vy.count()) as f64;
            let ok = if s.delta >= 1.0 { f as f64 == total } else { f as f64 >= s.delta * total - EPS * total };
            if !ok {
                return Err(phase(
                    "skeleton validation",
                    format!("({:?}, {:?}) has {f} of {total} pairs forward, below δ = {}", code[i], code[j], s.delta),
                ));
            }
        }
    }
    Ok(())
}

fn is_prefix_of_code(code: &[String], x: &str) -> bool {
    code.iter().any(|w| w.starts_with(x))
}

/// Codewords starting with `side` that are adjacent to a codeword starting with `other`.
fn cross_adjacent(code: &[String], adj: &[std::collections::BTreeSet<usize>], side: &str, other: &str) -> Vec<String> {
    (0..code.len())
        .filter(|&i| code[i].starts_with(side) && adj[i].iter().any(|&j| code[j].starts_with(other)))
        .map(|i| code[i].clone())
        .collect()
}

struct Dfs<'a> {
    host: &'a Host,
    h: &'a AcyclicDigraph,
    stats: LabelingStats,
    adj: Vec<std::collections::BTreeSet<usize>>,
    c: f64,
    enforce: bool,
    sets: BTreeMap<String, BitSet>,
    splits: Vec<SplitRecord>,
}

impl Dfs<'_> {
    fn descend(&mut self, x: &str, vx: BitSet) -> Result<Option<Embedding>, PrefixError> {
        let code = &self.stats.code.clone();
        if !is_prefix_of_code(code, x) {
            return Ok(None);
        }
        if code.iter().any(|w| w == x) {
            self.sets.insert(x.to_string(), vx);
            return Ok(None);
        }
        let (x0, x1) = (format!("{x}0"), format!("{x}1"));
        let (a0, a1) = self.stats.splits[x];
        if a0.min(a1) == 0 {
            if let Some(e) = self.descend(&x0, vx.clone())? {
                return Ok(Some(e));
            }
            return self.descend(&x1, vx);
        }
        let first = if a0 <= a1 { '0' } else { '1' };
        let c_x = self.c / (4.0 * a0.min(a1) as f64);
        let out = find_dense_pair_in(self.host, self.h, c_x, &vx, self.enforce)
            .map_err(|e| if self.enforce { PrefixError::Embed(e) } else { phase(&format!("dense pair at {x:?}"), e) })?;
        let pair = match out {
            DenseOutcome::Embedded(e) => return Ok(Some(e)),
            DenseOutcome::Pair { pair, .. } => pair,
        };
        self.splits.push(SplitRecord { prefix: x.to_string(), first, c_x, pair_size: pair.size() });
        let nh = self.host.n();
        let w0 = BitSet::from_indices(nh, pair.w1.iter().copied());
        let w1 = BitSet::from_indices(nh, pair.w2.iter().copied());
        // the side built first keeps vertices with few wrong-way pairs to the other side
        let (near, far, near_x, far_x) = if first == '0' { (&w0, &w1, &x0, &x1) } else { (&w1, &w0, &x1, &x0) };
        let lim = 2.0 * c_x * far.count() as f64;
        let kept: Vec<usize> = near
            .iter()
            .filter(|&w| {
                let wrong = if first == '0' { non_forward(self.host, w, far) } else { non_backward(self.host, w, far) };
                wrong as f64 <= lim
            })
            .collect();
        let v_near = BitSet::from_indices(nh, kept);
        if self.enforce && 2 * v_near.count() < near.count() {
            return Err(PrefixError::Embed(crate::embed::EmbedError::Internal(format!(
                "refined side at {x:?} kept {} of {}",
                v_near.count(),
                near.count()
            ))));
        }
        if let Some(e) = self.descend(near_x, v_near)? {
            return Ok(Some(e));
        }
        let mut v_far = far.clone();
        for y in cross_adjacent(code, &self.adj, near_x, far_x) {
            let vy = self.sets[&y].clone();
            let lim = self.c * vy.count() as f64;
            for w in far.iter() {
                let wrong = if first == '0' { non_backward(self.host, w, &vy) } else { non_forward(self.host, w, &vy) };
                if wrong as f64 >= lim {
                    v_far.remove(w);
                }
            }
        }
        if self.enforce && 2 * v_far.count() < far.count() {
            return Err(PrefixError::Embed(crate::embed::EmbedError::Internal(format!(
                "pruned side at {x:?} kept {} of {}",
                v_far.count(),
                far.count()
            ))));
        }
        self.descend(far_x, v_far)
    }
}

/// A (ρ, 1−c)-skeleton by depth-first splitting, with d the degeneracy of H.
pub fn build_skeleton(h: &AcyclicDigraph, t: &Tournament, rho: &PrefixLabeling, c: f64, enforce: bool) -> Result<SkeletonOutcome, PrefixError> {
    let d = degeneracy_order(h).0;
    skeleton_in(&Host::from_tournament(t), h, rho, c, d, &BitSet::full(t.n()), enforce)
}

/// Same inside `within`, for any d at least the degeneracy of H.
pub(crate) fn skeleton_in(
    host: &Host,
    h: &AcyclicDigraph,
    rho: &PrefixLabeling,
    c: f64,
    d: usize,
    within: &BitSet,
    enforce: bool,
) -> Result<SkeletonOutcome, PrefixError> {
    if !(c > 0.0 && c < 1.0) {
        return Err(PrefixError::BadParameter(format!("c = {c} outside (0, 1)")));
    }
    if d < degeneracy_order(h).0 {
        return Err(PrefixError::BadParameter(format!("d = {d} is below the degeneracy")));
    }
    let stats = labeling_stats(h, rho)?;
    let big_n = within.count();
    let factor = skeleton_bound(c, d, h.max_degree(), stats.depth, stats.comp_f64());
    let required = h.n() as f64 / factor;
    if enforce && (big_n as f64) < required * (1.0 - EPS) {
        return Err(PrefixError::PreconditionTooSmall { required, got: big_n });
    }
    let adj = codeword_graph(h, rho, &stats.code);
    let mut dfs = Dfs { host, h, stats, adj, c, enforce, sets: BTreeMap::new(), splits: Vec::new() };
    if let Some(e) = dfs.descend("", within.clone())? {
        return Ok(SkeletonOutcome::Embedded(e));
    }
    let s = Skeleton { sets: dfs.sets, delta: 1.0 - c, splits: dfs.splits };
    if enforce && (s.size() as f64) < factor * big_n as f64 * (1.0 - EPS) {
        return Err(phase("skeleton", format!("size {} is below the guaranteed {:.3}", s.size(), factor * big_n as f64)));
    }
    validate_in(host, h, rho, &s)?;
    Ok(SkeletonOutcome::Skeleton(s))
}

#[derive(Clone, Debug, PartialEq)]
pub enum OneBicliqueOutcome {
    Embedded(Embedding),
    Pair(DensePair),
}

/// Parameters shared by the 1-dense pair step and the biclique skeleton.
#[derive(Clone, Copy, Debug)]
pub(crate) struct ForestParams {
    pub d: usize,
    pub a: usize,
    pub delta: usize,
    pub m: usize,
    pub depth: usize,
    pub comp: f64,
}

impl ForestParams {
    pub fn new(h: &AcyclicDigraph, rho1: &PrefixLabeling) -> Result<Self, PrefixError> {
        let s = labeling_stats(h, rho1)?;
        if !s.is_forest_labeling {
            return Err(PrefixError::NotAForestLabeling);
        }
        Ok(ForestParams {
            // the bounds are stated for d ≥ 2 and an adjacent pair of codewords
            d: degeneracy_order(h).0.max(2),
            a: s.max_degree.max(1),
            delta: h.max_degree().max(1),
            m: s.max_component.max(1),
            depth: s.depth,
            comp: s.comp_f64(),
        })
    }

    fn c(&self) -> f64 {
        1.0 / (16.0 * self.a as f64 * self.delta as f64)
    }

    /// Size fraction of the (ρ₁, 1 − 1/(16AΔ))-skeleton.
    fn skeleton_factor(&self) -> f64 {
        skeleton_bound(self.c(), self.d, self.delta, self.depth, self.comp)
    }

    /// (2¹⁰AΔ²)^{d·depth}·comp^d.
    fn stated(&self) -> f64 {
        (1024.0 * self.a as f64 * (self.delta * self.delta) as f64).powi((self.d * self.depth) as i32) * self.comp.powi(self.d as i32)
    }

    /// Host size the 1-dense pair step needs: the stated bound, and large enough
    /// that the skeleton has the 12Δn vertices per set the greedy phase uses.
    pub fn one_required(&self, n: usize) -> f64 {
        (self.stated() * n as f64).max(12.0 * self.delta as f64 * n as f64 / self.skeleton_factor())
    }

    /// Size fraction of the returned pair: skeleton size/(16mΔ).
    pub fn one_gamma(&self) -> f64 {
        self.skeleton_factor() / (16.0 * self.m as f64 * self.delta as f64)
    }

    /// γ = (m(2¹⁰AΔ²)^{d·depth}comp^d)^{−1}.
    pub fn gamma(&self) -> f64 {
        1.0 / (self.m as f64 * self.stated())
    }
}

/// Builds a (ρ₁, 1 − 1/(16AΔ))-skeleton, thins it so every vertex has few
/// in-neighbors from later adjacent sets, then embeds the forest parts one
/// codeword at a time. The first part that cannot be embedded yields a 1-dense pair.
pub fn one_biclique(h: &AcyclicDigraph, t: &Tournament, rho1: &PrefixLabeling, enforce: bool) -> Result<OneBicliqueOutcome, PrefixError> {
    let p = ForestParams::new(h, rho1)?;
    one_biclique_in(&Host::from_tournament(t), h, rho1, &p, &BitSet::full(t.n()), enforce)
}

pub(crate) fn one_biclique_in(
    host: &Host,
    h: &AcyclicDigraph,
    rho1: &PrefixLabeling,
    p: &ForestParams,
    within: &BitSet,
    enforce: bool,
) -> Result<OneBicliqueOutcome, PrefixError> {
    let big_n = within.count();
    let required = p.one_required(h.n());
    if enforce && (big_n as f64) < required * (1.0 - EPS) {
        return Err(PrefixError::PreconditionTooSmall { required, got: big_n });
    }
    let skel = match skeleton_in(host, h, rho1, p.c(), p.d, within, enforce)? {
        SkeletonOutcome::Embedded(e) => return Ok(OneBicliqueOutcome::Embedded(e)),
        SkeletonOutcome::Skeleton(s) => s,
    };
    let code = rho1.code();
    let adj = codeword_graph(h, rho1, &code);
    let mut refined: BTreeMap<String, BitSet> = BTreeMap::new();
    for (i, x) in code.iter().enumerate() {
        let vx = &skel.sets[x];
        let mut keep = vx.clone();
        for &j in adj[i].iter().filter(|&&j| j > i) {
            let vy = &skel.sets[&code[j]];
            let lim = vy.count() as f64 / (8.0 * p.delta as f64);
            for w in vx.iter() {
                if non_forward(host, w, vy) as f64 >= lim {
                    keep.remove(w);
                }
            }
        }
        refined.insert(x.clone(), keep);
    }
    let n = h.n();
    let mut u: Vec<BitSet> = (0..n).map(|v| refined[rho1.label(v)].clone()).collect();
    let mut map = vec![usize::MAX; n];
    for x in &code {
        let part = rho1.preimage(x);
        let sub = h.induced(&part);
        let sets: Vec<BitSet> = part.iter().map(|&v| u[v].clone()).collect();
        let out = forest_dense_pair_in(host, &sub, &sets, enforce)
            .map_err(|e| if enforce { PrefixError::Embed(e) } else { phase(&format!("forest part {x:?}"), e) })?;
        let e = match out {
            ForestOutcome::Embedded(e) => e,
            ForestOutcome::Pair { pair, .. } => {
                let bound = p.one_gamma() * big_n as f64;
                if enforce && (pair.size() as f64) < bound * (1.0 - EPS) {
                    return Err(phase("one biclique", format!("pair of size {} below {bound:.3}", pair.size())));
                }
                return Ok(OneBicliqueOutcome::Pair(pair));
            }
        };
        for (i, &v) in part.iter().enumerate() {
            map[v] = e.map[i];
        }
        let used: Vec<usize> = part.iter().map(|&v| map[v]).collect();
        for z in 0..n {
            if map[z] != usize::MAX {
                continue;
            }
            for &w in &used {
                u[z].remove(w);
            }
            for &w in h.in_neighbors(z) {
                if map[w] != usize::MAX && rho1.label(w) == x {
                    u[z].intersect_with(host.out_row(map[w]));
                }
            }
        }
    }
    Ok(OneBicliqueOutcome::Embedded(Embedding::new(map)))
}

/// A (ρ₂, 1)-skeleton: every proper prefix is split into the two sides of a
/// 1-dense pair found by [`one_biclique`] inside its set, so the sets of all
/// codewords are pairwise disjoint.
pub fn biclique_skeleton(
    h: &AcyclicDigraph,
    t: &Tournament,
    rho1: &PrefixLabeling,
    rho2: &PrefixLabeling,
    enforce: bool,
) -> Result<SkeletonOutcome, PrefixError> {
    biclique_in(&Host::from_tournament(t), h, rho1, rho2, h.n() as f64, enforce)
}

/// Host size for [`biclique_skeleton`] when each final set must hold `target` vertices.
pub(crate) fn biclique_required(p: &ForestParams, depth2: usize, n: usize, target: f64) -> f64 {
    let stated = p.gamma().powi(-(depth2 as i32)) * target;
    if depth2 == 0 {
        return stated.max(target);
    }
    let g = p.one_gamma();
    // each split needs the one-biclique bound, and the leaves need `target`
    let derived = (g.powi(-(depth2 as i32 - 1)) * p.one_required(n)).max(g.powi(-(depth2 as i32)) * target);
    stated.max(derived)
}

pub(crate) fn biclique_in(
    host: &Host,
    h: &AcyclicDigraph,
    rho1: &PrefixLabeling,
    rho2: &PrefixLabeling,
    target: f64,
    enforce: bool,
) -> Result<SkeletonOutcome, PrefixError> {
    let p = ForestParams::new(h, rho1)?;
    let stats2 = labeling_stats(h, rho2)?;
    let big_n = host.n();
    let required = biclique_required(&p, stats2.depth, h.n(), target);
    if enforce && (big_n as f64) < required * (1.0 - EPS) {
        return Err(PrefixError::PreconditionTooSmall { required, got: big_n });
    }
    let code = stats2.code.clone();
    let mut sets = BTreeMap::new();
    let mut stack = vec![(String::new(), BitSet::full(big_n))];
    while let Some((x, vx)) = stack.pop() {
        if !is_prefix_of_code(&code, &x) {
            continue;
        }
        if code.contains(&x) {
            sets.insert(x, vx);
            continue;
        }
        let pair = match one_biclique_in(host, h, rho1, &p, &vx, enforce)? {
            OneBicliqueOutcome::Embedded(e) => return Ok(SkeletonOutcome::Embedded(e)),
            OneBicliqueOutcome::Pair(pair) => pair,
        };
        stack.push((format!("{x}1"), BitSet::from_indices(big_n, pair.w2)));
        stack.push((format!("{x}0"), BitSet::from_indices(big_n, pair.w1)));
    }
    let s = Skeleton { sets, delta: 1.0, splits: Vec::new() };
    let floor = p.one_gamma().powi(stats2.depth as i32) * big_n as f64;
    if enforce && (s.size() as f64) < floor * (1.0 - EPS) {
        return Err(phase("biclique skeleton", format!("size {} is below {floor:.3}", s.size())));
    }
    validate_in(host, h, rho2, &s)?;
    Ok(SkeletonOutcome::Skeleton(s))
}
