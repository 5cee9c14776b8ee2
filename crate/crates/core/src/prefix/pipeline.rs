use super::code::{labeling_stats, PrefixLabeling};
use super::labelings::height_prefix_coloring;
use super::skeleton::{biclique_in, biclique_required, skeleton_in, ForestParams, SkeletonOutcome};
use super::PrefixError;
use crate::bitset::BitSet;
use crate::digraph::{AcyclicDigraph, Embedding, Tournament};
use crate::embed::inner_stage_in;
use crate::tourney::{find_in_host, Host};

#[derive(Clone, Debug, PartialEq)]
pub struct PipelineReport {
    pub embedding: Embedding,
    /// "skeleton" when a dense-pair step embedded H, otherwise the final phase.
    pub phase: String,
    /// Host size the bound asks for.
    pub required: f64,
    pub skeleton_size: Option<usize>,
}

/// (2^{5Δ+4}Δ^{2Δ+1})^depth · comp^Δ · n.
pub fn coloring_bound(max_degree: usize, depth: usize, comp: f64, n: usize) -> f64 {
    let d = max_degree as i32;
    let per_level = 2f64.powi(5 * d + 4) * (max_degree as f64).powi(2 * d + 1);
    per_level.powi(depth as i32) * comp.powi(d) * n as f64
}

/// An upper bound on r₁ of a part: |part| when it has no edges,
/// ⌈21n/8 − 47/16⌉ for oriented forests, and 2^{n−1} (the transitive bound) otherwise.
pub fn default_part_bound(part: &AcyclicDigraph) -> f64 {
    let n = part.n();
    if part.edge_count() == 0 {
        n as f64
    } else if part.is_forest() {
        ((42 * n) as f64 / 16.0 - 47.0 / 16.0).ceil().max(n as f64)
    } else {
        2f64.powi(n as i32 - 1)
    }
}

fn phase(p: &str, detail: impl ToString) -> PrefixError {
    PrefixError::PhaseFailed { phase: p.to_string(), detail: detail.to_string() }
}

/// Skeleton with c = 1/(8Δ²) and d = Δ, then the inner stage on V_{ρ(v)}.
/// `rho` defaults to the height coloring. With `enforce` false the bound is not
/// checked and a phase that gets stuck is reported as `PhaseFailed`.
pub fn embed_via_coloring(
    h: &AcyclicDigraph,
    t: &Tournament,
    rho: Option<&PrefixLabeling>,
    enforce: bool,
) -> Result<PipelineReport, PrefixError> {
    let owned;
    let rho = match rho {
        Some(r) => r,
        None => {
            owned = height_prefix_coloring(h);
            &owned
        }
    };
    let stats = labeling_stats(h, rho)?;
    if !stats.is_coloring {
        return Err(PrefixError::NotAColoring);
    }
    let n = h.n();
    let delta = h.max_degree();
    if delta == 0 {
        if t.n() < n {
            return Err(PrefixError::PreconditionTooSmall { required: n as f64, got: t.n() });
        }
        let embedding = Embedding::new((0..n).collect());
        return Ok(PipelineReport { embedding, phase: "trivial".into(), required: n as f64, skeleton_size: None });
    }
    let required = coloring_bound(delta, stats.depth, stats.comp_f64(), n);
    if enforce && (t.n() as f64) < required {
        return Err(PrefixError::PreconditionTooSmall { required, got: t.n() });
    }
    let host = Host::from_tournament(t);
    let c = 1.0 / (8 * delta * delta) as f64;
    let skel = match skeleton_in(&host, h, rho, c, delta, &BitSet::full(t.n()), enforce)? {
        SkeletonOutcome::Embedded(embedding) => {
            return Ok(PipelineReport { embedding, phase: "skeleton".into(), required, skeleton_size: None })
        }
        SkeletonOutcome::Skeleton(s) => s,
    };
    let sets: Vec<BitSet> = (0..n).map(|v| skel.sets[rho.label(v)].clone()).collect();
    let embedding =
        inner_stage_in(&host, h, &sets, enforce).map_err(|e| if enforce { PrefixError::Embed(e) } else { phase("inner stage", e) })?;
    Ok(PipelineReport { embedding, phase: "inner".into(), required, skeleton_size: Some(skel.size()) })
}

/// γ = (m₁(2¹⁰A₁Δ²)^{d·depth(ρ₁)}comp(ρ₁)^d)^{−1}.
pub fn two_labeling_gamma(h: &AcyclicDigraph, rho1: &PrefixLabeling) -> Result<f64, PrefixError> {
    Ok(ForestParams::new(h, rho1)?.gamma())
}

/// Biclique skeleton for ρ₂ with each set holding at least the part bound, then
/// each part H[ρ₂⁻¹(x)] is found inside its own set by exhaustive search.
/// `part_bound` overrides [`default_part_bound`].
pub fn embed_via_two_labelings(
    h: &AcyclicDigraph,
    t: &Tournament,
    rho1: &PrefixLabeling,
    rho2: &PrefixLabeling,
    part_bound: Option<&dyn Fn(&AcyclicDigraph) -> f64>,
    enforce: bool,
) -> Result<PipelineReport, PrefixError> {
    let p = ForestParams::new(h, rho1)?;
    let stats2 = labeling_stats(h, rho2)?;
    let n = h.n();
    let parts: Vec<(String, Vec<usize>)> = stats2.code.iter().map(|x| (x.clone(), rho2.preimage(x))).collect();
    let biggest = parts
        .iter()
        .map(|(_, vs)| {
            let sub = h.induced(vs);
            part_bound.map_or_else(|| default_part_bound(&sub), |f| f(&sub))
        })
        .fold(n as f64, f64::max);
    let required = biclique_required(&p, stats2.depth, n, biggest);
    if enforce && (t.n() as f64) < required * (1.0 - 1e-9) {
        return Err(PrefixError::PreconditionTooSmall { required, got: t.n() });
    }
    let host = Host::from_tournament(t);
    let skel = match biclique_in(&host, h, rho1, rho2, biggest, enforce)? {
        SkeletonOutcome::Embedded(embedding) => {
            return Ok(PipelineReport { embedding, phase: "skeleton".into(), required, skeleton_size: None })
        }
        SkeletonOutcome::Skeleton(s) => s,
    };
    let mut map = vec![usize::MAX; n];
    for (x, vs) in &parts {
        let sub = h.induced(vs);
        let allowed = vec![skel.sets[x].clone(); vs.len()];
        let e = find_in_host(&host, &sub, Some(&allowed)).ok_or_else(|| PrefixError::PartEmbeddingFailed(x.clone()))?;
        for (i, &v) in vs.iter().enumerate() {
            map[v] = e.map[i];
        }
    }
    Ok(PipelineReport { embedding: Embedding::new(map), phase: "parts".into(), required, skeleton_size: Some(skel.size()) })
}
