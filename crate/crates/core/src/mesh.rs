//! f-interval meshes: greedy construction and exhaustive verification.
//!
//! Vertices are `0..n` internally; intervals are reported 1-based as half-open
//! pairs (a, b] such as (0,1] (2,3].

use rayon::prelude::*;
use thiserror::Error;

use crate::digraph::{AcyclicDigraph, GraphError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MeshError {
    #[error("invalid function: {0}")]
    BadFunction(String),
    #[error("edge {0}→{1} does not point forward in vertex order")]
    NotForward(usize, usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A positive nondecreasing f: ℕ → ℝ.
#[derive(Clone, Debug, PartialEq)]
pub enum MonotoneFunction {
    Const(f64),
    /// f(s) = values[s−1]; arguments past the end reuse the last value.
    Table(Vec<f64>),
    /// 10 s² t^{3/2} log t / log² s for s ≥ 4, and 40 t^{3/2} log t below (base-2 logs).
    Growth { t: f64 },
}

impl MonotoneFunction {
    pub fn constant(c: f64) -> Result<Self, MeshError> {
        if c.is_finite() && c > 0.0 {
            Ok(MonotoneFunction::Const(c))
        } else {
            Err(MeshError::BadFunction(format!("constant {c} must be positive")))
        }
    }

    pub fn table(values: Vec<f64>) -> Result<Self, MeshError> {
        if values.is_empty() || values.iter().any(|&v| !(v.is_finite() && v > 0.0)) {
            return Err(MeshError::BadFunction("table values must be positive".into()));
        }
        if values.windows(2).any(|w| w[1] < w[0]) {
            return Err(MeshError::BadFunction("table must be nondecreasing".into()));
        }
        Ok(MonotoneFunction::Table(values))
    }

    pub fn growth(t: f64) -> Result<Self, MeshError> {
        if t.is_finite() && t >= 3.0 {
            Ok(MonotoneFunction::Growth { t })
        } else {
            Err(MeshError::BadFunction(format!("t = {t} must be at least 3")))
        }
    }

    pub fn eval(&self, s: u64) -> f64 {
        match self {
            MonotoneFunction::Const(c) => *c,
            MonotoneFunction::Table(v) => {
                let i = (s.max(1) - 1) as usize;
                v[i.min(v.len() - 1)]
            }
            MonotoneFunction::Growth { t } => {
                let base = t.powf(1.5) * t.log2();
                if s < 4 {
                    40.0 * base
                } else {
                    let s = s as f64;
                    let ls = s.log2();
                    10.0 * s * s * base / (ls * ls)
                }
            }
        }
    }

    /// Textual form used on the command line and in certificates.
    pub fn describe(&self) -> String {
        match self {
            MonotoneFunction::Const(c) => format!("const:{c}"),
            MonotoneFunction::Table(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                format!("table:{}", parts.join(","))
            }
            MonotoneFunction::Growth { t } => format!("growth:{t}"),
        }
    }

    pub fn parse(text: &str) -> Result<Self, MeshError> {
        let (kind, arg) = text
            .split_once(':')
            .ok_or_else(|| MeshError::BadFunction(format!("expected kind:value, got {text:?}")))?;
        let num = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| MeshError::BadFunction(format!("not a number: {s:?}")))
        };
        match kind {
            "const" => MonotoneFunction::constant(num(arg)?),
            "growth" | "paper" => MonotoneFunction::growth(num(arg)?),
            "table" => MonotoneFunction::table(arg.split(',').map(num).collect::<Result<_, _>>()?),
            _ => Err(MeshError::BadFunction(format!("unknown function kind {kind:?}"))),
        }
    }
}

fn ceil_log2(n: usize) -> u32 {
    if n <= 1 {
        0
    } else {
        usize::BITS - (n - 1).leading_zeros()
    }
}

/// S = Σ_m f(2^{m+2}) 2^{−2m} over the m with 2^{m+2} ≤ 4n.
pub fn s_value(f: &MonotoneFunction, n: usize) -> f64 {
    let mut s = 0.0;
    let mut m = 0u32;
    while (1u64 << m) <= n as u64 {
        s += f.eval(1u64 << (m + 2)) / 4f64.powi(m as i32);
        m += 1;
    }
    s
}

/// Greedy mesh on [n]: for each dyadic scale m and each pair of dyadic intervals
/// I_{m,i}, I_{m,j} inside [n] with 1 ≤ j−i ≤ f(2^{m+2})/2^m + 4 and no edge yet,
/// joins their currently lowest-degree vertices (ties to the smallest index).
pub fn build_interval_mesh(f: &MonotoneFunction, n: usize) -> AcyclicDigraph {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut deg = vec![0usize; n];
    let mut edges = Vec::new();
    for m in 0..=ceil_log2(n) {
        let size = 1usize << m;
        let count = n / size;
        if count < 2 {
            continue;
        }
        let reach = f.eval(4 * size as u64) / size as f64 + 4.0;
        let max_gap = if reach >= count as f64 { count } else { reach.floor() as usize };
        for i in 0..count {
            let lo_i = i * size;
            for j in i + 1..count.min(i + max_gap + 1) {
                let lo_j = j * size;
                let joined = (lo_i..lo_i + size).any(|u| {
                    let a = &adj[u];
                    let k = a.partition_point(|&x| x < lo_j);
                    k < a.len() && a[k] < lo_j + size
                });
                if joined {
                    continue;
                }
                let u = (lo_i..lo_i + size).min_by_key(|&x| (deg[x], x)).unwrap();
                let v = (lo_j..lo_j + size).min_by_key(|&x| (deg[x], x)).unwrap();
                let pos = adj[u].partition_point(|&x| x < v);
                adj[u].insert(pos, v);
                let pos = adj[v].partition_point(|&x| x < u);
                adj[v].insert(pos, u);
                deg[u] += 1;
                deg[v] += 1;
                edges.push((u, v));
            }
        }
    }
    let h = AcyclicDigraph::new(n, &edges).expect("mesh edges point forward");
    let bound = 2.0 * s_value(f, n) + 17.0;
    if h.max_degree() as f64 > bound {
        log::warn!(
            "mesh on {n} vertices has max degree {} above 2S+17 = {bound}",
            h.max_degree()
        );
    }
    h
}

/// Result of an exhaustive interval-pair check.
#[derive(Clone, Debug, PartialEq)]
pub struct MeshCertificate {
    pub n: usize,
    pub f: String,
    pub max_degree: usize,
    pub s_value: f64,
    pub degree_bound: f64,
    pub degree_within_bound: bool,
    pub pass: bool,
    /// First violating (a₁, b₁, a₂, b₂) in lexicographic order, for intervals (a₁,b₁], (a₂,b₂].
    pub witness: Option<[usize; 4]>,
    pub pairs_checked: u64,
    /// Interval lengths L whose f(L) lies within 1e-9 of an integer gap.
    pub boundary_ties: usize,
}

/// Checks every pair of disjoint intervals (a₁,b₁], (a₂,b₂] with b₁ ≤ a₂ and
/// a₂ − b₁ ≤ f(min length) for an edge between them.
pub fn verify_interval_mesh(h: &AcyclicDigraph, f: &MonotoneFunction) -> Result<MeshCertificate, MeshError> {
    let n = h.n();
    if let Some(&(u, v)) = h.edges().iter().find(|&&(u, v)| u > v) {
        return Err(MeshError::NotForward(u, v));
    }
    let w = n + 1;
    // p[x*w + y] = number of edges with 1-based tail ≤ x and head ≤ y
    let mut p = vec![0u32; w * w];
    for &(u, v) in h.edges() {
        p[(u + 1) * w + (v + 1)] += 1;
    }
    for x in 0..w {
        for y in 0..w {
            let mut s = p[x * w + y];
            if x > 0 {
                s += p[(x - 1) * w + y];
            }
            if y > 0 {
                s += p[x * w + y - 1];
            }
            if x > 0 && y > 0 {
                s -= p[(x - 1) * w + y - 1];
            }
            p[x * w + y] = s;
        }
    }
    let fv: Vec<f64> = (0..=n).map(|l| if l == 0 { 0.0 } else { f.eval(l as u64) }).collect();
    let boundary_ties = (1..=n)
        .filter(|&l| {
            let r = fv[l].round();
            r >= 0.0 && r <= n as f64 && (fv[l] - r).abs() < 1e-9
        })
        .count();
    let count = |a1: usize, b1: usize, a2: usize, b2: usize| {
        p[b1 * w + b2] + p[a1 * w + a2] - p[a1 * w + b2] - p[b1 * w + a2]
    };

    let per_start: Vec<(u64, Option<[usize; 4]>)> = (0..n)
        .into_par_iter()
        .map(|a1| {
            let mut checked = 0u64;
            for b1 in a1 + 1..=n {
                let l1 = b1 - a1;
                for a2 in b1..n {
                    let gap = (a2 - b1) as f64;
                    if gap > fv[l1] {
                        break;
                    }
                    for b2 in a2 + 1..=n {
                        let l2 = b2 - a2;
                        if gap > fv[l1.min(l2)] {
                            continue;
                        }
                        checked += 1;
                        if count(a1, b1, a2, b2) == 0 {
                            return (checked, Some([a1, b1, a2, b2]));
                        }
                    }
                }
            }
            (checked, None)
        })
        .collect();
    let witness = per_start.iter().find_map(|&(_, w)| w);
    let pairs_checked = per_start.iter().map(|&(c, _)| c).sum();
    let s = s_value(f, n);
    let bound = 2.0 * s + 17.0;
    Ok(MeshCertificate {
        n,
        f: f.describe(),
        max_degree: h.max_degree(),
        s_value: s,
        degree_bound: bound,
        degree_within_bound: h.max_degree() as f64 <= bound,
        pass: witness.is_none(),
        witness,
        pairs_checked,
        boundary_ties,
    })
}

/// Induced sub-digraph on the 1-based window [a, b], reindexed from the start.
pub fn restrict(h: &AcyclicDigraph, a: usize, b: usize) -> Result<AcyclicDigraph, MeshError> {
    if a < 1 || a > b || b > h.n() {
        return Err(GraphError::BadWindow { a, b, n: h.n() }.into());
    }
    let verts: Vec<usize> = (a - 1..b).collect();
    Ok(h.induced(&verts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::generators::{dipath, transitive};

    #[test]
    fn growth_function_values() {
        let f = MonotoneFunction::growth(4.0).unwrap();
        assert_eq!(f.eval(2), 640.0);
        assert_eq!(f.eval(4), 640.0);
        assert_eq!(f.eval(1), f.eval(3));
        assert!(MonotoneFunction::growth(2.5).is_err());
    }

    #[test]
    fn growth_function_is_nondecreasing() {
        for t in [3.0, 4.0, 10.0, 1e6] {
            let f = MonotoneFunction::growth(t).unwrap();
            for s in 1..4096 {
                assert!(f.eval(s + 1) >= f.eval(s), "t={t} s={s}");
            }
        }
    }

    #[test]
    fn unit_function_gives_transitive_tournament() {
        let f = MonotoneFunction::constant(1.0).unwrap();
        assert_eq!(build_interval_mesh(&f, 4), transitive(4));
    }

    #[test]
    fn single_vertex_mesh_is_empty() {
        let f = MonotoneFunction::constant(3.0).unwrap();
        let h = build_interval_mesh(&f, 1);
        assert_eq!((h.n(), h.edge_count()), (1, 0));
    }

    #[test]
    fn s_value_of_constant_three() {
        let f = MonotoneFunction::constant(3.0).unwrap();
        let s = s_value(&f, 256);
        let geometric: f64 = (0..=8).map(|m| 3.0 / 4f64.powi(m)).sum();
        assert!((s - geometric).abs() < 1e-12);
        assert!(s < 4.0 && s > 3.999);
    }

    #[test]
    fn verification_examples() {
        let one = MonotoneFunction::constant(1.0).unwrap();
        assert!(verify_interval_mesh(&transitive(4), &one).unwrap().pass);
        let cert = verify_interval_mesh(&dipath(4), &one).unwrap();
        assert!(!cert.pass);
        assert_eq!(cert.witness, Some([0, 1, 2, 3]));
    }

    #[test]
    fn tiny_f_still_needs_adjacent_intervals() {
        let f = MonotoneFunction::constant(0.5).unwrap();
        assert!(verify_interval_mesh(&dipath(5), &f).unwrap().pass);
        let gapped = AcyclicDigraph::new(3, &[(0, 1)]).unwrap();
        let cert = verify_interval_mesh(&gapped, &f).unwrap();
        assert_eq!(cert.witness, Some([0, 2, 2, 3]));
    }

    #[test]
    fn verification_matches_naive_edge_scan() {
        let f = MonotoneFunction::constant(2.0).unwrap();
        for n in 1..=9 {
            let h = build_interval_mesh(&f, n);
            let cert = verify_interval_mesh(&h, &f).unwrap();
            let mut naive = None;
            'outer: for a1 in 0..n {
                for b1 in a1 + 1..=n {
                    for a2 in b1..n {
                        for b2 in a2 + 1..=n {
                            let g = (a2 - b1) as f64;
                            if g > f.eval((b1 - a1).min(b2 - a2) as u64) {
                                continue;
                            }
                            let hit = h.edges().iter().any(|&(u, v)| {
                                (a1..b1).contains(&u) && (a2..b2).contains(&v)
                            });
                            if !hit {
                                naive = Some([a1, b1, a2, b2]);
                                break 'outer;
                            }
                        }
                    }
                }
            }
            assert_eq!(cert.witness, naive);
        }
    }

    #[test]
    fn restriction_windows() {
        assert_eq!(restrict(&transitive(4), 2, 4).unwrap(), transitive(3));
        let h = transitive(5);
        assert_eq!(restrict(&h, 1, 5).unwrap(), h);
        assert!(restrict(&h, 0, 2).is_err());
        assert!(restrict(&h, 3, 6).is_err());
    }

    #[test]
    fn restricted_mesh_reverifies() {
        let f = MonotoneFunction::constant(3.0).unwrap();
        let h = build_interval_mesh(&f, 100);
        let r = restrict(&h, 17, 83).unwrap();
        assert!(verify_interval_mesh(&r, &f).unwrap().pass);
    }

    #[test]
    fn parse_and_describe_round_trip() {
        for text in ["const:3", "growth:4", "table:1,2,2.5"] {
            assert_eq!(MonotoneFunction::parse(text).unwrap().describe(), text);
        }
        assert!(MonotoneFunction::parse("table:3,2").is_err());
        assert!(MonotoneFunction::parse("const:-1").is_err());
    }
}
