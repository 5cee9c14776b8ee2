use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::canon::canonical;
use super::small::{Rooted, Small, MASK_BITS};
use super::{RamseyError, RamseyResult, Witness};
use crate::digraph::{AcyclicDigraph, ColoredTournament};
use crate::tourney::{find_in_host, Host};

/// Largest vertex count the pruned enumerator will reach.
pub const EXHAUSTIVE_MAX_N: usize = 10;
/// Most labeled hosts the plain enumerator will scan at one vertex count.
pub const PLAIN_BUDGET: u128 = 1 << 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Enumeration {
    /// Every labeled host at each N, stopping at the first avoider.
    Plain,
    /// Avoiders on N vertices grown from avoider classes on N − 1 (containment is
    /// hereditary), one representative per isomorphism class.
    Pruned,
}

fn check_args(h: &AcyclicDigraph, k: usize, nmax: usize) -> Result<(), RamseyError> {
    if h.n() == 0 {
        return Err(RamseyError::BadParameter("pattern has no vertices".into()));
    }
    if k == 0 || k > 8 {
        return Err(RamseyError::BadParameter(format!("k = {k} outside 1..=8")));
    }
    if nmax > EXHAUSTIVE_MAX_N {
        return Err(RamseyError::BadParameter(format!("max N {nmax} above {EXHAUSTIVE_MAX_N}")));
    }
    Ok(())
}

/// Digits of `code` in base `base`, least significant first.
fn digits(mut code: u64, base: u64, len: usize) -> Vec<u8> {
    (0..len)
        .map(|_| {
            let d = (code % base) as u8;
            code /= base;
            d
        })
        .collect()
}

/// Rebuilds a host from a canonical code (row-major off-diagonal arc values).
fn from_canonical_code(n: usize, k: usize, code: &[u8]) -> Small {
    let mut s = Small::empty(k);
    let row = n.saturating_sub(1);
    for v in 0..n {
        // arc from the new vertex v to each u < v sits in row v, column u
        let arcs: Vec<u8> = (0..v).map(|u| code[v * row + u]).collect();
        s = s.extended(&arcs);
    }
    s
}

/// r_k(H) by exhaustive search: the least N ≤ `nmax` such that every k-colored
/// tournament on N vertices has a monochromatic copy of `h`.
pub fn oriented_ramsey_k_with(
    h: &AcyclicDigraph,
    k: usize,
    nmax: usize,
    mode: Enumeration,
) -> Result<RamseyResult, RamseyError> {
    check_args(h, k, nmax)?;
    let rooted = Rooted::new(h);
    match mode {
        Enumeration::Plain => plain(&rooted, k, nmax),
        Enumeration::Pruned => pruned(&rooted, k, nmax),
    }
}

pub fn oriented_ramsey_k(h: &AcyclicDigraph, k: usize, nmax: usize) -> Result<RamseyResult, RamseyError> {
    oriented_ramsey_k_with(h, k, nmax, Enumeration::Pruned)
}

pub fn oriented_ramsey_1(h: &AcyclicDigraph, nmax: usize) -> Result<RamseyResult, RamseyError> {
    oriented_ramsey_k_with(h, 1, nmax, Enumeration::Pruned)
}

fn plain(rooted: &Rooted, k: usize, nmax: usize) -> Result<RamseyResult, RamseyError> {
    let mut witness = Small::empty(k);
    let mut examined = 0u64;
    let mut per_level = Vec::new();
    for n in 1..=nmax {
        let pairs = (n * (n - 1) / 2) as u32;
        let hosts = (2 * k as u128).checked_pow(pairs).unwrap_or(u128::MAX);
        if hosts > PLAIN_BUDGET {
            return Err(RamseyError::BudgetExceeded { n, hosts });
        }
        let found = (0..hosts as u64).into_par_iter().find_first(|&code| !rooted.mono(&Small::from_code(n, k, code)));
        match found {
            Some(code) => {
                examined += code + 1;
                per_level.push(1);
                witness = Small::from_code(n, k, code);
            }
            None => {
                examined += hosts as u64;
                return Ok(RamseyResult {
                    value: n,
                    witness: Witness::Oriented(witness.to_colored()),
                    exhaustive: true,
                    hosts_examined: examined,
                    avoiders_per_level: per_level,
                });
            }
        }
    }
    Err(RamseyError::Inconclusive { max_n: nmax })
}

fn pruned(rooted: &Rooted, k: usize, nmax: usize) -> Result<RamseyResult, RamseyError> {
    let base = 2 * k as u64;
    let mut frontier = vec![Small::empty(k)];
    let mut examined = 0u64;
    let mut per_level = Vec::new();
    for n in 1..=nmax {
        let choices = base.pow(n as u32 - 1);
        let classes: HashSet<Vec<u8>> = frontier
            .par_iter()
            .fold(HashSet::new, |mut acc, s| {
                for code in 0..choices {
                    let t = s.extended(&digits(code, base, n - 1));
                    if !rooted.mono_through(&t, n - 1) {
                        acc.insert(canonical(n, &t.matrix()).0);
                    }
                }
                acc
            })
            .reduce(HashSet::new, |mut a, b| {
                a.extend(b);
                a
            });
        examined += frontier.len() as u64 * choices;
        if classes.is_empty() {
            return Ok(RamseyResult {
                value: n,
                witness: Witness::Oriented(frontier[0].to_colored()),
                exhaustive: true,
                hosts_examined: examined,
                avoiders_per_level: per_level,
            });
        }
        let mut codes: Vec<Vec<u8>> = classes.into_iter().collect();
        codes.sort_unstable();
        per_level.push(codes.len() as u64);
        log::debug!("{n} vertices: {} avoider classes", codes.len());
        frontier = codes.iter().map(|c| from_canonical_code(n, k, c)).collect();
    }
    Err(RamseyError::Inconclusive { max_n: nmax })
}

/// True when no color class of `t` holds a copy of `h`.
pub fn verify_avoider(h: &AcyclicDigraph, t: &ColoredTournament) -> bool {
    (1..=t.k()).all(|c| find_in_host(&Host::color_class(t, c), h, None).is_none())
}

/// 2^{n−1}: every tournament on that many vertices contains TT_n, hence every acyclic H on n vertices.
pub fn transitive_upper_bound(n: usize) -> u128 {
    1u128 << n.saturating_sub(1)
}

/// 2^{n/2−1}, below r₁(TT_n).
pub fn transitive_lower_bound(n: usize) -> f64 {
    2f64.powf(n as f64 / 2.0 - 1.0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnnealOptions {
    pub steps: u64,
    pub restarts: u64,
    pub seed: u64,
    pub start_temperature: f64,
}

impl Default for AnnealOptions {
    fn default() -> Self {
        AnnealOptions { steps: 200_000, restarts: 8, seed: 0, start_temperature: 1.5 }
    }
}

fn reset_arc(s: &mut Small, u: usize, v: usize, a: u8) {
    for c in 0..s.k {
        s.out[c][u] &= !(1 << v);
        s.out[c][v] &= !(1 << u);
        s.inn[c][u] &= !(1 << v);
        s.inn[c][v] &= !(1 << u);
    }
    let c = (a / 2) as usize;
    let (from, to) = if a % 2 == 1 { (u, v) } else { (v, u) };
    s.out[c][from] |= 1 << to;
    s.inn[c][to] |= 1 << from;
}

fn anneal(rooted: &Rooted, k: usize, n: usize, opts: &AnnealOptions, restart: u64) -> Option<Small> {
    const CAP: u64 = 1 << 40;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    rng.set_stream(restart);
    let base = 2 * k as u64;
    let pairs = n * (n - 1) / 2;
    let mut s = Small::empty(k);
    for v in 0..n {
        let arcs: Vec<u8> = (0..v).map(|_| rng.gen_range(0..base) as u8).collect();
        s = s.extended(&arcs);
    }
    let mut energy: u64 = (0..k).map(|c| rooted.count(&s, c, CAP)).sum();
    for step in 0..opts.steps {
        if energy == 0 {
            return Some(s);
        }
        let temp = opts.start_temperature * (1.0 - step as f64 / opts.steps as f64) + 0.02;
        let p = rng.gen_range(0..pairs);
        let (mut u, mut rest) = (0, p);
        while rest >= n - 1 - u {
            rest -= n - 1 - u;
            u += 1;
        }
        let v = u + 1 + rest;
        let old = s.arc(u, v);
        let new = (old as u64 + rng.gen_range(1..base)) as u8 % base as u8;
        let colors = [(old / 2) as usize, (new / 2) as usize];
        let touched = |s: &Small| -> u64 {
            let mut t = rooted.count_through_pair(s, colors[0], u, v, CAP);
            if colors[1] != colors[0] {
                t += rooted.count_through_pair(s, colors[1], u, v, CAP);
            }
            t
        };
        let before = touched(&s);
        reset_arc(&mut s, u, v, new);
        let after = touched(&s);
        let delta = after as f64 - before as f64;
        if delta <= 0.0 || rng.gen::<f64>() < (-delta / temp).exp() {
            energy = energy + after - before;
        } else {
            reset_arc(&mut s, u, v, old);
        }
    }
    (energy == 0).then_some(s)
}

/// Simulated annealing over single-pair changes (orientation or color),
/// minimizing the number of monochromatic copies of `h`. Restarts run in
/// parallel; the lowest-indexed success is returned. Every hit is re-checked
/// with the general containment search.
pub fn find_avoider(
    h: &AcyclicDigraph,
    k: usize,
    n: usize,
    opts: &AnnealOptions,
) -> Result<Option<ColoredTournament>, RamseyError> {
    if k == 0 || k > 8 || !(2..=MASK_BITS).contains(&n) {
        return Err(RamseyError::BadParameter(format!("need k in 1..=8 and 2 ≤ n ≤ {MASK_BITS}")));
    }
    let rooted = Rooted::new(h);
    let found = (0..opts.restarts).into_par_iter().find_map_first(|r| anneal(&rooted, k, n, opts, r));
    Ok(found.map(|s| {
        let t = s.to_colored();
        assert!(verify_avoider(h, &t), "annealing returned a host containing the pattern");
        t
    }))
}

/// Evidence from witness search: `lower` comes from the largest avoider found
/// (not a proof of the exact value), `upper` from the transitive bound when k = 1.
#[derive(Clone, Debug, PartialEq)]
pub struct RamseyBounds {
    pub lower: usize,
    pub upper: Option<u128>,
    pub witness: Option<ColoredTournament>,
    pub exhaustive: bool,
}

/// Searches for avoiders on |H|, |H|+1, … , `nmax` vertices, stopping at the first size where none is found.
pub fn oriented_ramsey_search(
    h: &AcyclicDigraph,
    k: usize,
    nmax: usize,
    opts: &AnnealOptions,
) -> Result<RamseyBounds, RamseyError> {
    if h.n() == 0 {
        return Err(RamseyError::BadParameter("pattern has no vertices".into()));
    }
    let mut bounds = RamseyBounds {
        lower: h.n(),
        upper: (k == 1).then(|| transitive_upper_bound(h.n())),
        witness: None,
        exhaustive: false,
    };
    for n in h.n().max(2)..=nmax {
        match find_avoider(h, k, n, opts)? {
            Some(t) => {
                bounds.lower = n + 1;
                bounds.witness = Some(t);
            }
            None => break,
        }
    }
    Ok(bounds)
}
