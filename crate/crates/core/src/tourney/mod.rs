//! Tournament constructions and analysis: lexicographic products, maximum
//! transitive subtournaments, Paley tournaments, TT-free sampling, median
//! orderings and pattern containment.

mod contains;
mod maxtt;
mod median;

pub use contains::{contains_copy, count_in_host, find_in_host, search_embeddings, Host};
pub use maxtt::{max_transitive_subtournament, max_transitive_with_budget, TTWitness, DEFAULT_BUDGET};
pub use median::{forward_edges, median_ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::digraph::{Tournament, MAX_VERTICES};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TourneyError {
    #[error("product would have {0} vertices, above the supported maximum")]
    TooLarge(u128),
    #[error("{n} vertices exceed the exact-search budget of {budget}")]
    BudgetExceeded { n: usize, budget: usize },
    #[error("q = {0} is not a prime congruent to 3 mod 4")]
    InvalidPaley(u64),
    #[error("no tournament found in {trials} trials")]
    NotFound { trials: u64 },
    #[error("invalid parameter: {0}")]
    BadParameter(String),
}

/// G·H: (g₁,h₁)→(g₂,h₂) iff g₁→g₂, or g₁ = g₂ and h₁→h₂. Vertex (g,h) is g·|H| + h.
pub fn lex_product(g: &Tournament, h: &Tournament) -> Result<Tournament, TourneyError> {
    let size = g.n() as u128 * h.n() as u128;
    if size > MAX_VERTICES as u128 {
        return Err(TourneyError::TooLarge(size));
    }
    let hn = h.n();
    Ok(Tournament::from_fn(size as usize, |a, b| {
        let (ga, gb) = (a / hn, b / hn);
        if ga == gb {
            h.beats(a % hn, b % hn)
        } else {
            g.beats(ga, gb)
        }
    }))
}

/// R^m = R·R^{m−1}; the first coordinate is the most significant digit.
pub fn lex_power(r: &Tournament, m: u32) -> Result<Tournament, TourneyError> {
    if m == 0 {
        return Err(TourneyError::BadParameter("power must be at least 1".into()));
    }
    let size = (r.n() as u128).checked_pow(m).unwrap_or(u128::MAX);
    if size > MAX_VERTICES as u128 {
        return Err(TourneyError::TooLarge(size));
    }
    let mut p = r.clone();
    for _ in 1..m {
        p = lex_product(r, &p)?;
    }
    Ok(p)
}

fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// Paley tournament: i→j iff j − i is a nonzero quadratic residue mod q.
pub fn paley(q: u64) -> Result<Tournament, TourneyError> {
    if !is_prime(q) || q % 4 != 3 || q as usize > MAX_VERTICES {
        return Err(TourneyError::InvalidPaley(q));
    }
    let mut qr = vec![false; q as usize];
    for x in 1..q {
        qr[((x * x) % q) as usize] = true;
    }
    Ok(Tournament::from_fn(q as usize, |i, j| qr[(j - i) % q as usize]))
}

/// Each pair oriented by an independent fair bit from a ChaCha8 stream.
pub fn random_tournament(n: usize, seed: u64) -> Tournament {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Tournament::from_fn(n, |_, _| rng.gen::<bool>())
}

fn trial_tournament(n: usize, seed: u64, trial: u64) -> Tournament {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    Tournament::from_fn(n, |_, _| rng.gen::<bool>())
}

/// First random tournament (by trial index) on r vertices with no TT_t.
/// Trial i draws from stream i of the seeded generator.
pub fn find_tt_free(r: usize, t: usize, trials: u64, seed: u64) -> Result<(Tournament, u64), TourneyError> {
    if r < 2 || t < 2 {
        return Err(TourneyError::BadParameter("r and t must be at least 2".into()));
    }
    if r > DEFAULT_BUDGET {
        return Err(TourneyError::BudgetExceeded { n: r, budget: DEFAULT_BUDGET });
    }
    (0..trials)
        .into_par_iter()
        .find_map_first(|i| {
            let cand = trial_tournament(r, seed, i);
            let w = max_transitive_subtournament(&cand).ok()?;
            (w.size < t).then_some((cand, i))
        })
        .ok_or(TourneyError::NotFound { trials })
}
