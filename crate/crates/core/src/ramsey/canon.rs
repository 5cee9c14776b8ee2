//! Canonical forms of small complete arc-labeled structures (tournaments,
//! colored tournaments, oriented trees) given as an n×n value matrix.
//!
//! The code of an ordering is the row-major list of off-diagonal values.
//! [`canonical`] minimizes it over the orderings reached by equitable refinement
//! plus individualization, which is an isomorphism-invariant set, so two
//! structures are isomorphic iff their codes agree. [`canonical_brute`]
//! minimizes over every permutation and serves as the oracle.

fn code_of(n: usize, m: &[u8], perm: &[usize]) -> Vec<u8> {
    let mut code = Vec::with_capacity(n * n.saturating_sub(1));
    for p in 0..n {
        for q in 0..n {
            if p != q {
                code.push(m[perm[p] * n + perm[q]]);
            }
        }
    }
    code
}

/// Splits cells by the counts of each value toward each cell until stable.
fn refine(n: usize, m: &[u8], vals: usize, cells: &mut Vec<Vec<usize>>) {
    loop {
        let mut cell_of = vec![0; n];
        for (i, c) in cells.iter().enumerate() {
            for &v in c {
                cell_of[v] = i;
            }
        }
        let width = cells.len() * vals;
        let sig = |v: usize| -> Vec<u16> {
            let mut s = vec![0u16; width];
            for w in 0..n {
                if w != v {
                    s[cell_of[w] * vals + m[v * n + w] as usize] += 1;
                }
            }
            s
        };
        let mut next = Vec::with_capacity(n);
        for c in cells.iter() {
            if c.len() == 1 {
                next.push(c.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u16>, usize)> = c.iter().map(|&v| (sig(v), v)).collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|p| p.1).collect());
                    start = i;
                }
            }
        }
        let done = next.len() == cells.len();
        *cells = next;
        if done {
            return;
        }
    }
}

fn search(n: usize, m: &[u8], vals: usize, mut cells: Vec<Vec<usize>>, best: &mut Option<(Vec<u8>, Vec<usize>)>) {
    refine(n, m, vals, &mut cells);
    if cells.len() == n {
        let perm: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let code = code_of(n, m, &perm);
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            *best = Some((code, perm));
        }
        return;
    }
    let idx = cells.iter().position(|c| c.len() > 1).expect("a non-singleton cell remains");
    for &v in &cells[idx] {
        let mut split = cells.clone();
        let rest: Vec<usize> = cells[idx].iter().copied().filter(|&w| w != v).collect();
        split.splice(idx..=idx, [vec![v], rest]);
        search(n, m, vals, split, best);
    }
}

/// Canonical code and the ordering attaining it (position p holds vertex perm[p]).
pub(crate) fn canonical(n: usize, m: &[u8]) -> (Vec<u8>, Vec<usize>) {
    if n == 0 {
        return (Vec::new(), Vec::new());
    }
    let vals = m.iter().copied().max().unwrap_or(0) as usize + 1;
    let mut best = None;
    search(n, m, vals, vec![(0..n).collect()], &mut best);
    best.expect("at least one ordering is visited")
}

/// Minimum code over all n! orderings.
#[cfg(test)]
pub(crate) fn canonical_brute(n: usize, m: &[u8]) -> Vec<u8> {
    fn go(n: usize, m: &[u8], perm: &mut Vec<usize>, used: &mut [bool], best: &mut Option<Vec<u8>>) {
        if perm.len() == n {
            let code = code_of(n, m, perm);
            if best.as_ref().is_none_or(|b| code < *b) {
                *best = Some(code);
            }
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                perm.push(v);
                go(n, m, perm, used, best);
                perm.pop();
                used[v] = false;
            }
        }
    }
    let mut best = None;
    go(n, m, &mut Vec::new(), &mut vec![false; n], &mut best);
    best.unwrap_or_default()
}
