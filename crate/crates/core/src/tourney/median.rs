use crate::digraph::Tournament;

const EXACT_LIMIT: usize = 12;

/// Number of pairs oriented forward along `order`.
pub fn forward_edges(t: &Tournament, order: &[usize]) -> usize {
    let mut f = 0;
    for i in 0..order.len() {
        for j in i + 1..order.len() {
            if t.beats(order[i], order[j]) {
                f += 1;
            }
        }
    }
    f
}

/// Ordering maximizing forward edges: exact over subsets for n ≤ 12, otherwise
/// local search with single-vertex reinsertions (adjacent swaps included) until
/// no move improves. Consecutive vertices always satisfy v_i → v_{i+1}.
pub fn median_ordering(t: &Tournament) -> Vec<usize> {
    let order = if t.n() <= EXACT_LIMIT { exact(t) } else { local_search(t) };
    debug_assert!(order.windows(2).all(|w| t.beats(w[0], w[1])));
    order
}

fn exact(t: &Tournament) -> Vec<usize> {
    let n = t.n();
    let inn: Vec<u32> = (0..n)
        .map(|v| (0..n).filter(|&u| t.beats(u, v)).fold(0u32, |m, u| m | 1 << u))
        .collect();
    let full = (1usize << n) - 1;
    // best[S]: most forward pairs over orderings of S; last[S]: the vertex placed last
    let mut best = vec![0u32; 1 << n];
    let mut last = vec![0u8; 1 << n];
    for s in 1..=full {
        let mut top = None;
        for v in 0..n {
            if s >> v & 1 == 0 {
                continue;
            }
            let rest = s & !(1 << v);
            let score = best[rest] + (inn[v] & rest as u32).count_ones();
            if top.is_none_or(|(b, _)| score > b) {
                top = Some((score, v));
            }
        }
        let (b, v) = top.unwrap();
        best[s] = b;
        last[s] = v as u8;
    }
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let v = last[s] as usize;
        order.push(v);
        s &= !(1 << v);
    }
    order.reverse();
    order
}

fn local_search(t: &Tournament) -> Vec<usize> {
    let n = t.n();
    let scores = t.scores();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(scores[v]), v));
    loop {
        let mut improved = false;
        for i in 0..n {
            let v = order[i];
            let (mut best_gain, mut best_pos) = (0i64, i);
            let mut gain = 0i64;
            for j in (0..i).rev() {
                gain += if t.beats(v, order[j]) { 1 } else { -1 };
                if gain > best_gain {
                    best_gain = gain;
                    best_pos = j;
                }
            }
            gain = 0;
            for j in i + 1..n {
                gain += if t.beats(order[j], v) { 1 } else { -1 };
                if gain > best_gain {
                    best_gain = gain;
                    best_pos = j;
                }
            }
            if best_pos != i {
                order.remove(i);
                order.insert(best_pos, v);
                improved = true;
            }
        }
        if !improved {
            return order;
        }
    }
}
