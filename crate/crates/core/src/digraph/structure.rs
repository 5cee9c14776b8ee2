use super::{AcyclicDigraph, DirectedPartition};

pub fn height(h: &AcyclicDigraph) -> usize {
    h.height()
}

/// Parts S_1..S_h where S_i holds the vertices whose longest incoming path has i vertices.
pub fn height_partition(h: &AcyclicDigraph) -> DirectedPartition {
    let levels = h.levels();
    let mut parts = vec![Vec::new(); h.height()];
    for v in 0..h.n() {
        parts[levels[v] - 1].push(v);
    }
    DirectedPartition::new(parts)
}

/// Minimum-degree peeling of the underlying graph (ties to the smallest index),
/// returned in reverse removal order so every vertex has at most `d` earlier neighbors.
pub fn degeneracy_order(h: &AcyclicDigraph) -> (usize, Vec<usize>) {
    let n = h.n();
    let mut deg: Vec<usize> = (0..n).map(|v| h.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut d = 0;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (deg[v], v))
            .expect("vertex left");
        d = d.max(deg[v]);
        removed[v] = true;
        order.push(v);
        for w in h.neighbors(v) {
            if !removed[w] {
                deg[w] -= 1;
            }
        }
    }
    order.reverse();
    (d, order)
}

/// Largest number of earlier neighbors any vertex has in `order`.
pub fn replay_back_degree(h: &AcyclicDigraph, order: &[usize]) -> usize {
    let mut pos = vec![usize::MAX; h.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    order
        .iter()
        .map(|&v| h.neighbors(v).into_iter().filter(|&w| pos[w] < pos[v]).count())
        .max()
        .unwrap_or(0)
}

/// A grading g: V → [1, h] with g(v) = g(u) + 1 on every edge u→v, if one exists.
///
/// Each weak component carries a potential that is unique up to shift; it is
/// shifted so its minimum is 1. The longest-incoming-path level is not always
/// a grading (a→b together with c→d→b is graded but puts a one level too low),
/// so the potential is computed directly.
pub fn grading(h: &AcyclicDigraph) -> Option<Vec<usize>> {
    let n = h.n();
    let height = h.height() as i64;
    let mut pot: Vec<Option<i64>> = vec![None; n];
    let mut grade = vec![0usize; n];
    for comp in h.weak_components() {
        let s = comp[0];
        pot[s] = Some(0);
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            let pv = pot[v].unwrap();
            let steps = h
                .out_neighbors(v)
                .iter()
                .map(|&w| (w, pv + 1))
                .chain(h.in_neighbors(v).iter().map(|&w| (w, pv - 1)));
            for (w, want) in steps {
                match pot[w] {
                    None => {
                        pot[w] = Some(want);
                        stack.push(w);
                    }
                    Some(p) if p != want => return None,
                    Some(_) => {}
                }
            }
        }
        let lo = comp.iter().map(|&v| pot[v].unwrap()).min().unwrap();
        let hi = comp.iter().map(|&v| pot[v].unwrap()).max().unwrap();
        if hi - lo + 1 > height {
            return None;
        }
        for &v in &comp {
            grade[v] = (pot[v].unwrap() - lo + 1) as usize;
        }
    }
    Some(grade)
}

pub fn is_graded(h: &AcyclicDigraph) -> bool {
    grading(h).is_some()
}

/// Counts of edge lengths (distance in the stored topological order) per dyadic
/// scale t, i.e. lengths in [2^t, 2^{t+1}), for t = 0..=⌈log₂ n⌉.
pub fn edge_length_histogram(h: &AcyclicDigraph) -> Vec<usize> {
    let n = h.n().max(1);
    let scales = (usize::BITS - (n - 1).leading_zeros()) as usize + 1;
    let mut hist = vec![0; scales];
    for &(u, v) in h.edges() {
        let len = h.rank(v) - h.rank(u);
        hist[len.ilog2() as usize] += 1;
    }
    hist
}
