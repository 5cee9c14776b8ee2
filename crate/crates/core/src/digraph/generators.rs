//! Standard pattern digraphs (0-based vertices).

use super::AcyclicDigraph;

/// P_n^ℓ: edges i→j for 1 ≤ j−i ≤ ℓ.
pub fn path_power(n: usize, l: usize) -> AcyclicDigraph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n.min(i + l + 1) {
            edges.push((i, j));
        }
    }
    AcyclicDigraph::new(n, &edges).expect("forward edges")
}

pub fn transitive(n: usize) -> AcyclicDigraph {
    path_power(n, n.saturating_sub(1))
}

pub fn dipath(n: usize) -> AcyclicDigraph {
    path_power(n, 1)
}

/// Grid on [rows]×[cols] with edges toward the larger coordinate; vertex (r,c) is r·cols + c.
pub fn directed_grid(rows: usize, cols: usize) -> AcyclicDigraph {
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                edges.push((v, v + 1));
            }
            if r + 1 < rows {
                edges.push((v, v + cols));
            }
        }
    }
    AcyclicDigraph::new(rows * cols, &edges).expect("forward edges")
}

/// k disjoint edges i → k+i.
pub fn matching(k: usize) -> AcyclicDigraph {
    let edges: Vec<_> = (0..k).map(|i| (i, k + i)).collect();
    AcyclicDigraph::new(2 * k, &edges).expect("forward edges")
}

/// Center 0 pointing to leaves 1..=leaves.
pub fn out_star(leaves: usize) -> AcyclicDigraph {
    let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
    AcyclicDigraph::new(leaves + 1, &edges).expect("forward edges")
}

/// Leaves 1..=leaves pointing to center 0.
pub fn in_star(leaves: usize) -> AcyclicDigraph {
    let edges: Vec<_> = (1..=leaves).map(|i| (i, 0)).collect();
    AcyclicDigraph::new(leaves + 1, &edges).expect("acyclic star")
}

/// Graded chain of `levels` levels, each of `width` vertices, complete bipartite between consecutive levels.
pub fn layered(levels: usize, width: usize) -> AcyclicDigraph {
    let mut edges = Vec::new();
    for l in 0..levels.saturating_sub(1) {
        for a in 0..width {
            for b in 0..width {
                edges.push((l * width + a, (l + 1) * width + b));
            }
        }
    }
    AcyclicDigraph::new(levels * width, &edges).expect("forward edges")
}
