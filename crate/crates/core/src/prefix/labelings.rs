use super::code::{binary_word, PrefixLabeling};
use super::PrefixError;
use crate::digraph::{grading, height_partition, AcyclicDigraph, DirectedPartition};

fn ceil_log2(x: usize) -> usize {
    if x <= 1 {
        0
    } else {
        (usize::BITS - (x - 1).leading_zeros()) as usize
    }
}

fn label_parts(n: usize, parts: &[Vec<usize>]) -> PrefixLabeling {
    let bits = ceil_log2(parts.len());
    let mut labels = vec![String::new(); n];
    for (i, p) in parts.iter().enumerate() {
        for &v in p {
            labels[v] = binary_word(i, bits);
        }
    }
    PrefixLabeling::new(labels).expect("equal-length words form a prefix code")
}

/// Level i of the height partition gets the ⌈log₂ h⌉-bit word for i.
pub fn height_prefix_coloring(h: &AcyclicDigraph) -> PrefixLabeling {
    label_parts(h.n(), height_partition(h).parts())
}

/// Same construction on the levels of a grading, so every edge joins
/// consecutive words and each split has at most one adjacent pair.
pub fn graded_prefix_coloring(h: &AcyclicDigraph) -> Result<PrefixLabeling, PrefixError> {
    let g = grading(h).ok_or(PrefixError::NotGraded)?;
    let top = g.iter().copied().max().unwrap_or(0);
    let mut parts = vec![Vec::new(); top];
    for (v, &l) in g.iter().enumerate() {
        parts[l - 1].push(v);
    }
    Ok(label_parts(h.n(), &parts))
}

/// Part i of a forest partition gets the ⌈log₂ r⌉-bit word for i.
pub fn forest_prefix_labeling(h: &AcyclicDigraph, partition: &DirectedPartition) -> Result<PrefixLabeling, PrefixError> {
    partition.validate(h).map_err(|e| PrefixError::BadParameter(e.to_string()))?;
    if let Some(i) = partition.parts().iter().position(|p| !h.induced(p).is_forest()) {
        return Err(PrefixError::PartNotForest(i));
    }
    Ok(label_parts(h.n(), partition.parts()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForestPartition {
    pub partition: DirectedPartition,
    pub parts: usize,
    pub max_component: usize,
}

/// Greedy directed partition into forests: in topological order, each vertex goes
/// to the earliest part at or after its in-neighbors' parts whose forest it keeps acyclic.
pub fn forest_partition(h: &AcyclicDigraph) -> ForestPartition {
    let n = h.n();
    let mut part = vec![usize::MAX; n];
    // union-find over vertices; components never span parts
    let mut uf: Vec<usize> = (0..n).collect();
    fn find(uf: &mut [usize], mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    let mut count = 0;
    for &v in h.topo_order() {
        let lo = h.in_neighbors(v).iter().map(|&u| part[u]).max().unwrap_or(0);
        let mut p = lo;
        loop {
            let mut roots: Vec<usize> = h.in_neighbors(v).iter().filter(|&&u| part[u] == p).map(|&u| find(&mut uf, u)).collect();
            let k = roots.len();
            roots.sort_unstable();
            roots.dedup();
            if roots.len() == k {
                for r in roots {
                    uf[r] = v;
                }
                part[v] = p;
                count = count.max(p + 1);
                break;
            }
            p += 1;
        }
    }
    let mut parts = vec![Vec::new(); count];
    for v in 0..n {
        parts[part[v]].push(v);
    }
    let partition = DirectedPartition::new(parts);
    debug_assert!(partition.validate_forest_parts(h).is_ok());
    let max_component = partition.max_component(h);
    ForestPartition { parts: partition.len(), partition, max_component }
}
