use std::collections::{BTreeMap, BTreeSet};

use super::PrefixError;
use crate::digraph::AcyclicDigraph;

/// A map V(H) → C ⊂ {0,1}*. Codewords are strings over '0'/'1'; the empty
/// string is ε. String order on such words is exactly the lexicographic order ≺
/// (a proper prefix comes first, otherwise the first differing bit decides).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrefixLabeling {
    labels: Vec<String>,
}

/// `value` in `bits` binary digits, most significant first.
pub fn binary_word(value: usize, bits: usize) -> String {
    (0..bits).rev().map(|b| if value >> b & 1 == 1 { '1' } else { '0' }).collect()
}

impl PrefixLabeling {
    pub fn new(labels: Vec<String>) -> Result<Self, PrefixError> {
        if let Some(w) = labels.iter().find(|w| w.chars().any(|c| c != '0' && c != '1')) {
            return Err(PrefixError::BadCodeword(w.clone()));
        }
        let code: Vec<&String> = labels.iter().collect::<BTreeSet<_>>().into_iter().collect();
        // in sorted order a prefix relation, if any, shows up between neighbors
        for w in code.windows(2) {
            if w[1].starts_with(w[0].as_str()) {
                return Err(PrefixError::NotAPrefixCode(w[0].clone(), w[1].clone()));
            }
        }
        Ok(PrefixLabeling { labels })
    }

    /// Checks that `code` is exactly the image.
    pub fn with_code(labels: Vec<String>, code: &[String]) -> Result<Self, PrefixError> {
        let l = PrefixLabeling::new(labels)?;
        let image: BTreeSet<&String> = l.labels.iter().collect();
        if let Some(x) = code.iter().find(|x| !image.contains(x)) {
            return Err(PrefixError::NotSurjective(x.clone()));
        }
        if let Some(x) = image.iter().find(|x| !code.contains(x)) {
            return Err(PrefixError::BadCodeword((*x).clone()));
        }
        Ok(l)
    }

    /// Every vertex labeled ε.
    pub fn trivial(n: usize) -> Self {
        PrefixLabeling { labels: vec![String::new(); n] }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    /// Codewords in ≺ order.
    pub fn code(&self) -> Vec<String> {
        self.labels.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect()
    }

    pub fn depth(&self) -> usize {
        self.labels.iter().map(|w| w.len()).max().unwrap_or(0)
    }

    /// Vertices labeled `x`, ascending.
    pub fn preimage(&self, x: &str) -> Vec<usize> {
        (0..self.labels.len()).filter(|&v| self.labels[v] == x).collect()
    }

    pub fn check_order(&self, h: &AcyclicDigraph) -> Result<(), PrefixError> {
        if self.labels.len() != h.n() {
            return Err(PrefixError::WrongLength { got: self.labels.len(), want: h.n() });
        }
        for &(u, v) in h.edges() {
            if self.labels[u] > self.labels[v] {
                return Err(PrefixError::OrderViolation(u, v));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelingStats {
    pub code: Vec<String>,
    pub depth: usize,
    /// Maximum degree of the adjacency-under-ρ graph on C.
    pub max_degree: usize,
    /// Largest weak component inside any ρ⁻¹(x).
    pub max_component: usize,
    /// Maximum over codewords y of ∏ a(x) over prefixes x of y; saturates at u128::MAX.
    pub comp: u128,
    pub is_coloring: bool,
    pub is_forest_labeling: bool,
    /// (a₀(x), a₁(x)) for every proper prefix x of a codeword.
    pub splits: BTreeMap<String, (usize, usize)>,
}

impl LabelingStats {
    /// a(x): 1 when either side has no cross-adjacent codeword, else min(a₀, a₁).
    pub fn a(&self, x: &str) -> usize {
        match self.splits.get(x) {
            Some(&(a0, a1)) if a0 > 0 && a1 > 0 => a0.min(a1),
            _ => 1,
        }
    }

    pub fn comp_f64(&self) -> f64 {
        self.comp as f64
    }
}

/// Adjacency-under-ρ graph on codewords (indices into `code`).
pub(crate) fn codeword_graph(h: &AcyclicDigraph, rho: &PrefixLabeling, code: &[String]) -> Vec<BTreeSet<usize>> {
    let idx: BTreeMap<&str, usize> = code.iter().enumerate().map(|(i, w)| (w.as_str(), i)).collect();
    let mut adj = vec![BTreeSet::new(); code.len()];
    for &(u, v) in h.edges() {
        let (a, b) = (idx[rho.label(u)], idx[rho.label(v)]);
        if a != b {
            adj[a].insert(b);
            adj[b].insert(a);
        }
    }
    adj
}

pub fn labeling_stats(h: &AcyclicDigraph, rho: &PrefixLabeling) -> Result<LabelingStats, PrefixError> {
    rho.check_order(h)?;
    let code = rho.code();
    let adj = codeword_graph(h, rho, &code);
    let mut prefixes = BTreeSet::new();
    for w in &code {
        for l in 0..w.len() {
            prefixes.insert(w[..l].to_string());
        }
    }
    let mut splits = BTreeMap::new();
    for x in &prefixes {
        let side = |bit: char| -> Vec<usize> {
            let p = format!("{x}{bit}");
            (0..code.len()).filter(|&i| code[i].starts_with(&p)).collect()
        };
        let (c0, c1) = (side('0'), side('1'));
        let count = |from: &[usize], to: &[usize]| from.iter().filter(|&&y| to.iter().any(|z| adj[y].contains(z))).count();
        splits.insert(x.clone(), (count(&c0, &c1), count(&c1, &c0)));
    }
    let mut stats = LabelingStats {
        depth: rho.depth(),
        max_degree: adj.iter().map(|s| s.len()).max().unwrap_or(0),
        max_component: 0,
        comp: 1,
        is_coloring: true,
        is_forest_labeling: true,
        splits,
        code: Vec::new(),
    };
    for y in &code {
        let p = (0..y.len()).fold(1u128, |acc, l| acc.saturating_mul(stats.a(&y[..l]) as u128));
        stats.comp = stats.comp.max(p);
        let part = h.induced(&rho.preimage(y));
        stats.is_coloring &= part.edge_count() == 0;
        stats.is_forest_labeling &= part.is_forest();
        let biggest = part.weak_components().iter().map(|c| c.len()).max().unwrap_or(0);
        stats.max_component = stats.max_component.max(biggest);
    }
    stats.code = code;
    Ok(stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::generators::*;

    fn lab(ws: &[&str]) -> PrefixLabeling {
        PrefixLabeling::new(ws.iter().map(|s| s.to_string()).collect()).unwrap()
    }

    #[test]
    fn prefix_code_checks() {
        assert!(matches!(
            PrefixLabeling::new(vec!["0".into(), "01".into()]),
            Err(PrefixError::NotAPrefixCode(_, _))
        ));
        assert!(matches!(PrefixLabeling::new(vec!["02".into()]), Err(PrefixError::BadCodeword(_))));
        assert!(matches!(
            PrefixLabeling::with_code(vec!["0".into(), "0".into()], &["0".into(), "1".into()]),
            Err(PrefixError::NotSurjective(_))
        ));
        assert_eq!(binary_word(5, 4), "0101");
        assert_eq!(binary_word(0, 0), "");
    }

    #[test]
    fn order_is_lexicographic() {
        let mut w = vec!["1", "01", "0", "011", "00"];
        w.sort();
        assert_eq!(w, vec!["0", "00", "01", "011", "1"]);
        let h = dipath(2);
        assert_eq!(labeling_stats(&h, &lab(&["1", "0"])), Err(PrefixError::OrderViolation(0, 1)));
    }

    #[test]
    fn trivial_labeling_has_comp_one() {
        for h in [transitive(5), directed_grid(2, 3), dipath(4)] {
            let s = labeling_stats(&h, &PrefixLabeling::trivial(h.n())).unwrap();
            assert_eq!((s.comp, s.depth), (1, 0));
            assert_eq!(s.code, vec![String::new()]);
        }
    }

    #[test]
    fn split_counts_by_hand() {
        // TT_4 labeled 00,01,10,11: across ε both sides are fully adjacent
        let h = transitive(4);
        let s = labeling_stats(&h, &lab(&["00", "01", "10", "11"])).unwrap();
        assert_eq!(s.splits[""], (2, 2));
        assert_eq!(s.splits["0"], (1, 1));
        assert_eq!(s.comp, 2);
        assert_eq!(s.max_degree, 3);
        assert!(s.is_coloring);
        // P_4 with the same labels: only 01–10 cross ε
        let s = labeling_stats(&dipath(4), &lab(&["00", "01", "10", "11"])).unwrap();
        assert_eq!(s.splits[""], (1, 1));
        assert_eq!(s.comp, 1);
    }

    #[test]
    fn forest_flags() {
        let h = transitive(3);
        let s = labeling_stats(&h, &lab(&["0", "0", "1"])).unwrap();
        assert!(!s.is_coloring && s.is_forest_labeling);
        assert_eq!(s.max_component, 2);
        let s = labeling_stats(&h, &PrefixLabeling::trivial(3)).unwrap();
        assert!(!s.is_forest_labeling);
    }
}
