//! Text file formats. Vertices are 1-based in files. Blank lines and lines
//! starting with `#` are skipped; serialization emits neither, so a file written
//! here parses and re-serializes to the same bytes.
//!
//! ```text
//! acyclic <n> <m>        then m lines `u v`
//! tournament <n>         then rows i = 1..n−1 of n−i bits, bit j set iff i → i+j
//! ktournament <n> <k>    then rows of `<bit><color>` tokens
//! ordered <n> <m>        then m lines `u v`
//! coloring <n> <k>       then rows i = 1..n−1 of n−i colors
//! labeling <n>           then n lines `<vertex> <codeword>` (`-` is the empty word)
//! walk <ell>             then ell lines `<vertex> <run length>`
//! ```

use thiserror::Error;

use crate::digraph::{AcyclicDigraph, ColoredTournament, OrderedGraph, Tournament};
use crate::prefix::PrefixLabeling;
use crate::ramsey::EdgeColoring;
use crate::walks::Walk;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct FormatError {
    pub line: usize,
    pub msg: String,
}

struct Lines<'a> {
    inner: std::iter::Peekable<std::iter::Enumerate<std::str::Lines<'a>>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines { inner: text.lines().enumerate().peekable(), last: 0 }
    }

    fn next(&mut self, what: &str) -> Result<(usize, Vec<&'a str>), FormatError> {
        for (i, l) in self.inner.by_ref() {
            let t = l.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            self.last = i + 1;
            return Ok((i + 1, t.split_whitespace().collect()));
        }
        Err(FormatError { line: self.last + 1, msg: format!("unexpected end of input, expected {what}") })
    }

    fn finish(mut self) -> Result<(), FormatError> {
        match self.next("") {
            Ok((line, _)) => Err(FormatError { line, msg: "trailing content".into() }),
            Err(_) => Ok(()),
        }
    }
}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError { line, msg: msg.into() })
}

fn num<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T, FormatError> {
    tok.parse().map_err(|_| FormatError { line, msg: format!("bad {what} {tok:?}") })
}

fn header<'a>(lines: &mut Lines<'a>, word: &str, args: usize) -> Result<(usize, Vec<&'a str>), FormatError> {
    let (line, toks) = lines.next(&format!("`{word}` header"))?;
    if toks[0] != word || toks.len() != args + 1 {
        return err(line, format!("expected `{word}` with {args} arguments"));
    }
    Ok((line, toks[1..].to_vec()))
}

/// 1-based vertex token checked against n.
fn vertex(line: usize, tok: &str, n: usize) -> Result<usize, FormatError> {
    let v: usize = num(line, tok, "vertex")?;
    if v == 0 || v > n {
        return err(line, format!("vertex {v} outside 1..={n}"));
    }
    Ok(v - 1)
}

fn edge_list(lines: &mut Lines, n: usize, m: usize) -> Result<Vec<(usize, usize)>, FormatError> {
    (0..m)
        .map(|_| {
            let (line, t) = lines.next("an edge line")?;
            if t.len() != 2 {
                return err(line, "expected `u v`");
            }
            Ok((vertex(line, t[0], n)?, vertex(line, t[1], n)?))
        })
        .collect()
}

pub fn parse_acyclic(text: &str) -> Result<AcyclicDigraph, FormatError> {
    let mut lines = Lines::new(text);
    let (line, a) = header(&mut lines, "acyclic", 2)?;
    let (n, m): (usize, usize) = (num(line, a[0], "n")?, num(line, a[1], "m")?);
    let edges = edge_list(&mut lines, n, m)?;
    let last = lines.last;
    lines.finish()?;
    AcyclicDigraph::new(n, &edges).map_err(|e| FormatError { line: last, msg: e.to_string() })
}

pub fn write_acyclic(h: &AcyclicDigraph) -> String {
    let mut s = format!("acyclic {} {}\n", h.n(), h.edge_count());
    for &(u, v) in h.edges() {
        s += &format!("{} {}\n", u + 1, v + 1);
    }
    s
}

pub fn parse_tournament(text: &str) -> Result<Tournament, FormatError> {
    let mut lines = Lines::new(text);
    let (line, a) = header(&mut lines, "tournament", 1)?;
    let n: usize = num(line, a[0], "n")?;
    let mut rows = Vec::with_capacity(n);
    for i in 0..n.saturating_sub(1) {
        let (line, t) = lines.next("a tournament row")?;
        let bits = t.concat();
        if bits.len() != n - 1 - i || bits.chars().any(|c| c != '0' && c != '1') {
            return err(line, format!("row {} needs {} bits", i + 1, n - 1 - i));
        }
        rows.push(bits.into_bytes());
    }
    lines.finish()?;
    Tournament::try_from_fn(n, |i, j| rows[i][j - i - 1] == b'1').map_err(|e| FormatError { line, msg: e.to_string() })
}

pub fn write_tournament(t: &Tournament) -> String {
    let n = t.n();
    let mut s = format!("tournament {n}\n");
    for i in 0..n.saturating_sub(1) {
        s.extend((i + 1..n).map(|j| if t.forward_bit(i, j) { '1' } else { '0' }));
        s.push('\n');
    }
    s
}

pub fn parse_colored(text: &str) -> Result<ColoredTournament, FormatError> {
    let mut lines = Lines::new(text);
    let (line, a) = header(&mut lines, "ktournament", 2)?;
    let (n, k): (usize, usize) = (num(line, a[0], "n")?, num(line, a[1], "k")?);
    let mut bits = Vec::new();
    let mut colors = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let (line, t) = lines.next("a colored row")?;
        if t.len() != n - 1 - i {
            return err(line, format!("row {} needs {} entries", i + 1, n - 1 - i));
        }
        for tok in t {
            let (b, c) = tok.split_at(1);
            if b != "0" && b != "1" {
                return err(line, format!("bad entry {tok:?}"));
            }
            let c: usize = num(line, c, "color")?;
            if c == 0 || c > k {
                return err(line, format!("color {c} outside 1..={k}"));
            }
            bits.push(b == "1");
            colors.push(c);
        }
    }
    lines.finish()?;
    let (mut bi, mut ci) = (0, 0);
    let base = Tournament::try_from_fn(n, |_, _| {
        bi += 1;
        bits[bi - 1]
    })
    .map_err(|e| FormatError { line, msg: e.to_string() })?;
    ColoredTournament::new(base, k, |_, _| {
        ci += 1;
        colors[ci - 1]
    })
    .map_err(|e| FormatError { line, msg: e.to_string() })
}

pub fn write_colored(t: &ColoredTournament) -> String {
    let n = t.n();
    let mut s = format!("ktournament {n} {}\n", t.k());
    for i in 0..n.saturating_sub(1) {
        let row: Vec<String> =
            (i + 1..n).map(|j| format!("{}{}", u8::from(t.base().forward_bit(i, j)), t.color(i, j))).collect();
        s += &row.join(" ");
        s.push('\n');
    }
    s
}

pub fn parse_ordered(text: &str) -> Result<OrderedGraph, FormatError> {
    let mut lines = Lines::new(text);
    let (line, a) = header(&mut lines, "ordered", 2)?;
    let (n, m): (usize, usize) = (num(line, a[0], "n")?, num(line, a[1], "m")?);
    let edges = edge_list(&mut lines, n, m)?;
    let last = lines.last;
    lines.finish()?;
    OrderedGraph::new(n, &edges).map_err(|e| FormatError { line: last, msg: e.to_string() })
}

pub fn write_ordered(g: &OrderedGraph) -> String {
    let mut s = format!("ordered {} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        s += &format!("{} {}\n", u + 1, v + 1);
    }
    s
}

pub fn parse_coloring(text: &str) -> Result<EdgeColoring, FormatError> {
    let mut lines = Lines::new(text);
    let (line, a) = header(&mut lines, "coloring", 2)?;
    let (n, k): (usize, usize) = (num(line, a[0], "n")?, num(line, a[1], "k")?);
    let mut colors = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let (line, t) = lines.next("a coloring row")?;
        if t.len() != n - 1 - i {
            return err(line, format!("row {} needs {} colors", i + 1, n - 1 - i));
        }
        for tok in t {
            colors.push(num::<usize>(line, tok, "color")?);
        }
    }
    let last = lines.last;
    lines.finish()?;
    let mut idx = 0;
    EdgeColoring::new(n, k, |_, _| {
        idx += 1;
        colors[idx - 1]
    })
    .map_err(|e| FormatError { line: last.max(line), msg: e.to_string() })
}

pub fn write_coloring(chi: &EdgeColoring) -> String {
    let n = chi.n();
    let mut s = format!("coloring {n} {}\n", chi.k());
    for i in 0..n.saturating_sub(1) {
        let row: Vec<String> = (i + 1..n).map(|j| chi.color(i, j).to_string()).collect();
        s += &row.join(" ");
        s.push('\n');
    }
    s
}

pub fn parse_labeling(text: &str) -> Result<PrefixLabeling, FormatError> {
    let mut lines = Lines::new(text);
    let (line, a) = header(&mut lines, "labeling", 1)?;
    let n: usize = num(line, a[0], "n")?;
    let mut labels: Vec<Option<String>> = vec![None; n];
    for _ in 0..n {
        let (line, t) = lines.next("a labeling line")?;
        if t.len() != 2 {
            return err(line, "expected `<vertex> <codeword>`");
        }
        let v = vertex(line, t[0], n)?;
        if labels[v].is_some() {
            return err(line, format!("vertex {} labeled twice", v + 1));
        }
        labels[v] = Some(if t[1] == "-" { String::new() } else { t[1].to_string() });
    }
    let last = lines.last;
    lines.finish()?;
    PrefixLabeling::new(labels.into_iter().map(|l| l.expect("every vertex labeled once")).collect())
        .map_err(|e| FormatError { line: last, msg: e.to_string() })
}

pub fn write_labeling(rho: &PrefixLabeling) -> String {
    let mut s = format!("labeling {}\n", rho.labels().len());
    for (v, w) in rho.labels().iter().enumerate() {
        s += &format!("{} {}\n", v + 1, if w.is_empty() { "-" } else { w });
    }
    s
}

pub fn parse_walk(text: &str) -> Result<Walk, FormatError> {
    let mut lines = Lines::new(text);
    let (line, a) = header(&mut lines, "walk", 1)?;
    let ell: usize = num(line, a[0], "ell")?;
    let mut runs = Vec::with_capacity(ell);
    for _ in 0..ell {
        let (line, t) = lines.next("a run line")?;
        if t.len() != 2 {
            return err(line, "expected `<vertex> <run length>`");
        }
        let v: usize = num(line, t[0], "vertex")?;
        if v == 0 {
            return err(line, "vertices are 1-based");
        }
        let len: u64 = num(line, t[1], "run length")?;
        if len == 0 {
            return err(line, "run lengths are positive");
        }
        runs.push((v - 1, len));
    }
    lines.finish()?;
    Ok(Walk::new(runs))
}

pub fn write_walk(w: &Walk) -> String {
    let mut s = format!("walk {}\n", w.ell());
    for &(v, a) in &w.runs {
        s += &format!("{} {a}\n", v + 1);
    }
    s
}

/// Any file, told apart by its header word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Acyclic(AcyclicDigraph),
    Tournament(Tournament),
    Colored(ColoredTournament),
    Ordered(OrderedGraph),
    Coloring(EdgeColoring),
    Labeling(PrefixLabeling),
    Walk(Walk),
}

pub fn parse_document(text: &str) -> Result<Document, FormatError> {
    let word = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .and_then(|l| l.split_whitespace().next())
        .unwrap_or("");
    Ok(match word {
        "acyclic" => Document::Acyclic(parse_acyclic(text)?),
        "tournament" => Document::Tournament(parse_tournament(text)?),
        "ktournament" => Document::Colored(parse_colored(text)?),
        "ordered" => Document::Ordered(parse_ordered(text)?),
        "coloring" => Document::Coloring(parse_coloring(text)?),
        "labeling" => Document::Labeling(parse_labeling(text)?),
        "walk" => Document::Walk(parse_walk(text)?),
        other => return err(1, format!("unknown header {other:?}")),
    })
}

pub fn write_document(d: &Document) -> String {
    match d {
        Document::Acyclic(h) => write_acyclic(h),
        Document::Tournament(t) => write_tournament(t),
        Document::Colored(t) => write_colored(t),
        Document::Ordered(g) => write_ordered(g),
        Document::Coloring(c) => write_coloring(c),
        Document::Labeling(l) => write_labeling(l),
        Document::Walk(w) => write_walk(w),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::generators::*;
    use crate::tourney::{paley, random_tournament};
    use proptest::prelude::*;

    #[test]
    fn fixtures_round_trip() {
        let files = [
            "acyclic 3 2\n1 2\n2 3\n",
            "acyclic 1 0\n",
            "tournament 4\n101\n01\n1\n",
            "tournament 1\n",
            "ktournament 3 2\n11 02\n12\n",
            "ordered 4 2\n1 3\n2 4\n",
            "coloring 3 3\n1 3\n2\n",
            "labeling 3\n1 0\n2 10\n3 11\n",
            "labeling 2\n1 -\n2 -\n",
            "walk 3\n1 2\n3 1\n2 5\n",
        ];
        for f in files {
            let d = parse_document(f).unwrap();
            assert_eq!(write_document(&d), f);
        }
    }

    #[test]
    fn tournament_rows_follow_the_convention() {
        let t = parse_tournament("tournament 3\n10\n0\n").unwrap();
        assert!(t.beats(0, 1) && t.beats(2, 0) && t.beats(2, 1));
        assert_eq!(parse_tournament(&write_tournament(&paley(7).unwrap())).unwrap(), paley(7).unwrap());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_acyclic("acyclic 3 2\n1 2\n# note\n2 4\n").unwrap_err();
        assert_eq!(e.line, 4);
        let e = parse_acyclic("acyclic 2 2\n1 2\n2 1\n").unwrap_err();
        assert!(e.msg.contains("antiparallel"), "{e}");
        assert_eq!(parse_tournament("tournament 3\n1\n0\n").unwrap_err().line, 2);
        assert_eq!(parse_walk("walk 2\n1 1\n").unwrap_err().line, 3);
        assert_eq!(parse_labeling("labeling 2\n1 0\n1 1\n").unwrap_err().line, 3);
        assert!(parse_labeling("labeling 2\n1 0\n2 01\n").is_err());
        assert_eq!(parse_document("graph 3\n").unwrap_err().line, 1);
        assert_eq!(parse_acyclic("acyclic 2 0\n1 2\n").unwrap_err().line, 2);
    }

    proptest! {
        #[test]
        fn random_objects_round_trip(n in 1usize..12, seed in 0u64..1000) {
            let t = random_tournament(n, seed);
            prop_assert_eq!(parse_tournament(&write_tournament(&t)).unwrap(), t.clone());
            let c = ColoredTournament::new(t, 3, |i, j| 1 + (i * 5 + j + seed as usize) % 3).unwrap();
            prop_assert_eq!(parse_colored(&write_colored(&c)).unwrap(), c);
            let h = crate::random::sample_gnp_oriented(n, 0.4, seed).unwrap();
            let text = write_acyclic(&h);
            prop_assert_eq!(write_acyclic(&parse_acyclic(&text).unwrap()), text);
            let chi = EdgeColoring::new(n, 2, |i, j| 1 + (i + j) % 2).unwrap();
            prop_assert_eq!(parse_coloring(&write_coloring(&chi)).unwrap(), chi);
        }
    }

    #[test]
    fn walk_and_labeling_objects() {
        let w = Walk::new(vec![(0, 3), (2, 1)]);
        assert_eq!(parse_walk(&write_walk(&w)).unwrap(), w);
        let rho = crate::prefix::height_prefix_coloring(&dipath(3));
        assert_eq!(parse_labeling(&write_labeling(&rho)).unwrap(), rho);
    }
}
