//! `cert v1` certificates: a kind, digests of the inputs, key-value payload
//! lines in the order they were added, and named multi-line blocks.
//!
//! ```text
//! cert v1
//! kind embedding
//! input pattern sha256:…
//! input host sha256:…
//! map 4 1 7
//! begin witness
//! …
//! end witness
//! ```

use std::collections::BTreeMap;
use std::fmt;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::bitset::BitSet;
use crate::digraph::{AcyclicDigraph, DirectedPartition, Embedding, OrderedGraph, Tournament};
use crate::format::{parse_document, write_document, Document, FormatError};
use crate::mesh::{verify_interval_mesh, MonotoneFunction};
use crate::prefix::{validate_skeleton, PrefixLabeling, Skeleton};
use crate::ramsey::{has_ordered_copy, verify_avoider};
use crate::walks::is_valid_walk;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("input {0:?} was not supplied")]
    MissingInput(String),
    #[error("input {0:?} does not match its digest")]
    DigestMismatch(String),
    #[error("input {name:?} should be {want}")]
    WrongInput { name: String, want: &'static str },
    #[error("missing field {0:?}")]
    MissingField(String),
    #[error("certificate does not check out: {0}")]
    Invalid(String),
    #[error(transparent)]
    Format(#[from] FormatError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertKind {
    Embedding,
    DensePair,
    Skeleton,
    Walk,
    Mesh,
    RamseyValue,
    Partition,
    Stats,
}

const KINDS: [(CertKind, &str); 8] = [
    (CertKind::Embedding, "embedding"),
    (CertKind::DensePair, "dense-pair"),
    (CertKind::Skeleton, "skeleton"),
    (CertKind::Walk, "walk"),
    (CertKind::Mesh, "mesh"),
    (CertKind::RamseyValue, "ramsey-value"),
    (CertKind::Partition, "partition"),
    (CertKind::Stats, "stats"),
];

impl CertKind {
    pub fn as_str(self) -> &'static str {
        KINDS.iter().find(|k| k.0 == self).expect("every kind is listed").1
    }

    pub fn parse(s: &str) -> Option<CertKind> {
        KINDS.iter().find(|k| k.1 == s).map(|k| k.0)
    }
}

/// "sha256:<hex>" of the bytes.
pub fn digest(text: &str) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(text.as_bytes())))
}

/// Digest of the canonical serialization.
pub fn document_digest(d: &Document) -> String {
    digest(&write_document(d))
}

/// Space-separated 1-based vertex list.
pub fn vertex_list(vs: impl IntoIterator<Item = usize>) -> String {
    vs.into_iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(" ")
}

fn parse_vertex_list(s: &str, n: usize) -> Result<Vec<usize>, CertError> {
    s.split_whitespace()
        .map(|t| match t.parse::<usize>() {
            Ok(v) if v >= 1 && v <= n => Ok(v - 1),
            _ => Err(CertError::Invalid(format!("bad vertex {t:?}"))),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub kind: CertKind,
    pub inputs: Vec<(String, String)>,
    pub fields: Vec<(String, String)>,
    pub blocks: Vec<(String, String)>,
}

impl Certificate {
    pub fn new(kind: CertKind) -> Self {
        Certificate { kind, inputs: Vec::new(), fields: Vec::new(), blocks: Vec::new() }
    }

    pub fn input(mut self, name: &str, d: &Document) -> Self {
        self.inputs.push((name.to_string(), document_digest(d)));
        self
    }

    pub fn field(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.fields.push((key.to_string(), value.to_string()));
        self
    }

    pub fn block(mut self, name: &str, text: String) -> Self {
        self.blocks.push((name.to_string(), text));
        self
    }

    /// First value stored under `key`.
    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|f| f.0 == key).map(|f| f.1.as_str())
    }

    pub fn all<'a>(&'a self, key: &'a str) -> impl Iterator<Item = &'a str> {
        self.fields.iter().filter(move |f| f.0 == key).map(|f| f.1.as_str())
    }

    fn need(&self, key: &str) -> Result<&str, CertError> {
        self.get(key).ok_or_else(|| CertError::MissingField(key.to_string()))
    }

    fn need_num<T: std::str::FromStr>(&self, key: &str) -> Result<T, CertError> {
        self.need(key)?.parse().map_err(|_| CertError::Invalid(format!("field {key} is not a number")))
    }

    pub fn get_block(&self, name: &str) -> Option<&str> {
        self.blocks.iter().find(|b| b.0 == name).map(|b| b.1.as_str())
    }

    pub fn serialize(&self) -> String {
        let mut s = format!("cert v1\nkind {}\n", self.kind.as_str());
        for (name, d) in &self.inputs {
            s += &format!("input {name} {d}\n");
        }
        for (k, v) in &self.fields {
            s += &if v.is_empty() { format!("{k}\n") } else { format!("{k} {v}\n") };
        }
        for (name, text) in &self.blocks {
            s += &format!("begin {name}\n{text}");
            if !text.is_empty() && !text.ends_with('\n') {
                s.push('\n');
            }
            s += &format!("end {name}\n");
        }
        s
    }

    pub fn parse(text: &str) -> Result<Certificate, CertError> {
        let bad = |line: usize, msg: &str| CertError::Malformed { line, msg: msg.to_string() };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        match lines.next() {
            Some((_, "cert v1")) => {}
            _ => return Err(bad(1, "expected `cert v1`")),
        }
        let kind = match lines.next() {
            Some((n, l)) => {
                let k = l.strip_prefix("kind ").ok_or_else(|| bad(n, "expected `kind <kind>`"))?;
                CertKind::parse(k).ok_or_else(|| bad(n, "unknown certificate kind"))?
            }
            None => return Err(bad(2, "expected `kind <kind>`")),
        };
        let mut cert = Certificate::new(kind);
        while let Some((n, l)) = lines.next() {
            let (key, rest) = l.split_once(' ').unwrap_or((l, ""));
            match key {
                "input" => {
                    let (name, d) = rest.split_once(' ').ok_or_else(|| bad(n, "expected `input <name> <digest>`"))?;
                    cert.inputs.push((name.to_string(), d.to_string()));
                }
                "begin" => {
                    let mut body = String::new();
                    loop {
                        match lines.next() {
                            Some((_, l)) if l == format!("end {rest}") => break,
                            Some((_, l)) => {
                                body += l;
                                body.push('\n');
                            }
                            None => return Err(bad(n, "block is never closed")),
                        }
                    }
                    cert.blocks.push((rest.to_string(), body));
                }
                "" => return Err(bad(n, "empty line")),
                _ => cert.fields.push((key.to_string(), rest.to_string())),
            }
        }
        Ok(cert)
    }
}

fn acyclic<'a>(inputs: &'a BTreeMap<String, Document>, name: &str) -> Result<&'a AcyclicDigraph, CertError> {
    match inputs.get(name) {
        Some(Document::Acyclic(h)) => Ok(h),
        Some(_) => Err(CertError::WrongInput { name: name.into(), want: "an acyclic digraph" }),
        None => Err(CertError::MissingInput(name.into())),
    }
}

fn tournament<'a>(inputs: &'a BTreeMap<String, Document>, name: &str) -> Result<&'a Tournament, CertError> {
    match inputs.get(name) {
        Some(Document::Tournament(t)) => Ok(t),
        Some(_) => Err(CertError::WrongInput { name: name.into(), want: "a tournament" }),
        None => Err(CertError::MissingInput(name.into())),
    }
}

fn labeling<'a>(inputs: &'a BTreeMap<String, Document>, name: &str) -> Result<&'a PrefixLabeling, CertError> {
    match inputs.get(name) {
        Some(Document::Labeling(l)) => Ok(l),
        Some(_) => Err(CertError::WrongInput { name: name.into(), want: "a labeling" }),
        None => Err(CertError::MissingInput(name.into())),
    }
}

fn ordered<'a>(inputs: &'a BTreeMap<String, Document>, name: &str) -> Result<&'a OrderedGraph, CertError> {
    match inputs.get(name) {
        Some(Document::Ordered(g)) => Ok(g),
        Some(_) => Err(CertError::WrongInput { name: name.into(), want: "an ordered graph" }),
        None => Err(CertError::MissingInput(name.into())),
    }
}

fn invalid(msg: impl fmt::Display) -> CertError {
    CertError::Invalid(msg.to_string())
}

/// Checks every declared input digest, then re-validates the payload against the inputs.
pub fn validate_certificate(cert: &Certificate, inputs: &BTreeMap<String, Document>) -> Result<(), CertError> {
    for (name, d) in &cert.inputs {
        let doc = inputs.get(name).ok_or_else(|| CertError::MissingInput(name.clone()))?;
        if document_digest(doc) != *d {
            return Err(CertError::DigestMismatch(name.clone()));
        }
    }
    match cert.kind {
        CertKind::Embedding => {
            let (h, t) = (acyclic(inputs, "pattern")?, tournament(inputs, "host")?);
            let map = parse_vertex_list(cert.need("map")?, t.n())?;
            Embedding::new(map).validate(h, t).map_err(invalid)
        }
        CertKind::DensePair => {
            let t = tournament(inputs, "host")?;
            let w1 = parse_vertex_list(cert.need("w1")?, t.n())?;
            let w2 = parse_vertex_list(cert.need("w2")?, t.n())?;
            let forward = w1.iter().flat_map(|&a| w2.iter().map(move |&b| (a, b))).filter(|&(a, b)| t.beats(a, b)).count();
            if forward != cert.need_num::<usize>("forward")? {
                return Err(invalid(format!("forward count is {forward}")));
            }
            if let Some(min) = cert.get("min-delta") {
                let min: f64 = min.parse().map_err(|_| invalid("min-delta is not a number"))?;
                if (forward as f64) < min * (w1.len() * w2.len()) as f64 - 1e-9 {
                    return Err(invalid("pair is below the stated density"));
                }
            }
            Ok(())
        }
        CertKind::Skeleton => {
            let (h, t, rho) = (acyclic(inputs, "pattern")?, tournament(inputs, "host")?, labeling(inputs, "labeling")?);
            let mut sets = BTreeMap::new();
            for line in cert.all("set") {
                let (x, vs) = line.split_once(' ').unwrap_or((line, ""));
                let x = if x == "-" { "" } else { x };
                sets.insert(x.to_string(), BitSet::from_indices(t.n(), parse_vertex_list(vs, t.n())?));
            }
            let s = Skeleton { sets, delta: cert.need_num("delta")?, splits: Vec::new() };
            validate_skeleton(t, h, rho, &s).map_err(invalid)
        }
        CertKind::Walk => {
            let r = tournament(inputs, "tournament")?;
            let f = MonotoneFunction::parse(cert.need("f")?).map_err(invalid)?;
            let s: u64 = cert.need_num("s")?;
            let w = crate::format::parse_walk(cert.get_block("walk").ok_or_else(|| CertError::MissingField("walk".into()))?)?;
            is_valid_walk(r, &f, s, &w).map_err(invalid)?;
            if let Some(len) = cert.get("length") {
                if len != w.length().to_string() {
                    return Err(invalid("stated length differs"));
                }
            }
            Ok(())
        }
        CertKind::Mesh => {
            let h = acyclic(inputs, "mesh")?;
            let f = MonotoneFunction::parse(cert.need("f")?).map_err(invalid)?;
            let again = verify_interval_mesh(h, &f).map_err(invalid)?;
            if again.pass.to_string() != cert.need("pass")? || again.max_degree.to_string() != cert.need("max-degree")? {
                return Err(invalid("verification outcome differs"));
            }
            Ok(())
        }
        CertKind::RamseyValue => validate_ramsey(cert, inputs),
        CertKind::Partition => {
            let h = acyclic(inputs, "pattern")?;
            let parts: Vec<Vec<usize>> =
                cert.all("part").map(|p| parse_vertex_list(p, h.n())).collect::<Result<_, _>>()?;
            let p = DirectedPartition::new(parts);
            p.validate(h).map_err(invalid)?;
            if cert.get("forest") == Some("true") {
                p.validate_forest_parts(h).map_err(invalid)?;
            }
            Ok(())
        }
        CertKind::Stats => Ok(()),
    }
}

fn validate_ramsey(cert: &Certificate, inputs: &BTreeMap<String, Document>) -> Result<(), CertError> {
    let size: usize = match cert.get("value") {
        Some(_) => cert.need_num("value")?,
        None => cert.need_num("lower")?,
    };
    let text = cert.get_block("witness").ok_or_else(|| CertError::MissingField("witness".into()))?;
    let witness = parse_document(text)?;
    match (cert.need("problem")?, witness) {
        ("r1" | "rk", Document::Colored(t)) => {
            let h = acyclic(inputs, "pattern")?;
            if t.n() + 1 != size || t.k() != cert.need_num::<usize>("k")? {
                return Err(invalid("witness size or color count does not match"));
            }
            if !verify_avoider(h, &t) {
                return Err(invalid("witness contains a monochromatic copy"));
            }
            Ok(())
        }
        ("ordered", Document::Coloring(chi)) => {
            let k: usize = cert.need_num("k")?;
            if chi.n() + 1 != size || chi.k() != k {
                return Err(invalid("witness size or color count does not match"));
            }
            for c in 1..=k {
                if has_ordered_copy(&chi, c, ordered(inputs, &format!("pattern-{c}"))?) {
                    return Err(invalid(format!("witness has an ordered copy in color {c}")));
                }
            }
            Ok(())
        }
        _ => Err(invalid("witness kind does not fit the problem")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::generators::*;
    use crate::format::{write_colored, write_walk};
    use crate::ramsey::oriented_ramsey_1;
    use crate::tourney::{contains_copy, random_tournament};

    fn inputs(pairs: &[(&str, Document)]) -> BTreeMap<String, Document> {
        pairs.iter().map(|(n, d)| (n.to_string(), d.clone())).collect()
    }

    #[test]
    fn embedding_round_trip_and_tamper() {
        let h = dipath(3);
        let t = random_tournament(9, 4);
        let e = contains_copy(&t, &h).unwrap();
        let (hd, td) = (Document::Acyclic(h), Document::Tournament(t.clone()));
        let cert = Certificate::new(CertKind::Embedding)
            .input("pattern", &hd)
            .input("host", &td)
            .field("map", vertex_list(e.map.iter().copied()));
        let text = cert.serialize();
        let back = Certificate::parse(&text).unwrap();
        assert_eq!(back, cert);
        assert_eq!(back.serialize(), text);
        let ins = inputs(&[("pattern", hd.clone()), ("host", td)]);
        validate_certificate(&back, &ins).unwrap();
        let mut flipped = t;
        flipped.flip(e.map[0], e.map[1]);
        let other = inputs(&[("pattern", hd), ("host", Document::Tournament(flipped))]);
        assert_eq!(validate_certificate(&back, &other), Err(CertError::DigestMismatch("host".into())));
    }

    #[test]
    fn ramsey_witness_validates() {
        let h = transitive(3);
        let r = oriented_ramsey_1(&h, 6).unwrap();
        let crate::ramsey::Witness::Oriented(w) = &r.witness else { unreachable!() };
        let hd = Document::Acyclic(h.clone());
        let cert = Certificate::new(CertKind::RamseyValue)
            .input("pattern", &hd)
            .field("problem", "r1")
            .field("k", 1)
            .field("value", r.value)
            .field("exhaustive", true)
            .block("witness", write_colored(w));
        let back = Certificate::parse(&cert.serialize()).unwrap();
        validate_certificate(&back, &inputs(&[("pattern", hd.clone())])).unwrap();
        let wrong = Certificate::new(CertKind::RamseyValue)
            .input("pattern", &hd)
            .field("problem", "r1")
            .field("k", 1)
            .field("value", 5)
            .block("witness", write_colored(&crate::digraph::ColoredTournament::new(Tournament::transitive(4), 1, |_, _| 1).unwrap()));
        assert!(matches!(validate_certificate(&wrong, &inputs(&[("pattern", hd)])), Err(CertError::Invalid(_))));
    }

    #[test]
    fn walk_certificates() {
        let r = crate::tourney::paley(3).unwrap();
        let w = crate::walks::Walk::new(vec![(0, 1), (1, 1), (2, 1)]);
        let rd = Document::Tournament(r);
        let cert = Certificate::new(CertKind::Walk)
            .input("tournament", &rd)
            .field("f", "const:0.5")
            .field("s", 1)
            .field("length", 3)
            .block("walk", write_walk(&w));
        validate_certificate(&Certificate::parse(&cert.serialize()).unwrap(), &inputs(&[("tournament", rd)])).unwrap();
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(Certificate::parse("cert v2\n"), Err(CertError::Malformed { line: 1, .. })));
        assert!(matches!(Certificate::parse("cert v1\nkind nope\n"), Err(CertError::Malformed { line: 2, .. })));
        assert!(matches!(Certificate::parse("cert v1\nkind walk\nbegin walk\n1 1\n"), Err(CertError::Malformed { .. })));
        let c = Certificate::new(CertKind::Stats).input("x", &Document::Tournament(Tournament::transitive(2)));
        assert_eq!(validate_certificate(&c, &BTreeMap::new()), Err(CertError::MissingInput("x".into())));
        assert_eq!(digest(""), "sha256:e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    }
}
