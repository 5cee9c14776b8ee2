use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use log::info;

use ramsey_forge::bitset::BitSet;
use ramsey_forge::cert::{validate_certificate, vertex_list, CertKind, Certificate};
use ramsey_forge::digraph::{degeneracy_order, AcyclicDigraph, Embedding, OrderedGraph, Tournament};
use ramsey_forge::embed::{find_dense_pair, forest_dense_pair, greedy_embed, inner_stage, threshold_instance, DenseOutcome, DensePair, ForestOutcome, GreedyOutcome};
use ramsey_forge::format::{parse_document, write_colored, write_coloring, write_document, write_walk, Document};
use ramsey_forge::mesh::{build_interval_mesh, verify_interval_mesh, MonotoneFunction};
use ramsey_forge::prefix::{build_skeleton, embed_via_coloring, graded_prefix_coloring, height_prefix_coloring, labeling_stats, PrefixLabeling, SkeletonOutcome};
use ramsey_forge::ramsey::{oriented_ramsey_k_with, oriented_ramsey_search, ordered_ramsey_with, AnnealOptions, Enumeration, RamseyError, Witness};
use ramsey_forge::random::{component_analysis, random_forest_partition, sample_gnp_oriented, sample_grd_oriented, sample_pairing, ForestPartitionOutcome};
use ramsey_forge::tourney::{contains_copy, forward_edges, lex_power, max_transitive_subtournament, median_ordering, paley, random_tournament};
use ramsey_forge::walks::{extract_walk, is_valid_walk, longest_walk};

use crate::{Cli, Cmd, EmbedCmd, Global, MeshCmd, Mode, PrefixCmd, RamseyArgs, RamseyCmd, RandomCmd, TourneyCmd, WalkCmd};

pub enum Outcome {
    Positive,
    /// A well-formed run whose mathematical answer is "no".
    Negative(String),
}

fn read_doc(path: &Path) -> Result<Document> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_document(&text).with_context(|| format!("parsing {}", path.display()))
}

fn input(g: &Global) -> Result<&PathBuf> {
    g.input.as_ref().ok_or_else(|| anyhow!("this command needs -i <file>"))
}

fn seed(g: &Global) -> Result<u64> {
    g.seed.ok_or_else(|| anyhow!("randomized commands need an explicit --seed"))
}

macro_rules! loader {
    ($name:ident, $variant:ident, $ty:ty, $what:literal) => {
        fn $name(path: &Path) -> Result<(Document, $ty)> {
            match read_doc(path)? {
                Document::$variant(x) => Ok((Document::$variant(x.clone()), x)),
                _ => bail!("{} is not {}", path.display(), $what),
            }
        }
    };
}

loader!(load_acyclic, Acyclic, AcyclicDigraph, "an acyclic digraph");
loader!(load_tournament, Tournament, Tournament, "a tournament");
loader!(load_labeling, Labeling, PrefixLabeling, "a labeling");
loader!(load_ordered, Ordered, OrderedGraph, "an ordered graph");

fn write_out(g: &Global, text: &str) -> Result<()> {
    match &g.output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => std::io::stdout().write_all(text.as_bytes()).context("writing stdout"),
    }
}

/// Validates against the inputs before anything is written.
fn emit(g: &Global, cert: Certificate, inputs: &[(&str, &Document)]) -> Result<()> {
    let map: BTreeMap<String, Document> = inputs.iter().map(|(n, d)| (n.to_string(), (*d).clone())).collect();
    validate_certificate(&cert, &map).context("emitted certificate failed its own validation")?;
    write_out(g, &cert.serialize())
}

fn parse_f(s: &str) -> Result<MonotoneFunction> {
    MonotoneFunction::parse(s).map_err(|e| anyhow!("--f {s:?}: {e}"))
}

pub fn dispatch(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    match &cli.cmd {
        Cmd::Mesh(c) => mesh(g, c),
        Cmd::Tourney(c) => tourney(g, c),
        Cmd::Embed(c) => embed(g, c),
        Cmd::Prefix(c) => prefix(g, c),
        Cmd::Walk(c) => walk(g, c),
        Cmd::Random(c) => random(g, c),
        Cmd::Ramsey(c) => ramsey(g, c),
        Cmd::Validate { cert, inputs } => {
            let text = fs::read_to_string(cert).with_context(|| format!("reading {}", cert.display()))?;
            let cert = Certificate::parse(&text).context("parsing certificate")?;
            let mut docs = BTreeMap::new();
            for (name, path) in inputs {
                docs.insert(name.clone(), read_doc(path)?);
            }
            Ok(match validate_certificate(&cert, &docs) {
                Ok(()) => {
                    write_out(g, &format!("valid {}\n", cert.kind.as_str()))?;
                    Outcome::Positive
                }
                Err(e) => Outcome::Negative(format!("invalid: {e}")),
            })
        }
    }
}

fn mesh(g: &Global, c: &MeshCmd) -> Result<Outcome> {
    match c {
        MeshCmd::Build { f, n } => {
            let f = parse_f(f)?;
            let h = build_interval_mesh(&f, *n);
            info!("mesh on {n} vertices, {} edges, max degree {}", h.edge_count(), h.max_degree());
            write_out(g, &write_document(&Document::Acyclic(h)))?;
            Ok(Outcome::Positive)
        }
        MeshCmd::Verify { f } => {
            let fun = parse_f(f)?;
            let (doc, h) = load_acyclic(input(g)?)?;
            let mc = verify_interval_mesh(&h, &fun)?;
            let mut cert = Certificate::new(CertKind::Mesh)
                .input("mesh", &doc)
                .field("f", fun.describe())
                .field("n", mc.n)
                .field("pass", mc.pass)
                .field("max-degree", mc.max_degree)
                .field("s-value", mc.s_value)
                .field("degree-bound", mc.degree_bound)
                .field("pairs-checked", mc.pairs_checked);
            if let Some([a1, b1, a2, b2]) = mc.witness {
                cert = cert.field("witness", format!("({a1},{b1}] ({a2},{b2}]"));
            }
            emit(g, cert, &[("mesh", &doc)])?;
            Ok(match mc.witness {
                Some([a1, b1, a2, b2]) if !mc.pass => {
                    Outcome::Negative(format!("no edge between intervals ({a1},{b1}] and ({a2},{b2}]"))
                }
                _ if !mc.pass => Outcome::Negative("mesh verification failed".into()),
                _ => Outcome::Positive,
            })
        }
    }
}

fn embedding_cert(phi: &Embedding, hd: &Document, td: &Document) -> Certificate {
    Certificate::new(CertKind::Embedding)
        .input("pattern", hd)
        .input("host", td)
        .field("map", vertex_list(phi.map.iter().copied()))
}

fn pair_cert(p: &DensePair, td: &Document, min_delta: f64) -> Certificate {
    Certificate::new(CertKind::DensePair)
        .input("host", td)
        .field("w1", vertex_list(p.w1.iter().copied()))
        .field("w2", vertex_list(p.w2.iter().copied()))
        .field("forward", p.forward_count)
        .field("delta", p.delta_achieved)
        .field("min-delta", min_delta)
}

fn tourney(g: &Global, c: &TourneyCmd) -> Result<Outcome> {
    let write_t = |t: Tournament| -> Result<Outcome> {
        write_out(g, &write_document(&Document::Tournament(t)))?;
        Ok(Outcome::Positive)
    };
    match c {
        TourneyCmd::Gen { n } => write_t(random_tournament(*n, seed(g)?)),
        TourneyCmd::Paley { q } => write_t(paley(*q)?),
        TourneyCmd::Power { m } => write_t(lex_power(&load_tournament(input(g)?)?.1, *m)?),
        TourneyCmd::Maxtt => {
            let (td, t) = load_tournament(input(g)?)?;
            let w = max_transitive_subtournament(&t)?;
            let cert = Certificate::new(CertKind::Stats)
                .input("host", &td)
                .field("maxtt", w.size)
                .field("vertices", vertex_list(w.vertices.iter().copied()));
            emit(g, cert, &[("host", &td)])?;
            Ok(Outcome::Positive)
        }
        TourneyCmd::Median => {
            let (td, t) = load_tournament(input(g)?)?;
            let order = median_ordering(&t);
            let cert = Certificate::new(CertKind::Stats)
                .input("host", &td)
                .field("forward-edges", forward_edges(&t, &order))
                .field("order", vertex_list(order.iter().copied()));
            emit(g, cert, &[("host", &td)])?;
            Ok(Outcome::Positive)
        }
        TourneyCmd::Contains { pattern } => {
            let (hd, h) = load_acyclic(pattern)?;
            let (td, t) = load_tournament(input(g)?)?;
            match contains_copy(&t, &h) {
                Some(phi) => {
                    emit(g, embedding_cert(&phi, &hd, &td), &[("pattern", &hd), ("host", &td)])?;
                    Ok(Outcome::Positive)
                }
                None => Ok(Outcome::Negative("the host has no copy of the pattern".into())),
            }
        }
    }
}

fn embed(g: &Global, c: &EmbedCmd) -> Result<Outcome> {
    match c {
        EmbedCmd::Greedy { pattern, c } => {
            let (hd, h) = load_acyclic(pattern)?;
            let (td, t) = load_tournament(input(g)?)?;
            match greedy_embed(&h, &t, &degeneracy_order(&h).1, *c)? {
                GreedyOutcome::Embedded(phi) => {
                    emit(g, embedding_cert(&phi, &hd, &td), &[("pattern", &hd), ("host", &td)])?;
                    Ok(Outcome::Positive)
                }
                GreedyOutcome::Failed(w) => Ok(Outcome::Negative(format!(
                    "greedy embedding stuck at step {} (pattern vertex {}), |W0| = {}",
                    w.step + 1,
                    w.vertex + 1,
                    w.w0.len()
                ))),
            }
        }
        EmbedCmd::DensePair { pattern, c } => {
            let (hd, h) = load_acyclic(pattern)?;
            let (td, t) = load_tournament(input(g)?)?;
            match find_dense_pair(&h, &t, *c)? {
                DenseOutcome::Embedded(phi) => emit(g, embedding_cert(&phi, &hd, &td), &[("pattern", &hd), ("host", &td)])?,
                DenseOutcome::Pair { pair, .. } => emit(g, pair_cert(&pair, &td, 1.0 - c), &[("host", &td)])?,
            }
            Ok(Outcome::Positive)
        }
        EmbedCmd::Forest { pattern } => {
            let (hd, h) = load_acyclic(pattern)?;
            let (td, t) = load_tournament(input(g)?)?;
            let all = vec![BitSet::full(t.n()); h.n()];
            match forest_dense_pair(&h, &t, &all)? {
                ForestOutcome::Embedded(phi) => emit(g, embedding_cert(&phi, &hd, &td), &[("pattern", &hd), ("host", &td)])?,
                ForestOutcome::Pair { pair, .. } => emit(g, pair_cert(&pair, &td, 1.0), &[("host", &td)])?,
            }
            Ok(Outcome::Positive)
        }
        EmbedCmd::Inner { pattern, host_out } => {
            let (hd, h) = load_acyclic(pattern)?;
            let (t, sets) = match &g.input {
                Some(p) => {
                    let t = load_tournament(p)?.1;
                    let sets = vec![BitSet::full(t.n()); h.n()];
                    (t, sets)
                }
                None => {
                    let (t, sets) = threshold_instance(&h, seed(g)?);
                    let out = host_out.as_ref().ok_or_else(|| anyhow!("a generated host needs --host-out <file>"))?;
                    fs::write(out, write_document(&Document::Tournament(t.clone())))
                        .with_context(|| format!("writing {}", out.display()))?;
                    (t, sets)
                }
            };
            let td = Document::Tournament(t.clone());
            let phi = inner_stage(&h, &t, &sets)?;
            emit(g, embedding_cert(&phi, &hd, &td), &[("pattern", &hd), ("host", &td)])?;
            Ok(Outcome::Positive)
        }
    }
}

fn prefix(g: &Global, c: &PrefixCmd) -> Result<Outcome> {
    match c {
        PrefixCmd::Stats { pattern, labeling } => {
            let (hd, h) = load_acyclic(pattern)?;
            let (ld, rho) = load_labeling(labeling)?;
            let s = labeling_stats(&h, &rho)?;
            let cert = Certificate::new(CertKind::Stats)
                .input("pattern", &hd)
                .input("labeling", &ld)
                .field("depth", s.depth)
                .field("codewords", s.code.len())
                .field("max-degree", s.max_degree)
                .field("max-component", s.max_component)
                .field("comp", s.comp)
                .field("coloring", s.is_coloring)
                .field("forest-labeling", s.is_forest_labeling);
            emit(g, cert, &[("pattern", &hd), ("labeling", &ld)])?;
            Ok(Outcome::Positive)
        }
        PrefixCmd::HeightColor { pattern } => {
            let h = load_acyclic(pattern)?.1;
            write_out(g, &write_document(&Document::Labeling(height_prefix_coloring(&h))))?;
            Ok(Outcome::Positive)
        }
        PrefixCmd::GradedColor { pattern } => {
            let h = load_acyclic(pattern)?.1;
            match graded_prefix_coloring(&h) {
                Ok(rho) => {
                    write_out(g, &write_document(&Document::Labeling(rho)))?;
                    Ok(Outcome::Positive)
                }
                Err(e) => Ok(Outcome::Negative(e.to_string())),
            }
        }
        PrefixCmd::Skeleton { pattern, labeling, c, enforce } => {
            let (hd, h) = load_acyclic(pattern)?;
            let (ld, rho) = load_labeling(labeling)?;
            let (td, t) = load_tournament(input(g)?)?;
            match build_skeleton(&h, &t, &rho, *c, *enforce)? {
                SkeletonOutcome::Skeleton(s) => {
                    let mut cert = Certificate::new(CertKind::Skeleton)
                        .input("pattern", &hd)
                        .input("host", &td)
                        .input("labeling", &ld)
                        .field("delta", s.delta)
                        .field("size", s.size());
                    for (x, set) in &s.sets {
                        let x = if x.is_empty() { "-" } else { x.as_str() };
                        cert = cert.field("set", format!("{x} {}", vertex_list(set.iter())).trim_end());
                    }
                    emit(g, cert, &[("pattern", &hd), ("host", &td), ("labeling", &ld)])?;
                }
                SkeletonOutcome::Embedded(phi) => {
                    emit(g, embedding_cert(&phi, &hd, &td), &[("pattern", &hd), ("host", &td)])?;
                }
            }
            Ok(Outcome::Positive)
        }
        PrefixCmd::Pipeline { pattern, labeling, enforce } => {
            let (hd, h) = load_acyclic(pattern)?;
            let (td, t) = load_tournament(input(g)?)?;
            let rho = labeling.as_ref().map(|p| load_labeling(p)).transpose()?.map(|x| x.1);
            match embed_via_coloring(&h, &t, rho.as_ref(), *enforce) {
                Ok(r) => {
                    let cert = embedding_cert(&r.embedding, &hd, &td).field("phase", r.phase).field("required", r.required);
                    emit(g, cert, &[("pattern", &hd), ("host", &td)])?;
                    Ok(Outcome::Positive)
                }
                Err(e) => Ok(Outcome::Negative(e.to_string())),
            }
        }
    }
}

fn walk(g: &Global, c: &WalkCmd) -> Result<Outcome> {
    match c {
        WalkCmd::Check { walk, f, s } => {
            let fun = parse_f(f)?;
            let (rd, r) = load_tournament(input(g)?)?;
            let w = match read_doc(walk)? {
                Document::Walk(w) => w,
                _ => bail!("{} is not a walk", walk.display()),
            };
            if let Err(v) = is_valid_walk(&r, &fun, *s, &w) {
                return Ok(Outcome::Negative(format!("invalid walk: {v}")));
            }
            let cert = Certificate::new(CertKind::Walk)
                .input("tournament", &rd)
                .field("f", fun.describe())
                .field("s", s)
                .field("length", w.length())
                .block("walk", write_walk(&w));
            emit(g, cert, &[("tournament", &rd)])?;
            Ok(Outcome::Positive)
        }
        WalkCmd::Extract { base, m, f } => {
            let fun = parse_f(f)?;
            let h = load_acyclic(input(g)?)?.1;
            let (rd, r) = load_tournament(base)?;
            let host = lex_power(&r, *m)?;
            let Some(phi) = contains_copy(&host, &h) else {
                return Ok(Outcome::Negative(format!("the mesh has no copy in the power of order {m}")));
            };
            let w = extract_walk(r.n(), *m, &phi);
            let cert = Certificate::new(CertKind::Walk)
                .input("tournament", &rd)
                .field("f", fun.describe())
                .field("s", w.s())
                .field("length", w.length())
                .block("walk", write_walk(&w));
            emit(g, cert, &[("tournament", &rd)])?;
            Ok(Outcome::Positive)
        }
        WalkCmd::Search { f, s, budget } => {
            let fun = parse_f(f)?;
            let (rd, r) = load_tournament(input(g)?)?;
            let est = longest_walk(&r, &fun, *s, *budget);
            let cert = Certificate::new(CertKind::Walk)
                .input("tournament", &rd)
                .field("f", fun.describe())
                .field("s", est.s)
                .field("length", est.length)
                .field("exact", est.exact)
                .field("nodes", est.nodes)
                .block("walk", write_walk(&est.best));
            emit(g, cert, &[("tournament", &rd)])?;
            Ok(Outcome::Positive)
        }
    }
}

fn random(g: &Global, c: &RandomCmd) -> Result<Outcome> {
    match c {
        RandomCmd::Grd { n, d, trials: None } => {
            write_out(g, &write_document(&Document::Acyclic(sample_grd_oriented(*n, *d, seed(g)?)?)))?;
            Ok(Outcome::Positive)
        }
        RandomCmd::Grd { n, d, trials: Some(trials) } => {
            let base = seed(g)?;
            let mut simple = 0u64;
            for i in 0..*trials {
                simple += u64::from(sample_pairing(*n, *d, base.wrapping_add(i))?.simple);
            }
            let cert = Certificate::new(CertKind::Stats)
                .field("n", n)
                .field("d", d)
                .field("seed", base)
                .field("trials", trials)
                .field("simple", simple)
                .field("rate", simple as f64 / (*trials).max(1) as f64);
            emit(g, cert, &[])?;
            Ok(Outcome::Positive)
        }
        RandomCmd::Gnp { n, p } => {
            write_out(g, &write_document(&Document::Acyclic(sample_gnp_oriented(*n, *p, seed(g)?)?)))?;
            Ok(Outcome::Positive)
        }
        RandomCmd::Components { from, to } => {
            let (gd, h) = load_acyclic(input(g)?)?;
            if *from < 1 || from > to || *to > h.n() {
                bail!("need 1 ≤ from ≤ to ≤ {}", h.n());
            }
            let s: Vec<usize> = (from - 1..*to).collect();
            let mut cert = Certificate::new(CertKind::Stats).input("graph", &gd);
            for comp in component_analysis(&h, &s) {
                cert = cert.field("component", format!("cycles={} {}", comp.cycle_count, vertex_list(comp.vertices)));
            }
            emit(g, cert, &[("graph", &gd)])?;
            Ok(Outcome::Positive)
        }
        RandomCmd::ForestPartition { d } => {
            let (gd, h) = load_acyclic(input(g)?)?;
            match random_forest_partition(&h, *d)? {
                ForestPartitionOutcome::Success { partition, parts, max_component } => {
                    let mut cert = Certificate::new(CertKind::Partition)
                        .input("pattern", &gd)
                        .field("parts", parts)
                        .field("max-component", max_component)
                        .field("forest", true);
                    for p in partition.parts() {
                        cert = cert.field("part", vertex_list(p.iter().copied()));
                    }
                    emit(g, cert, &[("pattern", &gd)])?;
                    Ok(Outcome::Positive)
                }
                ForestPartitionOutcome::Failure { interval, cycles, component } => Ok(Outcome::Negative(format!(
                    "interval {} induces a component on {} vertices with {cycles} cycles",
                    interval + 1,
                    component.len()
                ))),
            }
        }
    }
}

fn ramsey(g: &Global, c: &RamseyCmd) -> Result<Outcome> {
    match c {
        RamseyCmd::R1(a) => oriented(g, a, 1),
        RamseyCmd::Rk(a) => oriented(g, a, a.k),
        RamseyCmd::Ordered(a) => ordered(g, a),
    }
}

fn oriented(g: &Global, a: &RamseyArgs, k: usize) -> Result<Outcome> {
    let [pattern] = a.pattern.as_slice() else { bail!("r1/rk take exactly one --pattern") };
    let (hd, h) = load_acyclic(pattern)?;
    let problem = if k == 1 { "r1" } else { "rk" };
    let cert = Certificate::new(CertKind::RamseyValue).input("pattern", &hd).field("problem", problem).field("k", k);
    match a.mode {
        Mode::Exhaustive => match oriented_ramsey_k_with(&h, k, a.max_n, Enumeration::Pruned) {
            Ok(r) => {
                let Witness::Oriented(w) = &r.witness else { unreachable!("oriented search returns a tournament") };
                let cert = cert
                    .field("value", r.value)
                    .field("exhaustive", r.exhaustive)
                    .field("hosts-examined", r.hosts_examined)
                    .block("witness", write_colored(w));
                emit(g, cert, &[("pattern", &hd)])?;
                Ok(Outcome::Positive)
            }
            Err(RamseyError::Inconclusive { max_n }) => Ok(Outcome::Negative(format!("value exceeds --max-n {max_n}"))),
            Err(e) => Err(e.into()),
        },
        Mode::Search => {
            let opts = AnnealOptions { steps: a.steps, restarts: a.restarts, seed: seed(g)?, ..AnnealOptions::default() };
            let b = oriented_ramsey_search(&h, k, a.max_n, &opts)?;
            let Some(w) = &b.witness else {
                return Ok(Outcome::Negative(format!("no avoider found on {} vertices", h.n().max(2))));
            };
            let mut cert = cert.field("lower", b.lower).field("exhaustive", false);
            if let Some(u) = b.upper {
                cert = cert.field("upper", u);
            }
            emit(g, cert.block("witness", write_colored(w)), &[("pattern", &hd)])?;
            Ok(Outcome::Positive)
        }
    }
}

fn ordered(g: &Global, a: &RamseyArgs) -> Result<Outcome> {
    if a.mode == Mode::Search {
        bail!("ordered Ramsey numbers support only --mode exhaustive");
    }
    let loaded: Vec<(Document, OrderedGraph)> = a.pattern.iter().map(|p| load_ordered(p)).collect::<Result<_>>()?;
    let per_color: Vec<&(Document, OrderedGraph)> = match loaded.len() {
        1 => vec![&loaded[0]; a.k],
        n if n == a.k => loaded.iter().collect(),
        n => bail!("{n} patterns for {} colors", a.k),
    };
    let gs: Vec<OrderedGraph> = per_color.iter().map(|x| x.1.clone()).collect();
    let names: Vec<String> = (1..=a.k).map(|c| format!("pattern-{c}")).collect();
    let mut cert = Certificate::new(CertKind::RamseyValue);
    for (name, x) in names.iter().zip(&per_color) {
        cert = cert.input(name, &x.0);
    }
    match ordered_ramsey_with(&gs, a.max_n, Enumeration::Pruned) {
        Ok(r) => {
            let Witness::Ordered(chi) = &r.witness else { unreachable!("ordered search returns a coloring") };
            let cert = cert
                .field("problem", "ordered")
                .field("k", a.k)
                .field("value", r.value)
                .field("exhaustive", r.exhaustive)
                .field("hosts-examined", r.hosts_examined)
                .block("witness", write_coloring(chi));
            let inputs: Vec<(&str, &Document)> = names.iter().zip(&per_color).map(|(n, x)| (n.as_str(), &x.0)).collect();
            emit(g, cert, &inputs)?;
            Ok(Outcome::Positive)
        }
        Err(RamseyError::Inconclusive { max_n }) => Ok(Outcome::Negative(format!("value exceeds --max-n {max_n}"))),
        Err(e) => Err(e.into()),
    }
}
