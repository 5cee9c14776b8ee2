use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ramsey-forge")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn r1_of_tt3_is_four() {
    let tt3 = fixture("tt3.dg");
    let o = run(&["ramsey", "r1", "--pattern", path_str(&tt3), "--max-n", "5"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.starts_with("cert v1\nkind ramsey-value\n"));
    assert!(out.lines().any(|l| l == "value 4"), "{out}");
}

#[test]
fn r1_beyond_max_n_is_negative() {
    let tt3 = fixture("tt3.dg");
    let o = run(&["ramsey", "r1", "--pattern", path_str(&tt3), "--max-n", "3"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn failing_mesh_exits_one_with_witness() {
    let p4 = fixture("p4.dg");
    let o = run(&["mesh", "verify", "--f", "const:3", "-i", path_str(&p4)]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("pass false"));
    assert!(stdout(&o).contains("witness (0,1] (2,3]"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("(0,1] and (2,3]"));
}

#[test]
fn built_mesh_verifies_and_certificate_revalidates() {
    let dir = tempfile::tempdir().unwrap();
    let mesh = dir.path().join("mesh.dg");
    let cert = dir.path().join("mesh.cert");
    assert_eq!(code(&run(&["mesh", "build", "--f", "const:3", "--n", "64", "-o", path_str(&mesh)])), 0);
    assert_eq!(code(&run(&["mesh", "verify", "--f", "const:3", "-i", path_str(&mesh), "-o", path_str(&cert)])), 0);
    let arg = format!("mesh={}", path_str(&mesh));
    let o = run(&["validate", "--cert", path_str(&cert), "--input-file", &arg]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "valid mesh\n");
    // a different input no longer matches the digest
    let other = format!("mesh={}", path_str(&fixture("p4.dg")));
    assert_eq!(code(&run(&["validate", "--cert", path_str(&cert), "--input-file", &other])), 1);
}

#[test]
fn randomized_commands_need_a_seed() {
    let o = run(&["tourney", "gen", "--n", "5"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("--seed"));
}

#[test]
fn malformed_input_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.dg");
    fs::write(&bad, "acyclic 3 2\n1 2\n2 9\n").unwrap();
    let o = run(&["prefix", "height-color", "--pattern", path_str(&bad)]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn output_is_identical_across_runs_and_thread_counts() {
    let p3 = fixture("p3.dg");
    let a = run(&["tourney", "gen", "--n", "12", "--seed", "9"]);
    let b = run(&["tourney", "gen", "--n", "12", "--seed", "9", "--threads", "1"]);
    assert_eq!(a.stdout, b.stdout);
    let args = ["ramsey", "rk", "--pattern", path_str(&p3), "--k", "2", "--mode", "search", "--max-n", "5", "--seed", "3"];
    let one = run(&[&args[..], &["--threads", "1"]].concat());
    let four = run(&[&args[..], &["--threads", "4"]].concat());
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, four.stdout);
    assert!(stdout(&one).contains("lower 5"));
}

#[test]
fn tournament_commands() {
    let dir = tempfile::tempdir().unwrap();
    let p7 = dir.path().join("p7.t");
    assert_eq!(code(&run(&["tourney", "paley", "--q", "7", "-o", path_str(&p7)])), 0);
    let o = run(&["tourney", "maxtt", "-i", path_str(&p7)]);
    assert!(stdout(&o).contains("maxtt 3"));
    let tt3 = fixture("tt3.dg");
    let o = run(&["tourney", "contains", "--pattern", path_str(&tt3), "-i", path_str(&p7)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("kind embedding"));
    let c3 = fixture("c3.t");
    assert_eq!(code(&run(&["tourney", "contains", "--pattern", path_str(&tt3), "-i", path_str(&c3)])), 1);
    let o = run(&["tourney", "power", "--m", "2", "-i", path_str(&c3)]);
    assert!(stdout(&o).starts_with("tournament 9\n"));
    assert_eq!(code(&run(&["tourney", "median", "-i", path_str(&p7)])), 0);
}

#[test]
fn embedding_commands() {
    let dir = tempfile::tempdir().unwrap();
    let host = dir.path().join("t.t");
    assert_eq!(code(&run(&["tourney", "gen", "--n", "96", "--seed", "2", "-o", path_str(&host)])), 0);
    let p4 = fixture("p4.dg");
    for sub in [&["greedy", "--c", "0.25"][..], &["dense-pair", "--c", "0.25"], &["forest"]] {
        let o = run(&[&["embed"][..], sub, &["--pattern", path_str(&p4), "-i", path_str(&host)]].concat());
        assert_eq!(code(&o), 0, "{sub:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(stdout(&o).contains("kind embedding") || stdout(&o).contains("kind dense-pair"));
    }
    let gen = dir.path().join("inner.t");
    let o = run(&["embed", "inner", "--pattern", path_str(&p4), "--seed", "4", "--host-out", path_str(&gen)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(fs::read_to_string(&gen).unwrap().starts_with("tournament 64\n"));
}

#[test]
fn prefix_commands() {
    let dir = tempfile::tempdir().unwrap();
    let lab = dir.path().join("rho.lab");
    let tt3 = fixture("tt3.dg");
    assert_eq!(code(&run(&["prefix", "height-color", "--pattern", path_str(&tt3), "-o", path_str(&lab)])), 0);
    let o = run(&["prefix", "stats", "--pattern", path_str(&tt3), "--labeling", path_str(&lab)]);
    assert!(stdout(&o).contains("coloring true"), "{}", stdout(&o));
    let host = dir.path().join("t.t");
    run(&["tourney", "gen", "--n", "60", "--seed", "1", "-o", path_str(&host)]);
    let o = run(&["prefix", "skeleton", "--pattern", path_str(&tt3), "--labeling", path_str(&lab), "--c", "0.1", "-i", path_str(&host)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = run(&["prefix", "pipeline", "--pattern", path_str(&tt3), "-i", path_str(&host)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("kind embedding"));
}

#[test]
fn walk_commands() {
    let dir = tempfile::tempdir().unwrap();
    let c3 = fixture("c3.t");
    let w = dir.path().join("w.walk");
    fs::write(&w, "walk 3\n1 1\n2 1\n3 1\n").unwrap();
    assert_eq!(code(&run(&["walk", "check", "-i", path_str(&c3), "--walk", path_str(&w), "--f", "const:0.5", "--s", "1"])), 0);
    fs::write(&w, "walk 2\n1 1\n1 1\n").unwrap();
    assert_eq!(code(&run(&["walk", "check", "-i", path_str(&c3), "--walk", path_str(&w), "--f", "const:0.5", "--s", "1"])), 1);
    let o = run(&["walk", "search", "-i", path_str(&c3), "--f", "const:2", "--s", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("exact true"));
    let mesh = dir.path().join("m.dg");
    let p7 = dir.path().join("p7.t");
    run(&["mesh", "build", "--f", "const:0.5", "--n", "10", "-o", path_str(&mesh)]);
    run(&["tourney", "paley", "--q", "7", "-o", path_str(&p7)]);
    let o = run(&["walk", "extract", "-i", path_str(&mesh), "--base", path_str(&p7), "--m", "2", "--f", "const:0.5"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("length 10"));
}

#[test]
fn random_commands() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.dg");
    assert_eq!(code(&run(&["random", "grd", "--n", "200", "--d", "3", "--seed", "1", "-o", path_str(&g)])), 0);
    let o = run(&["random", "forest-partition", "--d", "3", "-i", path_str(&g)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("kind partition"));
    let o = run(&["random", "components", "--from", "1", "--to", "20", "-i", path_str(&g)]);
    assert!(stdout(&o).contains("component cycles="));
    let o = run(&["random", "grd", "--n", "100", "--d", "2", "--seed", "1", "--trials", "200"]);
    assert!(stdout(&o).contains("trials 200"));
    assert_eq!(code(&run(&["random", "gnp", "--n", "30", "--p", "0.1", "--seed", "1"])), 0);
}

#[test]
fn ordered_ramsey_of_path() {
    let path3 = fixture("path3.og");
    let o = run(&["ramsey", "ordered", "--pattern", path_str(&path3), "--k", "2", "--max-n", "6"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("value 5"));
}
