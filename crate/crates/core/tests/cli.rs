use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use boba::fixtures::EXAMPLE_ARCS;
use boba::front::ParetoFront;
use boba::graph::{write_dimacs_gr, DimacsGraph};

fn boba(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_boba")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Writes the worked example as a distance/time file pair.
fn example_files(dir: &Path) -> (PathBuf, PathBuf) {
    let write = |name: &str, pick: fn(&(u32, u32, u64, u64)) -> u64| {
        let graph = DimacsGraph { n: 5, arcs: EXAMPLE_ARCS.iter().map(|a| (a.0, a.1, pick(a) as u32)).collect() };
        let path = dir.join(name);
        write_dimacs_gr(fs::File::create(&path).unwrap(), &graph).unwrap();
        path
    };
    (write("example-d.gr", |a| a.2), write("example-t.gr", |a| a.3))
}

fn graph_args<'a>(g1: &'a Path, g2: &'a Path) -> Vec<&'a str> {
    vec!["--gr1", g1.to_str().unwrap(), "--gr2", g2.to_str().unwrap()]
}

#[test]
fn solve_example_with_boba() {
    let dir = tempfile::tempdir().unwrap();
    let (g1, g2) = example_files(dir.path());
    let mut args = vec!["solve"];
    args.extend(graph_args(&g1, &g2));
    args.extend(["--source", "1", "--target", "5", "--alg", "boba"]);
    let o = boba(&args);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "c 3 solutions\ns 4 6\ns 5 5\ns 7 3\n");
}

#[test]
fn solve_order_and_direction_invariant() {
    let dir = tempfile::tempdir().unwrap();
    let (g1, g2) = example_files(dir.path());
    let mut args = vec!["solve"];
    args.extend(graph_args(&g1, &g2));
    args.extend(["--source", "1", "--target", "5", "--alg", "boa", "--order", "21", "--direction", "bwd"]);
    let o = boba(&args);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "c 3 solutions\ns 4 6\ns 5 5\ns 7 3\n");
}

#[test]
fn solve_writes_paths_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let (g1, g2) = example_files(dir.path());
    let out = dir.path().join("front.txt");
    let mut args = vec!["solve"];
    args.extend(graph_args(&g1, &g2));
    args.extend(["--source", "1", "--target", "5", "--paths", "--threads", "2", "--out", out.to_str().unwrap()]);
    assert!(boba(&args).status.success());
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text, "c 3 solutions\ns 4 6\np 1 2 3 5\ns 5 5\np 1 3 5\ns 7 3\np 1 4 3 5\n");
    let front = ParetoFront::parse(text.as_bytes()).unwrap();
    let mut again = Vec::new();
    front.write(&mut again, true).unwrap();
    assert_eq!(String::from_utf8(again).unwrap(), text);
}

#[test]
fn solve_unreachable_target() {
    let dir = tempfile::tempdir().unwrap();
    let (g1, g2) = example_files(dir.path());
    let mut args = vec!["solve"];
    args.extend(graph_args(&g1, &g2));
    args.extend(["--source", "5", "--target", "1"]);
    let o = boba(&args);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "c 0 solutions\n");
}

#[test]
fn dump_heuristics() {
    let dir = tempfile::tempdir().unwrap();
    let (g1, g2) = example_files(dir.path());
    let dump = dir.path().join("h.txt");
    let mut args = vec!["solve"];
    args.extend(graph_args(&g1, &g2));
    args.extend(["--source", "1", "--target", "5", "--dump-heuristics", dump.to_str().unwrap()]);
    assert!(boba(&args).status.success());
    let text = fs::read_to_string(&dump).unwrap();
    assert_eq!(text.lines().next(), Some("c state h1 h2 ub1 ub2"));
    assert!(text.lines().any(|l| l == "1 4 3 7 6"));
}

#[test]
fn usage_and_runtime_errors() {
    assert_eq!(boba(&["solve", "--alg", "dfs"]).status.code(), Some(2));
    assert_eq!(boba(&["gen-pairs", "--n-states", "1", "--count", "3"]).status.code(), Some(2));
    let o = boba(&["solve", "--gr1", "/nonexistent.gr", "--gr2", "/nonexistent.gr", "--source", "1", "--target", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());

    let dir = tempfile::tempdir().unwrap();
    let (g1, g2) = example_files(dir.path());
    let mut args = vec!["solve"];
    args.extend(graph_args(&g1, &g2));
    args.extend(["--source", "1", "--target", "9"]);
    assert_eq!(boba(&args).status.code(), Some(1));
}

#[test]
fn gen_pairs_is_seeded_and_distinct() {
    let a = boba(&["gen-pairs", "--n-states", "100", "--count", "5", "--seed", "7"]);
    let b = boba(&["gen-pairs", "--n-states", "100", "--count", "5", "--seed", "7"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 5);

    let one = stdout(&boba(&["gen-pairs", "--n-states", "100", "--count", "1", "--seed", "3"]));
    let ids: Vec<u64> = one.split_whitespace().map(|f| f.parse().unwrap()).collect();
    assert_eq!(ids.len(), 2);
    assert_ne!(ids[0], ids[1]);

    let two = stdout(&boba(&["gen-pairs", "--n-states", "2", "--count", "3"]));
    assert_eq!(two.lines().count(), 3);
    assert!(two.lines().all(|l| l == "1 2" || l == "2 1"));
}

#[test]
fn bench_rows_and_footer() {
    let dir = tempfile::tempdir().unwrap();
    let (g1, g2) = example_files(dir.path());
    let pairs = dir.path().join("pairs.txt");
    fs::write(&pairs, "1 5\n2 5\n5 1\n").unwrap();

    let mut counts = Vec::new();
    for alg in ["boa", "boba"] {
        let csv = dir.path().join(format!("{alg}.csv"));
        let mut args = vec!["bench"];
        args.extend(graph_args(&g1, &g2));
        args.extend(["--pairs", pairs.to_str().unwrap(), "--alg", alg, "--csv", csv.to_str().unwrap()]);
        assert!(boba(&args).status.success());
        let mut reader = csv::Reader::from_path(&csv).unwrap();
        let header = reader.headers().unwrap().clone();
        let col = header.iter().position(|h| h == "solutions").unwrap();
        let rows: Vec<csv::StringRecord> = reader.records().map(|r| r.unwrap()).collect();
        assert_eq!(rows.len(), 3 + 3);
        assert_eq!(rows[3].get(0), Some("min"));
        assert_eq!(rows[5].get(0), Some("max"));
        counts.push(rows[..3].iter().map(|r| r[col].to_string()).collect::<Vec<_>>());
    }
    assert_eq!(counts[0], counts[1]);
    assert_eq!(counts[0], ["3", "1", "0"]);

    let empty = dir.path().join("empty.txt");
    fs::write(&empty, "").unwrap();
    let mut args = vec!["bench"];
    args.extend(graph_args(&g1, &g2));
    args.extend(["--pairs", empty.to_str().unwrap()]);
    let o = boba(&args);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 1);
}

#[test]
fn verify_against_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let (g1, g2) = example_files(dir.path());
    for alg in ["boa", "boa-enh", "boba"] {
        let mut args = vec!["verify"];
        args.extend(graph_args(&g1, &g2));
        args.extend(["--source", "1", "--target", "5", "--alg", alg]);
        let o = boba(&args);
        assert!(o.status.success(), "{alg}: {}", stdout(&o));
        assert!(stdout(&o).starts_with("ok: 3 solutions"));
    }
}
