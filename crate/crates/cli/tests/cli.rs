use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use systolic::diagrams::DiscDiagram;
use systolic::links::DefiningGraph;
use systolic::{LinkGraph, MetricComplex};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_systolic"))
        .args(args)
        .env("RUST_LOG", "error")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_graph_exit_codes() {
    let ok = run(&["check", "--graph", path(&data("triangle_335.txt"))]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    assert_eq!(stdout(&ok).lines().count(), 4);

    let bad = run(&["check", "--graph", path(&data("triangle_233.txt"))]);
    assert_eq!(bad.status.code(), Some(1));
    let out = stdout(&bad);
    let real = out.lines().next().unwrap();
    assert!(real.starts_with("LINK real MIN "), "{real}");
    let min: f64 = real.split_whitespace().nth(3).unwrap().parse().unwrap();
    assert!((min - 11.0 * std::f64::consts::PI / 6.0).abs() < 1e-9);
    assert!(real.ends_with("CASE three-block-triangle"));
}

#[test]
fn malformed_graphs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.txt");
    fs::write(&empty, "").unwrap();
    assert_eq!(run(&["check", "--graph", path(&empty)]).status.code(), Some(2));
    for f in ["bad_label.txt", "duplicate_edge.txt"] {
        let o = run(&["check", "--graph", path(&data(f))]);
        assert_eq!(o.status.code(), Some(2), "{f}");
        assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"), "{f}");
    }
    assert_eq!(
        run(&["check", "--graph", "/nonexistent/graph.txt"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["check"]).status.code(), Some(2));
}

#[test]
fn graph_corpus_round_trips() {
    for entry in fs::read_dir(data("")).unwrap() {
        let p = entry.unwrap().path();
        let text = fs::read_to_string(&p).unwrap();
        let Ok(g) = DefiningGraph::parse(&text) else { continue };
        let norm: Vec<String> = text
            .lines()
            .map(|l| l.split_whitespace().collect::<Vec<_>>().join(" "))
            .filter(|l| !l.is_empty())
            .collect();
        assert_eq!(g.to_text().lines().collect::<Vec<_>>(), norm, "{}", p.display());
    }
}

#[test]
fn synthesized_links_check_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for kind in ["real", "interior"] {
        let file = dir.path().join(format!("{kind}.txt"));
        let o = run(&["synth-link", "--kind", kind, "--n", "4", "--out", path(&file)]);
        assert!(o.status.success());
        let text = fs::read_to_string(&file).unwrap();
        assert_eq!(LinkGraph::from_text(&text).unwrap().to_text(), text);
        let c = run(&["check", "--link", path(&file)]);
        assert_eq!(c.status.code(), Some(0), "{}", stdout(&c));
        assert!(stdout(&c).contains("MIN 6.283185307180"));
    }
}

#[test]
fn short_link_fails_check() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("square.txt");
    let mut text = String::from("C s\n");
    for i in 0..4 {
        text.push_str(&format!("LV x{i} REAL 1\n"));
    }
    for i in 0..4 {
        text.push_str(&format!("LE x{i} x{} 1 {}\n", (i + 1) % 4, std::f64::consts::FRAC_PI_3));
    }
    fs::write(&file, &text).unwrap();
    let o = run(&["check", "--link", path(&file)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("LINK s MIN 4.188790204786 CYCLE x0,x1,x2,x3"));
}

#[test]
fn assemble_link_outputs() {
    let o = run(&["assemble-link", "--graph", path(&data("edge_with_isolated.txt"))]);
    assert!(o.status.success());
    let link = LinkGraph::from_text(&stdout(&o)).unwrap();
    assert!(link.index_of("z^i").is_some() && link.index_of("z^o").is_some());
    let e = run(&[
        "assemble-link",
        "--graph",
        path(&data("edge_with_isolated.txt")),
        "--edge",
        "x-y",
    ]);
    assert!(e.status.success());
    assert_eq!(LinkGraph::from_text(&stdout(&e)).unwrap().vertex_count(), 8 + 4 * 2);
    let missing = run(&[
        "assemble-link",
        "--graph",
        path(&data("edge_with_isolated.txt")),
        "--edge",
        "x-z",
    ]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn ball_fill_reduce_render_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let ball = dir.path().join("ball.txt");
    assert!(run(&["build-ball", "--n", "3", "--radius", "6", "--out", path(&ball)])
        .status
        .success());
    let complex = MetricComplex::from_text(&fs::read_to_string(&ball).unwrap()).unwrap();
    let side = fs::read_to_string(dir.path().join("ball.txt.precells")).unwrap();
    let first = side.lines().next().unwrap();
    assert!(first.starts_with("P e "));
    assert_eq!(
        side.lines().count(),
        complex
            .vertex_ids()
            .filter(|&v| complex.kind(v) == Some(systolic::VertexKind::Interior))
            .count()
    );

    // the boundary of the precell at the identity, read off the complex
    let o: u32 = first.split_whitespace().nth(2).unwrap().parse().unwrap();
    let ring: Vec<u32> = complex
        .neighbors(o)
        .iter()
        .map(|p| p.0)
        .filter(|&w| complex.kind(w) == Some(systolic::VertexKind::Real))
        .collect();
    let mut cycle = vec![ring[0]];
    while cycle.len() < ring.len() {
        let last = *cycle.last().unwrap();
        let next = ring
            .iter()
            .copied()
            .find(|&w| !cycle.contains(&w) && complex.adjacent(last, w))
            .unwrap();
        cycle.push(next);
    }
    let ids: Vec<String> = cycle.iter().map(|v| v.to_string()).collect();
    let diagram = dir.path().join("d.txt");
    let f = run(&[
        "fill",
        "--complex",
        path(&ball),
        "--cycle",
        &ids.join(","),
        "--out",
        path(&diagram),
    ]);
    assert!(f.status.success(), "{}", String::from_utf8_lossy(&f.stderr));
    let d = DiscDiagram::from_text(&fs::read_to_string(&diagram).unwrap()).unwrap();
    assert_eq!(d.area(), 6);

    let reduced = dir.path().join("r.txt");
    let r = run(&[
        "reduce",
        "--complex",
        path(&ball),
        "--diagram",
        path(&diagram),
        "--flat",
        "--out",
        path(&reduced),
    ]);
    assert!(r.status.success());
    let rd = DiscDiagram::from_text(&fs::read_to_string(&reduced).unwrap()).unwrap();
    assert!(rd.is_cat0(&complex).unwrap());

    let svg = dir.path().join("d.svg");
    assert!(run(&["render-svg", "--diagram", path(&reduced), "--out", path(&svg)])
        .status
        .success());
    assert!(fs::read_to_string(&svg).unwrap().contains("<polygon"));

    let bad = run(&["fill", "--complex", path(&ball), "--cycle", "0,x"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn dehn_scan_report_is_deterministic_across_thread_counts() {
    let args = [
        "dehn-scan",
        "--n",
        "3",
        "--max-boundary",
        "14",
        "--samples",
        "4",
        "--seed",
        "11",
    ];
    let one = Command::new(env!("CARGO_BIN_EXE_systolic"))
        .args(args)
        .env("SYSTOLIC_THREADS", "1")
        .output()
        .unwrap();
    let two = Command::new(env!("CARGO_BIN_EXE_systolic"))
        .args(args)
        .env("SYSTOLIC_THREADS", "3")
        .output()
        .unwrap();
    assert!(one.status.success() && two.status.success());
    assert_eq!(one.stdout, two.stdout);
    assert!(stdout(&one).starts_with("L samples max_area"));
}
