//! Replays the checked-in fuzz seeds through the fuzz targets' assertions on
//! a stable toolchain, then throws arbitrary strings at the same entry points.

use std::fs;
use std::path::PathBuf;

use proptest::prelude::*;

use treechar::graph::{graph_to_json, parse_graph_json};
use treechar::io::{matrix_to_csv, parse_matrix_csv};
use treechar::milp::{emit_json, emit_lp, emit_mps, MilpModel, SolutionAssignment};
use treechar::problem::SideConstraints;
use treechar::PruferCode;

fn graph_json(data: &[u8]) {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = parse_graph_json(text) {
        assert_eq!(parse_graph_json(&graph_to_json(&g)).unwrap(), g);
        if g.n() <= 64 {
            let _ = treechar::paths::distance_matrix(&g);
        }
    }
}

fn matrix_csv(data: &[u8]) {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(m) = parse_matrix_csv(text) {
        assert!(m.is_square());
        assert_eq!(parse_matrix_csv(&matrix_to_csv(&m)).unwrap(), m);
    }
}

fn model_json(data: &[u8]) {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(model) = MilpModel::from_json(text) {
        let _ = emit_lp(&model);
        let _ = emit_mps(&model);
        assert_eq!(MilpModel::from_json(&emit_json(&model)).unwrap(), model);
    }
}

fn solution(data: &[u8]) {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(s) = SolutionAssignment::parse(text) {
        assert_eq!(SolutionAssignment::parse(&s.to_sol_lines()).unwrap(), s);
    }
}

fn prufer_decode(data: &[u8]) {
    let Some((&first, rest)) = data.split_first() else { return };
    let n = usize::from(first % 30);
    let seq: Vec<usize> = rest.iter().map(|&b| usize::from(b)).collect();
    if let Ok(code) = PruferCode::new(n, seq) {
        let tree = code.decode();
        assert!(tree.is_tree());
        assert_eq!(PruferCode::encode(&tree).unwrap(), code);
        if n <= 12 {
            assert_eq!(PruferCode::from_index(n, code.index()).unwrap(), code);
        }
    }
}

fn side_constraints(data: &[u8]) {
    if let Ok(sc) = serde_json::from_slice::<SideConstraints>(data) {
        for n in [2, 5, 12] {
            let _ = sc.validate(n);
        }
    }
}

type Target = fn(&[u8]);

const TARGETS: [(&str, Target); 6] = [
    ("graph_json", graph_json),
    ("matrix_csv", matrix_csv),
    ("model_json", model_json),
    ("solution", solution),
    ("prufer_decode", prufer_decode),
    ("side_constraints", side_constraints),
];

fn corpus_dir(target: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target)
}

#[test]
fn replay_seeds() {
    for (name, run) in TARGETS {
        let dir = corpus_dir(name);
        let mut seeds = 0;
        for entry in fs::read_dir(&dir).unwrap_or_else(|e| panic!("{}: {e}", dir.display())) {
            let path = entry.unwrap().path();
            run(&fs::read(&path).unwrap());
            seeds += 1;
        }
        assert!(seeds >= 3, "{name} has only {seeds} seeds");
    }
}

#[test]
fn seeds_exercise_both_outcomes() {
    let parses = |name: &str, ok: fn(&str) -> bool| {
        fs::read_dir(corpus_dir(name))
            .unwrap()
            .map(|e| ok(&fs::read_to_string(e.unwrap().path()).unwrap()))
            .collect::<Vec<_>>()
    };
    for outcomes in [
        parses("graph_json", |t| parse_graph_json(t).is_ok()),
        parses("matrix_csv", |t| parse_matrix_csv(t).is_ok()),
        parses("solution", |t| SolutionAssignment::parse(t).is_ok()),
    ] {
        assert!(outcomes.contains(&true) && outcomes.contains(&false));
    }
    assert!(parses("model_json", |t| MilpModel::from_json(t).is_ok()).iter().all(|&ok| ok));
}

proptest! {
    #[test]
    fn arbitrary_text_never_panics(text in ".{0,200}") {
        for (_, run) in TARGETS {
            run(text.as_bytes());
        }
    }

    #[test]
    fn arbitrary_bytes_never_panic(data in prop::collection::vec(any::<u8>(), 0..64)) {
        for (_, run) in TARGETS {
            run(&data);
        }
    }

    #[test]
    fn structured_graphs(n in 0usize..8, edges in prop::collection::vec((0usize..9, 0usize..9, -1.0f64..5.0), 0..10)) {
        let edges: Vec<String> = edges.iter().map(|(i, j, w)| format!("[{i}, {j}, {w}]")).collect();
        graph_json(format!(r#"{{"n": {n}, "edges": [{}]}}"#, edges.join(", ")).as_bytes());
    }
}
