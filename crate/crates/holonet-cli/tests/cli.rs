//! End-to-end tests of the `holonet` binary: pipelines over temp files,
//! exit codes, and byte-level determinism of the join output.

use holonet::corpus;
use holonet::homotopy::PathFrame;
use holonet::linalg::op_dist;
use holonet::poset::build_circle_poset;
use holonet::{Cocycle, Poset};
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_holonet"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write_json(dir: &Path, name: &str, v: &serde_json::Value) -> String {
    let p = dir.join(name);
    std::fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
    p.to_string_lossy().into_owned()
}

fn phase_fixture(dir: &Path) -> (String, String, Poset, Cocycle) {
    let p = build_circle_poset(6, 4).unwrap();
    let f = PathFrame::build(&p, 0).unwrap();
    let z = corpus::phase_cocycle(&p, &f, 0.9).unwrap();
    let pp = write_json(dir, "poset.json", &p.to_value());
    let zp = write_json(dir, "cocycle.json", &z.to_value());
    (pp, zp, p, z)
}

#[test]
fn build_models_match_documented_sizes() {
    let out = stdout_json(&run(&["build", "circle", "--n", "6", "--max-len", "4"]));
    assert_eq!(Poset::from_value(&out).unwrap().len(), 24);
    let out = stdout_json(&run(&["build", "directed", "--n", "3"]));
    assert_eq!(Poset::from_value(&out).unwrap().len(), 6);
    let out = stdout_json(&run(&["build", "figure-eight"]));
    assert_eq!(Poset::from_value(&out).unwrap().len(), 15);

    let dir = tempfile::tempdir().unwrap();
    let spec = write_json(
        dir.path(),
        "graph.json",
        &serde_json::json!({"n_vertices": 3, "edges": [[0,1],[1,2],[2,0]]}),
    );
    let out = stdout_json(&run(&["build", "graph", "--spec", &spec, "--max-len", "2"]));
    let p = Poset::from_value(&out).unwrap();
    assert!(p.len() > 3);
}

#[test]
fn validate_reports_and_sets_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let (pp, zp, p, z) = phase_fixture(dir.path());
    let out = run(&["validate", "--poset", &pp, "--cocycle", &zp]);
    let report = stdout_json(&out);
    assert_eq!(report["valid"], serde_json::json!(true));

    let pair = p.strict_pairs()[0];
    let broken = z
        .with_value(
            pair.0,
            pair.1,
            holonet::linalg::identity(1).scale(-1.0),
        )
        .unwrap();
    let bp = write_json(dir.path(), "broken.json", &broken.to_value());
    let out = run(&["validate", "--poset", &pp, "--cocycle", &bp]);
    assert_eq!(out.status.code(), Some(3));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["valid"], serde_json::json!(false));
    assert!(report["worst"].as_str().unwrap().contains("chain"));
}

#[test]
fn split_then_join_reproduces_the_cocycle() {
    let dir = tempfile::tempdir().unwrap();
    let (pp, zp, p, z) = phase_fixture(dir.path());
    let split = stdout_json(&run(&["split", "--poset", &pp, "--cocycle", &zp, "--pole", "2"]));
    assert!(split["roundtrip_deviation"].as_f64().unwrap() <= 1e-8);
    let cp = write_json(dir.path(), "charge.json", &split["charge"]);
    let tp = write_json(dir.path(), "topo.json", &split["topological"]);
    let joined = stdout_json(&run(&[
        "join",
        "--poset",
        &pp,
        "--topological",
        &tp,
        "--charge",
        &cp,
        "--pole",
        "2",
    ]));
    let back = Cocycle::from_value(&p, &joined).unwrap();
    for (upper, lower) in p.strict_pairs() {
        let d = op_dist(
            &back.connection(upper, lower).unwrap(),
            &z.connection(upper, lower).unwrap(),
        );
        assert!(d <= 1e-8, "({upper},{lower}) deviates by {d:.2e}");
    }
}

#[test]
fn join_output_is_byte_identical_across_frames_with_one_pole() {
    let dir = tempfile::tempdir().unwrap();
    let (pp, zp, _, _) = phase_fixture(dir.path());
    let split = stdout_json(&run(&["split", "--poset", &pp, "--cocycle", &zp, "--pole", "2"]));
    let cp = write_json(dir.path(), "charge.json", &split["charge"]);
    let tp = write_json(dir.path(), "topo.json", &split["topological"]);

    let fa = stdout_json(&run(&["frame", "--poset", &pp, "--pole", "2"]));
    let fb = stdout_json(&run(&["frame", "--poset", &pp, "--pole", "2", "--depth-first"]));
    assert_ne!(fa["tree"], fb["tree"]);
    let fap = write_json(dir.path(), "frameA.json", &fa);
    let fbp = write_json(dir.path(), "frameB.json", &fb);

    let join = |frame: &str| -> Vec<u8> {
        let out = run(&[
            "join",
            "--poset",
            &pp,
            "--topological",
            &tp,
            "--charge",
            &cp,
            "--frame",
            frame,
        ]);
        assert!(out.status.success());
        out.stdout
    };
    assert_eq!(join(&fap), join(&fbp));
}

#[test]
fn report_tabulates_pauli_holonomy() {
    let dir = tempfile::tempdir().unwrap();
    let p = corpus::figure_eight();
    let f = PathFrame::build(&p, 0).unwrap();
    let z = corpus::pauli_cocycle(&p, &f).unwrap();
    let pp = write_json(dir.path(), "f8.json", &p.to_value());
    let zp = write_json(dir.path(), "pauli.json", &z.to_value());
    let report = stdout_json(&run(&["report", "--poset", &pp, "--cocycle", &zp]));
    assert_eq!(report["coboundary"], serde_json::json!(false));
    assert_eq!(report["h1"]["rank"], serde_json::json!(2));
    assert_eq!(report["holonomy"]["tau"], serde_json::json!(2));
    let c = &report["holonomy"]["characters"]["g0 g1 g0^-1 g1^-1"];
    assert!((c[0].as_f64().unwrap() + 1.0).abs() < 1e-8);
    assert!(c[1].as_f64().unwrap().abs() < 1e-8);
}

#[test]
fn from_rep_builds_the_prescribed_holonomy() {
    let dir = tempfile::tempdir().unwrap();
    let (pp, _, p, _) = phase_fixture(dir.path());
    let theta = 2.0 * std::f64::consts::PI / 3.0;
    let images = write_json(
        dir.path(),
        "images.json",
        &serde_json::json!({"images": [[[[theta.cos(), theta.sin()]]]]}),
    );
    let out = run(&["from-rep", "--poset", &pp, "--images", &images]);
    let z = Cocycle::from_value(&p, &stdout_json(&out)).unwrap();
    assert!(z.validate(20, 1).valid);
    let zp = write_json(dir.path(), "fromrep.json", &z.to_value());
    let report = stdout_json(&run(&["report", "--poset", &pp, "--cocycle", &zp]));
    let c = &report["holonomy"]["characters"]["g0"];
    assert!((c[0].as_f64().unwrap() - theta.cos()).abs() < 1e-8);
    assert!((c[1].as_f64().unwrap() - theta.sin()).abs() < 1e-8);
}

#[test]
fn failures_map_to_the_documented_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let (pp, zp, _, _) = phase_fixture(dir.path());

    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{not json").unwrap();
    let out = run(&["validate", "--poset", &pp, "--cocycle", garbage.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["frame", "--poset", &pp, "--pole", "999"]);
    assert_eq!(out.status.code(), Some(2));

    // a topologically nontrivial charge cocycle is not joinable
    let out = run(&[
        "join",
        "--poset",
        &pp,
        "--topological",
        &zp,
        "--charge",
        &zp,
        "--pole",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(4));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(err["error"].as_str().unwrap().contains("topologically trivial"));
}

#[test]
fn corpus_prints_one_passing_line_per_criterion() {
    let out = run(&["corpus", "--seed", "0"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 9);
    for (i, line) in lines.iter().enumerate() {
        assert!(line.starts_with(&format!("criterion {}", i + 1)), "{line}");
        assert!(line.contains("[PASS]"), "{line}");
    }
}
