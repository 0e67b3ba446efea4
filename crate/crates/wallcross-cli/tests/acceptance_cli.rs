//! Acceptance criterion 10: CLI determinism and round-trip.
//!
//! Two runs on identical input must produce identical bytes; emitted JSON
//! must re-ingest to identical in-memory values; `special --l 5` must match
//! the interval wall oracle.

use std::fs;
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_wallcross")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs")
}

fn surface_json() -> &'static str {
    r#"{
  "g": 0,
  "e_chi": 1,
  "multiple_fibers": [2],
  "gram": [[2, 3], [3, 0]],
  "f": [0, 1],
  "H": [1, 0]
}"#
}

#[test]
fn criterion_10_cli_determinism_and_round_trip() {
    let dir = tempfile::tempdir().expect("tempdir");
    let surf = dir.path().join("surface.json");
    fs::write(&surf, surface_json()).unwrap();
    let surf = surf.to_str().unwrap();

    // byte-identical re-runs across several subcommands
    let commands: Vec<Vec<&str>> = vec![
        vec!["validate", surf],
        vec!["special", "--l", "5", "--format", "json"],
        vec!["special", "--l", "5", "--format", "tsv"],
        vec![
            "dim",
            "--surface",
            surf,
            "--chern",
            r#"{"r":5,"xi":[1,0],"a":-2}"#,
        ],
        vec![
            "reduce",
            "--surface",
            surf,
            "--chern",
            r#"{"r":5,"xi":[1,0],"a":-2}"#,
        ],
        vec![
            "pairing",
            "--surface",
            surf,
            "--e1",
            r#"{"r":1,"xi":[0,0],"a":1}"#,
            "--e2",
            r#"{"r":0,"xi":[0,1],"a":0}"#,
        ],
        vec!["hodge", "--surface", surf, "--n", "2"],
    ];
    for args in &commands {
        let first = run(args);
        let second = run(args);
        assert_eq!(
            first.stdout, second.stdout,
            "non-deterministic stdout for {args:?}"
        );
        assert_eq!(first.status.code(), second.status.code());
    }

    // re-ingestion: the surface emitted by validate parses back and
    // re-emits the identical canonical JSON
    let out = run(&["validate", surf]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let emitted = value.get("surface").expect("surface field").clone();
    let surf2 = dir.path().join("surface2.json");
    fs::write(&surf2, serde_json::to_string(&emitted).unwrap()).unwrap();
    let out2 = run(&["validate", surf2.to_str().unwrap()]);
    assert_eq!(out2.status.code(), Some(0));
    let value2: serde_json::Value = serde_json::from_slice(&out2.stdout).unwrap();
    assert_eq!(value2.get("surface").unwrap(), &emitted);

    // special --l 5: exact wall list in canonical (descending) order
    let out = run(&["special", "--l", "5", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let walls = value.get("walls").unwrap();
    assert_eq!(walls, &serde_json::json!(["-5/2", -3, -4, -5]));

    // reduce on the m = (2) surface: BirationalCodim2 with pair (2, 1)
    let out = run(&[
        "reduce",
        "--surface",
        surf,
        "--chern",
        r#"{"r":5,"xi":[1,0],"a":-2}"#,
    ]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(
        value.get("kind").unwrap(),
        &serde_json::json!("birational_codim_2")
    );
    assert_eq!(value.get("chosen_pair").unwrap(), &serde_json::json!([2, 1]));

    // validation failure: diagnostic names the offending lattice, exit 2
    let bad = dir.path().join("bad-gram.json");
    fs::write(
        &bad,
        r#"{
  "g": 0, "e_chi": 1,
  "gram": [[-1, 1, 0], [1, 0, 0], [0, 0, 2]],
  "f": [0, 1, 0], "H": [1, 3, 0],
  "fiber_lattices": [{
    "fiber_id": "badfiber",
    "components": [[0, 0, 1]],
    "comp_multiplicities": [1]
  }]
}"#,
    )
    .unwrap();
    let out = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("badfiber"), "diagnostic must name the lattice");

    println!("criterion 10 (CLI determinism and round-trip): PASS");
}
