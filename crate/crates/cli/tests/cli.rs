use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cusp-census"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name)
}

#[test]
fn four_cusp_census_as_csv_has_two_rows() {
    let text = stdout(&["census", "--polyhedron", "oct", "--count", "2", "--cusps", "4", "--format", "csv"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "signature,cusp_count,distribution");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].ends_with(",4,\"1,1,2,8\""));
    assert!(lines[2].ends_with(",4,\"2,2,4,4\""));
}

#[test]
fn text_census_records_are_tab_separated() {
    let text = stdout(&["census", "--polyhedron", "tet", "--count", "2", "--jobs", "2"]);
    assert_eq!(text, "tet2:100110130121\t1\t8\ntet2:100111121131\t1\t8\n");
}

#[test]
fn census_is_identical_for_one_and_eight_workers() {
    for format in ["text", "structured", "csv"] {
        let one = stdout(&["census", "--polyhedron", "oct", "--count", "2", "--format", format, "--jobs", "1"]);
        let eight = stdout(&["census", "--polyhedron", "oct", "--count", "2", "--format", format, "--jobs", "8"]);
        assert_eq!(one, eight, "{format}");
    }
    let one = stdout(&["census", "--polyhedron", "tet", "--count", "4", "--jobs", "1"]);
    let eight = stdout(&["census", "--polyhedron", "tet", "--count", "4", "--jobs", "8"]);
    assert_eq!(one, eight);
}

#[test]
fn verify_paper_passes_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let r1 = dir.path().join("r1.json");
    let r8 = dir.path().join("r8.json");
    let t1 = stdout(&["verify-paper", "--jobs", "1", "--out", r1.to_str().unwrap()]);
    let t8 = stdout(&["verify-paper", "--jobs", "8", "--out", r8.to_str().unwrap()]);
    assert_eq!(t1, t8);
    assert!(t1.ends_with("overall: PASS\n"));
    let j1 = std::fs::read_to_string(&r1).unwrap();
    assert_eq!(j1, std::fs::read_to_string(&r8).unwrap());
    let report: serde_json::Value = serde_json::from_str(&j1).unwrap();
    assert_eq!(report["overall"], true);
}

#[test]
fn signature_is_stable_and_idempotent() {
    let path = fixture("gluing_i.gluing");
    let p = path.to_str().unwrap();
    let first = stdout(&["signature", "--in", p]);
    assert_eq!(first, "oct2:030020100151141121170160\n");
    assert_eq!(stdout(&["signature", "--in", p, "--trials", "100", "--seed", "7"]), first);

    // Re-signing the decoded canonical form gives the same string.
    let dir = tempfile::tempdir().unwrap();
    let exported = dir.path().join("export.json");
    stdout(&[
        "census",
        "--polyhedron",
        "oct",
        "--count",
        "2",
        "--cusps",
        "4",
        "--format",
        "structured",
        "--out",
        exported.to_str().unwrap(),
    ]);
    let resigned = stdout(&["signature", "--in", exported.to_str().unwrap()]);
    assert_eq!(resigned, "oct2:030020100151141121170160\noct2:100110120130160170140150\n");
}

#[test]
fn structured_census_round_trips_through_invariants() {
    let dir = tempfile::tempdir().unwrap();
    for (kind, count) in [("oct", "2"), ("tet", "4")] {
        let exported = dir.path().join(format!("{kind}{count}.json"));
        stdout(&[
            "census",
            "--polyhedron",
            kind,
            "--count",
            count,
            "--format",
            "structured",
            "--out",
            exported.to_str().unwrap(),
        ]);
        let census: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&exported).unwrap()).unwrap();
        let again = stdout(&["invariants", "--in", exported.to_str().unwrap(), "--format", "structured"]);
        let again: serde_json::Value = serde_json::from_str(&again).unwrap();
        assert_eq!(census["records"], again["records"]);
        assert!(!census["records"].as_array().unwrap().is_empty());
    }
}

#[test]
fn invariants_of_fixtures() {
    let text = stdout(&["invariants", "--in", fixture("gluing_ii.gluing").to_str().unwrap()]);
    assert_eq!(text, "oct2:100110120130160170140150\t4\t2,2,4,4\tZ^4\t7.327724753418\n");
    let csv = stdout(&["invariants", "--in", fixture("gluing_i.gluing").to_str().unwrap(), "--format", "csv"]);
    assert_eq!(
        csv,
        "signature,cusp_count,distribution,h1,volume\noct2:030020100151141121170160,4,\"1,1,2,8\",Z^4,7.327724753418\n"
    );
}

#[test]
fn bounds_prints_constants() {
    let text = stdout(&["bounds", "--cusps", "4"]);
    assert!(text.contains("nV3 (n=4) = 4.059766"));
    assert!(text.contains("2V8 = 7.327724"));
    let text = stdout(&["bounds", "--chi", "-2"]);
    assert!(text.contains("(V8/2)|chi| (chi=-2) = 3.663862376709"));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code().unwrap();
    assert_eq!(code(&["census", "--polyhedron", "oct", "--count", "4"]), 3);
    assert_eq!(code(&["census", "--polyhedron", "tet", "--count", "9"]), 3);
    assert_eq!(code(&["census", "--polyhedron", "oct", "--count", "1", "--frobnicate"]), 2);
    assert_eq!(code(&["census", "--polyhedron", "cube", "--count", "1"]), 2);
    assert_eq!(code(&["census", "--polyhedron", "oct"]), 2);
    assert_eq!(code(&["bounds", "--chi", "3"]), 2);
    assert_eq!(code(&["invariants", "--in", "/nonexistent/file.gluing"]), 2);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.gluing");
    std::fs::write(&bad, "{\"kind\": \"tet\", \"count\": 1, \"pairings\": []}").unwrap();
    assert_eq!(code(&["invariants", "--in", bad.to_str().unwrap()]), 2);
    let err = String::from_utf8(run(&["invariants", "--in", bad.to_str().unwrap()]).stderr).unwrap();
    assert!(err.contains("bad.gluing"));

    // Well-formed but rejected by validation: one tetrahedron folded onto itself.
    let rejected = dir.path().join("rejected.gluing");
    std::fs::write(
        &rejected,
        "{\"kind\": \"tet\", \"count\": 1, \"pairings\": [{\"a\": [0, 0], \"b\": [0, 1], \"rot\": 0}, {\"a\": [0, 2], \"b\": [0, 3], \"rot\": 0}]}",
    )
    .unwrap();
    assert_eq!(code(&["invariants", "--in", rejected.to_str().unwrap()]), 1);
    assert_eq!(code(&["bounds"]), 0);
}
