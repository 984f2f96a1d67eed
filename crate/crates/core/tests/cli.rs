mod common;

use std::io::Write;
use std::process::{Command, Output, Stdio};

use polycurv::report::{read_csv_records, CurvatureReport};
use polycurv::skeleton::SkeletonDoc;

fn polycurv(args: &[&str], stdin: Option<&[u8]>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_polycurv"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    if let Some(bytes) = stdin {
        pipe.write_all(bytes).unwrap();
    }
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str], stdin: Option<&[u8]>) -> Vec<u8> {
    let out = polycurv(args, stdin);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

#[test]
fn gen_tube_then_curv_is_positive() {
    let tube = ok(&["gen", "tube", "--k", "5"], None);
    let reports: Vec<CurvatureReport> =
        serde_json::from_slice(&ok(&["curv", "--forman", "--resistance"], Some(&tube))).unwrap();
    let r = reports[0].resistance.as_ref().unwrap();
    assert_eq!(r.per_vertex.len(), 17);
    assert!(r.positive && r.per_vertex.iter().all(|&k| k > 0.0));
    assert!(reports[0].forman.is_some());
}

#[test]
fn gen_families_round_trip() {
    for (args, n) in [
        (vec!["gen", "simplex", "--dim", "4"], 5),
        (vec!["gen", "hypercube", "--dim", "3"], 8),
        (vec!["gen", "prism", "--n", "5"], 10),
        (vec!["gen", "pyramid", "--n", "6"], 7),
        (vec!["gen", "cupola"], 12),
    ] {
        let doc: SkeletonDoc = serde_json::from_slice(&ok(&args, None)).unwrap();
        assert_eq!(doc.n, n, "{args:?}");
        doc.to_skeleton().unwrap();
    }
    let tetra = ok(&["gen", "simplex", "--dim", "3"], None);
    let expanded: SkeletonDoc =
        serde_json::from_slice(&ok(&["gen", "delta-expand", "--vertex", "0"], Some(&tetra))).unwrap();
    assert_eq!(expanded.n, 6);
}

#[test]
fn dual_of_cube_is_octahedron() {
    let cube = ok(&["gen", "hypercube", "--dim", "3"], None);
    let doc: SkeletonDoc = serde_json::from_slice(&ok(&["dual"], Some(&cube))).unwrap();
    assert_eq!((doc.n, doc.edges.len(), doc.faces.unwrap().len()), (6, 12, 8));
}

#[test]
fn dot_labels() {
    let k4 = ok(&["gen", "simplex", "--dim", "3"], None);
    let dot = String::from_utf8(ok(&["dot", "--label", "resistance"], Some(&k4))).unwrap();
    assert_eq!(dot.matches("\"0.2500\"").count(), 4);
}

#[test]
fn tube_verify_exits_zero() {
    let out = String::from_utf8(ok(&["tube-verify", "--k-max", "12"], None)).unwrap();
    assert_eq!(out.lines().filter(|l| l.ends_with(",ok")).count(), 12);
}

#[test]
fn scan_fixtures() {
    let dir = common::fixture_dir();
    let files: Vec<String> = (4..=8).map(|n| dir.join(format!("p{n}.pc")).display().to_string()).collect();
    let mut args = vec!["scan", "--predicate", "forman-positive", "--out", "-", "--input"];
    args.extend(files.iter().map(String::as_str));
    let out = polycurv(&args, None);
    assert!(out.status.success());
    let records = read_csv_records(&out.stdout[..]).unwrap();
    assert_eq!(records.len(), 301);
    let positives = records.iter().filter(|r| r.forman_positive == Some(true)).count();
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains(&format!("positive: {positives}")), "{stderr}");

    let one = ok(&["scan", "--jobs", "1", "--out", "-", "--input", &files[4]], None);
    let three = ok(&["scan", "--jobs", "3", "--batch", "7", "--out", "-", "--input", &files[4]], None);
    assert_eq!(one, three);
}

#[test]
fn usage_and_failure_exit_codes() {
    assert_eq!(polycurv(&["scan", "--no-such-flag"], None).status.code(), Some(2));
    assert_eq!(polycurv(&["frobnicate"], None).status.code(), Some(2));
    let bad = polycurv(&["gen", "prism", "--n", "2"], None);
    assert_eq!(bad.status.code(), Some(1));
    assert!(!bad.stderr.is_empty());
    let garbage = polycurv(&["curv"], Some(b"{ not json"));
    assert_eq!(garbage.status.code(), Some(1));
    let missing = polycurv(&["scan", "--input", "/nonexistent/file.pc"], None);
    assert_eq!(missing.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("/nonexistent/file.pc"));
}

#[test]
fn file_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("curv.csv");
    let cube = ok(&["gen", "hypercube", "--dim", "3"], None);
    ok(&["curv", "--resistance", "--format", "csv", "--out", csv.to_str().unwrap()], Some(&cube));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("graph,item,u,v,value"));
    assert_eq!(text.lines().filter(|l| l.contains("resistance_vertex")).count(), 8);
    assert!(text.contains(",resistance_vertex,0,,0.125"));

    let positives = dir.path().join("pos.pc");
    let json = dir.path().join("records.json");
    let p6 = common::fixture_dir().join("p6.pc");
    ok(
        &[
            "scan",
            "--input",
            p6.to_str().unwrap(),
            "--format",
            "json",
            "--out",
            json.to_str().unwrap(),
            "--positives",
            positives.to_str().unwrap(),
        ],
        None,
    );
    let records = polycurv::report::read_json_records(&std::fs::read_to_string(&json).unwrap()).unwrap();
    let kept = common::read_corpus(&positives);
    assert_eq!(kept.len(), records.iter().filter(|r| r.forman_positive == Some(true)).count());
    assert_eq!(kept.len(), 6);
}
