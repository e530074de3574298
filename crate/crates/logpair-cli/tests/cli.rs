//! End-to-end tests driving the `logpair` binary.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn run(args: &[&str], stdin: Option<&Value>) -> Output {
    let mut command = Command::new(env!("CARGO_BIN_EXE_logpair"));
    command
        .args(args)
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    command.stdin(if stdin.is_some() {
        Stdio::piped()
    } else {
        Stdio::null()
    });
    let mut child = command.spawn().expect("failed to spawn logpair");
    if let Some(doc) = stdin {
        child
            .stdin
            .take()
            .unwrap()
            .write_all(doc.to_string().as_bytes())
            .unwrap();
    }
    child
        .wait_with_output()
        .expect("failed to wait for logpair")
}

fn run_raw(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_logpair"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("failed to spawn logpair");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child
        .wait_with_output()
        .expect("failed to wait for logpair")
}

fn report(args: &[&str], stdin: &Value) -> Value {
    let output = run(args, Some(stdin));
    assert!(
        output.status.success(),
        "expected success, got {:?}\nstderr: {}",
        output.status.code(),
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("stdout is not JSON")
}

fn error_report(args: &[&str], stdin: &Value, expected_exit: i32) -> Value {
    let output = run(args, Some(stdin));
    assert_eq!(
        output.status.code(),
        Some(expected_exit),
        "stderr: {}\nstdout: {}",
        String::from_utf8_lossy(&output.stderr),
        String::from_utf8_lossy(&output.stdout)
    );
    serde_json::from_slice(&output.stderr).expect("stderr diagnostic is not JSON")
}

fn arrangement(deltas: &[&str]) -> Value {
    json!({
        "lines": deltas
            .iter()
            .enumerate()
            .map(|(i, d)| json!({ "label": format!("L{}", i + 1), "delta": d }))
            .collect::<Vec<_>>(),
    })
}

fn sphere(deltas: &[&str]) -> Value {
    json!({
        "points": deltas
            .iter()
            .enumerate()
            .map(|(i, d)| json!({ "label": format!("p{}", i + 1), "delta": d }))
            .collect::<Vec<_>>(),
    })
}

#[test]
fn euler_stable_arrangement() {
    let report = report(&["euler"], &arrangement(&["1/2", "1/2", "1/2"]));
    assert_eq!(report["output"]["value"], "1/16");
    assert_eq!(report["output"]["case_tag"], "StableRegime");
    assert_eq!(report["output"]["method"], "DirectFormula");
    assert!(report["attestations"].as_array().unwrap().is_empty());
}

#[test]
fn euler_accepts_cone_documents() {
    let cone = json!({
        "points": [
            { "label": "0", "delta": "1/2" },
            { "label": "inf", "delta": "2/3" },
        ],
        "polarization_degree": "1/6",
    });
    let report = report(&["euler"], &cone);
    assert_eq!(report["output"]["value"], "1");
    assert_eq!(report["output"]["method"], "ViaCover");
}

#[test]
fn euler_cover_degree_uses_slope_path() {
    let cone = json!({
        "points": [
            { "label": "p1", "delta": "1/2" },
            { "label": "p2", "delta": "1/2" },
            { "label": "p3", "delta": "1/2" },
        ],
        "polarization_degree": "1",
    });
    let report = report(&["euler", "--cover-degree", "4"], &cone);
    assert_eq!(report["output"]["value"], "1/16");
    assert_eq!(report["output"]["method"], "ViaLanger");
}

#[test]
fn volume_refuses_unstable_base_with_exit_2() {
    let cone = json!({
        "points": [
            { "label": "0", "delta": "1/2" },
            { "label": "inf", "delta": "2/3" },
        ],
        "polarization_degree": "1/6",
    });
    let diagnostic = error_report(&["volume"], &cone, 2);
    assert_eq!(diagnostic["error_kind"], "NotSemistable");
}

#[test]
fn volume_of_smooth_point_cone() {
    let cone = json!({ "points": [], "polarization_degree": "1" });
    let report = report(&["volume"], &cone);
    assert_eq!(report["output"]["volume"], "4");
    assert_eq!(report["output"]["lambda"], "2");
    assert_eq!(report["output"]["case_tag"], "Klt");
    assert!(!report["attestations"].as_array().unwrap().is_empty());
}

#[test]
fn quotient_reproduces_weighted_plane_cone() {
    let doc = json!({ "a": 2, "b": 3, "c0": "0", "c_inf": "0", "branches": [] });
    let report = report(&["quotient"], &doc);
    assert_eq!(report["output"]["lambda"], "5");
    assert_eq!(report["output"]["cone"]["polarization_degree"], "1/6");
    let points = report["output"]["cone"]["points"].as_array().unwrap();
    assert_eq!(points[0]["delta"], "1/2");
    assert_eq!(points[1]["delta"], "2/3");
}

#[test]
fn classify_and_kstab() {
    let report_classify = report(&["classify"], &sphere(&["2/3", "2/3", "2/3"]));
    assert_eq!(report_classify["output"]["positivity"], "LogCY");
    assert_eq!(report_classify["output"]["singularity"], "Klt");
    assert_eq!(report_classify["output"]["log_canonical_degree"], "0");

    let report_kstab = report(&["kstab"], &sphere(&["1/2", "2/3"]));
    assert_eq!(report_kstab["output"]["k_semistable"], false);
    assert_eq!(report_kstab["output"]["k_stable"], false);
}

#[test]
fn degenerate_unstable_germ() {
    let report = report(&["degenerate"], &arrangement(&["1/3", "1/2"]));
    assert_eq!(report["output"]["a"], 3);
    assert_eq!(report["output"]["b"], 4);
    assert_eq!(report["output"]["gamma"], "5/6");
    assert_eq!(report["output"]["vol_hat"], "4/3");

    let diagnostic = error_report(&["degenerate"], &arrangement(&["1/2", "1/2", "1/2"]), 2);
    assert_eq!(diagnostic["error_kind"], "PreconditionViolated");
}

#[test]
fn chern_and_my_check() {
    let conic = json!({
        "euler_number": 3,
        "K_squared": 9,
        "components": [
            { "label": "conic", "delta": "1/2", "self_int": 4, "K_dot": -6 },
        ],
        "pair_int": [[0]],
    });
    let chern = report(&["chern"], &conic);
    assert_eq!(chern["output"]["c1_sq"], "4");
    assert_eq!(chern["output"]["c2"], "2");

    let audit = report(&["my-check"], &conic);
    assert_eq!(audit["output"]["fano"]["value"], "4");
    assert_eq!(audit["output"]["fano"]["holds"], true);
    assert_eq!(audit["output"]["extension_sheaf"]["discriminant"], "4");
    assert_eq!(audit["output"]["case_tag"], "BothHold");
    assert_eq!(audit["output"]["method"], "DirectFormula");
    // The conic pair is not Calabi-Yau; the audit warns.
    let attestations = audit["attestations"].as_array().unwrap();
    assert!(attestations
        .iter()
        .any(|a| a.as_str().unwrap().contains("warning")));
}

#[test]
fn langer_c2_report() {
    let bundle = json!({ "e": "2", "d": "1", "sub_degrees": ["1"] });
    let report = report(&["langer-c2"], &bundle);
    assert_eq!(report["output"]["sbar"], "1");
    assert_eq!(report["output"]["local_c2"], "-1");
    assert_eq!(report["output"]["semistable_bound"], "-1");
    assert_eq!(report["output"]["semistable"], true);
}

#[test]
fn inputs_are_echoed_canonically() {
    let report = report(&["euler"], &arrangement(&["4/6"]));
    assert_eq!(report["input"]["lines"][0]["delta"], "2/3");
}

#[test]
fn reports_round_trip() {
    let cases: Vec<(Vec<&str>, Value)> = vec![
        (vec!["euler"], arrangement(&["4/6", "1/2"])),
        (vec!["classify"], sphere(&["2/4", "5/10"])),
        (vec!["kstab"], sphere(&["1", "1"])),
        (
            vec!["volume"],
            json!({ "points": [], "polarization_degree": "2/2" }),
        ),
        (
            vec!["quotient"],
            json!({ "a": 3, "b": 5, "c0": "2/4", "c_inf": "0", "branches": [
                { "label": "u1", "c": "3/9" },
            ] }),
        ),
        (vec!["degenerate"], arrangement(&["1/3", "1/2"])),
        (
            vec!["my-check"],
            json!({
                "euler_number": 3,
                "K_squared": 9,
                "components": [],
                "pair_int": [],
            }),
        ),
        (
            vec!["langer-c2"],
            json!({ "e": "4/2", "d": "1", "sub_degrees": [] }),
        ),
    ];
    for (args, doc) in cases {
        let first = report(&args, &doc);
        let echoed = first["input"].clone();
        let second = report(&args, &echoed);
        assert_eq!(first, second, "round trip failed for {args:?}");
    }
}

#[test]
fn scan_reports_are_worker_independent() {
    let single = report(
        &[
            "scan",
            "--max-denominator",
            "4",
            "--max-points",
            "4",
            "--workers",
            "1",
        ],
        &json!(null),
    );
    let parallel = report(
        &[
            "scan",
            "--max-denominator",
            "4",
            "--max-points",
            "4",
            "--workers",
            "4",
        ],
        &json!(null),
    );
    assert_eq!(
        single["output"]["tuples_checked"],
        parallel["output"]["tuples_checked"]
    );
    assert_eq!(
        single["output"]["violations"],
        parallel["output"]["violations"]
    );
    assert_eq!(single["output"]["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn malformed_inputs_exit_1() {
    // Not JSON at all.
    let output = run_raw(&["euler"], "this is not json");
    assert_eq!(output.status.code(), Some(1));
    let diagnostic: Value = serde_json::from_slice(&output.stderr).unwrap();
    assert_eq!(diagnostic["error_kind"], "ParseError");

    // Zero denominator.
    let diagnostic = error_report(&["euler"], &arrangement(&["1/0"]), 1);
    assert_eq!(diagnostic["error_kind"], "ZeroDenominator");

    // Wrong document kind for the command.
    let diagnostic = error_report(&["classify"], &arrangement(&["1/2"]), 1);
    assert_eq!(diagnostic["error_kind"], "SchemaError");

    // Sphere weight out of range.
    let diagnostic = error_report(&["classify"], &sphere(&["3/2"]), 1);
    assert_eq!(diagnostic["error_kind"], "WeightOutOfRange");

    // Unknown flags are usage errors.
    let output = run(&["euler", "--frobnicate"], Some(&arrangement(&["1/2"])));
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn table_output_renders_flat_keys() {
    let output = run(
        &["euler", "--output", "table"],
        Some(&arrangement(&["1/2", "1/2", "1/2"])),
    );
    assert!(output.status.success());
    let text = String::from_utf8(output.stdout).unwrap();
    assert!(text.contains("output.value"));
    assert!(text.contains("1/16"));
    assert!(text.contains("output.case_tag"));
}
