//! Input parsing edge cases, exit codes, and byte-level determinism of
//! the command-line interface.

use std::io::Write;
use std::process::Command;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_delpezzo")
}

fn corpus(name: &str) -> String {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(name)
        .to_str()
        .unwrap()
        .to_string()
}

fn write_temp(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join("delpezzo-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    path.to_str().unwrap().to_string()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(bin()).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).to_string(),
        String::from_utf8_lossy(&out.stderr).to_string(),
    )
}

#[test]
fn identical_inputs_give_byte_identical_outputs() {
    let path = corpus("smooth_standard.json");
    let (c1, o1, _) = run(&["k-verdict", &path]);
    let (c2, o2, _) = run(&["k-verdict", &path]);
    assert_eq!(c1, c2);
    assert_eq!(o1, o2);
    let (c3, o3, _) = run(&["wall-scan", &path, "--grid", "1/100,15/194"]);
    let (c4, o4, _) = run(&["wall-scan", &path, "--grid", "1/100,15/194"]);
    assert_eq!(c3, c4);
    assert_eq!(o3, o4);
}

#[test]
fn reversed_monomial_keys_normalize() {
    let input = write_temp(
        "reversed.json",
        r#"{
            "schema": 1,
            "field": "rational",
            "quadrics": [
                {"x2*x0": "1", "x3*x1": "1"},
                {"x4*x0": "1", "x5*x1": "1"}
            ],
            "line": {"points": [["1","0","0","0","0","0"],["0","1","0","0","0","0"]]}
        }"#,
    );
    let (code, stdout, _) = run(&["torus-check", &input, "--t", "1/2"]);
    assert_eq!(code, 12, "the half pair is torus-semistable at the wall");
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["status"], "Semistable");
}

#[test]
fn malformed_fraction_exits_3() {
    let input = write_temp(
        "badfrac.json",
        r#"{"schema":1,"field":"rational","quadrics":[{"x0*x2":"1.5"},{"x0*x3":"1"}]}"#,
    );
    let (code, _, stderr) = run(&["classify-pencil", &input]);
    assert_eq!(code, 3, "stderr: {stderr}");
}

#[test]
fn conflicting_monomial_keys_exit_4() {
    let input = write_temp(
        "conflict.json",
        r#"{"schema":1,"field":"rational","quadrics":[{"x0*x1":"1","x1*x0":"2"},{"x0*x3":"1"}]}"#,
    );
    let (code, _, _) = run(&["classify-pencil", &input]);
    assert_eq!(code, 4);
    let input = write_temp(
        "badkey.json",
        r#"{"schema":1,"field":"rational","quadrics":[{"x0*x9":"1"},{"x0*x3":"1"}]}"#,
    );
    let (code, _, _) = run(&["classify-pencil", &input]);
    assert_eq!(code, 4);
}

#[test]
fn dependent_line_points_exit_5() {
    let input = write_temp(
        "dependent.json",
        r#"{
            "schema": 1,
            "field": "rational",
            "quadrics": [{"x0*x2": "1"}, {"x0*x3": "1"}],
            "line": {"points": [["1","0","0","0","0","0"],["2","0","0","0","0","0"]]}
        }"#,
    );
    let (code, _, stderr) = run(&["k-verdict", &input]);
    assert_eq!(code, 5, "stderr: {stderr}");
}

#[test]
fn bad_schema_exits_6() {
    let input = write_temp("badschema.json", r#"{"schema": 2, "quadrics": []}"#);
    let (code, _, _) = run(&["classify-pencil", &input]);
    assert_eq!(code, 6);
    let input = write_temp("badjson.json", "not json at all");
    let (code, _, _) = run(&["classify-pencil", &input]);
    assert_eq!(code, 6);
}

#[test]
fn weight_prints_plain_value_in_text_mode() {
    let path = corpus("half_polystable.json");
    let (code, stdout, _) = run(&[
        "weight",
        &path,
        "--lambda",
        "2,2,-1,-1,-1,-1",
        "--t",
        "1/2",
        "--format",
        "text",
    ]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "0\n");
    // and the affine pieces appear in the json report
    let (_, stdout, _) = run(&["weight", &path, "--lambda", "2,2,-1,-1,-1,-1", "--t", "1/10"]);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["mu_pencil"], 2);
    assert_eq!(v["mu_line"], -4);
    assert_eq!(v["mu_t"], "8/5");
}

#[test]
fn output_flag_writes_report_file() {
    let path = corpus("smooth_standard.json");
    let out_path = std::env::temp_dir()
        .join("delpezzo-cli-tests")
        .join("report.json");
    std::fs::create_dir_all(out_path.parent().unwrap()).unwrap();
    let (code, stdout, _) = run(&[
        "k-verdict",
        &path,
        "--output",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code, 11);
    let written = std::fs::read_to_string(&out_path).unwrap();
    assert_eq!(written.trim_end(), stdout.trim_end());
    // the verdict file re-parses and re-verifies
    let v: serde_json::Value = serde_json::from_str(&written).unwrap();
    assert_eq!(v["status"], "Stable");
    assert_eq!(v["exit_code"], 11);
}

#[test]
fn hilbert_values_on_the_smooth_corpus_pair() {
    let path = corpus("smooth_standard.json");
    let (code, stdout, _) = run(&["hilbert", &path, "--max-degree", "6"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let values: Vec<(u64, u64)> = v["values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|pair| {
            let a = pair.as_array().unwrap();
            (a[0].as_u64().unwrap(), a[1].as_u64().unwrap())
        })
        .collect();
    assert_eq!(
        values,
        vec![(0, 1), (1, 4), (2, 9), (3, 14), (4, 19), (5, 24), (6, 29)]
    );
}

#[test]
fn worst_1ps_reports_value_and_direction() {
    let path = corpus("singular_on_line.json");
    let (code, stdout, _) = run(&["worst-1ps", &path, "--t", "1/10"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let value = v["value"].as_str().unwrap();
    let val = delpezzo::parse_rat(value).unwrap();
    assert!(val <= delpezzo::rat(-1, 10));
    assert!(v["direction"].is_array());
}

#[test]
fn line_from_equations_accepted() {
    let input = write_temp(
        "equations.json",
        r#"{
            "schema": 1,
            "field": "rational",
            "quadrics": [
                {"x0*x2": "1", "x1*x3": "1"},
                {"x0*x4": "1", "x1*x5": "1"}
            ],
            "line": {"equations": [{"x2":"1"},{"x3":"1"},{"x4":"1"},{"x5":"1"}]}
        }"#,
    );
    let (code, stdout, _) = run(&["torus-check", &input, "--t", "1/2"]);
    assert_eq!(code, 12);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["direction"], serde_json::json!([2, 2, -1, -1, -1, -1]));
}

#[test]
fn verdict_json_certificate_roundtrip() {
    // parse an emitted verdict and re-verify its certificate by hand
    let path = corpus("shared_hyperplane.json");
    let (code, stdout, _) = run(&["classify-pair", &path, "--t", "1/10"]);
    assert_eq!(code, 10);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let cert = &v["certificate"];
    assert_eq!(cert["type"], "destabilizer");
    assert_eq!(
        cert["one_ps"],
        serde_json::json!([-5, 1, 1, 1, 1, 1])
    );
    let weight = delpezzo::parse_rat(cert["weight"].as_str().unwrap()).unwrap();
    assert_eq!(weight, delpezzo::rat(-8, 1) + delpezzo::rat(4, 10));
}
