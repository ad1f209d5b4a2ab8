use std::f64::consts::SQRT_2;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ginibre"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).env_remove("GINIBRE_OUT_DIR").env_remove("GINIBRE_THREADS").output().expect("spawn")
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json")
}

fn assert_schema(name: &str, doc: &Value) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/schemas").join(format!("{name}.schema.json"));
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let compiled = jsonschema::JSONSchema::compile(&schema).expect("schema compiles");
    if let Err(errors) = compiled.validate(doc) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("{name} document fails its schema: {msgs:?}");
    };
}

fn scratch_dir(tag: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("ginibre-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn read_csv(path: &Path) -> (String, Vec<Vec<String>>) {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().to_string();
    (header, lines.map(|l| l.split(',').map(str::to_string).collect()).collect())
}

#[test]
fn expected_anchors() {
    let doc = stdout_json(&run(&["expected", "--n", "2", "--tau", "0"]));
    assert_schema("expected", &doc);
    assert!((doc["value"].as_f64().unwrap() - SQRT_2).abs() < 1e-12);
    let doc = stdout_json(&run(&["expected", "--n", "4", "--tau", "0", "--route", "residue"]));
    assert!((doc["value"].as_f64().unwrap() - 11.0 * SQRT_2 / 8.0).abs() < 1e-12);
}

#[test]
fn expected_asymptotic_terms() {
    let doc = stdout_json(&run(&["expected", "--n", "256", "--alpha", "1", "--route", "asymptotic", "--order", "3"]));
    assert_schema("expected", &doc);
    let terms = doc["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 4);
    let sum: f64 = terms.iter().map(|t| t["value"].as_f64().unwrap()).sum();
    assert!((sum - doc["value"].as_f64().unwrap()).abs() < 1e-12);
    let doc = stdout_json(&run(&["expected", "--n", "64", "--tau", "0.98", "--route", "asymptotic"]));
    assert_schema("expected", &doc);
    assert!(doc["warning"].is_string());
}

#[test]
fn floats_carry_seventeen_digits() {
    let out = run(&["expected", "--n", "256", "--alpha", "1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"tau\": 0.99609375000000000"), "{text}");
}

#[test]
fn validation_errors_exit_two() {
    let cases: [(&[&str], &str); 7] = [
        (&["expected", "--n", "3", "--tau", "0"], "--n"),
        (&["expected", "--n", "4", "--tau", "1.5"], "--tau"),
        (&["expected", "--n", "4", "--tau", "0.5", "--alpha", "1"], "--alpha"),
        (&["expected", "--n", "4", "--alpha", "3"], "--alpha"),
        (&["density", "--n", "8", "--alpha", "1", "--grid", "1:0:10"], "--grid"),
        (&["sample", "--preset", "fig9"], "--preset"),
        (&["coeffs", "--kind", "zz", "--max", "2"], "--kind"),
    ];
    for (args, flag) in cases {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8_lossy(&out.stderr);
        let first = err.lines().next().unwrap_or_default();
        assert!(first.starts_with("error:") && first.contains(flag), "{args:?}: {err}");
    }
}

#[test]
fn verify_identities_exact() {
    let out = run(&["verify", "--suite", "identities"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_schema("verify", &doc);
    assert_eq!(doc["passed"], Value::Bool(true));
    let checks = doc["checks"].as_array().unwrap();
    assert!(checks.len() >= 7);
    assert!(checks.iter().all(|c| c["status"] == "exact"));
}

#[test]
fn density_csv_integrates_to_one() {
    let out = run(&["density", "--n", "256", "--alpha", "1", "--route", "exact", "--out", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,rho,route"));
    let rows: Vec<(f64, f64)> = lines
        .map(|l| {
            let c: Vec<&str> = l.split(',').collect();
            assert_eq!(c[2], "exact");
            (c[0].parse().unwrap(), c[1].parse().unwrap())
        })
        .collect();
    let mass: f64 = rows.windows(2).map(|w| 0.5 * (w[1].0 - w[0].0) * (w[0].1 + w[1].1)).sum();
    assert!((mass - 1.0).abs() < 1e-4, "mass {mass}");
}

#[test]
fn density_json_and_limit_route() {
    let doc = stdout_json(&run(&["density", "--alpha", "2", "--route", "limit", "--grid", "-3:3:61", "--out", "json"]));
    assert_schema("density", &doc);
    assert_eq!(doc["route"], "limit");
    let out = run(&["density", "--alpha", "2", "--route", "exact"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn variance_routes_agree() {
    let q = stdout_json(&run(&["variance", "--n", "8", "--alpha", "1"]));
    let s = stdout_json(&run(&["variance", "--n", "8", "--alpha", "1", "--route", "sum"]));
    let l = stdout_json(&run(&["variance", "--n", "8", "--alpha", "1", "--route", "limit"]));
    for d in [&q, &s, &l] {
        assert_schema("variance", d);
    }
    let (vq, vs) = (q["v"].as_f64().unwrap(), s["v"].as_f64().unwrap());
    assert!((vq - vs).abs() < 1e-6, "{vq} vs {vs}");
    assert_eq!(l["ratio"], l["r_alpha"]);
}

#[test]
fn sample_outputs_and_determinism() {
    let dir = scratch_dir("sample");
    let args = |tag: &str| {
        vec![
            "sample".to_string(),
            "--n".into(),
            "24".into(),
            "--alpha".into(),
            "1".into(),
            "--dist".into(),
            "uniform".into(),
            "--samples".into(),
            "40".into(),
            "--seed".into(),
            "11".into(),
            "--out".into(),
            format!("{tag}.json"),
            "--hist".into(),
            format!("{tag}.csv"),
            "--scatter".into(),
            format!("{tag}_scatter.csv"),
        ]
    };
    let one = bin().args(args("a")).args(["--threads", "1"]).env("GINIBRE_OUT_DIR", &dir).output().unwrap();
    assert!(one.status.success(), "{}", String::from_utf8_lossy(&one.stderr));
    let two = bin().args(args("b")).env("GINIBRE_THREADS", "2").env("GINIBRE_OUT_DIR", &dir).output().unwrap();
    assert!(two.status.success());

    let a = std::fs::read_to_string(dir.join("a.json")).unwrap();
    assert_eq!(a, std::fs::read_to_string(dir.join("b.json")).unwrap());
    assert_eq!(std::fs::read(dir.join("a.csv")).unwrap(), std::fs::read(dir.join("b.csv")).unwrap());
    let doc: Value = serde_json::from_str(&a).unwrap();
    assert_schema("sample", &doc);
    assert_eq!(doc["parity_violations"], 0);

    let (header, rows) = read_csv(&dir.join("a.csv"));
    assert_eq!(header, "bin_lo,bin_hi,count");
    let hist = &doc["real_eig_histogram"];
    let in_range: u64 = rows.iter().map(|r| r[2].parse::<u64>().unwrap()).sum();
    let total = in_range + hist["below"].as_u64().unwrap() + hist["above"].as_u64().unwrap();
    let mean = doc["count_mean"].as_f64().unwrap();
    assert_eq!(total as f64, mean * 40.0);

    let (header, rows) = read_csv(&dir.join("a_scatter.csv"));
    assert_eq!(header, "re,im");
    assert_eq!(rows.len() % 2, 0);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn presets_expand() {
    let doc = stdout_json(&run(&["sample", "--preset", "fig3:alpha=2", "--samples", "2", "--seed", "1"]));
    assert_eq!(doc["spec"]["n"], 256);
    assert_eq!(doc["spec"]["regime"]["alpha"].as_f64(), Some(2.0));
    assert_eq!(doc["n_samples"], 2);
    let doc = stdout_json(&run(&["sample", "--preset", "fig2b", "--alpha", "1", "--samples", "3"]));
    assert_eq!(doc["spec"]["n"], 64);
    let out = run(&["sample", "--preset", "fig2a"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn coeff_tables() {
    let doc = stdout_json(&run(&["coeffs", "--kind", "a_l", "--max", "4", "--tau", "0"]));
    assert_schema("coeffs", &doc);
    let want = ["1", "-3/8", "-3/128", "27/1024", "499/32768"];
    let got: Vec<&str> = doc["values"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert_eq!(got, want);
    let doc = stdout_json(&run(&["coeffs", "--kind", "d_s", "--max", "3", "--alpha", "1"]));
    assert_schema("coeffs", &doc);
    let doc = stdout_json(&run(&["coeffs", "--kind", "q", "--k", "3", "--max", "4"]));
    assert_schema("coeffs", &doc);
    assert_eq!(doc["values"][0], "1");
    assert_eq!(doc["values"][1], "2");
}
