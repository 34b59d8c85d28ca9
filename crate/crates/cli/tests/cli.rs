use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use curvres_cli::document::{to_json, Document};
use curvres_cli::selftest;
use curvres_cli::{run_job_text, OutputFormat};
use curvres_core::dual::qk_lookup;
use curvres_core::{k1_oracle, ChernMonomial, Error, MultiPoly};

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("curvres-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn curvres(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curvres")).args(args).env_clear().output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn k1_job_matches_the_oracle() {
    let doc = run_job_text(r#"{"n": 2, "k": 1, "r": 1, "monomial": {"c1": 3}}"#).0.unwrap();
    let oracle = k1_oracle(2, 1, &ChernMonomial::new([(1, 3)]).unwrap()).unwrap();
    assert_eq!(doc.universal_polynomial, curvres_cli::document::terms(&oracle));
    assert_eq!(doc.polynomial_string(), oracle.poly().to_string());
}

#[test]
fn exit_codes() {
    let dir = scratch("codes");
    let ok = write(&dir, "ok.json", r#"{"n": 2, "k": 1, "r": 1, "monomial": {"c1": 3}}"#);
    let degree = write(&dir, "degree.json", r#"{"n": 2, "k": 1, "r": 1, "monomial": {"c1": 2}}"#);
    let q6 = write(&dir, "q6.json", r#"{"n": 2, "k": 6, "r": 1, "monomial": {"c1": 8}}"#);
    let syntax = write(&dir, "syntax.json", r#"{"n": 2, "k": 1,"#);
    let field = write(&dir, "field.json", r#"{"n": 2, "k": 1, "r": 1, "monomial": {"c1": "three"}}"#);
    let missing = write(
        &dir,
        "missing.json",
        r#"{"n": 2, "k": 1, "r": 1, "monomial": {"c1": 3}, "intersection_numbers": {"s2": "1"}}"#,
    );
    let s = |p: &PathBuf| p.to_str().unwrap().to_string();

    let o = curvres(&["integrate", &s(&ok)]);
    assert_eq!(o.status.code(), Some(0));

    let o = curvres(&["integrate", &s(&degree)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("weighted degree 2 ≠ 3"));

    let o = curvres(&["integrate", &s(&q6)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("Q_6 unavailable"));

    let o = curvres(&["integrate", &s(&syntax)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("\"kind\": \"parse\""));

    let o = curvres(&["integrate", &s(&field)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("\"path\": \"monomial.c1\""));

    let o = curvres(&["integrate", &s(&missing)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("missing intersection number"));

    let o = curvres(&["integrate", dir.join("absent.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    assert_eq!(curvres(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(curvres(&["integrate"]).status.code(), Some(2));
    assert_eq!(curvres(&["qk", "x"]).status.code(), Some(2));
    assert_eq!(curvres(&["--format", "xml", "qk", "4"]).status.code(), Some(2));
    assert_eq!(curvres(&["epd-verify", "5"]).status.code(), Some(2));

    let o = curvres(&["qk", "4", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "Q_4 = 2*z1 + z2 - z4\n");
    assert_eq!(curvres(&["qk", "6"]).status.code(), Some(1));
    assert_eq!(curvres(&["qk", "0"]).status.code(), Some(1));

    let out = dir.join("out.json");
    let o = curvres(&["integrate", &s(&ok), "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(&out).unwrap().contains("universal_polynomial"));
    let o = curvres(&["integrate", &s(&ok), "--output", dir.join("no/such/dir.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    // a batch reports the worst code
    let o = curvres(&["integrate", &s(&ok), &s(&degree), "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let docs: Vec<Document> = serde_json::from_slice(&o.stdout).unwrap();
    assert!(matches!(docs[0], Document::Result(_)));
    assert!(matches!(docs[1], Document::Error(_)));

    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn epd_verify_small_k() {
    let o = curvres(&["epd-verify", "4", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("q12_3*q13_4 - 4*q11_2*q22_4"));
    assert!(text.ends_with("match\n"));
    let o = curvres(&["epd-verify", "3"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn documents_round_trip() {
    let jobs = [
        r#"{"n": 2, "k": 1, "r": 1, "monomial": {"c1": 3}}"#,
        r#"{"n": 3, "k": 2, "r": 2, "monomial": {"c1": 3, "c4": 1}, "intersection_numbers": {"s3": "1", "s1*s2": "2/3", "s1^3": "-3", "s2*cF1": "1", "s1^2*cF1": "1", "s1*cF1^2": "1", "s1*cF2": "0", "cF1^3": "1/2", "cF1*cF2": "5"}}"#,
        r#"{"n": 4, "k": 3, "r": 3, "monomial": {"c10": 1, "c3": 1}}"#,
    ];
    for job in jobs {
        let doc = run_job_text(job).0.unwrap();
        let text = to_json(&doc);
        let back: Document = serde_json::from_str(&text).unwrap();
        assert_eq!(to_json(&back), text);
    }
    let err = curvres_cli::ErrorDocument::new(&run_job_text(r#"{"n": 2}"#).0.unwrap_err());
    let text = to_json(&err);
    let back: Document = serde_json::from_str(&text).unwrap();
    assert_eq!(to_json(&back), text);
}

#[test]
fn monomial_keys_are_numeric_order() {
    let doc = run_job_text(r#"{"n": 4, "k": 3, "r": 3, "monomial": {"c10": 1, "c3": 1}}"#).0.unwrap();
    let text = to_json(&doc);
    assert!(text.find("\"c3\"").unwrap() < text.find("\"c10\"").unwrap());
}

#[test]
fn numeric_value_is_exact() {
    let doc = run_job_text(
        r#"{"n": 2, "k": 1, "r": 1, "monomial": {"c1": 3}, "intersection_numbers": {"s2": "1/3", "s1*cF1": "1", "cF1^2": "0"}}"#,
    )
    .0
    .unwrap();
    // −12 cF1² − 6 s1 cF1 − s2
    assert_eq!(doc.numeric_value.as_deref(), Some("-19/3"));
}

#[test]
fn selftest_passes_and_detects_a_corrupted_table() {
    let rows = selftest::run(&qk_lookup);
    assert!(rows.iter().all(|r| r.passed), "{rows:?}");

    let corrupted = |k: usize| -> Result<MultiPoly, Error> {
        if k == 4 {
            "2*z1 + z2 + z4".parse()
        } else {
            qk_lookup(k)
        }
    };
    let rows = selftest::run(&corrupted);
    let failed: Vec<&str> = rows.iter().filter(|r| !r.passed).map(|r| r.name.as_str()).collect();
    assert_eq!(failed, ["qk table"]);
    assert_eq!(selftest::render(&rows, OutputFormat::Text).code, 1);

    let o = curvres(&["selftest", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(), 5);
}
