use ramcc_cli::document::Document;
use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn ramcc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ramcc"))
        .args(args)
        .current_dir(root())
        .env_remove("RAMCC_PRECISION")
        .output()
        .unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.push("--json");
    let out = ramcc(&a);
    (out.status.code().unwrap(), serde_json::from_slice(&out.stdout).unwrap())
}

fn corpus_files() -> Vec<String> {
    let mut v: Vec<String> = std::fs::read_dir(root().join("corpus"))
        .unwrap()
        .map(|e| format!("corpus/{}", e.unwrap().file_name().to_string_lossy()))
        .collect();
    v.sort();
    v
}

#[test]
fn every_corpus_file_round_trips() {
    for f in corpus_files() {
        let d = Document::parse(&std::fs::read_to_string(root().join(&f)).unwrap()).unwrap();
        assert_eq!(Document::parse(&d.print()).unwrap(), d, "{f}");
        assert_eq!(Document::parse(&d.print()).unwrap().print(), d.print(), "{f}");
    }
}

#[test]
fn validate_accepts_the_corpus() {
    let files = corpus_files();
    let mut args = vec!["validate"];
    args.extend(files.iter().map(String::as_str));
    assert_eq!(ramcc(&args).status.code(), Some(0));
}

#[test]
fn exit_codes() {
    let fixture = |n: &str| format!("crates/cli/tests/fixtures/{n}.ramcc");
    assert_eq!(ramcc(&["swan", &fixture("bad-syntax")]).status.code(), Some(2));
    assert_eq!(ramcc(&["swan", &fixture("bad-conjugates")]).status.code(), Some(2));
    assert_eq!(ramcc(&["compare", &fixture("non-additive")]).status.code(), Some(1));
    let out = ramcc(&["swan", &fixture("bad-syntax")]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 6, column 10"));
    // The worst status across files wins.
    assert_eq!(ramcc(&["compare", "corpus/as-p3-x.ramcc", &fixture("non-additive")]).status.code(), Some(1));
    assert_eq!(ramcc(&["compare", "corpus/as-p3-x.ramcc", &fixture("bad-syntax")]).status.code(), Some(2));
    assert_eq!(ramcc(&["compare", "corpus/missing.ramcc"]).status.code(), Some(2));
}

#[test]
fn compare_anchor() {
    let (code, v) = json(&["compare", "corpus/as-p3-x.ramcc"]);
    assert_eq!(code, 0);
    let r = &v["results"]["anchor"];
    assert_eq!(r["cc"]["display"], "-dx");
    assert_eq!(r["kcc"]["display"], "-dx");
    let (_, s) = json(&["swan", "corpus/as-p3-x.ramcc"]);
    assert_eq!(s["results"]["anchor"]["swan"]["display"], "3[t] + -3[dh]");
}

#[test]
fn abstract_data_agrees_with_the_equation() {
    let (_, a) = json(&["compare", "corpus/abstract-p3.ramcc"]);
    let (_, e) = json(&["compare", "corpus/as-p3-x.ramcc"]);
    assert_eq!(a["results"]["anchor"]["cc"], e["results"]["anchor"]["cc"]);
}

#[test]
fn nearby_germs() {
    let (_, p) = json(&["nearby", "corpus/nearby-punctured.ramcc"]);
    assert_eq!(p["results"]["psi1"], 0);
    let (_, c) = json(&["nearby", "corpus/nearby-constant.ramcc"]);
    assert_eq!(c["results"]["psi1"], 0);
    let (_, v) = json(&["nearby", "corpus/nearby-computed.ramcc"]);
    assert_eq!(v["results"]["phi_s"], 1);
}

#[test]
fn output_is_deterministic() {
    let files = corpus_files();
    let mut args = vec!["compare", "--json"];
    args.extend(files.iter().filter(|f| !f.contains("nearby")).map(String::as_str));
    let a = ramcc(&args).stdout;
    let b = ramcc(&args).stdout;
    args.extend(["--jobs", "4"]);
    let c = ramcc(&args).stdout;
    assert_eq!(a, b);
    assert_eq!(a, c);
}

#[test]
fn precision_precedence() {
    let f = "corpus/as-p3-x.ramcc";
    let default = json(&["invariants", f]).1["precision"].as_i64().unwrap();
    assert_eq!(json(&["invariants", f, "--precision", "60"]).1["precision"], 60);
    let env = Command::new(env!("CARGO_BIN_EXE_ramcc"))
        .args(["invariants", f, "--json"])
        .current_dir(root())
        .env("RAMCC_PRECISION", "70")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&env.stdout).unwrap();
    assert_eq!(v["precision"], 70);
    assert_ne!(default, 70);
    let doubled = json(&["compare", f, "--precision", &(2 * default).to_string()]).1;
    let single = json(&["compare", f]).1;
    assert_eq!(doubled["results"], single["results"]);
    assert!(Path::new(&root().join(f)).exists());
}

#[test]
fn timings_only_on_request() {
    assert!(json(&["swan", "corpus/as-p2-x.ramcc"]).1.get("timings_ms").is_none());
    assert!(json(&["swan", "corpus/as-p2-x.ramcc", "--timings"]).1.get("timings_ms").is_some());
}

#[test]
fn text_output_is_aligned() {
    let out = String::from_utf8(ramcc(&["compare", "corpus/as-p3-x.ramcc"]).stdout).unwrap();
    assert!(out.contains("    cc         -dx\n"));
}
