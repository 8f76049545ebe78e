use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn mono(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mono"))
        .current_dir(dir)
        .env_remove("MONO_CAPS")
        .args(args)
        .output()
        .expect("mono runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout)
        .unwrap_or_else(|e| panic!("bad json ({e}): {}", String::from_utf8_lossy(&o.stdout)))
}

fn with_catalog() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    let o = mono(dir.path(), &["emit-fixture", "rem310_catalog"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    dir
}

#[test]
fn bundled_catalog_shape() {
    let dir = with_catalog();
    let text = std::fs::read_to_string(dir.path().join("rem310_catalog.json")).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["objects"].as_array().unwrap().len(), 11);
    assert_eq!(v["projective"].as_array().unwrap().len(), 4);
}

#[test]
fn reciprocity_holds_and_fails() {
    let dir = with_catalog();
    let ok = mono(dir.path(), &["reciprocity", "--T", "S(1)+S(2)", "--catalog", "rem310_catalog.json"]);
    assert_eq!(code(&ok), 0, "{}", String::from_utf8_lossy(&ok.stdout));

    let bad = mono(dir.path(), &["--format", "json", "reciprocity", "--T", "S(1)", "--catalog", "rem310_catalog.json"]);
    assert_eq!(code(&bad), 1);
    let v = json(&bad);
    assert_eq!(v["status"], "fails");
    assert!(!v["witness"].is_null());
}

#[test]
fn replay_reproduces() {
    let dir = with_catalog();
    let o = mono(dir.path(), &["--format", "json", "reciprocity", "--T", "S(1)", "--catalog", "rem310_catalog.json"]);
    std::fs::write(dir.path().join("r.json"), &o.stdout).unwrap();
    let r = mono(dir.path(), &["replay", "r.json"]);
    assert_eq!(code(&r), 0, "{}", String::from_utf8_lossy(&r.stdout));
}

#[test]
fn json_output_is_deterministic() {
    let dir = with_catalog();
    let args = ["--format", "json", "identity", "sn-cm", "--catalog", "rem310_catalog.json"];
    let a = mono(dir.path(), &args);
    let b = mono(dir.path(), &args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(code(&a), code(&b));
}

#[test]
fn malformed_inputs_exit_2() {
    let dir = with_catalog();
    let p = dir.path();
    std::fs::write(
        p.join("bad.json"),
        r#"{"algebra": "kA2", "n": 2, "branches": ["S(1)", "S(2)"], "phi": [[1, 2, 3]]}"#,
    )
    .unwrap();
    let o = mono(p, &["--format", "json", "rmon", "bad.json"]);
    assert_eq!(code(&o), 2);
    assert_eq!(json(&o)["status"], "invalid");

    let text = std::fs::read_to_string(p.join("rem310_catalog.json")).unwrap();
    std::fs::write(p.join("broken.json"), text.replacen("\"1\"", "\"1/0\"", 1)).unwrap();
    let o = mono(p, &["reciprocity", "--T", "S(1)", "--catalog", "broken.json"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stdout).contains("zero denominator"));

    std::fs::write(p.join("trunc.json"), &text[..text.len() / 2]).unwrap();
    assert_eq!(code(&mono(p, &["reciprocity", "--T", "S(1)", "--catalog", "trunc.json"])), 2);
    assert_eq!(code(&mono(p, &["emit-fixture", "nope"])), 2);
    assert_eq!(code(&mono(p, &["rmon", "missing.json"])), 2);
}

#[test]
fn caps_env_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_mono"));
        c.current_dir(dir.path()).env_remove("MONO_CAPS");
        if let Some(e) = env {
            c.env("MONO_CAPS", e);
        }
        let mut args = vec!["--algebra", "kA2"];
        args.extend_from_slice(extra);
        args.push("gldim");
        code(&c.args(args).output().unwrap())
    };
    assert_eq!(run(None, &[]), 0);
    assert_eq!(run(Some("depth=0"), &[]), 3);
    assert_eq!(run(Some("depth=0"), &["--depth-cap", "3"]), 0);
    assert_eq!(run(Some("depth=zero"), &[]), 2);
}

#[test]
fn selftest_verdicts_do_not_depend_on_seed() {
    let dir = tempfile::tempdir().unwrap();
    for only in ["1", "2", "8"] {
        let verdicts: Vec<i32> = ["0", "1", "2"]
            .iter()
            .map(|s| code(&mono(dir.path(), &["--seed", s, "selftest", "--only", only])))
            .collect();
        assert!(verdicts.iter().all(|&c| c == verdicts[0]), "criterion {only}: {verdicts:?}");
        assert_eq!(verdicts[0], 0);
    }
}

#[test]
fn tn_fixtures_load_back() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&mono(dir.path(), &["emit-fixture", "tn_fixtures"])), 0);
    for f in ["T2_kA2.json", "T2_lambda2.json", "T3_lambda2.json"] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
    let o = mono(dir.path(), &["--algebra", "T2_kA2.json", "gldim"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
}
