use groupcodes::repro::css_example;
use serde_json::Value;
use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_groupcodes")).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn run_json(args: &[&str]) -> Value {
    let mut a = vec!["--json"];
    a.extend_from_slice(args);
    let (code, out, err) = run(&a);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap_or_else(|e| panic!("invalid JSON ({e}): {out}"))
}

fn temp(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("groupcodes-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    format!("@{}", p.display())
}

#[test]
fn decompose_and_count() {
    let (code, out, _) = run(&["decompose", "--q", "3", "--group", "D4xC5"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "F_3[D4xC5] = 4F_3 ⊕ 4F_{3^4} ⊕ M_2(F_3) ⊕ M_2(F_{3^4})");
    let v = run_json(&["decompose", "--q", "3", "--group", "D4"]);
    assert_eq!(v["order"], 8);
    assert!(v["blocks"].is_array());
    let v = run_json(&["count", "--q", "3", "--group", "D4xD4"]);
    assert_eq!(v["count"], "23335966605312");
}

#[test]
fn bad_input_exits_nonzero() {
    let (code, _, err) = run(&["decompose", "--q", "3", "--group", "D0"]);
    assert_eq!(code, 2);
    assert!(err.contains("parse error at 1"), "{err}");
    let (code, _, _) = run(&["decompose", "--q", "2", "--group", "D4"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["element-code", "--q", "3", "--group", "D4", "--elem", "x + w"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["dual", "--q", "3", "--group", "C5", "--ideal", "{}"]);
    assert_eq!(code, 2);
}

#[test]
fn element_code_round_trips_through_distance() {
    let elem = temp("flagship.txt", "x+z-z^2+x^2+xy-xz+xz^2-x^3+yz^2-x^2y+z^3-x^2z^2-xyz^2+xz^3+x^3z-x^2yz^2+xyz^3+x^3yz-x^3z^3\n");
    let v = run_json(&["element-code", "--q", "3", "--group", "D4xC4", "--elem", &elem, "--distance", "low-weight"]);
    assert_eq!(v["params"]["n"], 32);
    assert_eq!(v["params"]["k"], 18);
    assert_eq!(v["params"]["d"]["value"], 8);
    assert_eq!(v["params"]["d"]["status"], "exact");
    let code = temp("flagship.json", &v.to_string());
    let d = run_json(&["distance", "--code", &code, "--claim", "8"]);
    assert_eq!(d["certified"], true);
    let (status, _, _) = run(&["distance", "--code", &code, "--claim", "7"]);
    assert_eq!(status, 1);
}

#[test]
fn generator_override() {
    let a = run_json(&["element-code", "--q", "3", "--group", "D4xC4", "--elem", "r*s + t", "--gens", "r,s:t"]);
    let b = run_json(&["element-code", "--q", "3", "--group", "D4xC4", "--elem", "xy + z"]);
    assert_eq!(a["code"], b["code"]);
}

#[test]
fn dual_and_css_from_ideal_files() {
    let (_, d, c) = css_example(16).unwrap();
    let df = temp("d16.json", &d.to_json().to_string());
    let cf = temp("c16.json", &c.to_json().to_string());
    let dual = run_json(&["dual", "--q", "3", "--group", "D16", "--ideal", &cf]);
    let blocks = dual["blocks"].as_array().unwrap();
    assert_eq!(blocks.len(), 7);
    let built = run_json(&["build-code", "--q", "3", "--group", "D16", "--ideal", &cf]);
    assert_eq!(built["params"]["k"], 19);
    let p = run_json(&["css", "--q", "3", "--group", "D16", "--ideal1", &df, "--ideal2", &cf]);
    assert_eq!((p["n"].as_u64(), p["k"].as_i64()), (Some(32), Some(10)));
    assert_eq!(p["d"]["value"], 4);
    assert_eq!(p["d"]["status"], "exact");
}

#[test]
fn repro_exit_codes() {
    let (code, out, _) = run(&["repro", "css16"]);
    assert_eq!(code, 0);
    assert!(out.contains("[[32,10,4]]_3"));
    let v = run_json(&["repro", "css20"]);
    assert_eq!(v["ok"], true);
    // The printed total in the counts table is off; the command says so.
    let (code, out, _) = run(&["--threads", "1", "repro", "counts"]);
    assert_eq!(code, 1);
    assert!(out.contains("MISMATCH"));
    let (code, _, _) = run(&["repro", "bogus"]);
    assert_eq!(code, 2);
}
