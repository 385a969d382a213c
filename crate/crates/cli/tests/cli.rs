use std::process::{Command, Output};

use serde_json::Value;
use ulrich_kit::commands::without_timings;

fn kit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ulrich-kit")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch_file(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("ulrich-kit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn json_output_is_deterministic_apart_from_timings() {
    let args = ["resolve", "--corpus", "sec6", "--module", "I", "--steps", "5", "--json"];
    let (a, b) = (kit(&args), kit(&args));
    assert_eq!(a.status.code(), Some(0));
    let (mut a, mut b) = (json(&a), json(&b));
    without_timings(&mut a);
    without_timings(&mut b);
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    assert_eq!(a["result"]["betti"], serde_json::json!([3, 4, 4, 4, 4, 4]));
    assert_eq!(a["result"]["periodic"]["period"], 1);
}

#[test]
fn ulrich_module_verdict_on_sec6() {
    let out = kit(&["check-ulrich-module", "--corpus", "sec6", "--module", "ImPsi", "--ideal", "I", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["ok"], true);
    assert_eq!(v["result"]["isUlrich"], true);
    assert_eq!(v["result"]["e0"], 8);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(kit(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(kit(&["resolve", "--corpus", "nope", "--module", "I"]).status.code(), Some(2));
    assert_eq!(kit(&["resolve", "--corpus", "sec6", "--module", "nope"]).status.code(), Some(2));
    assert_eq!(kit(&["resolve", "--corpus", "sec6", "--module", "I", "--char", "4"]).status.code(), Some(2));
    let out = kit(&["probe", "hom", "--corpus", "sec6", "--module", "ImPsi", "--module2", "R"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_session_reports_position() {
    let path = scratch_file("bad.session", "ring R = garbage\n");
    let out = kit(&["resolve", "--session", &path, "--module", "I", "--json"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["ok"], false);
    assert_eq!(v["error"]["kind"], "usage");
    assert!(v["error"]["message"].as_str().unwrap().contains("line 1"));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn failed_predicate_exits_with_one() {
    let out = kit(&["check-ulrich-ideal", "--corpus", "ex2.6ii-d2s3", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["kind"], "reduction-not-contained");
    let out = kit(&["check-ulrich-ideal", "--corpus", "ex2.6ii-d2s3-alt", "--json"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn session_text_round_trips() {
    for id in String::from_utf8(kit(&["list-corpus"]).stdout).unwrap().lines() {
        let first = kit(&["session", "--corpus", id]);
        assert_eq!(first.status.code(), Some(0), "{id}");
        let path = scratch_file(&format!("{}.session", id.replace(['[', ']'], "_")), &String::from_utf8_lossy(&first.stdout));
        let second = kit(&["session", "--session", &path]);
        assert_eq!(first.stdout, second.stdout, "{id}");
    }
}

#[test]
fn session_file_and_corpus_give_the_same_answer() {
    let text = String::from_utf8(kit(&["session", "--corpus", "ex2.6ii-d1s2"]).stdout).unwrap();
    let path = scratch_file("d1s2.session", &text);
    let mut a = json(&kit(&["hilbert", "--corpus", "ex2.6ii-d1s2", "--module", "I", "--json"]));
    let mut b = json(&kit(&["hilbert", "--session", &path, "--module", "I", "--json"]));
    without_timings(&mut a);
    without_timings(&mut b);
    assert_eq!(a["result"], b["result"]);
    assert_eq!(a["result"]["coefficients"], serde_json::json!([4, 0]));
}

#[test]
fn verify_exit_code_matches_the_summary() {
    let out = kit(&["verify-paper", "--json"]);
    let v = json(&out);
    let failed = v["result"]["failed"].as_u64().unwrap();
    assert_eq!(v["result"]["criteria"].as_array().unwrap().len(), 11);
    assert_eq!(out.status.code(), Some(if failed == 0 { 0 } else { 1 }));
    assert_eq!(kit(&["verify-paper", "--corpus", "sec6"]).status.code(), Some(2));
}
