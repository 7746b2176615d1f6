use std::path::PathBuf;

use eqtc::cli::{run, EXIT_BUDGET, EXIT_INPUT, EXIT_OK, EXIT_VERIFY};
use serde_json::Value as Json;

fn eqtc(args: &[&str]) -> (i32, String) {
    run(std::iter::once("eqtc").chain(args.iter().copied()))
}

fn structured(args: &[&str]) -> (i32, Json) {
    let mut all = vec!["--format", "structured"];
    all.extend_from_slice(args);
    let (code, out) = eqtc(&all);
    (code, serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}")))
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("eqtc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn point_has_complexity_one() {
    let (code, out) = eqtc(&["tc", "builtin:point"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("value: 1\n"), "{out}");
    assert!(out.contains("verified: true"));
}

#[test]
fn swapped_torus_has_infinite_category() {
    let (code, r) = structured(&["lscat", "builtin:pseudo-torus-swap"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(r["value"], "infinity");
    assert_eq!(r["verified"], true);
    let orbit = r["infinity"]["witness_orbit"].as_array().unwrap();
    assert!(orbit.iter().any(|v| v == "(a,b)"));
}

#[test]
fn longer_paths_do_not_increase_complexity() {
    let value = |m: &str| {
        let (code, r) = structured(&["cc", "builtin:pseudo-circle", "--m", m]);
        assert_eq!(code, EXIT_OK);
        match &r["value"] {
            Json::Number(n) => n.as_u64().unwrap(),
            _ => u64::MAX,
        }
    };
    let mut prev = u64::MAX;
    for m in ["1", "2", "3", "4"] {
        let v = value(m);
        assert!(v <= prev);
        prev = v;
    }
    assert_eq!(prev, 4);
}

#[test]
fn fixed_points_of_swapped_torus() {
    let (code, r) = structured(&["fixed", "builtin:pseudo-torus-swap"]);
    assert_eq!(code, EXIT_OK);
    let fixed: Vec<&str> = r["fixed"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert_eq!(fixed, ["(a,a)", "(b,b)", "(c,c)", "(d,d)"]);
    assert_eq!(r["path_connected"], true);
}

#[test]
fn small_budget_reports_an_interval() {
    let (code, r) = structured(&["--budget", "10", "cc", "builtin:pseudo-circle"]);
    assert_eq!(code, EXIT_BUDGET);
    assert_eq!(r["value"]["status"], "budget");
    let lower = r["value"]["lower"].as_u64().unwrap();
    assert!(lower <= 4);
}

#[test]
fn input_errors_name_the_line() {
    let text = "{\n  \"format_version\": \"1\",\n  \"kind\": \"poset\",\n  \"elements\": [\"a\", \"b\"],\n  \"covers\": [[\"a\", \"zz\"]]\n}\n";
    let p = scratch("bad.json", text);
    let (code, out) = eqtc(&["validate", p.to_str().unwrap()]);
    assert_eq!(code, EXIT_INPUT);
    assert!(out.contains("line 5"), "{out}");
    assert!(out.contains("zz"));

    let (code, _) = eqtc(&["lscat", "/nonexistent/space.json"]);
    assert_eq!(code, EXIT_INPUT);
    let (code, _) = eqtc(&["frobnicate"]);
    assert_eq!(code, EXIT_INPUT);
    let (code, _) = eqtc(&["examples", "no-such-space"]);
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn cyclic_order_is_rejected() {
    let text = r#"{"format_version": "1", "kind": "poset", "elements": ["a", "b"], "covers": [["a", "b"], ["b", "a"]]}"#;
    let p = scratch("cycle.json", text);
    let (code, _) = eqtc(&["validate", p.to_str().unwrap()]);
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn examples_are_valid_documents() {
    for name in ["jm 3", "pseudo-circle", "pseudo-torus-swap", "sigma1-swap", "antipodal-circle 4", "simplex 2"] {
        let args: Vec<&str> = std::iter::once("examples").chain(name.split(' ')).collect();
        let (code, doc) = eqtc(&args);
        assert_eq!(code, EXIT_OK, "{name}");
        let p = scratch(&format!("{}.json", name.replace(' ', "")), &doc);
        let (code, out) = eqtc(&["validate", p.to_str().unwrap()]);
        assert_eq!(code, EXIT_OK, "{name}: {out}");
    }
}

#[test]
fn subdivision_round_trips_through_a_file() {
    let (code, doc) = eqtc(&["sd", "builtin:pseudo-circle", "-n", "1"]);
    assert_eq!(code, EXIT_OK);
    let parsed: Json = serde_json::from_str(&doc).unwrap();
    assert_eq!(parsed["elements"].as_array().unwrap().len(), 8);
    let p = scratch("sd.json", &doc);
    let (code, r) = structured(&["lscat", p.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(r["value"], 2);
    assert_eq!(r["verified"], true);
}

#[test]
fn sc_certificates_verify_and_partial_covers_fail() {
    let (code, out) = eqtc(&["--format", "structured", "sc", "builtin:pseudo-circle", "--c", "3"]);
    assert_eq!(code, EXIT_OK);
    let r: Json = serde_json::from_str(&out).unwrap();
    assert_eq!(r["value"], 3);
    let p = scratch("sc.json", &out);
    let (code, v) = structured(&["sc", "builtin:pseudo-circle", "--c", "3", "--verify", p.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["verified"], true);

    let mut partial = r.clone();
    partial["certificate"]["sets"].as_array_mut().unwrap().pop();
    let p = scratch("partial.json", &partial.to_string());
    let (code, out) = eqtc(&["sc", "builtin:pseudo-circle", "--c", "3", "--verify", p.to_str().unwrap()]);
    assert_eq!(code, EXIT_VERIFY, "{out}");
    assert!(out.contains("not covered"));
}

#[test]
fn bounds_hold_on_named_spaces() {
    for name in ["builtin:pseudo-circle", "builtin:sigma1-swap", "builtin:jm2"] {
        let (code, out) = eqtc(&["bounds", name]);
        assert_eq!(code, EXIT_OK, "{out}");
        assert!(!out.contains("violated"), "{out}");
    }
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    for cmd in [&["lscat", "builtin:pseudo-torus-swap"][..], &["cc", "builtin:pseudo-circle"], &["sc", "builtin:sigma1-swap", "--c", "3"]] {
        let one: Vec<&str> = ["--threads", "1"].iter().chain(cmd).copied().collect();
        let eight: Vec<&str> = ["--threads", "8"].iter().chain(cmd).copied().collect();
        assert_eq!(eqtc(&one), eqtc(&eight));
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_eqtc");
    let ok = std::process::Command::new(bin).args(["tc", "builtin:point"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("value: 1"));
    let bad = std::process::Command::new(bin).args(["lscat", "/nonexistent"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_INPUT));
    assert!(!bad.stderr.is_empty());
}
