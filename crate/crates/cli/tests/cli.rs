use std::process::Command;

use join_ring::joinring::{JoinElem, JoinShape};
use join_ring::zeta::ZetaFunction;
use serde_json::Value;

fn jring(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_jring")).args(args).output().expect("runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let (code, out, err) = jring(&all);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn zeta_of_a_join() {
    let v = json(&["zeta", "--shape", "join(C3,C5;F2)"]);
    assert_eq!(v["factors"], serde_json::json!({"1": -1, "2": -1, "4": -1}));
    assert_eq!(v["pole_order"], 3);
    let (code, text, _) = jring(&["zeta", "--shape", "join(C3,C5;F2)"]);
    assert_eq!(code, 0);
    assert!(text.contains("pole_order: 3"));
}

#[test]
fn rooted_report() {
    let v = json(&["rooted", "--primes", "3,5", "--base", "2"]);
    assert_eq!(v["agreement"], true);
    assert_eq!(v["unit_count"], "270");
    let v = json(&["rooted", "--primes", "7", "--base", "2"]);
    assert_eq!(v["all_rooted"], false);
    assert_eq!(v["unit_count"], "49");
}

#[test]
fn field_delta_summary() {
    let (code, out, _) = jring(&["delta", "--field", "F4", "--p", "3", "--r", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("yes: Mersenne case, strict Δ_3"));
}

#[test]
fn exit_codes() {
    assert_eq!(jring(&["nonsense"]).0, 2);
    assert_eq!(jring(&["field", "F6"]).0, 1);
    assert_eq!(jring(&["join", "--shape", "join(C3;"]).0, 2);
    assert_eq!(jring(&["gr", "--field", "F2", "--group", "C2", "inv", "1+g1"]).0, 1);
    assert_eq!(jring(&["oracle", "--group", "C7", "--field", "F2", "units", "--cap", "16"]).0, 1);
    assert_eq!(jring(&["zeta"]).0, 2);
}

#[test]
fn join_element_json_round_trips() {
    let shape = JoinShape::parse("join(C3,C5;F2)").unwrap();
    let a = "1+g1; g2+g3; a[1][2]=1";
    let b = "g2; 1+g4; a[2][1]=1";
    let v = json(&["join", "--shape", "join(C3,C5;F2)", "mul", a, b]);
    let got = JoinElem::from_json(&v["element"]).unwrap();
    let expect = JoinElem::parse(&shape, a).unwrap().mul(&JoinElem::parse(&shape, b).unwrap()).unwrap();
    assert_eq!(got, expect);
    // The emitted JSON is accepted back as an operand.
    let again = json(&["join", "--shape", "join(C3,C5;F2)", "add", &v["element"].to_string(), "0; 0"]);
    assert_eq!(JoinElem::from_json(&again["element"]).unwrap(), expect);
}

#[test]
fn zeta_json_round_trips() {
    let v = json(&["zeta", "--group", "C7", "--field", "F2"]);
    let z = ZetaFunction::from_json(&serde_json::json!({ "q": v["q"], "factors": v["factors"] })).unwrap();
    assert_eq!(z.to_string(), v["zeta"].as_str().unwrap());
    assert_eq!(z.pole_order_at_zero(), 3);
}

#[test]
fn text_and_json_agree() {
    let cases: &[&[&str]] = &[
        &["join", "--shape", "join(C3,C5;F2)", "units"],
        &["gr", "--field", "F3", "--group", "S3", "info"],
        &["oracle", "--semimagic", "3", "--field", "F2", "factorization"],
        &["group", "D8"],
    ];
    for args in cases {
        let v = json(args);
        let (_, text, _) = jring(args);
        for (k, val) in v.as_object().unwrap() {
            if k == "summary" || k == "elapsed_ms" {
                continue;
            }
            let rendered = match val {
                Value::String(s) => s.clone(),
                Value::Null => "none".into(),
                other => other.to_string(),
            };
            assert!(text.lines().any(|l| l == format!("{k}: {rendered}")), "{args:?}: {k}");
        }
    }
}

#[test]
fn oracle_queries() {
    assert_eq!(json(&["oracle", "--group", "C7", "--field", "F2", "units"])["units"], 49);
    assert_eq!(json(&["oracle", "--group", "C7", "--field", "F2", "order", "7"])["count"], 48);
    let v = json(&["oracle", "--group", "C4", "--field", "F2", "delta", "2"]);
    assert_eq!((v["holds"].clone(), v["witness"].clone()), (Value::Bool(false), Value::from("g1")));
    assert_eq!(json(&["oracle", "--group", "C4", "--field", "F2", "expu1"])["exp_u1"], 4);
    assert_eq!(json(&["oracle", "--semimagic", "3", "--field", "F2", "units"])["units"], 6);
}

#[test]
fn sweeps_are_clean() {
    let v = json(&["sweep", "mul", "--count", "600", "--seed", "7"]);
    assert_eq!(v["failures"], 0);
    let v = json(&["sweep", "rooted"]);
    assert_eq!(v["mismatches"], serde_json::json!([]));
    assert_eq!(json(&["sweep", "field-delta"])["cases"], 2420);
}
