use std::process::{Command, Output};

use twistext::cli::{ExtReport, ShiftJson};

fn twistext(args: &str) -> Output {
    twistext_env(args, &[])
}

fn twistext_env(args: &str, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_twistext"));
    cmd.args(args.split_whitespace()).env_remove("TWISTEXT_RUNNER_OFFSET");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn ok(args: &str) -> String {
    let out = twistext(args);
    assert!(out.status.success(), "{args}: {}", String::from_utf8_lossy(&out.stderr));
    stdout(&out)
}

#[test]
fn weyl_schur_json() {
    let text = ok("ext-weyl-schur --mu 2 --lambda 2 --p 2 --i 1 --format json");
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["poincare"], serde_json::json!([[0, 1], [2, 1], [4, 1]]));
    assert_eq!(v["shift"], serde_json::json!({"value": 0}));
    assert_eq!(v["p"], 2);
    assert_eq!(v["mu"], serde_json::json!([2]));
}

#[test]
fn json_roundtrip_is_byte_identical() {
    for args in [
        "ext-weyl-schur --mu 2,1 --lambda 2,1 --p 3 --i 1 --format json",
        "ext-divided --lambda 2 --functor S[2] --p 2 --i 2 --format json",
        "ext-fk --lambda 1 --p 2 --i 1 --k 1 --format json",
        "ext-weyl-fk --mu 1 --lambda 1 --p 3 --i 1 --j 1 --k 2 --format json",
    ] {
        let text = ok(args);
        let report: ExtReport = serde_json::from_str(&text).unwrap();
        assert_eq!(report.to_json().trim_end(), text.trim_end(), "{args}");
    }
}

#[test]
fn divided_identity_text() {
    let text = ok("ext-divided --lambda 1 --functor I --p 3 --i 1");
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("1 + t^2 + t^4"));
    assert!(text.contains("dimension: 3"));
}

#[test]
fn symbolic_shift_and_folding() {
    let text = ok("ext-fk --lambda 1 --p 2 --i 1 --k 0");
    assert_eq!(text.lines().next(), Some("t^{h(1,0)} * (1)"));
    let report: ExtReport = serde_json::from_str(&ok("ext-fk --lambda 1 --p 2 --i 1 --k 0 --format json")).unwrap();
    assert_eq!(report.shift, ShiftJson::Symbolic([1, 0]));

    let folded = ok("ext-fk --lambda 1 --p 2 --i 1 --k 0 --shift -3");
    assert_eq!(folded.lines().next(), Some("t^{-3} * (1)"));
    let report: ExtReport =
        serde_json::from_str(&ok("ext-fk --lambda 1 --p 2 --i 1 --k 0 --shift 5 --format json")).unwrap();
    assert_eq!(report.shift, ShiftJson::Value(5));
}

#[test]
fn latex_output() {
    let text = ok("ext-weyl-fk --mu 1 --lambda 1 --p 2 --i 1 --j 1 --k 1 --format latex");
    assert!(text.starts_with("t^{h^{1}_{1}} \\cdot (1 + t^{4})"), "{text}");
}

#[test]
fn partition_fk_certificate() {
    let text = ok("partition-fk --lambda 1 --p 2 --k 0");
    assert_eq!(text.lines().next(), Some("(1,1)"));
    assert!(text.contains("weight: 2"));
    assert!(text.contains("core: ()"));
    assert!(text.contains("quotient: ((1), ())"));

    let twice = ok("partition-fk --lambda 1 --p 2 --k 0 --i 2");
    assert_eq!(twice.lines().next(), Some("(1,1,1,1)"));
}

#[test]
fn runner_offset_relabels_quotient() {
    let shifted = twistext_env(
        "partition-fk --lambda 1 --p 2 --k 0",
        &[("TWISTEXT_RUNNER_OFFSET", "1")],
    );
    assert!(shifted.status.success());
    let text = stdout(&shifted);
    assert_eq!(text.lines().next(), Some("(2)"));
    assert!(text.contains("quotient: ((1), ())"));

    let bad = twistext_env(
        "partition-fk --lambda 1 --p 2 --k 0",
        &[("TWISTEXT_RUNNER_OFFSET", "x")],
    );
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn core_quotient() {
    let text = ok("partition-core-quotient --lambda 4,2,1 --p 2");
    assert!(text.contains("core: (1)"));
    assert!(text.contains("quotient: ((), (3))"));
}

#[test]
fn char_table_alias() {
    let spaced = ok("char table --d 3");
    assert_eq!(spaced, ok("char-table --d 3"));
    let row: Vec<&str> = spaced.lines().nth(2).unwrap().split_whitespace().collect();
    assert_eq!(row, ["(2,1)", "-1", "0", "2"]);
}

#[test]
fn oracle_check_passes() {
    let text = ok("oracle check --d 3");
    assert!(text.lines().all(|l| l.starts_with("ok")), "{text}");
}

#[test]
fn kan_normalize_trace() {
    let out = twistext("kan-normalize --p 3 --functor Ext(Twist(Weyl[2,1],1),Dual(Dual(Twist(Schur[2,1],1))))");
    assert!(out.status.success());
    let text = stdout(&out);
    for rule in ["[adjunction]", "[dual-involution]", "[twist-collapse]"] {
        assert!(text.contains(rule), "{rule} missing from {text}");
    }
    assert!(text.contains("= Ext(Weyl[2,1], Param(Schur[2,1], A_1))"));
    let direct = ok("ext-weyl-schur --mu 2,1 --lambda 2,1 --p 3 --i 1");
    let value = text.lines().find_map(|l| l.strip_prefix("value: ")).unwrap();
    assert_eq!(value, direct.lines().next().unwrap());
}

#[test]
fn deterministic_output() {
    let args = "ext-weyl-schur --mu 3,1 --lambda 2,2 --p 2 --i 2 --format json";
    assert_eq!(ok(args), ok(args));
}

#[test]
fn exit_codes() {
    for (args, code) in [
        ("bogus", 2),
        ("ext-weyl-schur --mu 2,3 --lambda 2 --p 2 --i 1", 2),
        ("ext-divided --lambda 1 --functor I --p 4 --i 1", 2),
        ("ext-weyl-schur --mu 2 --p 2 --i 1", 2),
        ("kan-normalize --functor Ext(Foo,I) --p 2", 2),
        ("ext-divided --lambda 2 --functor Twist(I,1) --p 2 --i 1", 3),
        ("--help", 0),
    ] {
        let out = twistext(args);
        assert_eq!(
            out.status.code(),
            Some(code),
            "{args}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        if code > 0 {
            assert!(out.stdout.is_empty(), "{args}");
            assert!(!out.stderr.is_empty(), "{args}");
        }
    }
}
