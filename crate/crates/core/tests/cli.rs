//! The `fcat` binary: exit codes, input errors, determinism, witnesses.

use std::path::{Path, PathBuf};
use std::process::Command;

use fcat_core::cli_io::{load_fixture, Payload, EXIT_BUDGET, EXIT_INPUT, EXIT_NEGATIVE, EXIT_OK};
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.json"))
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn fcat(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_fcat")).args(args).output().expect("spawn fcat");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).expect("utf8"),
        stderr: String::from_utf8(out.stderr).expect("utf8"),
    }
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.extend(["--report", "json"]);
    let r = fcat(&a);
    (r.code, serde_json::from_str(&r.stdout).unwrap_or_else(|e| panic!("{e}: {}", r.stdout)))
}

fn untimed(mut v: Value) -> Value {
    v["elapsed_ms"] = Value::from(0);
    v
}

/// Writes `v` to a fresh temporary file.
fn temp_json(tag: &str, v: &Value) -> PathBuf {
    let p = std::env::temp_dir().join(format!("fcat-cli-{}-{tag}.json", std::process::id()));
    std::fs::write(&p, serde_json::to_string_pretty(v).expect("json")).expect("write temp");
    p
}

fn mutated(name: &str, tag: &str, f: impl FnOnce(&mut Value)) -> PathBuf {
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(fixture(name)).expect("read")).expect("json");
    f(&mut v);
    temp_json(tag, &v)
}

fn path_str(p: &Path) -> &str {
    p.to_str().expect("utf8 path")
}

#[test]
fn exit_codes_follow_verdicts() {
    let cases: [(&[&str], &str, i32); 6] = [
        (&["check-pie"], "pie_product", EXIT_OK),
        (&["check-pie"], "pie_idempotent_splitting", EXIT_NEGATIVE),
        (&["check-rigged", "--kind", "p"], "eg_two_qcoalg_rigging_a", EXIT_OK),
        (&["check-rigged", "--kind", "p"], "eg_not_rigged", EXIT_NEGATIVE),
        (&["check-tightly-rigged"], "eg_not_rigged", EXIT_NEGATIVE),
        (&["lift"], "lift_power_witness_l", EXIT_NEGATIVE),
    ];
    for (args, name, code) in cases {
        let f = fixture(name);
        let mut a = args.to_vec();
        a.extend(["--input", path_str(&f)]);
        let (got, report) = json(&a);
        assert_eq!(got, code, "{args:?} {name}: {report}");
        assert_eq!(report["exit"], code);
    }
}

#[test]
fn classifier_reports_object_counts() {
    let f = fixture("eg_two_qcoalg");
    let (code, report) = json(&["classifier", "--kind", "p", "--input", path_str(&f)]);
    assert_eq!(code, EXIT_OK, "{report}");
    assert!(!report["certificate"].as_array().expect("certificate").is_empty());
}

#[test]
fn limit_and_em_object_succeed() {
    for (cmd, name) in [("limit", "limit_oplax_arrow"), ("em-object", "em_identity"), ("validate", "monad_writer")] {
        let f = fixture(name);
        let (code, report) = json(&[cmd, "--input", path_str(&f)]);
        assert_eq!(code, EXIT_OK, "{cmd} {name}: {report}");
    }
    let f = fixture("em_idempotent_inchordate");
    assert_eq!(json(&["em-object", "--input", path_str(&f)]).0, EXIT_NEGATIVE);
}

#[test]
fn missing_compose_entry_is_an_input_error_with_path() {
    let p = mutated("fcat_two_qcoalg", "missing", |v| {
        v["payload"]["two_cat"]["category"]["compose"].as_array_mut().expect("compose").remove(0);
    });
    let r = fcat(&["validate", "--input", path_str(&p)]);
    assert_eq!(r.code, EXIT_INPUT);
    let all = r.stdout + &r.stderr;
    assert!(all.contains("payload.two_cat.category.compose"), "{all}");
    assert!(all.contains("missing entry"), "{all}");
}

#[test]
fn duplicate_name_is_an_input_error() {
    let p = mutated("fcat_two_qcoalg", "duplicate", |v| {
        let mors = v["payload"]["two_cat"]["category"]["morphisms"].as_array_mut().expect("morphisms");
        let first = mors[0].clone();
        mors.push(first);
    });
    let r = fcat(&["validate", "--input", path_str(&p)]);
    assert_eq!(r.code, EXIT_INPUT);
    assert!((r.stdout + &r.stderr).contains("duplicate name"));
}

#[test]
fn unknown_field_is_an_input_error() {
    let p = mutated("fcat_two_qcoalg", "unknown", |v| {
        v["payload"]["two_cat"]["colour"] = Value::from("blue");
    });
    let r = fcat(&["validate", "--input", path_str(&p)]);
    assert_eq!(r.code, EXIT_INPUT);
    assert!((r.stdout + &r.stderr).contains("colour"));
}

#[test]
fn malformed_json_reports_line_and_column() {
    let p = std::env::temp_dir().join(format!("fcat-cli-{}-malformed.json", std::process::id()));
    std::fs::write(&p, "{\n  \"name\": \n").expect("write");
    let r = fcat(&["validate", "--input", path_str(&p)]);
    assert_eq!(r.code, EXIT_INPUT);
    assert!((r.stdout + &r.stderr).contains(&format!("{}:3:", path_str(&p))));
}

#[test]
fn missing_input_file_is_an_input_error() {
    assert_eq!(fcat(&["validate", "--input", "/nonexistent/fixture.json"]).code, EXIT_INPUT);
}

#[test]
fn tiny_budget_is_exceeded() {
    let f = fixture("eg_two_qcoalg");
    let (code, report) = json(&["classifier", "--kind", "p", "--budget", "1", "--input", path_str(&f)]);
    assert_eq!(code, EXIT_BUDGET, "{report}");
}

#[test]
fn seeded_reports_are_deterministic() {
    let f = fixture("lift_sampled_closure");
    for seed in ["0", "7"] {
        let a = json(&["lift", "--seed", seed, "--input", path_str(&f)]);
        let b = json(&["lift", "--seed", seed, "--input", path_str(&f)]);
        assert_eq!(a.0, b.0);
        assert_eq!(untimed(a.1), untimed(b.1));
    }
}

#[test]
fn text_report_ends_with_exit_line() {
    let f = fixture("pie_product");
    let r = fcat(&["check-pie", "--input", path_str(&f)]);
    assert!(r.stdout.contains("exit: 0\n"), "{}", r.stdout);
}

/// The element reported missed by `φ̄` is not `Φ_λ(u)(x)` for any 1-cell
/// `u` out of an object with a tight element `x`.
#[test]
fn not_surjective_witness_replays() {
    let f = fixture("eg_not_rigged");
    let (code, report) = json(&["check-rigged", "--kind", "p", "--input", path_str(&f)]);
    assert_eq!(code, EXIT_NEGATIVE);
    assert_eq!(report["verdicts"][0]["verdict"], "NotSurjective");
    let missed = report["witnesses"][0]["missed"].as_str().expect("missed element");
    let (obj, elem) = missed.split_once(':').expect("object:element");

    let Payload::FWeight(w) = load_fixture(&f).expect("load").parse().expect("parse") else {
        panic!("not an F-weight")
    };
    let k = &w.shape.base;
    let e = k.objects.iter().position(|o| o == obj).expect("object");
    let y = w.phi_lambda.values[e].objects.iter().position(|o| o == elem).expect("element");
    let tight = w.tight_objects();
    for u in 0..k.cells1.len() {
        if k.tgt1(u) != e {
            continue;
        }
        for &x in &tight[k.src1(u)] {
            assert_ne!(w.phi_lambda.on1[u].on_obj[x], y, "hit through `{}`", k.cells1[u].name);
        }
    }
}
