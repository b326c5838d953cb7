use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use invcomp_cli::{EXIT_FALSIFIED, EXIT_OK, EXIT_USAGE};

fn schemas() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schemas")
}

fn invcomp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_invcomp")).args(args).output().expect("run invcomp")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

const GROUP1_BINDINGS: &str = "\
[interpretation]
t = group1.triangle_line_point
p1 = group1.median
p2 = group1.parallel
r = group1.equal_areas
";

#[test]
fn table_lists_rows_in_order() {
    let out = invcomp(&["table", "a -> b"]);
    assert_eq!(code(&out), EXIT_OK);
    assert_eq!(stdout(&out), "a b | a -> b\n0 0 | 1\n0 1 | 1\n1 0 | 0\n1 1 | 1\nrows: 4, true: 3\n");
}

#[test]
fn equiv_exit_codes() {
    let out = invcomp(&["equiv", "p1 | p2", "p1 ^ p2"]);
    assert_eq!(code(&out), EXIT_FALSIFIED);
    assert!(stdout(&out).starts_with("NOT EQUIVALENT\n"));
    assert!(stdout(&out).contains("differs at: p1=1, p2=1"));

    let out = invcomp(&["equiv", "!(a & b)", "!a | !b", "--format", "json"]);
    assert_eq!(code(&out), EXIT_OK);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["equivalent"], true);
    assert_eq!(v["witness"], serde_json::Value::Null);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["equiv", "a &", "a"][..],
        &["table", "A"],
        &["verify", "missing.schema", "--sampler", "group1.inverse"],
        &["frobnicate"],
        &["table", "a", "--samples", "0"],
    ] {
        let out = invcomp(args);
        assert_eq!(code(&out), EXIT_USAGE, "{args:?}");
        assert!(!stderr(&out).is_empty());
    }
    let g = schemas().join("group1_inverse.schema");
    let out = invcomp(&["verify", path(&g), "--sampler", "group1.sideways"]);
    assert_eq!(code(&out), EXIT_USAGE);
    assert!(stderr(&out).contains("unknown sampler `group1.sideways`"));
}

#[test]
fn atom_cap_is_enforced() {
    let out = invcomp(&["table", "a | b | c", "--atom-cap", "2"]);
    assert_eq!(code(&out), EXIT_USAGE);
}

#[test]
fn falsified_schema_exits_1_with_counterexamples() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("wrong.schema");
    fs::write(
        &file,
        format!(
            "[problem]\nname = wrong\ncontext = t\ndisjunct = p1\nconclusion = !r\n\n{GROUP1_BINDINGS}"
        ),
    )
    .unwrap();
    let out = invcomp(&[
        "verify",
        path(&file),
        "--sampler",
        "group1.forward.median",
        "--samples",
        "50",
        "--max-counterexamples",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), EXIT_FALSIFIED);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["failures"], 50);
    assert_eq!(v["counterexamples"].as_array().unwrap().len(), 3);
    assert_eq!(v["counterexamples"][0]["failure"], "conclusion");
}

#[test]
fn conclusion_mismatch_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    for (name, conclusion) in [("a", "r"), ("b", "!r")] {
        fs::write(
            dir.path().join(format!("{name}.schema")),
            format!("[problem]\nname = {name}\ncontext = t\ndisjunct = p{}\nconclusion = {conclusion}\n", name.len()),
        )
        .unwrap();
    }
    let out = invcomp(&["compose", path(dir.path())]);
    assert_eq!(code(&out), EXIT_USAGE);
    assert!(stderr(&out).contains("conclusion mismatch"), "{}", stderr(&out));
}

#[test]
fn compose_then_invert_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let composed = dir.path().join("composed.schema");
    let out = invcomp(&["compose", path(&schemas().join("group2")), "--xor", "--out", path(&composed)]);
    assert_eq!(code(&out), EXIT_OK, "{}", stderr(&out));
    let text = fs::read_to_string(&composed).unwrap();
    assert!(text.contains("# structure: t & ((p1 & !p2) ^ (p1 & p2)) -> r\n"), "{text}");
    assert!(text.contains("evidence = propositional\n"));

    let inverse = dir.path().join("inverse.schema");
    let out = invcomp(&["invert", path(&composed), "--out", path(&inverse)]);
    assert_eq!(code(&out), EXIT_OK);
    let text = fs::read_to_string(&inverse).unwrap();
    assert!(text.contains("# structure: t & r -> (p1 & !p2) ^ (p1 & p2)\n"), "{text}");

    let out = invcomp(&["verify", path(&inverse), "--sampler", "group2.inverse", "--samples", "200"]);
    assert_eq!(code(&out), EXIT_OK);
    assert!(stdout(&out).ends_with("result: PASS\n"));

    // an inverse cannot be inverted again
    let out = invcomp(&["invert", path(&inverse)]);
    assert_eq!(code(&out), EXIT_USAGE);
}

#[test]
fn xor_refusal_and_assertion() {
    let dir = tempfile::tempdir().unwrap();
    for (name, disjunct) in [("a", "p1"), ("b", "p1 | p2")] {
        fs::write(
            dir.path().join(format!("{name}.schema")),
            format!("[problem]\nname = {name}\ncontext = t\ndisjunct = {disjunct}\nconclusion = r\n\n{GROUP1_BINDINGS}"),
        )
        .unwrap();
    }
    // p1 and p1 | p2 share every median configuration
    let out = invcomp(&["compose", path(dir.path()), "--xor", "--samples", "100"]);
    assert_eq!(code(&out), EXIT_FALSIFIED);
    assert!(stdout(&out).contains("# joint model of `p1` and `p1 | p2`"), "{}", stdout(&out));

    let out = invcomp(&["compose", path(dir.path())]);
    assert_eq!(code(&out), EXIT_OK);
    assert!(stdout(&out).contains("kind = composed\n"));
}

#[test]
fn unbound_atoms_need_assertion_for_xor() {
    let dir = tempfile::tempdir().unwrap();
    for (name, disjunct) in [("a", "x"), ("b", "y")] {
        fs::write(
            dir.path().join(format!("{name}.schema")),
            format!("[problem]\nname = {name}\ncontext = t\ndisjunct = {disjunct}\nconclusion = r\n"),
        )
        .unwrap();
    }
    let out = invcomp(&["compose", path(dir.path()), "--xor"]);
    assert_eq!(code(&out), EXIT_FALSIFIED);
    let out = invcomp(&["compose", path(dir.path()), "--xor", "--assume-exclusive"]);
    assert_eq!(code(&out), EXIT_OK);
    assert!(stdout(&out).contains("evidence = asserted\n"));
}

#[test]
fn json_reports_are_deterministic() {
    let g = schemas().join("group2_inverse.schema");
    let args = ["verify", path(&g), "--sampler", "group2.inverse", "--samples", "300", "--seed", "42", "--format", "json"];
    let first = invcomp(&args);
    let second = invcomp(&args);
    assert_eq!(code(&first), EXIT_OK);
    assert_eq!(first.stdout, second.stdout);
    let other = invcomp(&["verify", path(&g), "--sampler", "group2.inverse", "--samples", "300", "--seed", "43", "--format", "json"]);
    assert_ne!(first.stdout, other.stdout);
}
