//! End-to-end runs of the `symhom` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symhom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "fixtures", name]
        .iter()
        .collect();
    p.to_str().unwrap().to_string()
}

/// Exit status is zero exactly when every line passes.
fn assert_status_matches(o: &Output) {
    let text = stdout(o);
    assert!(text.lines().all(|l| l.starts_with("CHECK ")), "{text}");
    assert_eq!(o.status.success(), !text.contains(" FAIL "), "{text}");
}

#[test]
fn single_generator_example_passes() {
    let o = run(&["verify-example", "ex1"]);
    assert_status_matches(&o);
    assert!(o.status.success());
    assert!(stdout(&o).contains("CHECK ex1.relation PASS"));
}

#[test]
fn canceling_pair_example_reports_the_span_mismatch() {
    let o = run(&["verify-example", "ex2"]);
    assert_status_matches(&o);
    let text = stdout(&o);
    assert!(text.contains("CHECK ex2.relations PASS 9 of 9 hold"));
    assert!(text.contains("CHECK ex2.matrix-model FAIL"));
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn triangle_example_passes() {
    let o = run(&["verify-example", "triangle"]);
    assert_status_matches(&o);
    assert!(o.status.success());
}

#[test]
fn corrupted_table_fails_with_a_named_violation() {
    let o = run(&["check-oracle", "--file", &fixture("corrupted.json")]);
    assert_status_matches(&o);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("unmatched end"));
    let clean = run(&["check-oracle", "--oracle", &fixture("triple.json")]);
    assert!(clean.status.success());
    let all = run(&["check-oracle"]);
    assert_status_matches(&all);
    assert!(all.status.success());
}

#[test]
fn reports_are_deterministic() {
    let dir = std::env::temp_dir().join(format!("symhom-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("axioms.txt");
    let args = ["check-axioms", "--random", "20", "--samples", "5", "--seed", "11"];
    let a = run(&args);
    let mut with_out = args.to_vec();
    let out_str = out.to_str().unwrap();
    with_out.extend(["--out", out_str]);
    let b = run(&with_out);
    assert_status_matches(&a);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(std::fs::read(&out).unwrap(), a.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn element_commands() {
    let ev = run(&["ev", "--fixture", "t-mm", "M[0;(a,b)](.v,^x1)"]);
    assert_status_matches(&ev);
    assert!(stdout(&ev).contains("CF(a,b)[hat] -> CF(a,b)[hat] [1 0; 0 0]"));
    let filter = run(&[
        "filter",
        "--diagram",
        &fixture("t_mm_w_in_b1.json"),
        "M[1;(a,b)](.x1,^x2)",
    ]);
    assert_status_matches(&filter);
    assert!(stdout(&filter).contains("{U}"));
    let rec = run(&[
        "recover-cf",
        "--fixture",
        "triple",
        "--map",
        "M[0;(a,g,b)](.v,.v,^w1) + M[0;(a,g,b)](.v,.v,^w2)",
    ]);
    assert_status_matches(&rec);
    assert!(rec.status.success());
    let h = run(&["homology", "--element", "M[0;(a,b)](.v,^x)", "--max-word-len", "3"]);
    assert_status_matches(&h);
    assert!(stdout(&h).contains("2 classes"));
}

#[test]
fn malformed_flags_are_usage_errors() {
    assert_eq!(run(&["verify-example", "ex9"]).status.code(), Some(2));
    assert_eq!(run(&["homology", "--max-word-len", "0"]).status.code(), Some(2));
    assert_eq!(
        run(&["check-oracle", "--oracle", "/nonexistent.json"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["ev", "M[0;(a,b)](.v"]).status.code(), Some(2));
}
