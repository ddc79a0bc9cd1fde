use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fuzzy-magic"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn generate(dir: &Path, family: &str, n: &str, extra: &[&str]) -> String {
    let file = dir.join(format!("{family}{n}.json"));
    let path = file.to_str().unwrap().to_string();
    let mut args = vec!["generate", "--family", family, "--n", n, "--out", &path];
    args.extend_from_slice(extra);
    let out = run(&args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn generate_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = generate(dir.path(), "cycle", "3", &[]);
    let out = run(&["verify", &path]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("m(G) = 0.12"));
}

#[test]
fn verify_failure_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.json");
    std::fs::write(
        &file,
        r#"{"format_version": 1,
            "vertices": [{"id": 1, "alpha": "0.3"}, {"id": 2, "alpha": "0.2"}, {"id": 3, "alpha": "0.4"}],
            "edges": [{"u": 1, "v": 2, "beta": "0.1"}, {"u": 2, "v": 3, "beta": "0.2"}]}"#,
    )
    .unwrap();
    let out = run(&["verify", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("broken.json");
    std::fs::write(
        &file,
        r#"{"format_version": 1, "vertices": [{"id": 1, "alpha": "0.3"}],
            "edges": [{"u": 1, "v": 9, "beta": "0.1"}]}"#,
    )
    .unwrap();
    let out = run(&["verify", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("undeclared vertex 9"));

    assert_eq!(run(&["verify", "/nonexistent/file.json"]).status.code(), Some(2));
    assert_eq!(run(&["generate", "--family", "cycle", "--n", "4", "--out", "-"]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(
        run(&["generate", "--family", "star", "--n", "3", "--paper-table", "--out", "-"]).status.code(),
        Some(2)
    );
}

#[test]
fn generate_with_unit_and_paper_table() {
    let out = run(&["generate", "--family", "star", "--n", "4", "--unit", "1/15", "--out", "-"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("\"magic_constant\": \"1\""));

    let out = run(&["generate", "--family", "cycle", "--n", "287", "--paper-table", "--out", "-"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["generate", "--family", "path", "--n", "27", "--paper-table", "--out", "-"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("\"unit\": \"1/100\""));
}

#[test]
fn search_and_min_constant() {
    let dir = tempfile::tempdir().unwrap();
    let star = generate(dir.path(), "star", "2", &[]);
    let out = run(&["min-constant", &star, "--max-coeff", "5", "--unit", "0.1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("minimal T=8"), "{}", stdout(&out));

    let path = generate(dir.path(), "path", "1", &[]);
    let out = run(&["search", &path, "--max-coeff", "3", "--target", "6", "--unit", "0.1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("4 solution(s)"), "{text}");
    assert!(text.contains("exhausted: true"));

    let out = run(&["search", &path, "--max-coeff", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn export_formats() {
    let dir = tempfile::tempdir().unwrap();
    let path = generate(dir.path(), "path", "1", &[]);
    let dot = stdout(&run(&["export", &path, "--format", "dot"]));
    assert!(dot.contains("1 -- 2 [label=\"0.1\"]"));
    let csv = stdout(&run(&["export", &path, "--format", "csv"]));
    assert!(csv.starts_with("kind,u,v,label\n"));
    let json = stdout(&run(&["export", &path, "--format", "json"]));
    assert!(json.contains("\"format_version\": 1"));
}

#[test]
fn demo_and_units() {
    let out = run(&["demo", "workload"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("6.67%"));

    let out = run(&["units", "--family", "star", "--n-range", "2..5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("star\t3\t12\t1/100\t-\ttable-gap"), "{text}");
    assert!(text.contains("star\t2\t9\t1/10\t1/10\t-"), "{text}");

    let out = run(&["units", "--family", "cycle", "--n-range", "285..289"]);
    let text = stdout(&out);
    assert!(text.contains("cycle\t287\t1006\t1/10000\t1/1000\texceeds-one"), "{text}");
    assert!(!text.contains("cycle\t286"));
}
