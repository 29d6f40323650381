use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn gq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gq")).args(args).output().expect("binary runs")
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let p = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn report_matches_golden(program: &str, expected_code: i32) {
    let out = Path::new(env!("CARGO_TARGET_TMPDIR")).join(format!("{program}.json"));
    let r = gq(&["run", golden(&format!("{program}.gq")).to_str().unwrap(), "--report", out.to_str().unwrap()]);
    assert_eq!(r.status.code(), Some(expected_code), "{}", String::from_utf8_lossy(&r.stderr));
    let got = std::fs::read_to_string(&out).unwrap();
    let want = std::fs::read_to_string(golden(&format!("{program}.json"))).unwrap();
    assert_eq!(got, want);
}

#[test]
fn failing_twist_matches_golden_report() {
    report_matches_golden("twisted_master", 1);
}

#[test]
fn degraded_verdict_matches_golden_report() {
    report_matches_golden("degraded_lemma3", 0);
}

#[test]
fn passing_program_exits_zero() {
    let p = scratch("ok.gq", "chart X { x:0; xi:1; } qfield Q on X { x -> xi; } check q2 Q;");
    let r = gq(&["run", p.to_str().unwrap()]);
    assert_eq!(r.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&r.stdout);
    assert!(stdout.lines().any(|l| l.starts_with("PASS q2 Q")), "{stdout}");
}

#[test]
fn syntax_error_exits_two_with_position() {
    let p = scratch("syntax.gq", "chart X { x:0 xi:1; }");
    let r = gq(&["run", p.to_str().unwrap()]);
    assert_eq!(r.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&r.stderr);
    assert!(stderr.contains("syntax error at 1:"), "{stderr}");
}

#[test]
fn semantic_error_exits_two() {
    let p = scratch("negative.gq", "chart X { x:-1; }");
    let r = gq(&["run", p.to_str().unwrap()]);
    assert_eq!(r.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&r.stderr).contains("negative weight"));
}

#[test]
fn missing_file_exits_two() {
    assert_eq!(gq(&["run", "/nonexistent/program.gq"]).status.code(), Some(2));
}

#[test]
fn builtin_demos_pass() {
    let r = gq(&["check", "all"]);
    assert_eq!(r.status.code(), Some(0), "{}", String::from_utf8_lossy(&r.stdout));
    let r = gq(&["check", "master", "nmap"]);
    assert_eq!(r.status.code(), Some(0));
    assert_eq!(gq(&["check", "no-such-check"]).status.code(), Some(2));
}

#[test]
fn seed_is_recorded_and_reports_are_stable() {
    let p = golden("degraded_lemma3.gq");
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR"));
    let (a, b) = (dir.join("seeded_a.json"), dir.join("seeded_b.json"));
    for out in [&a, &b] {
        gq(&["run", p.to_str().unwrap(), "--seed", "42", "--report", out.to_str().unwrap()]);
    }
    let (a, b) = (std::fs::read_to_string(a).unwrap(), std::fs::read_to_string(b).unwrap());
    assert_eq!(a, b);
    assert!(a.contains("\"seed\": 42"));
}
