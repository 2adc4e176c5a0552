//! End-to-end CLI behaviour: subcommand plumbing and exit codes
//! (0 clean, 1 invariant violation, 2 usage, 3 I/O).

use std::path::Path;
use std::process::Command;

fn zjkit() -> Command {
    Command::new(env!("CARGO_BIN_EXE_zjkit"))
}

fn run_in(dir: &Path, args: &[&str]) -> std::process::Output {
    zjkit().current_dir(dir).args(args).output().expect("binary runs")
}

#[test]
fn no_subcommand_is_a_usage_error() {
    let out = zjkit().output().expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn corpus_verify_report_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["corpus", "--max-order", "27", "--out", "corpus.json"],
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(dir.path().join("corpus.json").exists());

    let out = run_in(
        dir.path(),
        &[
            "verify",
            "--corpus",
            "corpus.json",
            "--checks",
            "B,H,lemmas",
            "--out",
            "report.jsonl",
        ],
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));

    let out = run_in(dir.path(), &["report", "--in", "report.jsonl"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("TOTAL"), "{stdout}");

    let out = run_in(dir.path(), &["report", "--in", "report.jsonl", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).trim_start().starts_with('{'));
}

#[test]
fn missing_corpus_file_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["verify", "--corpus", "nope.json", "--out", "r.jsonl"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn malformed_ingest_file_exits_3_and_names_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let ingest = dir.path().join("groups");
    std::fs::create_dir(&ingest).unwrap();
    std::fs::write(ingest.join("broken.json"), "{oops").unwrap();
    let out = run_in(
        dir.path(),
        &["corpus", "--ingest", "groups", "--out", "corpus.json"],
    );
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("broken.json"));
}

#[test]
fn unknown_check_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["corpus", "--max-order", "9", "--out", "c.json"],
    );
    assert_eq!(out.status.code(), Some(0));
    let out = run_in(
        dir.path(),
        &["verify", "--corpus", "c.json", "--checks", "bogus", "--out", "r.jsonl"],
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn violating_report_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let line = r#"{"group":"X","order":6,"p":3,"d":"P","check":"B","hypotheses":{"p_odd":true},"conclusion":false,"witness":null,"ms":0}"#;
    std::fs::write(dir.path().join("bad.jsonl"), format!("# header\n{line}\n")).unwrap();
    let out = run_in(dir.path(), &["report", "--in", "bad.jsonl"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn probe_toggles_run_and_log() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["corpus", "--max-order", "27", "--out", "corpus.json"],
    );
    assert_eq!(out.status.code(), Some(0));
    let out = run_in(
        dir.path(),
        &[
            "probe",
            "--corpus",
            "corpus.json",
            "--toggle",
            "omega",
            "--checks",
            "B",
            "--out",
            "probe.jsonl",
        ],
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(dir.path().join("probe.jsonl")).unwrap();
    assert!(text.contains("\"toggled\":\"omega\""));
    assert!(text.contains("(toggled-off)"));
}
