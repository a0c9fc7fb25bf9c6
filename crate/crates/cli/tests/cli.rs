use std::io::Write;
use std::process::{Command, Output, Stdio};

const BIN: &str = env!("CARGO_BIN_EXE_ppe");
const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/fixtures");

fn fixture(name: &str) -> String {
    format!("{FIXTURES}/{name}.efg")
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(BIN)
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn value<'a>(text: &'a str, key: &str) -> Vec<&'a str> {
    text.lines()
        .filter_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(": ")))
        .collect()
}

#[test]
fn solve_assurance_with_each_method() {
    let file = fixture("assurance");
    let general = run(&["solve", &file, "--method", "ppe-general"]);
    assert_eq!(general.status.code(), Some(0));
    let text = stdout(&general);
    assert_eq!(value(&text, "outcome"), ["o4"]);
    assert_eq!(value(&text, "payoffs"), ["1 1"]);
    assert_eq!(value(&text, "steps"), ["2"]);

    let spe = stdout(&run(&["solve", &file, "--method", "spe"]));
    assert_eq!(value(&spe, "outcome"), ["o1"]);
    assert_eq!(value(&spe, "payoffs"), ["0 0"]);

    for method in ["ppe-quick", "ppe-logic"] {
        let out = stdout(&run(&["solve", &file, "--method", method]));
        assert_eq!(value(&out, "outcome"), ["o4"], "{method}");
        assert_eq!(value(&out, "path"), ["n0 n2 o4"], "{method}");
    }
}

#[test]
fn trace_lists_discards() {
    let out = stdout(&run(&["solve", &fixture("gamma"), "--trace"]));
    assert!(
        out.contains("step[2].discard: o4 principle=1 witness=(n2)"),
        "{out}"
    );
    assert!(out.contains("step[2].survivors: o7 o9 o10 o11"));
    assert!(out.contains("step[4].survivors: o11"));
}

#[test]
fn compare_reports() {
    let a = stdout(&run(&["compare", &fixture("assurance")]));
    assert_eq!(value(&a, "equal"), ["false"]);
    assert_eq!(value(&a, "improves"), ["true"]);
    let single = stdout(&run(&["compare", &fixture("single")]));
    assert_eq!(value(&single, "equal"), ["true"]);
    let case_two = run_with_stdin(
        &["compare", "-"],
        "(n0 P0 (o1 2 0) (n2 P1 (o3 0 1) (o4 1 2)))",
    );
    assert_eq!(value(&stdout(&case_two), "equal"), ["true"]);
}

#[test]
fn dot_marks_path_and_discards() {
    let a = stdout(&run(&["dot", &fixture("assurance")]));
    assert_eq!(a.lines().filter(|l| l.contains("[label=")).count(), 5);
    assert!(a.contains("n0 -> n2 [ppe=true"));
    assert!(a.contains("n2 -> o4 [ppe=true"));
    assert!(a.contains("label=\"n0:P0\""));

    let single = stdout(&run(&["export-dot", &fixture("single")]));
    let vertices: Vec<&str> = single.lines().filter(|l| l.contains("[label=")).collect();
    assert_eq!(vertices.len(), 1);
    assert!(vertices[0].contains("ppe=true"));

    let gamma = stdout(&run(&["dot", &fixture("gamma")]));
    let o4 = gamma
        .lines()
        .find(|l| l.trim_start().starts_with("o4 "))
        .unwrap();
    assert!(o4.contains("discarded=2"), "{o4}");
}

#[test]
fn output_is_deterministic() {
    let args = ["solve", &fixture("gamma"), "--trace"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let gen = [
        "random",
        "--seed",
        "7",
        "--players",
        "2",
        "--depth",
        "3",
        "--branching",
        "2",
        "--count",
        "1",
    ];
    let first = run(&gen);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, run(&gen).stdout);
    let text = stdout(&first);
    assert!(solves(&text));
}

fn solves(text: &str) -> bool {
    let o = run_with_stdin(&["solve", "-"], text);
    o.status.success()
}

#[test]
fn random_games_pipe_into_every_solver() {
    let games = stdout(&run(&[
        "random",
        "--seed",
        "7",
        "--players",
        "3",
        "--depth",
        "4",
        "--branching",
        "3",
        "--count",
        "100",
    ]));
    assert_eq!(games.split("\n\n").count(), 100);
    let general = run_with_stdin(&["solve", "-"], &games);
    assert_eq!(general.status.code(), Some(0));
    let outcomes = stdout(&general);
    let general_outcomes = value(&outcomes, "outcome");
    assert_eq!(general_outcomes.len(), 100);
    let quick = stdout(&run_with_stdin(
        &["solve", "-", "--method", "ppe-quick"],
        &games,
    ));
    assert_eq!(value(&quick, "outcome"), general_outcomes);
    let verified = run_with_stdin(&["verify", "-"], &games);
    assert_eq!(verified.status.code(), Some(0), "{}", stdout(&verified));
    assert_eq!(
        value(&stdout(&verified), "agree")
            .iter()
            .filter(|v| **v == "true")
            .count(),
        100
    );
}

#[test]
fn exit_codes() {
    let bad = run_with_stdin(&["solve", "-"], "(n0 P0 (o1 1 1) (o2 1 0))");
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("strict"));
    let syntax = run_with_stdin(&["solve", "-"], "(n0 P0 (o1 1 1)");
    assert_eq!(syntax.status.code(), Some(1));
    assert_eq!(
        run(&["solve", "/nonexistent/game.efg"]).status.code(),
        Some(1)
    );
    let bound = run(&[
        "solve",
        &fixture("gamma"),
        "--method",
        "ppe-logic",
        "--max-logic-vars",
        "5",
    ]);
    assert_eq!(bound.status.code(), Some(2));
    assert_eq!(run(&["random", "--players", "1"]).status.code(), Some(1));
    assert_eq!(
        run(&["solve", "--method", "nope", "x"]).status.code(),
        Some(1)
    );
}

#[test]
fn biped_table() {
    let out = stdout(&run(&["biped"]));
    assert_eq!(value(&out, "games"), ["18"]);
    assert_eq!(value(&out, "equal"), ["15"]);
    assert_eq!(value(&out, "differing"), ["3"]);
    assert_eq!(out.lines().filter(|l| l.ends_with("false")).count(), 3);
}
