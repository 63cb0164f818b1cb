//! End-to-end runs of the `olp` binary against the shipped example
//! programs: exit codes, printed answer sets, witness output, and the
//! compiled-file format.

use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/data");
    p.push(name);
    p.display().to_string()
}

fn olp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_olp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn solve_static_example_nice() {
    let out = olp(&[
        "solve",
        &data("example_static.lp"),
        "--strategy",
        "Tstatic",
        "--nice",
    ]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out), "{neg_a, b}\n");
}

#[test]
fn solve_dynamic_example_nice() {
    let out = olp(&["solve", &data("example.lp"), "--strategy", "T", "--nice"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out), "{neg_a, b}\n");
}

#[test]
fn solve_unfiltered_output_contains_tags() {
    let out = olp(&["solve", &data("example.lp"), "--strategy", "T"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("ok(n2)"), "{text}");
    assert!(text.contains("prec(n3,n2)"), "{text}");
    assert!(text.contains("name(n2)"), "{text}");
}

#[test]
fn solve_exit_code_one_without_answer_sets() {
    let out = olp(&["solve", &data("wang.lp"), "--strategy", "T"]);
    assert_eq!(exit_code(&out), 1);
    assert_eq!(stdout(&out), "");
}

#[test]
fn solve_weakened_strategy_accepts() {
    let out = olp(&["solve", &data("wang.lp"), "--strategy", "W", "--nice"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out), "{a, b}\n");
}

#[test]
fn solve_guess_check_program() {
    let out = olp(&["solve", &data("guess.lp"), "--strategy", "U", "--nice"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out), "{a, b}\n");
}

#[test]
fn solve_respects_max_models() {
    let out = olp(&[
        "solve",
        &data("two_sets.lp"),
        "--strategy",
        "T",
        "--max-models",
        "1",
    ]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out).lines().count(), 1);
    let all = olp(&["solve", &data("two_sets.lp"), "--strategy", "T"]);
    assert_eq!(stdout(&all).lines().count(), 2);
}

#[test]
fn solve_legal_example_with_variables() {
    let out = olp(&["solve", &data("legal.vlp"), "--strategy", "T", "--nice"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(
        stdout(&out),
        "{federal_law(sma), neg_finstatement, newer(ucc,sma), neg_perfected, possession, ship, state_law(ucc)}\n"
    );
}

#[test]
fn compile_writes_the_intermediate_file() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("example.pl");
    let out = olp(&[
        "compile",
        &data("example.lp"),
        "--strategy",
        "T",
        "-o",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    let written = std::fs::read_to_string(&out_path).unwrap();
    let golden = include_str!("../../core/tests/golden/example_T.pl");
    assert_eq!(written, golden);
}

#[test]
fn compile_other_dialects() {
    let dir = tempfile::tempdir().unwrap();
    for (dialect, needle) in [
        ("dlv", ":- a, neg_a."),
        ("smodels", "% auxiliary predicates"),
    ] {
        let out_path = dir.path().join(format!("example.{dialect}"));
        let out = olp(&[
            "compile",
            &data("example.lp"),
            "--strategy",
            "T",
            "--dialect",
            dialect,
            "-o",
            out_path.to_str().unwrap(),
        ]);
        assert_eq!(exit_code(&out), 0);
        let written = std::fs::read_to_string(&out_path).unwrap();
        assert!(written.contains(needle), "{dialect}: {written}");
    }
}

#[test]
fn compile_with_tag_all_names_every_rule() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("tagged.pl");
    let out = olp(&[
        "compile",
        &data("two_sets.lp"),
        "--strategy",
        "T",
        "--tag-all",
        "-o",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    let written = std::fs::read_to_string(&out_path).unwrap();
    assert!(written.contains("name(__r0)."), "{written}");
    assert!(written.contains("name(__r1)."), "{written}");
}

#[test]
fn check_static_criterion_verdicts() {
    let pass = olp(&[
        "check",
        &data("birds.lp"),
        "--criterion",
        "dst-static",
        "--candidate",
        &data("birds_x1.cand"),
    ]);
    assert_eq!(exit_code(&pass), 0);
    let text = stdout(&pass);
    assert!(text.starts_with("pass: witness enumeration"), "{text}");
    // The witness lists all four generating rules.
    assert_eq!(text.lines().count(), 1 + 4, "{text}");

    let fail = olp(&[
        "check",
        &data("birds.lp"),
        "--criterion",
        "dst-static",
        "--candidate",
        &data("birds_x2.cand"),
    ]);
    assert_eq!(exit_code(&fail), 1);
    assert!(stdout(&fail).starts_with("fail"));
}

#[test]
fn check_descriptive_criteria_accept_the_second_bird_set() {
    for criterion in ["be-enum", "be-original"] {
        let out = olp(&[
            "check",
            &data("birds.lp"),
            "--criterion",
            criterion,
            "--candidate",
            &data("birds_x2.cand"),
        ]);
        assert_eq!(exit_code(&out), 0, "{criterion}: {}", stdout(&out));
        assert!(stdout(&out).starts_with("pass"), "{criterion}");
    }
    let refused = olp(&[
        "check",
        &data("guess.lp"),
        "--criterion",
        "be-original",
        "--candidate",
        &data("guess_x2.cand"),
    ]);
    assert_eq!(exit_code(&refused), 1);
}

#[test]
fn check_wzl_criterion() {
    let out = olp(&[
        "check",
        &data("wang.lp"),
        "--criterion",
        "wzl",
        "--candidate",
        &data("guess_x1.cand"),
    ]);
    assert_eq!(exit_code(&out), 0, "{}", stdout(&out));
    let strict = olp(&[
        "check",
        &data("wang.lp"),
        "--criterion",
        "dst-static",
        "--candidate",
        &data("guess_x1.cand"),
    ]);
    assert_eq!(exit_code(&strict), 1);
}

#[test]
fn check_dynamic_criterion_with_preference_literals() {
    let out = olp(&[
        "check",
        &data("example.lp"),
        "--criterion",
        "dst-dynamic",
        "--candidate",
        &data("example_dynamic.cand"),
    ]);
    assert_eq!(exit_code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).starts_with("pass"));
}

#[test]
fn check_rejects_non_answer_sets() {
    let out = olp(&[
        "check",
        &data("birds.lp"),
        "--criterion",
        "dst-static",
        "--candidate",
        &data("guess_x1.cand"),
    ]);
    assert_eq!(exit_code(&out), 1);
    assert!(stdout(&out).contains("not an answer set"));
}

#[test]
fn compare_tabulates_strategies() {
    let out = olp(&["compare", &data("birds.lp")]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.lines().next().unwrap().contains("Tstatic"), "{text}");
    assert!(text.contains("hierarchy"), "{text}");
    // Two standard answer sets, one selected by the prescriptive
    // strategy, both by the descriptive one.
    assert_eq!(text.lines().count(), 1 + 2 + 1, "{text}");
}

#[test]
fn usage_and_input_errors_exit_with_two() {
    let missing = olp(&["solve", "no_such_file.lp", "--strategy", "T"]);
    assert_eq!(exit_code(&missing), 2);

    let unknown = olp(&["solve", &data("example.lp"), "--strategy", "X"]);
    assert_eq!(exit_code(&unknown), 2);

    let vars_in_lp = olp(&["solve", &data("unsafe.lp"), "--strategy", "T"]);
    assert_eq!(exit_code(&vars_in_lp), 2);
    assert!(String::from_utf8_lossy(&vars_in_lp.stderr).contains(".vlp"));

    let not_static = olp(&["solve", &data("example.lp"), "--strategy", "Tstatic"]);
    assert_eq!(exit_code(&not_static), 2);
}

#[test]
fn resource_guards_exit_with_three() {
    let out = olp(&["solve", &data("explosive.vlp"), "--strategy", "T"]);
    assert_eq!(exit_code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("guard"));
}
