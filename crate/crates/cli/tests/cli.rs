use std::path::PathBuf;
use std::process::{Command, Output};

use wnc_core::sweep::sweep_zn;
use wnc_core::theorems::{run_suite, CheckSelector, CorpusSpec};
use wnc_core::{build_str, ring_verdict, BuildOptions, DecompKind, StructureCache};

fn wnc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wnc"))
        .args(args)
        .env_remove("WNC_SIZE_BUDGET")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("wnc-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn classify_z6() {
    let out = wnc(&["--plain", "classify", "--ring", "Z(6)"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<Vec<&str>> = text
        .lines()
        .skip(1)
        .map(|l| l.split_whitespace().collect())
        .collect();
    let built = build_str("Z(6)", &BuildOptions::default()).unwrap();
    let s = StructureCache::new(&built.table);
    for (line, kind) in lines
        .iter()
        .zip([DecompKind::WeakNilClean, DecompKind::NilClean])
    {
        let v = ring_verdict(&built.table, &s, &kind).unwrap();
        let witness = v.witness_failure.map_or("-".to_string(), |w| w.to_string());
        assert_eq!(
            line,
            &vec![
                "Z(6)",
                kind.name().as_str(),
                &v.holds.to_string(),
                witness.as_str()
            ]
        );
    }
    assert_eq!(lines.len(), 2);
}

#[test]
fn banner_only_in_table_output() {
    let out = wnc(&["classify", "--ring", "Z(2)"]);
    assert!(stdout(&out).starts_with(&format!("wnc {}\n", env!("CARGO_PKG_VERSION"))));
    let out = wnc(&["classify", "--ring", "Z(2)", "--format", "csv"]);
    assert!(stdout(&out).starts_with("ring,kind,holds,witness\n"));
}

#[test]
fn expect_sets_the_exit_status() {
    assert_eq!(
        wnc(&["classify", "--ring", "Z(5)", "--expect"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        wnc(&[
            "classify",
            "--ring",
            "Z(9)",
            "--kinds",
            "weak-nil-clean",
            "--expect"
        ])
        .status
        .code(),
        Some(0)
    );
}

#[test]
fn parse_errors_print_the_grammar() {
    let out = wnc(&["classify", "--ring", "Z(6"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("parse error"));
    assert!(err.contains("ring expressions:"));
    assert!(out.stdout.is_empty());
}

#[test]
fn sweep_csv_matches_the_library() {
    let out = wnc(&["sweep", "--zn", "2..100", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    let headers = rows.headers().unwrap().clone();
    assert_eq!(
        headers.iter().collect::<Vec<_>>(),
        ["n", "weak-nil-clean", "nil-clean", "weak-not-nil"]
    );
    let from_cli: Vec<usize> = rows
        .records()
        .map(Result::unwrap)
        .filter(|r| &r[3] == "true")
        .map(|r| r[0].parse().unwrap())
        .collect();
    let lib = sweep_zn(2..=100, &[DecompKind::WeakNilClean, DecompKind::NilClean]).unwrap();
    let expected: Vec<usize> = lib.iter().filter(|r| r.weak_not_nil).map(|r| r.n).collect();
    assert_eq!(from_cli, expected);
    assert_eq!(expected, [3, 6, 9, 12, 18, 24, 27, 36, 48, 54, 72, 81, 96]);
}

#[test]
fn sweep_table_has_one_row_per_n() {
    let out = wnc(&["--plain", "sweep", "--zn", "2..=12"]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 12);
    assert!(lines[0].starts_with("n "));
    assert_eq!(
        lines[5].split_whitespace().collect::<Vec<_>>(),
        ["6", "true", "false", "true"]
    );
}

#[test]
fn verify_default_corpus_json() {
    let out = wnc(&["verify", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let expected = run_suite(
        &CorpusSpec::default_corpus(),
        &CheckSelector::All,
        &BuildOptions::default(),
    );
    assert_eq!(stdout(&out), format!("{}\n", expected.to_json()));
}

#[test]
fn verify_output_file_and_failures() {
    let corpus = temp_file("corpus.txt", "Z(6)\nZ(9) | budget=3\n");
    let report = temp_file("report.json", "");
    let out = wnc(&[
        "verify",
        "--corpus",
        corpus.to_str().unwrap(),
        "--format",
        "json",
        "--output",
        report.to_str().unwrap(),
    ]);
    // Z(9) exceeds its budget and becomes an error cell
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let cells: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    let build = cells
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["check_id"] == "build")
        .unwrap();
    assert_eq!(build["ring"], "Z(9)");
    assert_eq!(build["outcome"], "error");
}

#[test]
fn empty_corpus_csv_is_just_a_header() {
    let corpus = temp_file("empty.txt", "# no rings\n");
    let out = wnc(&[
        "verify",
        "--corpus",
        corpus.to_str().unwrap(),
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "ring,check_id,outcome,witness\n");
}

#[test]
fn dump_structure_matches_the_cache() {
    let out = wnc(&["dump", "--ring", "Z(12)", "--format", "csv"]);
    let text = stdout(&out);
    let built = build_str("Z(12)", &BuildOptions::default()).unwrap();
    let s = StructureCache::new(&built.table);
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    let mut count = 0;
    for (x, rec) in built.table.elements().zip(rows.records()) {
        let rec = rec.unwrap();
        assert_eq!(&rec[0], x.to_string());
        assert_eq!(&rec[2], s.is_unit(x).to_string());
        assert_eq!(&rec[4], s.is_idempotent(x).to_string());
        assert_eq!(&rec[6], s.in_radical(x).to_string());
        count += 1;
    }
    assert_eq!(count, 12);
}

#[test]
fn dump_tables_is_csv() {
    let out = wnc(&["dump", "--ring", "Z(3)", "--what", "tables"]);
    assert!(out.status.success());
    let built = build_str("Z(3)", &BuildOptions::default()).unwrap();
    assert_eq!(stdout(&out), built.table.to_csv());
}

#[test]
fn size_budget_from_the_environment() {
    let run = |budget: &str| {
        Command::new(env!("CARGO_BIN_EXE_wnc"))
            .args(["classify", "--ring", "Z(12)"])
            .env("WNC_SIZE_BUDGET", budget)
            .output()
            .unwrap()
    };
    let out = run("10");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("size budget"));
    assert!(run("12").status.success());
    assert_eq!(run("lots").status.code(), Some(2));
}

#[test]
fn element_certificates() {
    let out = wnc(&[
        "--plain", "element", "--ring", "Z(6)", "--index", "2", "--format", "csv",
    ]);
    assert_eq!(
        stdout(&out),
        "ring,x,kind,companion,sign,idempotent\nZ(6),2,weak-nil-clean,0,-,4\nZ(6),2,nil-clean,-,-,-\n"
    );
    let out = wnc(&["element", "--ring", "Z(6)", "--index", "9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reruns_are_byte_identical() {
    for args in [
        &["verify", "--format", "csv"][..],
        &["sweep", "--zn", "2..60", "--format", "json"],
        &[
            "element", "--ring", "M2(Z(2))", "--index", "6", "--all", "--kinds", "clean",
        ],
    ] {
        assert_eq!(wnc(args).stdout, wnc(args).stdout, "{args:?}");
    }
}
