use std::path::Path;
use std::process::{Command, Output};

use affstr::fan::build_fan;
use affstr::strings::ModuleComputation;
use affstr::{fixtures, io, AlgebraSpec, Strategy};

fn affstr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_affstr"))
        .args(args)
        .env_remove(fixtures::FIXTURE_ENV)
        .output()
        .unwrap()
}

fn affstr_with_fixtures(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_affstr"))
        .args(args)
        .env(fixtures::FIXTURE_ENV, dir)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn level_one_strings_print() {
    let o = affstr(&["strings", "--level", "1", "--mu", "0,0", "--cutoff", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stdout(&o).contains("1 + 2 q + 5 q^2 + 10 q^3 + 20 q^4 + 36 q^5 + 65 q^6"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn json_output_round_trips() {
    let o = affstr(&[
        "strings", "--level", "2", "--mu", "1,0", "--cutoff", "10", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let doc = io::table_from_json(&stdout(&o)).unwrap();
    let alg = AlgebraSpec::preset("A2").unwrap();
    let run = ModuleComputation::run(&alg, 2, &[1, 0], 10, Strategy::Sequential).unwrap();
    assert_eq!(doc, io::table_doc(&run.table));
    assert_eq!(doc.strings[0].coeffs.last().unwrap().to_string(), "6410");

    let o = affstr(&["fan", "--cutoff", "5", "--format", "json"]);
    let fan = io::fan_from_json(&alg, &stdout(&o)).unwrap();
    assert_eq!(fan.vectors, build_fan(&alg, 5).unwrap().vectors);
}

#[test]
fn output_is_deterministic() {
    let args = [
        "character",
        "--level",
        "4",
        "--mu",
        "1,1",
        "--cutoff",
        "6",
        "--format",
        "csv",
    ];
    let a = affstr(&args);
    let b = affstr(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn out_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fan.csv");
    let o = affstr(&[
        "fan",
        "--cutoff",
        "3",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(path).unwrap().lines().count() > 5);
}

#[test]
fn mult_with_verify() {
    let o = affstr(&[
        "mult", "--level", "4", "--mu", "0,0", "--cutoff", "6", "--weight", "1,1", "--grade", "-3",
        "--verify",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let value: i64 = stdout(&o).trim().parse().unwrap();
    assert!(value > 0);
}

#[test]
fn configuration_errors_exit_with_two() {
    for args in [
        &["strings", "--algebra", "Q7"][..],
        &["strings", "--level", "1", "--mu", "2,0"],
        &["strings", "--level", "0"],
        &[
            "mult", "--level", "1", "--weight", "0,0", "--grade", "-40", "--cutoff", "5",
        ],
        &["strings", "--mu", "1,0,0"],
    ] {
        let o = affstr(args);
        assert_eq!(
            o.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
}

#[test]
fn verify_passes_on_the_bundled_fixtures() {
    let o = affstr(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn perturbed_fixture_exits_with_three() {
    let dir = tempfile::tempdir().unwrap();
    fixtures::export(dir.path()).unwrap();
    let path = dir.path().join("a2-level2-class1-strings.json");
    let text = std::fs::read_to_string(&path).unwrap();
    let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    let coeffs = &mut doc["strings"][1]["coeffs"][4];
    assert_eq!(coeffs.to_string(), "32");
    *coeffs = serde_json::json!(33);
    std::fs::write(&path, serde_json::to_string_pretty(&doc).unwrap()).unwrap();

    let o = affstr_with_fixtures(dir.path(), &["verify"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(
        stdout(&o).contains("FAIL fixture a2-level2-class1-strings"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn empty_fixture_directory_passes_with_a_warning() {
    let dir = tempfile::tempdir().unwrap();
    let o = affstr_with_fixtures(dir.path(), &["verify"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("WARN"));
}
