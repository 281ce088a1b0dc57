use std::process::{Command, Output};

use qswitch_eur::scan::{read_csv, CSV_HEADER};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qswitch-eur"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn eval_prints_labeled_report() {
    let o = run(&[
        "eval",
        "--process",
        "su",
        "--p",
        "0.3",
        "--alpha",
        "0.5,0.5,0",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for label in ["S(X|B)", "S(Z|B)", "U ", "bound", "slack"] {
        assert!(text.contains(label), "{label} missing from {text}");
    }
}

#[test]
fn eval_writes_single_row_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("row.csv");
    let o = run(&[
        "eval",
        "--process",
        "tf",
        "--p",
        "0.75",
        "--alpha",
        "0.5,0.1,0.4",
        "--csv",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let rows = read_csv(&path).unwrap();
    assert_eq!(rows.len(), 1);
    assert!((rows[0].process.total_u - 1.874065353218501).abs() < 1e-11);
}

#[test]
fn bad_arguments_exit_with_two() {
    for args in [
        vec!["eval", "--process", "su", "--p", "1.5", "--alpha", "1,0,0"],
        vec![
            "eval",
            "--process",
            "su",
            "--p",
            "0.5",
            "--alpha",
            "0.5,0.6,0",
        ],
        vec!["eval", "--process", "xx", "--p", "0.5", "--alpha", "1,0,0"],
        vec!["eval", "--process", "su", "--p", "0.5", "--alpha", "1,0"],
        vec!["simplex", "--compare", "su", "--p", "0.5", "--out", "-"],
        vec![
            "crossover",
            "--compare",
            "sw",
            "--alpha",
            "1,0,0",
            "--quantity",
            "y",
        ],
        vec!["frobnicate"],
    ] {
        assert_eq!(run(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn sweep_writes_header_and_rows() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let o = run(&[
        "sweep",
        "--process",
        "sw",
        "--alpha",
        "0.5,0.5,0",
        "--pmin",
        "0",
        "--pmax",
        "1",
        "--steps",
        "10",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().next().unwrap(), CSV_HEADER.join(","));
    assert_eq!(text.lines().count(), 12);
}

#[test]
fn simplex_to_stdout_matches_grid_size() {
    let o = run(&[
        "simplex",
        "--compare",
        "tf",
        "--p",
        "0.5",
        "--step",
        "10",
        "--out",
        "-",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1 + 11 * 12 / 2);
}

#[test]
fn crossover_reports_root_or_absence() {
    let o = run(&[
        "crossover",
        "--compare",
        "sw",
        "--alpha",
        "0.5,0.1,0.4",
        "--quantity",
        "x",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let p: f64 = stdout(&o)
        .trim()
        .rsplit(' ')
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert!((p - 0.5434782608695654).abs() < 1e-6);

    let o = run(&["crossover", "--compare", "sw", "--alpha", "1,0,0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("no crossover"));
}

#[test]
fn verify_passes_and_flags_impossible_tolerance() {
    let o = run(&["verify", "--samples", "50", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("ok"));

    let o = run(&["verify", "--samples", "50", "--seed", "3", "--tol", "0"]);
    assert_eq!(o.status.code(), Some(1));

    let o = run(&["verify", "--samples", "5", "--tol=-1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sequential_flag_gives_identical_output() {
    let a = run(&[
        "simplex",
        "--compare",
        "sw",
        "--p",
        "0.75",
        "--step",
        "30",
        "--out",
        "-",
    ]);
    let b = run(&[
        "simplex",
        "--compare",
        "sw",
        "--p",
        "0.75",
        "--step",
        "30",
        "--out",
        "-",
        "--sequential",
        "--no-oracle-check",
    ]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
