use std::process::Command;

use ensemble_parity::reference::brute_parity;
use ensemble_parity_cli::experiment::random_function;
use ensemble_parity_cli::*;

fn config(n: usize, source: FunctionSource) -> ExperimentConfig {
    ExperimentConfig { verify: true, ..ExperimentConfig::new(Some(n), source) }
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ensemble-parity"))
}

#[test]
fn const_minus_resolves_in_one_run() {
    let out = run_experiment(&config(3, FunctionSource::ConstMinus)).unwrap();
    assert_eq!(out.status, Status::Success);
    assert_eq!(out.report.parity, 1);
    assert_eq!(out.report.runs, 1);
    assert_eq!(out.report.trace[0].amplitudes, vec![0.0; 3]);
}

#[test]
fn single_mark_is_odd() {
    let out = run_experiment(&config(3, FunctionSource::Single(5))).unwrap();
    assert_eq!(out.status, Status::Success);
    assert_eq!((out.report.parity, out.report.g_parity_reference), (-1, Some(-1)));
    assert!(out.report.runs <= 3);
    assert_eq!(out.report.uf_calls, 2 * out.report.uo_calls);
}

#[test]
fn seeded_random_agrees_with_reference() {
    let src = FunctionSource::Random { seed: 42, density: 0.5 };
    let out = run_experiment(&config(6, src)).unwrap();
    assert_eq!(out.status, Status::Success);
    assert_eq!(Some(out.report.parity), out.report.g_parity_reference);
    assert!(out.report.runs <= 6);
}

#[test]
fn many_seeds_agree() {
    for seed in 0..200 {
        for n in [2, 5, 8] {
            let out = run_experiment(&config(n, FunctionSource::Random { seed, density: 0.3 })).unwrap();
            assert_eq!(out.status, Status::Success, "seed {seed} n {n}");
        }
    }
}

#[test]
fn random_generator_is_pinned() {
    // Regression pin for ChaCha8 seeded with 7: a different generator or draw
    // rule changes these marks and every seeded report with them.
    let f = random_function(4, 7, 0.5).unwrap();
    assert_eq!(f.marked().collect::<Vec<_>>(), vec![0, 1, 5, 6, 8, 10, 11, 13, 14]);
    assert_eq!(f, random_function(4, 7, 0.5).unwrap());
    assert_ne!(f, random_function(4, 8, 0.5).unwrap());
    assert!(random_function(4, 7, 0.0).unwrap().marked().next().is_none());
    assert_eq!(random_function(4, 7, 1.0).unwrap().marked().count(), 16);
}

#[test]
fn same_seed_same_bytes() {
    for format in [Format::Json, Format::Csv] {
        let mk = || ExperimentConfig {
            format,
            epsilon: Some(vec![0.7, 1.3, 0.9, 1.1, 0.5]),
            ..config(5, FunctionSource::Random { seed: 9, density: 0.4 })
        };
        let a = run_experiment(&mk()).unwrap().rendered;
        let b = run_experiment(&mk()).unwrap().rendered;
        assert_eq!(a, b);
    }
}

#[test]
fn json_layout() {
    let out = run_experiment(&config(3, FunctionSource::Single(5))).unwrap();
    let keys: Vec<_> = ["\"n\"", "\"parity\"", "\"G_parity_reference\"", "\"runs\"", "\"uo_calls\"", "\"uf_calls\"", "\"trace\""]
        .iter()
        .map(|k| out.rendered.find(k).unwrap_or_else(|| panic!("missing {k}")))
        .collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]), "keys out of order");
    let v: serde_json::Value = serde_json::from_str(&out.rendered).unwrap();
    assert!(v["n"].is_u64() && v["runs"].is_u64() && v["parity"].is_i64());
    assert_eq!(v["trace"][0]["M"], 0);
    assert_eq!(v["trace"][0]["amplitudes"][0], -1.0);
    assert!(!out.rendered.contains("-0.0,") && !out.rendered.contains("-0.0\n"));

    let unverified = run_experiment(&ExperimentConfig::new(Some(3), FunctionSource::Single(5))).unwrap();
    assert!(!unverified.rendered.contains("G_parity_reference"));
}

#[test]
fn csv_has_one_row_per_run() {
    let cfg = ExperimentConfig { format: Format::Csv, ..config(4, FunctionSource::Single(2)) };
    let out = run_experiment(&cfg).unwrap();
    let lines: Vec<_> = out.rendered.lines().collect();
    assert_eq!(lines[0], "step,M,sign,decision,amplitude_1,amplitude_2,amplitude_3,amplitude_4");
    assert_eq!(lines.len(), 1 + out.report.runs);
}

#[test]
fn mismatch_is_reported_not_hidden() {
    // A floor above the 2/N line makes a single mark read as silence.
    let cfg = ExperimentConfig { snr: true, threshold: 0.2, ..config(4, FunctionSource::Single(3)) };
    let out = run_experiment(&cfg).unwrap();
    assert_eq!(out.status, Status::Mismatch);
    assert_eq!(out.status.code(), 2);
    assert_eq!((out.report.parity, out.report.g_parity_reference), (1, Some(-1)));
}

#[test]
fn file_source_and_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("f.txt");
    std::fs::write(&table, "3\n+-+++--+\n").unwrap();
    let report = dir.path().join("r.json");
    let cfg = ExperimentConfig { out: Some(report.clone()), ..config(3, FunctionSource::File(table.clone())) };
    let out = run_experiment(&cfg).unwrap();
    assert_eq!(std::fs::read_to_string(&report).unwrap(), out.rendered);
    // Marks at 1, 5 and 6.
    assert_eq!(out.report.parity, -1);

    let wrong_n = ExperimentConfig::new(Some(4), FunctionSource::File(table));
    assert!(matches!(run_experiment(&wrong_n), Err(CliError::Config(_))));
}

#[test]
fn configuration_errors() {
    let bad = |cfg: ExperimentConfig| assert!(run_experiment(&cfg).is_err());
    bad(ExperimentConfig::new(None, FunctionSource::ConstPlus));
    bad(ExperimentConfig::new(Some(0), FunctionSource::ConstPlus));
    bad(ExperimentConfig::new(Some(13), FunctionSource::ConstPlus));
    bad(ExperimentConfig::new(Some(3), FunctionSource::Single(8)));
    bad(ExperimentConfig { epsilon: Some(vec![1.0, 2.0]), ..ExperimentConfig::new(Some(3), FunctionSource::ConstPlus) });
    bad(ExperimentConfig { epsilon: Some(vec![-1.0]), ..ExperimentConfig::new(Some(3), FunctionSource::ConstPlus) });
    bad(ExperimentConfig { threshold: -1.0, ..ExperimentConfig::new(Some(3), FunctionSource::ConstPlus) });
    bad(ExperimentConfig::new(None, FunctionSource::File("/nonexistent/table.txt".into())));
}

#[test]
fn function_source_syntax() {
    assert_eq!(FunctionSource::parse("const-plus", None, 0.5).unwrap(), FunctionSource::ConstPlus);
    assert_eq!(FunctionSource::parse("single:5", None, 0.5).unwrap(), FunctionSource::Single(5));
    assert_eq!(FunctionSource::parse("file:a.txt", None, 0.5).unwrap(), FunctionSource::File("a.txt".into()));
    assert_eq!(FunctionSource::parse("a.txt", None, 0.5).unwrap(), FunctionSource::File("a.txt".into()));
    assert_eq!(
        FunctionSource::parse("random", Some(3), 0.25).unwrap(),
        FunctionSource::Random { seed: 3, density: 0.25 }
    );
    assert!(FunctionSource::parse("random", None, 0.5).is_err());
    assert!(FunctionSource::parse("random", Some(1), 1.5).is_err());
    assert!(FunctionSource::parse("single:x", None, 0.5).is_err());
}

#[test]
fn verified_parity_matches_reference_for_file_tables() {
    let dir = tempfile::tempdir().unwrap();
    for seed in 0..20 {
        let f = random_function(5, seed, 0.5).unwrap();
        let path = dir.path().join(format!("{seed}.txt"));
        std::fs::write(&path, format_truth_table(&f)).unwrap();
        let out = run_experiment(&config(5, FunctionSource::File(path))).unwrap();
        assert_eq!(out.report.parity, brute_parity(&f));
    }
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| binary().args(args).output().unwrap().status.code().unwrap();
    assert_eq!(code(&["--n", "3", "--function", "const-minus", "--verify"]), 0);
    assert_eq!(code(&["--n", "3", "--function", "single:5", "--verify"]), 0);
    assert_eq!(code(&["--n", "6", "--function", "random", "--seed", "42", "--density", "0.5", "--verify"]), 0);
    assert_eq!(code(&["--n", "4", "--function", "single:3", "--snr", "--threshold", "0.2", "--verify"]), 2);
    assert_eq!(code(&["--n", "3", "--function", "random"]), 1);
    assert_eq!(code(&["--n", "3", "--function", "const-plus", "--seed", "1"]), 1);
    assert_eq!(code(&["--n", "3", "--function", "const-plus", "--format", "xml"]), 1);
    assert_eq!(code(&["--no-such-flag"]), 1);
    assert_eq!(code(&["--help"]), 0);

    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("bad.txt");
    std::fs::write(&table, "2\n++-\n").unwrap();
    let out = binary().args(["--function", table.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2, column 4"));
}

#[test]
fn binary_output_is_reproducible() {
    let run = || {
        binary()
            .args(["--n", "7", "--function", "random", "--seed", "123", "--verify"])
            .output()
            .unwrap()
            .stdout
    };
    let a = run();
    assert!(!a.is_empty());
    assert_eq!(a, run());
}
