use std::fs;
use std::process::{Command, Output};

fn twconv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twconv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn small_config(dir: &std::path::Path, extra: &str) -> std::path::PathBuf {
    let path = dir.join("run.conf");
    let text = format!(
        "seed = 5\n{extra}\n[samples]\ndiff = 30\nlifted = 30\nsrp = 3\nsymmetry = 30\nlp = 30\nschatten = 30\nfourier = 30\nalgebraic = 5\n"
    );
    fs::write(&path, text).unwrap();
    path
}

#[test]
fn corrupted_table_exits_one_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    // C3 with 1·1 changed from 2 to 1
    fs::write(dir.path().join("broken_c3.txt"), "0 1 2\n1 1 0\n2 0 1\n").unwrap();
    let conf = small_config(
        dir.path(),
        "table = broken_c3.txt\nsuite = group_axioms\nextension = C6 / <g^2>",
    );
    let out = twconv(&["run", "--config", conf.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let csv = String::from_utf8(out.stdout).unwrap();
    assert!(csv.lines().any(
        |l| l.starts_with("group_axioms,broken_c3,witness: associativity") && l.contains(",fail,")
    ));
    assert!(csv
        .lines()
        .any(|l| l.starts_with("group_axioms,C6,violations,") && l.contains(",pass,")));
}

#[test]
fn passing_run_exits_zero_and_csv_is_thread_independent() {
    let dir = tempfile::tempdir().unwrap();
    let conf = small_config(dir.path(), "extension = Q8 / <i>\nextension = D4 / <r>\nsuite = twisted_axioms\nsuite = covariant\nsuite = symmetry\nsuite = fourier");
    let mut csvs = Vec::new();
    for threads in ["1", "2"] {
        let out_path = dir.path().join(format!("report{threads}.csv"));
        let out = twconv(&[
            "run",
            "--config",
            conf.to_str().unwrap(),
            "--threads",
            threads,
            "--out",
            out_path.to_str().unwrap(),
        ]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        csvs.push(fs::read(out_path).unwrap());
    }
    assert_eq!(csvs[0], csvs[1]);
    let text = String::from_utf8(csvs[0].clone()).unwrap();
    assert!(text
        .starts_with("suite,system,norm_pair,samples,c_hat_or_residual,tolerance,verdict,seed\n"));
    assert!(!text.contains('\r'));
}

#[test]
fn flags_override_the_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let conf = small_config(dir.path(), "suite = fourier");
    let out = twconv(&[
        "run",
        "--config",
        conf.to_str().unwrap(),
        "--seed",
        "99",
        "--suite",
        "hstar",
        "--format",
        "table",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("hstar"));
    assert!(!text.contains("fourier"));
    assert!(text.trim_end().ends_with("0 failed, 0 incomplete"));
}

#[test]
fn config_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("bad.conf");
    fs::write(&conf, "seed = 1\nwidth = 3\n").unwrap();
    let out = twconv(&["run", "--config", conf.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2, column 1: unknown key `width`"));

    assert_eq!(twconv(&["run", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(
        twconv(&["run", "--extension", "Q8 <i>"]).status.code(),
        Some(2)
    );
    assert_eq!(twconv(&["run", "--format", "xml"]).status.code(), Some(2));
}

#[test]
fn unwritable_output_still_flushes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let conf = small_config(dir.path(), "suite = hstar");
    let target = dir.path().join("missing").join("out.csv");
    let out = twconv(&[
        "run",
        "--config",
        conf.to_str().unwrap(),
        "--out",
        target.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8(out.stdout).unwrap().contains("hstar,"));
}

#[test]
fn describe_prints_the_cocycle() {
    let out = twconv(&["describe", "Q8 / <i>"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("split      no"));
    assert!(text.contains("j | 1 -1"));
    assert_eq!(twconv(&["describe", "Q8 / <q>"]).status.code(), Some(2));
}
