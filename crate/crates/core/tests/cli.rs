use std::path::{Path, PathBuf};
use std::process::Command;

use qudit_correlations::cli::{run, EXIT_DATA, EXIT_OK, EXIT_USAGE};
use qudit_correlations::io::write_matrix_file;
use qudit_correlations::linalg::ComplexMatrix;
use qudit_correlations::states::{bell_state, random_density, werner_state, RandomStateParams, WernerParams};
use tempfile::TempDir;

/// 1e-12 plus slack for parsing values printed at 12 significant digits.
const PRINTED_TOL: f64 = 1e-12 + 1e-15;

fn qcorr(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("qcorr").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn state_file(dir: &TempDir, name: &str, rho: &ComplexMatrix, da: usize, db: usize) -> String {
    let path = dir.path().join(name);
    write_matrix_file(&path, rho, da, db).unwrap();
    path.to_string_lossy().into_owned()
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = qcorr(args);
    assert_eq!(code, EXIT_OK, "args {args:?}: {err}");
    out
}

#[test]
fn bell_discord_line() {
    let dir = TempDir::new().unwrap();
    let bell = state_file(&dir, "bell.mat", &bell_state(2), 2, 2);
    assert_eq!(ok(&["discord", "--measure", "hs", "--subsys", "a", "--input", &bell]), "hs a 2 2 0.5\n");
    assert_eq!(ok(&["discord", "--measure", "hsa", "--subsys", "b", "--input", &bell]), "hsa b 2 2 1\n");
}

#[test]
fn werner_qubit_singlet_hsa() {
    let dir = TempDir::new().unwrap();
    let w = state_file(&dir, "w.mat", &werner_state(WernerParams::new(2, 1.0).unwrap()), 2, 2);
    assert_eq!(ok(&["discord", "--measure", "hsa", "--subsys", "a", "--input", &w]), "hsa a 2 2 0.111111111111\n");
}

#[test]
fn maximally_mixed_has_zero_discord() {
    let dir = TempDir::new().unwrap();
    let text = (0..9)
        .flat_map(|r| (0..9).map(move |c| if r == c { "0.111111111111111111 0" } else { "0 0" }))
        .collect::<Vec<_>>()
        .join("\n");
    let path = dir.path().join("mixed.mat");
    std::fs::write(&path, format!("# I/9\n3 3\n{text}\n")).unwrap();
    let p = path.to_string_lossy();
    assert_eq!(ok(&["discord", "--measure", "hs", "--subsys", "b", "--input", &p]), "hs b 3 3 0\n");
}

#[test]
fn gellmann_prints_matrices() {
    assert_eq!(ok(&["gellmann", "--dim", "2", "--group", "1", "--k", "1"]), "1 0\n0 -1\n");
    assert_eq!(ok(&["gellmann", "--dim", "2", "--group", "2", "--k", "1", "--l", "2"]), "0 1\n1 0\n");
    assert_eq!(ok(&["gellmann", "--dim", "2", "--group", "3", "--k", "1", "--l", "2"]), "0 0 0 -1\n0 1 0 0\n");
    assert_eq!(ok(&["gellmann", "--dim", "3", "--group", "1", "--k", "2"]).lines().count(), 3);
}

#[test]
fn bloch_and_corrmat_of_bell_state() {
    let dir = TempDir::new().unwrap();
    let bell = state_file(&dir, "bell.mat", &bell_state(2), 2, 2);
    assert_eq!(ok(&["bloch", "--input", &bell]), "0\n0\n0\n");
    assert_eq!(ok(&["bloch", "--input", &bell, "--subsys", "b", "--naive"]), "0\n0\n0\n");
    assert_eq!(ok(&["corrmat", "--input", &bell]), "1 0 0\n0 1 0\n0 0 -1\n");
}

#[test]
fn naive_flag_agrees_with_default() {
    let dir = TempDir::new().unwrap();
    let rho = random_density(RandomStateParams::new(6, 8).unwrap());
    let f = state_file(&dir, "r.mat", &rho, 2, 3);
    let parse = |s: String| -> Vec<f64> { s.split_whitespace().map(|t| t.parse().unwrap()).collect() };
    for args in [
        vec!["corrmat", "--input", &f],
        vec!["bloch", "--input", &f, "--subsys", "b"],
        vec!["discord", "--measure", "hs", "--subsys", "b", "--input", &f],
    ] {
        let fast = ok(&args);
        let mut naive_args = args.clone();
        naive_args.push("--naive");
        let slow = ok(&naive_args);
        if args[0] == "discord" {
            assert_eq!(fast.split(' ').take(4).collect::<Vec<_>>(), slow.split(' ').take(4).collect::<Vec<_>>());
            let last = |s: &str| s.trim().rsplit(' ').next().unwrap().parse::<f64>().unwrap();
            assert!((last(&fast) - last(&slow)).abs() <= PRINTED_TOL);
        } else {
            for (a, b) in parse(fast).iter().zip(parse(slow)) {
                assert!((a - b).abs() <= PRINTED_TOL, "{a} vs {b}");
            }
        }
    }
}

#[test]
fn hsa_equals_hs_over_purity() {
    let dir = TempDir::new().unwrap();
    let rho = random_density(RandomStateParams::new(9, 21).unwrap());
    let f = state_file(&dir, "r.mat", &rho, 3, 3);
    let value = |s: String| s.trim().rsplit(' ').next().unwrap().parse::<f64>().unwrap();
    let hs = value(ok(&["discord", "--measure", "hs", "--subsys", "a", "--input", &f]));
    let hsa = value(ok(&["discord", "--measure", "hsa", "--subsys", "a", "--input", &f]));
    let p = value(ok(&["purity", "--input", &f, "--subsys", "b"]));
    assert!((hsa - hs / p).abs() <= PRINTED_TOL, "{hsa} vs {}", hs / p);
}

#[test]
fn werner_sweep_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let one = dir.path().join("one.csv");
    let two = dir.path().join("two.csv");
    let (a, b) = (one.to_string_lossy(), two.to_string_lossy());
    ok(&["werner-sweep", "--dmin", "2", "--dmax", "4", "--wsteps", "11", "--out", &a]);
    ok(&["werner-sweep", "--dmin", "2", "--dmax", "4", "--wsteps", "11", "--out", &b, "--parallel"]);
    let first = std::fs::read(&one).unwrap();
    assert_eq!(first, std::fs::read(&two).unwrap());
    let text = String::from_utf8(first).unwrap();
    assert!(text.starts_with("d,w,hs_numeric,hsa_numeric,hsa_analytic\n"));
    assert_eq!(text.lines().count(), 1 + 3 * 11);
    let row = |d: &str, w: &str| -> Vec<f64> {
        let line = text.lines().find(|l| l.starts_with(&format!("{d},{w},"))).unwrap();
        line.split(',').map(|t| t.parse().unwrap()).collect()
    };
    let singlet = row("2", "1.0");
    assert!((singlet[3] - 1.0 / 9.0).abs() <= 1e-10 && (singlet[4] - 1.0 / 9.0).abs() <= 1e-15);
    let anti = row("3", "-1.0");
    assert!((anti[4] - 0.5).abs() <= 1e-15 && (anti[3] - 0.5).abs() <= 1e-10);
}

#[test]
fn bench_writes_csv() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("bench.csv");
    let o = out.to_string_lossy();
    ok(&["bench", "--dims", "2x2,2x3", "--trials", "2", "--out", &o, "--seed", "4"]);
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "da,db,trials,t_naive_ns,t_opt_ns,speedup,censored");
    assert!(lines.next().unwrap().starts_with("2,2,2,"));
    assert!(lines.next().unwrap().starts_with("2,3,2,"));
}

#[test]
fn usage_errors_exit_1() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("x.csv");
    let o = out.to_string_lossy();
    assert_eq!(qcorr(&[]).0, EXIT_USAGE);
    assert_eq!(qcorr(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(qcorr(&["werner-sweep", "--dmin", "1", "--dmax", "3", "--wsteps", "5", "--out", &o]).0, EXIT_USAGE);
    assert_eq!(qcorr(&["werner-sweep", "--dmin", "2", "--dmax", "3", "--wsteps", "1", "--out", &o]).0, EXIT_USAGE);
    assert_eq!(qcorr(&["werner-sweep", "--dmin", "4", "--dmax", "3", "--wsteps", "5", "--out", &o]).0, EXIT_USAGE);
    assert_eq!(qcorr(&["gellmann", "--dim", "3", "--group", "4", "--k", "1"]).0, EXIT_USAGE);
    assert_eq!(qcorr(&["gellmann", "--dim", "3", "--group", "2", "--k", "2", "--l", "1"]).0, EXIT_USAGE);
    assert_eq!(qcorr(&["bench", "--dims", "2y2", "--out", &o]).0, EXIT_USAGE);
    assert_eq!(qcorr(&["discord", "--measure", "xx", "--subsys", "a", "--input", "f"]).0, EXIT_USAGE);
    assert_eq!(qcorr(&["--help"]).0, EXIT_OK);
}

fn write_raw(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn data_exit(path: &Path, cmd: &[&str]) -> String {
    let p = path.to_string_lossy();
    let mut args = cmd.to_vec();
    args.extend(["--input", &p]);
    let (code, _, err) = qcorr(&args);
    assert_eq!(code, EXIT_DATA, "{args:?}");
    err
}

#[test]
fn invalid_data_exits_2() {
    let dir = TempDir::new().unwrap();
    let hs = ["discord", "--measure", "hs", "--subsys", "a"];
    let non_herm = write_raw(&dir, "nh.mat", "2 0\n0.5 0\n0.3 0\n0 0\n0.5 0\n");
    assert!(data_exit(&non_herm, &["bloch"]).contains("hermiticity"));
    let bad_trace = write_raw(&dir, "tr.mat", "2 0\n0.7 0\n0 0\n0 0\n0.7 0\n");
    data_exit(&bad_trace, &["purity"]);
    let short = write_raw(&dir, "short.mat", "2 2\n0.25 0\n");
    assert!(data_exit(&short, &hs).contains("expected 16 entries"));
    let garbage = write_raw(&dir, "g.mat", "2 0\n1 0\nfoo 0\n0 0\n0 0\n");
    assert!(data_exit(&garbage, &hs).contains("line 3"));
    let nan = write_raw(&dir, "nan.mat", "2 0\nNaN 0\n0 0\n0 0\n1 0\n");
    data_exit(&nan, &["bloch"]);
    let single = write_raw(&dir, "s.mat", "2 0\n0.5 0\n0 0\n0 0\n0.5 0\n");
    data_exit(&single, &hs);
    data_exit(&single, &["corrmat"]);
    data_exit(&dir.path().join("missing.mat"), &["bloch"]);
}

#[test]
fn single_system_bloch_and_purity() {
    let dir = TempDir::new().unwrap();
    let f = write_raw(&dir, "s.mat", "2 0\n1 0\n0 0\n0 0\n0 0\n");
    let p = f.to_string_lossy();
    assert_eq!(ok(&["bloch", "--input", &p]), "1\n0\n0\n");
    assert_eq!(ok(&["purity", "--input", &p]), "purity a 2 0 1\n");
}

#[test]
fn binary_reports_exit_codes() {
    let exe = env!("CARGO_BIN_EXE_qcorr");
    let dir = TempDir::new().unwrap();
    let bell = state_file(&dir, "bell.mat", &bell_state(2), 2, 2);
    let out =
        Command::new(exe).args(["discord", "--measure", "hs", "--subsys", "a", "--input", &bell]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "hs a 2 2 0.5\n");
    let out = Command::new(exe).arg("nope").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let bad = write_raw(&dir, "nh.mat", "2 0\n0.5 0\n0.3 0\n0 0\n0.5 0\n");
    let out = Command::new(exe).args(["bloch", "--input"]).arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}
