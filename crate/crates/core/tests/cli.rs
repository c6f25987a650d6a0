use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_threephase");

fn threephase(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().unwrap()
}

fn quick(out: &Path, extra: &[&str]) -> Output {
    let mut args = vec!["--h0", "0.5", "--levels", "3", "--tau-rule", "h", "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    threephase(&args)
}

struct Row {
    h: f64,
    dofs: usize,
    err: [f64; 3],
    rate: [Option<f64>; 3],
}

fn read_csv(path: &Path) -> Vec<Row> {
    let mut reader = csv::Reader::from_path(path).unwrap();
    let headers = reader.headers().unwrap().clone();
    assert_eq!(
        headers.iter().collect::<Vec<_>>(),
        ["h", "dofs", "err_p", "rate_p", "err_sa", "rate_sa", "err_sv", "rate_sv"]
    );
    reader
        .records()
        .map(|r| {
            let r = r.unwrap();
            let num = |i: usize| r[i].parse::<f64>().unwrap();
            let opt = |i: usize| (!r[i].is_empty()).then(|| num(i));
            Row {
                h: num(0),
                dofs: r[1].parse().unwrap(),
                err: [num(2), num(4), num(6)],
                rate: [opt(3), opt(5), opt(7)],
            }
        })
        .collect()
}

#[test]
fn csv_report_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let out = quick(&path, &[]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("final rates"));
    let rows = read_csv(&path);
    assert_eq!(rows.len(), 3);
    assert_eq!(rows.iter().map(|r| r.h).collect::<Vec<_>>(), [0.5, 0.25, 0.125]);
    for w in rows.windows(2) {
        assert_eq!(w[1].dofs, 4 * w[0].dofs);
    }
    assert_eq!(rows[0].dofs, 16);
    assert_eq!(rows[0].rate, [None; 3]);
    for l in 1..3 {
        for i in 0..3 {
            let expected = (rows[l - 1].err[i] / rows[l].err[i]).log2();
            assert_eq!(rows[l].rate[i].unwrap().to_bits(), expected.to_bits());
        }
    }
}

#[test]
fn reruns_write_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    assert!(quick(&a, &[]).status.success());
    assert!(quick(&b, &["--sequential"]).status.success());
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# coarse gravity run\ncase = gravity\nlevels = 4\nh0 = 0.5\ntau_rule = h\ntheta = 1, 1, 1\nformat = markdown\n").unwrap();
    let report = dir.path().join("report.md");
    let out = threephase(&["--config", cfg.to_str().unwrap(), "--levels", "2", "--out", report.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let md = std::fs::read_to_string(&report).unwrap();
    assert!(md.starts_with("| h | DOFs |"));
    assert_eq!(md.lines().count(), 4);
}

#[test]
fn configuration_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.csv");
    let o = out.to_str().unwrap();
    for args in [
        vec!["--case", "nonexistent", "--out", o],
        vec!["--levels", "0", "--out", o],
        vec!["--alpha", "-1", "--out", o],
        vec!["--h0", "0.3", "--out", o],
        vec!["--format", "xml", "--out", o],
        vec!["--config", "/nonexistent/run.cfg", "--out", o],
    ] {
        let result = threephase(&args);
        assert_eq!(result.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&result.stderr));
        assert!(!out.exists());
    }
}
