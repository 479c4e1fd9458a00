use std::process::{Command, Output};

use rindler_pqc::read_csv;

fn sweep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rindler-sweep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scratch(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("rindler-sweep-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn writes_parseable_csv() {
    let out = scratch("basic.csv");
    let o = sweep(&["--r-list", "0,0.5", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let records = read_csv(std::fs::File::open(&out).unwrap()).unwrap();
    assert_eq!(records.len(), 2);
    assert!((records[0].chi_partial - 1.0).abs() < 1e-9);
    assert_eq!(records[1].moment_gaps.iter().map(|g| g.0).collect::<Vec<_>>(), vec![2, 4]);
    assert!(records[1].wall_time_s.is_none());
}

#[test]
fn output_is_reproducible() {
    let args = ["--r-min", "0", "--r-max", "1", "--steps", "4", "--ensemble", "tetra"];
    let a = sweep(&args);
    let b = sweep(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let records = read_csv(a.stdout.as_slice()).unwrap();
    assert_eq!(records.len(), 5);
    assert!(records.iter().all(|r| r.helstrom.is_none() && r.chain_ok));
}

#[test]
fn report_passes_on_decaying_sweep() {
    let out = scratch("report.csv");
    let o = sweep(&["--r-list", "0,0.5,1", "--report", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("monotonicity: ok"), "{text}");
    assert!(text.contains("status: PASS"));
}

#[test]
fn report_on_leak_free_ensemble() {
    // the computational ensemble leaks nothing, so delta_chi is flat at 0:
    // monotone within tolerance, and the report still passes
    let o = sweep(&["--r-list", "0,0.5,1", "--ensemble", "computational", "--report"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("undefined"), "{text}");
}

#[test]
fn report_needs_three_points() {
    let o = sweep(&["--r-list", "0,1", "--report"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn ensemble_file_and_options() {
    let path = scratch("ens.txt");
    std::fs::write(&path, "# p re11 re12 im12 re22\n0.5 0.5 0.5 0 0.5\n0.5 0.5 -0.5 0 0.5\n").unwrap();
    let source = format!("file:{}", path.display());
    let o = sweep(&["--r-list", "0.5", "--ensemble", &source, "--moments", "2", "--partial-pair", "IZ", "--timing"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rec = &read_csv(o.stdout.as_slice()).unwrap()[0];
    // IZ removes the coherence that distinguishes |+> from |->
    assert!(rec.chi_partial.abs() < 1e-12);
    assert!(rec.wall_time_s.is_some());
    assert_eq!(rec.moment_gaps.len(), 1);
}

#[test]
fn acceleration_grid() {
    let o = sweep(&["--accel-min", "1", "--accel-max", "4", "--steps", "3", "--omega", "1"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let records = read_csv(o.stdout.as_slice()).unwrap();
    assert_eq!(records.len(), 4);
    let expected = (-std::f64::consts::PI).exp().atanh();
    assert!((records[0].r - expected).abs() < 1e-12);
}

#[test]
fn exit_codes() {
    assert_eq!(sweep(&["--epsilon", "2"]).status.code(), Some(1));
    assert_eq!(sweep(&["--ensemble", "bogus"]).status.code(), Some(1));
    assert_eq!(sweep(&["--partial-pair", "XX"]).status.code(), Some(1));
    assert_eq!(sweep(&["--r-min", "-1"]).status.code(), Some(1));
    assert_eq!(sweep(&["--spacing", "cubic"]).status.code(), Some(1));
    assert_eq!(sweep(&["--ensemble", "file:/nonexistent/ensemble"]).status.code(), Some(1));
    let o = sweep(&["--r-list", "8", "--epsilon", "1e-12"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("r = 8"));
}
