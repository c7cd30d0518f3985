//! End-to-end tests of the command-line binary: artifact formats,
//! reproducibility, and exit codes.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dintime"))
}

fn run_ok(args: &[&str]) -> Output {
    let out = bin().args(args).output().expect("failed to spawn dintime");
    assert!(
        out.status.success(),
        "dintime {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dintime-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn exact_csv_matches_library_bit_exactly() {
    let path = scratch("exact.csv");
    run_ok(&[
        "exact", "--xmin=-1", "--xmax", "1", "--nx", "64", "--tmin", "1e-3", "--tmax", "1e-2",
        "--nt", "5", "--out", path.to_str().unwrap(),
    ]);
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# dintime"), "missing metadata header");
    assert!(text.contains("# grid:"), "missing grid header");

    let parsed = dintime::io::read_csv(&path).unwrap();
    assert_eq!(parsed.times.len(), 5);
    assert_eq!(parsed.grid.n_points, 64);
    // shortest round-trip formatting: the parsed values must equal the
    // library computation bit for bit
    for (row, &t) in parsed.values.iter().zip(&parsed.times) {
        for (&v, &x) in row.iter().zip(&parsed.grid.points()) {
            let expect = dintime::exact::exact_square_packet(x, t).unwrap().norm_sqr();
            assert!(v == expect, "value at x = {x}, t = {t} not bit-exact");
        }
    }
}

#[test]
fn identical_specs_give_byte_identical_outputs() {
    let a = scratch("rep_a.csv");
    let b = scratch("rep_b.csv");
    let args = [
        "replicate", "--map", "free", "--nmax", "30", "--t", "1e-3", "--xmin=-1", "--xmax", "1",
        "--nx", "101",
    ];
    run_ok(&[&args[..], &["--out", a.to_str().unwrap()]].concat());
    run_ok(&[&args[..], &["--out", b.to_str().unwrap()]].concat());
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap(), "outputs differ across runs");
}

#[test]
fn pattern_writes_csv_and_pgm() {
    let base = scratch("pat");
    run_ok(&[
        "pattern", "--map", "free", "--nmax", "30", "--tmin", "1e-3", "--tmax", "0.05", "--nt",
        "8", "--xmin", "0.0", "--xmax", "1.0", "--nx", "32", "--format", "both", "--out",
        base.to_str().unwrap(),
    ]);
    let csv = fs::read_to_string(base.with_extension("csv")).unwrap();
    assert!(csv.starts_with("# dintime"));
    assert_eq!(csv.lines().filter(|l| !l.starts_with('#')).count(), 8);

    let pgm = fs::read(base.with_extension("pgm")).unwrap();
    let header_end = pgm
        .windows(6)
        .position(|w| w == b"65535\n")
        .expect("missing maxval")
        + 6;
    let header = std::str::from_utf8(&pgm[..header_end]).unwrap();
    assert!(header.starts_with("P5\n"));
    assert!(header.contains("# intensity min="));
    assert!(header.contains("32 8"), "unexpected dimensions in {header:?}");
    // 16-bit big-endian samples: 2 bytes per pixel
    assert_eq!(pgm.len() - header_end, 32 * 8 * 2);
}

#[test]
fn compare_exact_vs_replicate_within_frozen_threshold() {
    let path = scratch("cmp_rep.txt");
    run_ok(&[
        "compare", "--a", "exact", "--b", "replicate", "--nmax", "200", "--t", "1e-3", "--out",
        path.to_str().unwrap(),
    ]);
    let (sup, _l2) = read_compare(&path);
    // frozen regression threshold for the n_max = 200 truncation
    assert!(sup <= 1.3e-2, "sup-norm {sup:.4e} above frozen threshold");
}

#[test]
fn compare_gpe_vs_exact_with_matching_smoothing() {
    let path = scratch("cmp_gpe.txt");
    // nx chosen so the comparison grid lands on solver grid points
    run_ok(&[
        "compare", "--a", "gpe", "--b", "exact", "--eps", "0.05", "--t", "0.05", "--dt", "1e-5",
        "--xmin=-2", "--xmax", "2", "--nx", "257", "--out", path.to_str().unwrap(),
    ]);
    let (_sup, l2) = read_compare(&path);
    assert!(l2 <= 1e-5, "gpe vs exact l2 = {l2:.3e} > 1e-5");
}

fn read_compare(path: &PathBuf) -> (f64, f64) {
    let text = fs::read_to_string(path).unwrap();
    let row = text.lines().find(|l| !l.starts_with('#')).expect("no data row");
    let cols: Vec<f64> = row.split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(cols.len(), 3);
    (cols[1], cols[2])
}

#[test]
fn invalid_spec_exits_with_code_2() {
    // grid too small
    let out = bin()
        .args(["exact", "--nx", "4", "--out", scratch("bad1.csv").to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert!(!out.stderr.is_empty(), "no error message on stderr");

    // non-positive start time
    let out = bin()
        .args(["exact", "--tmin", "0", "--out", scratch("bad2.csv").to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn numerical_failure_exits_with_code_3() {
    // far past the near zone the pattern has no fringes left to track
    let out = bin()
        .args([
            "caustics", "--tmin", "5", "--tmax", "6", "--nt", "5", "--out",
            scratch("bad3.txt").to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert!(!out.stderr.is_empty());
}

#[test]
fn caustics_reports_parabolic_fit() {
    let path = scratch("caustics.txt");
    // linear sampling from 2e-3: early log-heavy slices would seed the
    // tracker on an inner fringe and drag the fit off the envelope
    run_ok(&[
        "caustics", "--tmin", "2e-3", "--tmax", "5e-2", "--nt", "25", "--linear-times", "--out",
        path.to_str().unwrap(),
    ]);
    let text = fs::read_to_string(&path).unwrap();
    let fit_line = text.lines().find(|l| l.starts_with("# fit:")).expect("no fit line");
    let r2: f64 = fit_line.split("r2=").nth(1).unwrap().trim().parse().unwrap();
    assert!(r2 >= 0.99, "caustic fit r2 = {r2}");
}
