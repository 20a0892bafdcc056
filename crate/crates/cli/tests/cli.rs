//! End-to-end tests of the binary: subcommand wiring, file formats, exit
//! codes and CSV determinism.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> PathBuf {
    // target/debug/polyapprox next to the test binary's directory.
    let mut p = std::env::current_exe().expect("test exe");
    p.pop();
    if p.ends_with("deps") {
        p.pop();
    }
    p.join("polyapprox")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_ball(dir: &std::path::Path) -> PathBuf {
    let path = dir.join("ball.toml");
    fs::write(
        &path,
        "kind = \"ball\"\ncenter = [0.0, 0.0]\nradius = 1.0\n",
    )
    .unwrap();
    path
}

#[test]
fn grid_export_has_header_and_unit_rows() {
    let out = run(&["grid", "--grid-n", "16"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split_whitespace().collect();
    assert_eq!(header[0], "2");
    assert_eq!(header[1], "16");
    let step: f64 = header[2].parse().unwrap();
    assert!((step - 0.3901806440322565).abs() < 1e-6);
    assert_eq!(lines.clone().count(), 16);
    for line in lines {
        let v: Vec<f64> = line
            .split_whitespace()
            .map(|t| t.parse().unwrap())
            .collect();
        assert_eq!(v.len(), 2);
        assert!((v[0].hypot(v[1]) - 1.0).abs() < 1e-12);
    }
}

#[test]
fn grid_too_coarse_exits_2() {
    let out = run(&["grid", "--grid-n", "12"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn approx_reports_ball_numbers_and_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let ball = write_ball(dir.path());
    let prefix = dir.path().join("hat");
    let out = run(&[
        "approx",
        "--body",
        ball.to_str().unwrap(),
        "--grid-n",
        "16",
        "--out",
        prefix.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{:?}", out);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("h_measured = 1.95911582083e-2"), "{stdout}");
    assert!(stdout.contains("bound_main = 3.47456047206e-1"), "{stdout}");
    let hrep = fs::read_to_string(dir.path().join("hat.hrep")).unwrap();
    assert_eq!(hrep.lines().count(), 16);
    let vrep = fs::read_to_string(dir.path().join("hat.vrep")).unwrap();
    assert_eq!(vrep.lines().count(), 16);
    // Vertices of the circumscribed 16-gon sit at radius sec(pi/16).
    let sec = 1.0 / (std::f64::consts::PI / 16.0).cos();
    for line in vrep.lines() {
        let v: Vec<f64> = line
            .split_whitespace()
            .map(|t| t.parse().unwrap())
            .collect();
        assert!((v[0].hypot(v[1]) - sec).abs() < 1e-9);
    }
}

#[test]
fn parse_error_exits_3_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    fs::write(
        &bad,
        "kind = \"ball\"\ncenter = [0.0, 0.0]\nradius = 1.0\nhue = 3\n",
    )
    .unwrap();
    let out = run(&["approx", "--body", bad.to_str().unwrap(), "--grid-n", "16"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 4"), "{err}");
}

#[test]
fn hypothesis_violation_exits_2_for_polytope_bodies() {
    let dir = tempfile::tempdir().unwrap();
    let square = dir.path().join("square.toml");
    fs::write(
        &square,
        "kind = \"h_polytope\"\nhalfspaces = [[1.0, 0.0, 1.0], [-1.0, 0.0, 1.0], [0.0, 1.0, 1.0], [0.0, -1.0, 1.0]]\n",
    )
    .unwrap();
    let out = run(&[
        "approx",
        "--body",
        square.to_str().unwrap(),
        "--grid-n",
        "16",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("hypothesis"), "{err}");
}

#[test]
fn experiment_csv_is_byte_identical_across_runs_and_threads() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let c = dir.path().join("c.csv");
    for (path, threads) in [(&a, "1"), (&b, "1"), (&c, "4")] {
        let out = run(&[
            "experiment",
            "convergence",
            "--n-list",
            "16,32",
            "--threads",
            threads,
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let ca = fs::read(&a).unwrap();
    assert_eq!(ca, fs::read(&b).unwrap());
    assert_eq!(ca, fs::read(&c).unwrap());
    let text = String::from_utf8(ca).unwrap();
    assert!(text.starts_with(
        "N,delta_step,h_measured,h_resolution,bound_main,bound_classical,hyp_ok,runtime_ms"
    ));
    // Bound columns dominate the measured column on hypothesis-true rows.
    for line in text.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols.len(), 8);
        if cols[6] == "true" {
            let h: f64 = cols[2].parse().unwrap();
            let bound: f64 = cols[4].parse().unwrap();
            let classical: f64 = cols[5].parse().unwrap();
            assert!(h <= bound && h <= classical);
        }
        assert_eq!(cols[7], "0", "timings are zeroed by default");
    }
}

#[test]
fn verify_filter_runs_only_matching_criteria() {
    let out = run(&["verify", "--filter", "chebyshev"]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = stdout
        .lines()
        .filter(|l| l.starts_with("criterion="))
        .collect();
    assert_eq!(lines.len(), 1, "{stdout}");
    assert!(lines[0].contains("chebyshev-ball"));
    assert!(lines[0].contains("status=PASS"));
}

#[test]
fn verify_fault_injection_fails_the_grid_criterion() {
    let out = run(&[
        "verify",
        "--filter",
        "grid-decomposition",
        "--inject-grid-fault",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("status=FAIL"), "{stdout}");
}

#[test]
fn bounds_subcommand_reports_all_calculators() {
    let dir = tempfile::tempdir().unwrap();
    let ball = write_ball(dir.path());
    let out = run(&["bounds", "--body", ball.to_str().unwrap(), "--grid-n", "16"]);
    assert!(out.status.success(), "{:?}", out);
    let stdout = String::from_utf8(out.stdout).unwrap();
    for key in [
        "step =",
        "diameter =",
        "bound_classical_general =",
        "eps_of_step =",
        "bound_main =",
        "measured_r0 =",
        "measured_d =",
        "bound_radius_ratio =",
    ] {
        assert!(stdout.contains(key), "missing {key} in:\n{stdout}");
    }
}

#[test]
fn hull_subcommand_writes_inner_vertices() {
    let dir = tempfile::tempdir().unwrap();
    let ball = write_ball(dir.path());
    let prefix = dir.path().join("inner");
    let out = run(&[
        "hull",
        "--body",
        ball.to_str().unwrap(),
        "--grid-n",
        "16",
        "--out",
        prefix.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{:?}", out);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("h_inner = 1.92147195968e-2"), "{stdout}");
    let vrep = fs::read_to_string(dir.path().join("inner.vrep")).unwrap();
    assert_eq!(vrep.lines().count(), 16);
    for line in vrep.lines() {
        let v: Vec<f64> = line
            .split_whitespace()
            .map(|t| t.parse().unwrap())
            .collect();
        assert!(
            (v[0].hypot(v[1]) - 1.0).abs() < 1e-9,
            "inscribed vertex on the sphere"
        );
    }
}

#[test]
fn chebyshev_from_hrep_file() {
    let dir = tempfile::tempdir().unwrap();
    let hrep = dir.path().join("square.hrep");
    fs::write(&hrep, "1 0 1\n-1 0 1\n0 1 1\n0 -1 1\n").unwrap();
    let out = run(&["chebyshev", "--hrep", hrep.to_str().unwrap()]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("radius = 1.00000000000e0"), "{stdout}");
}

#[test]
fn modulus_table_round_trips_through_epsilon() {
    let dir = tempfile::tempdir().unwrap();
    let ball = write_ball(dir.path());
    let table = dir.path().join("modulus.txt");
    let out = run(&[
        "modulus",
        "--body",
        ball.to_str().unwrap(),
        "--table",
        "--points",
        "60",
        "--samples",
        "240",
        "--out",
        table.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{:?}", out);
    let out = run(&[
        "epsilon",
        "--body",
        ball.to_str().unwrap(),
        "--grid-n",
        "16",
        "--modulus-table",
        table.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let eps: f64 = stdout
        .lines()
        .find_map(|l| l.strip_prefix("eps_of_step = "))
        .unwrap()
        .parse()
        .unwrap();
    // Tabulated modulus reproduces the analytic solution to table accuracy.
    assert!((eps - 0.779187911946).abs() < 5e-3, "eps {eps}");
}
