use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn membrane(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_membrane")).args(args).current_dir(dir).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn column(text: &str, col: usize) -> Vec<(f64, f64)> {
    text.lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].parse().unwrap(), f[col].parse().unwrap())
        })
        .collect()
}

#[test]
fn snapping_extension_of_the_odd_step() {
    let dir = tempfile::tempdir().unwrap();
    let o = membrane(&["corpus", "--function", "odd_step", "--out", "step.csv"], dir.path());
    assert!(o.status.success());
    let o = membrane(&["extend", "--input", "step.csv", "--alpha", "0.5", "--beta", "0.5"], dir.path());
    assert!(o.status.success());
    let rows = column(&stdout(&o), 1);
    let (mut checked, mut worst) = (0, 0.0f64);
    for (x, v) in rows.into_iter().filter(|(x, _)| x.is_finite() && *x > 0.0 && *x <= 10.0) {
        worst = worst.max((v - (1.0 - 2.0 * (-x).exp())).abs());
        checked += 1;
    }
    assert!(checked > 900);
    assert!(worst < 1e-4, "worst deviation {worst:e}");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(membrane(&["verify", "--suite", "complementarity"], d).status.code(), Some(0));
    // An impossible tolerance on a non-exact check fails the suite.
    let o = membrane(&["verify", "--suite", "idempotence", "--tol", "0"], d);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("[FAIL] idempotence"));
    assert_eq!(membrane(&["verify", "--suite", "nope"], d).status.code(), Some(2));
    fs::write(d.join("bad.csv"), "x,value\n0,zero\n").unwrap();
    assert_eq!(membrane(&["extend", "--input", "bad.csv"], d).status.code(), Some(2));
    assert_eq!(membrane(&["extend"], d).status.code(), Some(2));
    assert_eq!(membrane(&["extend", "--function", "gauss", "--alpha", "-1"], d).status.code(), Some(2));
}

#[test]
fn suite_listing_names_every_module() {
    let o = membrane(&["verify", "--list"], Path::new("."));
    assert!(o.status.success());
    let text = stdout(&o);
    for m in ["function_space", "kernel_calculus", "extensions", "projections", "evolution", "scaling_limits", "cli"] {
        assert!(text.lines().any(|l| l.split('\t').nth(1) == Some(m)), "no suite for {m}");
    }
}

#[test]
fn projection_ladder_decreases() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["converge", "--experiment", "projection", "--alpha", "1", "--beta", "3", "--function", "random"];
    let o = membrane(&args, dir.path());
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("grid refined"));
    let errors: Vec<f64> = column(&stdout(&o), 1).into_iter().map(|(_, e)| e).collect();
    assert_eq!(errors.len(), 7);
    assert!(errors.windows(2).all(|w| w[1] <= w[0]));
    assert!(errors[6] <= 0.05 * errors[0]);
}

#[test]
fn explicit_coarse_grid_is_rejected() {
    let args = ["converge", "--experiment", "projection", "--alpha", "1", "--beta", "3", "--function", "random", "--grid-n", "6001"];
    let o = membrane(&args, Path::new("."));
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("resolution guard"));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    for out in ["a.csv", "b.csv"] {
        let o = membrane(&["project", "--which", "skew", "--function", "random", "--seed", "7", "--out", out], d);
        assert!(o.status.success());
    }
    assert_eq!(fs::read(d.join("a.csv")).unwrap(), fs::read(d.join("b.csv")).unwrap());
    let e1 = membrane(&["evolve", "--kind", "weks", "--t", "-0.7", "--function", "random_opposite"], d);
    let e2 = membrane(&["evolve", "--kind", "weks", "--t", "-0.7", "--function", "random_opposite"], d);
    assert!(e1.status.success());
    assert_eq!(e1.stdout, e2.stdout);
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("run.cfg"), "# small run\nfunction = gauss\ngrid-L = 5\ngrid_n = 101\nalpha = 2\n").unwrap();
    let from_file = membrane(&["corpus", "--config", "run.cfg"], d);
    assert!(from_file.status.success());
    // header, two limit rows, 51 nodes per side
    assert_eq!(stdout(&from_file).lines().count(), 1 + 2 + 2 * 51);
    let flagged = membrane(&["corpus", "--config", "run.cfg", "--grid-n", "201"], d);
    assert_eq!(stdout(&flagged).lines().count(), 1 + 2 + 2 * 101);
    fs::write(d.join("bad.cfg"), "speed = 3\n").unwrap();
    assert_eq!(membrane(&["corpus", "--config", "bad.cfg"], d).status.code(), Some(2));
}

#[test]
fn membership_gate_on_extensions() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let o = membrane(&["extend", "--kind", "perp", "--function", "random_opposite", "--tol", "1e-3"], d);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("PASS"));
    // A function without opposite values at 0 has no perp extension.
    assert_eq!(membrane(&["extend", "--kind", "perp", "--function", "step"], d).status.code(), Some(2));
}
