use std::path::Path;
use std::process::{Command, Output};

fn afrelay(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_afrelay"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_config(dir: &Path, text: &str) -> String {
    let path = dir.join("scenario.cfg");
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn field(csv: &str, name: &str) -> String {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let idx = header.iter().position(|h| *h == name).unwrap();
    lines.next().unwrap().split(',').nth(idx).unwrap().to_string()
}

#[test]
fn solve_prints_csv() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "n_s=4 n_r=4 n_d=4\nrho=1 alpha=1\n");
    let out = afrelay(&["solve", "--config", &cfg]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = String::from_utf8(out.stdout).unwrap();
    assert!(csv.starts_with("s2_variant,s1,s2,s3,t1,t2,t3,residual,iterations,mean_nats,variance_nats2,"));
    let mean: f64 = field(&csv, "mean_nats").parse().unwrap();
    assert!(mean > 1.1 && mean < 1.12);
    assert!(!csv.contains('\r'));
}

#[test]
fn variant_flag_overrides_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "n_s=2 n_r=2 n_d=2 rho=1 alpha=1 s2_variant=consistent",
    );
    let out = afrelay(&["solve", "--config", &cfg, "--s2-variant", "printed", "--bits"]);
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(field(&csv, "s2_variant"), "printed");
    assert!(csv.contains("mean_bits"));
}

#[test]
fn compare_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "n_s=2 n_r=3 n_d=3 rho=2 alpha=1\ncov_Rr = exponential 0.4\n",
    );
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let out = afrelay(&[
            "compare",
            "--config",
            &cfg,
            "--samples",
            "3000",
            "--seed",
            "9",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn simulate_dump_has_one_value_per_line() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "n_s=2 n_r=2 n_d=2 rho=1 alpha=1");
    let dump = dir.path().join("mi.txt");
    let out = afrelay(&[
        "simulate",
        "--config",
        &cfg,
        "--samples",
        "50",
        "--dump",
        dump.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&dump).unwrap();
    assert_eq!(text.lines().count(), 50);
    assert!(text.lines().all(|l| l.parse::<f64>().is_ok_and(|v| v >= 0.0)));
}

#[test]
fn sweep_failure_sets_exit_code_but_keeps_rows() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "n_s=2 n_r=2 n_d=2 rho=1 alpha=1");
    let out = afrelay(&[
        "sweep",
        "--config",
        &cfg,
        "--sweep-param",
        "alpha",
        "--values",
        "1,-2,3",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(csv.lines().count(), 4);
    assert!(csv.lines().nth(2).unwrap().contains(",error,"));
}

#[test]
fn sweep_with_monte_carlo_columns() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "n_s=2 n_r=2 n_d=2 rho=1 alpha=1");
    let out = afrelay(&[
        "sweep",
        "--config",
        &cfg,
        "--sweep-param",
        "rho",
        "--values",
        "0.5,2",
        "--samples",
        "200",
    ]);
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    assert!(csv.lines().next().unwrap().contains("mc_k1_nats"));
}

#[test]
fn bad_config_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "n_s=2 n_r=2 n_d=2\nrho=1 alpha=1\ncov_Rd = exponential 2\n",
    );
    let out = afrelay(&["solve", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn too_few_samples_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "n_s=2 n_r=2 n_d=2 rho=1 alpha=1");
    let out = afrelay(&["compare", "--config", &cfg, "--samples", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_config_file() {
    let out = afrelay(&["solve", "--config", "/nonexistent/afrelay.cfg"]);
    assert_eq!(out.status.code(), Some(2));
}
