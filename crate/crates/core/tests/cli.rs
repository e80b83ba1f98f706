use qchain::symplectic::OpticalNetwork;
use std::process::{Command, Output};

fn qchain(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qchain")).args(args).env_remove("QT_THREADS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn column(csv: &str, name: &str) -> Vec<f64> {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let k = header.iter().position(|h| *h == name).unwrap();
    lines.map(|l| l.split(',').nth(k).unwrap().parse().unwrap()).collect()
}

fn error_json(o: &Output) -> serde_json::Value {
    serde_json::from_str(String::from_utf8_lossy(&o.stderr).lines().last().unwrap()).unwrap()
}

#[test]
fn spectrum_table() {
    let o = qchain(&["spectrum", "--n-modes", "3", "--g0", "0.5"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("j,lambda,lambda_dense,mu,r\n"));
    assert_eq!(column(&text, "lambda"), vec![1.0, 1.5, 2.5]);
}

#[test]
fn reruns_are_byte_identical_across_thread_counts() {
    let args = ["work", "--n-modes", "4", "--sweep", "g0:0:3:17"];
    let a = qchain(&[&args[..], &["--threads", "1"]].concat());
    let b = qchain(&[&args[..], &["--threads", "4"]].concat());
    let c = qchain(&[&args[..], &["--threads", "4"]].concat());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(b.stdout, c.stdout);
}

#[test]
fn dumped_config_reproduces_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["correlations", "--g0", "0.8", "--sweep", "beta:0.5:8:5:log"];
    let dumped = qchain(&[&args[..], &["--dump-config"]].concat());
    assert!(dumped.status.success());
    let path = dir.path().join("run.toml");
    std::fs::write(&path, &dumped.stdout).unwrap();
    let from_file = qchain(&["--config", path.to_str().unwrap()]);
    let from_flags = qchain(&args);
    assert!(from_file.status.success());
    assert_eq!(from_file.stdout, from_flags.stdout);
    let redumped = qchain(&["--config", path.to_str().unwrap(), "--dump-config"]);
    assert_eq!(redumped.stdout, dumped.stdout);
}

#[test]
fn flags_override_the_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.toml");
    std::fs::write(&path, "command = \"work\"\ng0 = 0.5\nbeta = 2.0\n").unwrap();
    let o = qchain(&["--config", path.to_str().unwrap(), "--g0", "1.5"]);
    let direct = qchain(&["work", "--g0", "1.5", "--beta", "2"]);
    assert_eq!(o.stdout, direct.stdout);
}

#[test]
fn work_sweep_has_nonnegative_lag() {
    let o = qchain(&["work", "--n-modes", "3", "--sweep", "beta:0.05:20:40:log"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let betas = column(&text, "beta");
    assert_eq!(betas[0], 0.05);
    assert_eq!(*betas.last().unwrap(), 20.0);
    assert!(column(&text, "lag").iter().all(|&l| l >= 0.0));
    assert!(column(&text, "jarzynski_residual").iter().all(|&r| r < 1e-10));
}

#[test]
fn uncoupled_chi_is_one() {
    let o = qchain(&["chi", "--g0", "0", "--u-points", "21"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(column(&text, "u").len(), 21);
    assert!(column(&text, "re_chi").iter().all(|&x| (x - 1.0).abs() < 1e-15));
    assert!(column(&text, "im_chi").iter().all(|&x| x.abs() < 1e-15));
}

#[test]
fn oracle_report_passes_at_default_truncation() {
    let o = qchain(&["oracle", "--format", "json"]);
    assert!(o.status.success());
    let entries: Vec<serde_json::Value> = serde_json::from_slice(&o.stdout).unwrap();
    assert!(entries.len() >= 14);
    for e in &entries {
        assert_eq!(e["pass"], true, "{e}");
        assert_eq!(e["n_max"], 60);
    }
}

#[test]
fn propagator_export_is_a_valid_network() {
    let o = qchain(&["decompose", "--n-modes", "3", "--time", "1.5", "--format", "json"]);
    assert!(o.status.success());
    let net = OpticalNetwork::from_json(&stdout(&o)).unwrap();
    assert_eq!(net.n_modes, 3);
}

#[test]
fn output_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let o = qchain(&["lagcurve", "--sweep", "beta:0.1:10:4:log", "--output", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("beta,L,L_c,L_q,E,D\n"));
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn invalid_input_exits_with_one() {
    let o = qchain(&["work", "--g0", "-1"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_json(&o)["error"], "invalid_spec");

    let o = qchain(&["work", "--model", "h2", "--g0", "2.5"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_json(&o)["error"], "coupling_too_strong");

    let o = qchain(&["oracle", "--n-modes", "3", "--n-max", "20"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_json(&o)["error"], "dimension_guard");

    let o = qchain(&["chi", "--sweep", "g0:0:1:3"]);
    assert_eq!(o.status.code(), Some(1));

    let o = qchain(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(1));

    let o = qchain(&[]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn unknown_config_keys_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    std::fs::write(&path, "command = \"work\"\ngamma = 3\n").unwrap();
    let o = qchain(&["--config", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_json(&o)["error"], "config");
}

#[test]
fn numerical_failures_map_to_exit_two() {
    use qchain::Error;
    assert!(Error::Continuation("x".into()).is_numerical());
    assert!(Error::Nonconvergent("x".into()).is_numerical());
    assert!(Error::Eigensolver("x".into()).is_numerical());
    assert!(Error::Optimizer { best: 0.0 }.is_numerical());
    assert!(!Error::InvalidSpec("x".into()).is_numerical());
    assert!(!Error::DimensionGuard { dim: 1, limit: 0 }.is_numerical());
}

#[test]
fn help_and_version_exit_cleanly() {
    assert!(qchain(&["--help"]).status.success());
    assert!(qchain(&["--version"]).status.success());
}
