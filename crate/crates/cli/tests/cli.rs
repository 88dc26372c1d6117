//! End-to-end tests of the `sgflow` binary: file shapes, cross-checks,
//! determinism and exit codes.

use std::path::Path;
use std::process::{Command, Output};

fn sgflow(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_sgflow"));
    cmd.args(args);
    cmd.env_remove("SGFLOW_OUT_DIR");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap_or_else(|e| panic!("read {}: {e}", path.display()))
}

fn csv_column(body: &str, index: usize) -> Vec<f64> {
    body.lines()
        .skip(1)
        .map(|line| line.split(',').nth(index).unwrap().parse().unwrap())
        .collect()
}

#[test]
fn profile_strong_tube() {
    let dir = tempfile::tempdir().unwrap();
    let out = sgflow(
        &[
            "profile",
            "--flow",
            "poiseuille",
            "--bc",
            "strong",
            "--lambda1",
            "0.1",
            "--grid-n",
            "401",
            "--out-dir",
            dir.path().to_str().unwrap(),
        ],
        &[],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let csv = read(&dir.path().join("profile.csv"));
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "sigma,u");
    assert_eq!(lines.len(), 402, "header plus 401 rows");
    let u = csv_column(&csv, 1);
    assert_eq!(*u.last().unwrap(), 0.0, "no-slip row must be exactly zero");

    let meta = read(&dir.path().join("meta.json"));
    let meta: serde_json::Value = serde_json::from_str(&meta).unwrap();
    assert_eq!(meta["flow"], "poiseuille");
    assert!(meta["residual_sup"].as_f64().unwrap() < 1e-3);

    let plt = read(&dir.path().join("profile.plt"));
    assert!(plt.contains("profile.csv"));
}

#[test]
fn profile_weak_rotation_is_identity() {
    let dir = tempfile::tempdir().unwrap();
    let out = sgflow(
        &[
            "profile",
            "--flow",
            "couette",
            "--bc",
            "weak",
            "--lambda1",
            "0.2",
            "--grid-n",
            "101",
            "--out-dir",
            dir.path().to_str().unwrap(),
        ],
        &[],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = read(&dir.path().join("profile.csv"));
    for line in csv.lines().skip(1) {
        let (sigma, u) = line.split_once(',').unwrap();
        assert_eq!(sigma, u, "rigid rotation: u column equals sigma column");
    }
}

#[test]
fn profile_sweep_emits_per_lambda_files_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = sgflow(
        &[
            "profile",
            "--flow",
            "poiseuille",
            "--bc",
            "strong",
            "--sweep",
            "0.2,0.1,0.05",
            "--grid-n",
            "201",
            "--jobs",
            "2",
            "--out-dir",
            dir.path().to_str().unwrap(),
        ],
        &[],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for l1 in ["0.2", "0.1", "0.05"] {
        assert!(dir.path().join(format!("profile_lambda1_{l1}.csv")).exists());
    }
    let summary = read(&dir.path().join("sweep_summary.csv"));
    assert_eq!(summary.lines().next().unwrap(), "lambda1,sup_error,phi");
    assert_eq!(summary.lines().count(), 4);
    // classical-limit trend: errors decrease, discharge approaches 1
    let errs = csv_column(&summary, 1);
    assert!(errs[0] > errs[1] && errs[1] > errs[2]);
    let phi = csv_column(&summary, 2);
    assert!(phi[0] < phi[1] && phi[1] < phi[2] && phi[2] < 1.0);
}

#[test]
fn identical_config_gives_byte_identical_output() {
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    for dir in [&dir_a, &dir_b] {
        let out = sgflow(
            &[
                "profile",
                "--flow",
                "poiseuille",
                "--bc",
                "weak",
                "--lambda2",
                "0.1",
                "--lambda3",
                "0.05",
                "--lambda4",
                "0.08",
                "--grid-n",
                "301",
                "--out-dir",
                dir.path().to_str().unwrap(),
            ],
            &[],
        );
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(
        read(&dir_a.path().join("profile.csv")),
        read(&dir_b.path().join("profile.csv"))
    );
    assert_eq!(
        read(&dir_a.path().join("meta.json")),
        read(&dir_b.path().join("meta.json"))
    );
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(
        &cfg,
        "# tube flow demo\nflow = poiseuille\nbc = strong\nlambda1 = 0.3\ngrid_n = 51\n",
    )
    .unwrap();
    let out = sgflow(
        &[
            "profile",
            "--config",
            cfg.to_str().unwrap(),
            "--lambda1",
            "0.1", // flag wins
            "--out-dir",
            dir.path().to_str().unwrap(),
        ],
        &[],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let meta: serde_json::Value =
        serde_json::from_str(&read(&dir.path().join("meta.json"))).unwrap();
    assert_eq!(meta["lambdas"]["lambda1"].as_f64().unwrap(), 0.1);
    assert_eq!(meta["grid_n"].as_u64().unwrap(), 51);
}

#[test]
fn out_dir_env_default() {
    let dir = tempfile::tempdir().unwrap();
    let out = sgflow(
        &[
            "profile",
            "--flow",
            "couette",
            "--bc",
            "strong",
            "--lambda1",
            "0.1",
            "--grid-n",
            "51",
        ],
        &[("SGFLOW_OUT_DIR", dir.path().to_str().unwrap())],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(dir.path().join("profile.csv").exists());
}

#[test]
fn discharge_table_and_gate() {
    let dir = tempfile::tempdir().unwrap();
    let out = sgflow(
        &[
            "discharge",
            "--flow",
            "poiseuille",
            "--bc",
            "weak",
            "--sweep",
            "0.3,0.2,0.1,0.05",
            "--out-dir",
            dir.path().to_str().unwrap(),
        ],
        &[],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = read(&dir.path().join("phi.csv"));
    assert_eq!(
        csv.lines().next().unwrap(),
        "lambda1,phi_closed,phi_quadrature,gap"
    );
    let gaps = csv_column(&csv, 3);
    assert!(gaps.iter().all(|g| *g <= 1e-8));
    let phi = csv_column(&csv, 1);
    // descending lambda list: discharge increases toward 1
    for w in phi.windows(2) {
        assert!(w[1] > w[0]);
    }
    assert!(phi.iter().all(|p| *p < 1.0));

    // missing sweep list is a configuration error
    let out = sgflow(&["discharge", "--flow", "poiseuille"], &[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn pressure_classical_and_second_gradient() {
    let dir = tempfile::tempdir().unwrap();
    // classical run: lambda0 = lambda1 = 0
    let out = sgflow(
        &[
            "pressure",
            "--flow",
            "couette",
            "--bc",
            "strong",
            "--lambda1",
            "0",
            "--grid-n",
            "101",
            "--out-dir",
            dir.path().to_str().unwrap(),
        ],
        &[],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = read(&dir.path().join("pressure.csv"));
    assert_eq!(csv.lines().next().unwrap(), "sigma,pi_prime,pi,method");
    for line in csv.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols[3], "classical");
        let sigma: f64 = cols[0].parse().unwrap();
        let pi: f64 = cols[2].parse().unwrap();
        assert!((pi - 0.5 * sigma * sigma).abs() <= 1e-12);
    }

    // second-gradient run: both solvers, wall condition, cross-check report
    let dir = tempfile::tempdir().unwrap();
    let out = sgflow(
        &[
            "pressure",
            "--flow",
            "couette",
            "--bc",
            "weak",
            "--lambda0",
            "0.1",
            "--lambda1",
            "0.1",
            "--grid-n",
            "402",
            "--out-dir",
            dir.path().to_str().unwrap(),
        ],
        &[],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = read(&dir.path().join("pressure.csv"));
    let mut methods = std::collections::BTreeSet::new();
    let mut wall_pi_prime: Vec<f64> = Vec::new();
    for line in csv.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        methods.insert(cols[3].to_string());
        let sigma: f64 = cols[0].parse().unwrap();
        if sigma == 1.0 {
            wall_pi_prime.push(cols[1].parse().unwrap());
        }
    }
    assert_eq!(
        methods.into_iter().collect::<Vec<_>>(),
        vec!["closed_form".to_string(), "fd_bvp".to_string()]
    );
    assert_eq!(wall_pi_prime.len(), 2);
    assert!(wall_pi_prime.iter().all(|g| g.abs() <= 1e-8));

    let report: serde_json::Value =
        serde_json::from_str(&read(&dir.path().join("report.json"))).unwrap();
    let gap = report["report"]["dual_solver_gap"].as_f64().unwrap();
    assert!(gap > 0.0 && gap < 1e-3, "dual gap {gap}");

    // the tube flow has no radial pressure problem here
    let out = sgflow(
        &["pressure", "--flow", "poiseuille", "--lambda1", "0.1"],
        &[],
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn validate_exit_codes() {
    // all-zero lengths pass
    let out = sgflow(&["validate", "--mu", "1", "--lambda2", "0"], &[]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    // violating eta set: exit 5, inequality named on stderr
    let out = sgflow(
        &["validate", "--mu", "1", "--eta1", "1", "--eta2", "1", "--eta3", "0"],
        &[],
    );
    assert_eq!(out.status.code(), Some(5));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("eta1 >= 2|eta2|"), "stderr: {err}");

    // both parameterizations at once: configuration error
    let out = sgflow(
        &["validate", "--mu", "1", "--eta1", "1", "--lambda2", "0.1"],
        &[],
    );
    assert_eq!(out.status.code(), Some(2));

    // Barus block: classical ellipticity lost, second-gradient kept
    let out = sgflow(
        &[
            "validate",
            "--mu",
            "1",
            "--lambda2",
            "0.1",
            "--barus-mu0",
            "1",
            "--barus-alpha",
            "1",
            "--barus-p0",
            "0",
            "--pressure",
            "0",
            "--shear-rate",
            "2",
        ],
        &[],
    );
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("classical_elliptic = false"), "{text}");
    assert!(text.contains("second_gradient_elliptic = true"), "{text}");
}

#[test]
fn json_format_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = sgflow(
        &[
            "profile",
            "--flow",
            "poiseuille",
            "--bc",
            "strong",
            "--lambda1",
            "0.1",
            "--grid-n",
            "21",
            "--format",
            "json",
            "--out-dir",
            dir.path().to_str().unwrap(),
        ],
        &[],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rows: serde_json::Value =
        serde_json::from_str(&read(&dir.path().join("profile.json"))).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 21);
    assert_eq!(rows[0]["sigma"].as_f64().unwrap(), 0.0);
    assert_eq!(rows[20]["u"].as_f64().unwrap(), 0.0);
    assert!(!dir.path().join("profile.csv").exists());
}

#[test]
fn malformed_config_is_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "flow poiseuille\n").unwrap();
    let out = sgflow(&["profile", "--config", cfg.to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(2));

    let out = sgflow(&["profile", "--flow", "vortex"], &[]);
    assert_eq!(out.status.code(), Some(2));
}
