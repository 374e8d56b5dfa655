//! CLI behavior tests, including the determinism criterion: every command,
//! run twice on an identical configuration, produces byte-identical output.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_chiralosc")
}

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(bin())
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

const CONFIG: &str = r#"
seed = 7

[params]
mass = 1.0
omega = 1.0
charge = 1.0
light_speed = 1.0
hbar = 1.0

[integrator]
rel_tol = 1e-10
abs_tol = 1e-12

[evolve]
chirality = "+"
x0 = [1.0, 0.0]
t_start = 0.0
t_end = 6.283185307179586

[zeeman]
n = 1
j = 0
b = 0.1

[spectrum]
n_max = 8
b = 0.2

[solder]
x0 = [1.0, 0.0]
y0 = [1.0, 0.0]
periods = 10.0
trials = 100

[invariants]
x0 = [1.0, 0.4]
y0 = [0.25, -0.35]
periods = 10.0

[duality]
trials = 100
theta_points = 32
"#;

fn write_config(dir: &Path) -> PathBuf {
    let p = dir.join("run.toml");
    fs::write(&p, CONFIG).unwrap();
    p
}

#[test]
fn criterion_9_cli_determinism() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    write_config(dir);

    let commands: [(&str, &[&str]); 6] = [
        ("evolve", &[]),
        ("zeeman", &[]),
        ("spectrum", &[]),
        ("solder", &[]),
        ("invariants", &[]),
        ("duality", &[]),
    ];
    for (cmd, extra) in commands {
        let mut outputs: Vec<Vec<(PathBuf, Vec<u8>)>> = Vec::new();
        for pass in 0..2 {
            let out = dir.join(format!("{cmd}_{pass}.out"));
            let mut args = vec![
                cmd,
                "--config",
                "run.toml",
                "--out",
                out.to_str().unwrap(),
            ];
            args.extend_from_slice(extra);
            let res = run(&args, dir);
            assert!(
                res.status.success(),
                "{cmd} pass {pass} failed: {}",
                String::from_utf8_lossy(&res.stderr)
            );
            let mut files = vec![(out.clone(), fs::read(&out).unwrap())];
            let sidecar = PathBuf::from(format!("{}.drift.json", out.display()));
            if sidecar.exists() {
                files.push((sidecar.clone(), fs::read(&sidecar).unwrap()));
            }
            outputs.push(files);
        }
        assert_eq!(outputs[0].len(), outputs[1].len(), "{cmd}: artifact count differs");
        for (a, b) in outputs[0].iter().zip(outputs[1].iter()) {
            assert_eq!(a.1, b.1, "{cmd}: bytes differ between runs ({:?} vs {:?})", a.0, b.0);
        }
    }
    println!("ACCEPTANCE 9 PASS: all six commands byte-identical across two runs");
}

#[test]
fn evolve_full_period_returns_to_start() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    write_config(dir);
    let out = dir.join("traj.csv");
    let res = run(&["evolve", "--config", "run.toml", "--out", out.to_str().unwrap()], dir);
    assert!(res.status.success());

    let text = fs::read_to_string(&out).unwrap();
    let last = text.lines().last().unwrap();
    let cols: Vec<f64> = last.split(',').map(|v| v.parse().unwrap()).collect();
    assert!((cols[0] - 2.0 * std::f64::consts::PI).abs() < 1e-14);
    assert!((cols[1] - 1.0).abs() < 1e-8, "x1 end {}", cols[1]);
    assert!(cols[2].abs() < 1e-8, "x2 end {}", cols[2]);

    let drift: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(format!("{}.drift.json", out.display())).unwrap())
            .unwrap();
    for key in ["hamiltonian_drift", "angular_momentum_drift", "invariant_drift"] {
        let v = drift[key].as_f64().unwrap();
        assert!(v < 1e-8, "{key} = {v}");
    }
}

#[test]
fn evolve_requires_out_path() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    write_config(dir);
    let res = run(&["evolve", "--config", "run.toml"], dir);
    assert_eq!(res.status.code(), Some(2));
}

#[test]
fn malformed_config_exits_2_without_output() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    fs::write(dir.join("bad.toml"), "[evolve]\nchirality = \"+\"\nunknown_key = 3\n").unwrap();
    let out = dir.join("traj.csv");
    let res = run(
        &["evolve", "--config", "bad.toml", "--out", out.to_str().unwrap()],
        dir,
    );
    assert_eq!(res.status.code(), Some(2));
    assert!(!out.exists(), "no output file on config error");
}

#[test]
fn zeeman_reference_row() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    write_config(dir);
    let out = dir.join("levels.csv");
    let res = run(&["zeeman", "--config", "run.toml", "--out", out.to_str().unwrap()], dir);
    assert!(res.status.success());
    let text = fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "n,j,E_minus,E_0,E_plus");
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[0], "1");
    assert_eq!(row[1], "0");
    let (em, e0, ep): (f64, f64, f64) =
        (row[2].parse().unwrap(), row[3].parse().unwrap(), row[4].parse().unwrap());
    assert!((em - 1.35).abs() < 1e-12 && (e0 - 1.5).abs() < 1e-12 && (ep - 1.65).abs() < 1e-12);
    assert!((e0 - em - (ep - e0)).abs() < 1e-12, "split must be symmetric");
}

#[test]
fn zeeman_zero_field_degenerate_triple() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    fs::write(dir.join("z0.toml"), "[zeeman]\nn = 2\nj = 1\nb = 0.0\n").unwrap();
    let out = dir.join("levels.csv");
    let res = run(&["zeeman", "--config", "z0.toml", "--out", out.to_str().unwrap()], dir);
    assert!(res.status.success());
    let text = fs::read_to_string(&out).unwrap();
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[2], row[3]);
    assert_eq!(row[3], row[4]);
}

#[test]
fn zeeman_tabulated_route_and_singularity_flag() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    // smooth profile: phase table written, exit 0
    let mut csv = String::from("t,B\n");
    for i in 0..=100 {
        let t = i as f64 * 0.05;
        csv.push_str(&format!("{t},{}\n", 1.0 + 0.3 * (0.5 * t).sin()));
    }
    fs::write(dir.join("field.csv"), csv).unwrap();
    fs::write(
        dir.join("tab.toml"),
        "[zeeman]\nn = 0\nj = 0\nfield_csv = \"field.csv\"\nrho0 = 1.2\nrhodot0 = 0.0\n",
    )
    .unwrap();
    let out = dir.join("phase.csv");
    let res = run(&["zeeman", "--config", "tab.toml", "--out", out.to_str().unwrap()], dir);
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().next().unwrap(), "t,rho,alpha_plus,alpha_minus");
    // alpha columns are opposite in sign
    let row: Vec<f64> = text
        .lines()
        .nth(40)
        .unwrap()
        .split(',')
        .map(|v| v.parse().unwrap())
        .collect();
    assert!((row[2] + row[3]).abs() < 1e-15);

    // pathological inward state: singularity, partial output, exit 4
    fs::write(dir.join("sfield.csv"), "t,B\n0,0\n1e-20,0\n").unwrap();
    fs::write(
        dir.join("sing.toml"),
        "[zeeman]\nn = 0\nj = 0\nfield_csv = \"sfield.csv\"\nrho0 = 2e-10\nrhodot0 = -2e10\n",
    )
    .unwrap();
    let out = dir.join("sing.csv");
    let res = run(&["zeeman", "--config", "sing.toml", "--out", out.to_str().unwrap()], dir);
    assert_eq!(res.status.code(), Some(4));
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.lines().last().unwrap().starts_with("# ermakov_singularity_after_t="));
    assert!(text.lines().count() > 3, "partial rows retained");
}

#[test]
fn spectrum_reference_values() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    // B = 0: lowest eigenvalue is 1 exactly (hbar = omega = 1)
    fs::write(dir.join("s0.toml"), "[spectrum]\nn_max = 10\nb = 0.0\n").unwrap();
    let out = dir.join("spec.csv");
    let res = run(&["spectrum", "--config", "s0.toml", "--out", out.to_str().unwrap()], dir);
    assert!(res.status.success());
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(
        text.lines().next().unwrap(),
        "n_plus,n_minus,energy,truncation_error,exact_dev"
    );
    let first: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    let e0: f64 = first[2].parse().unwrap();
    assert!((e0 - 1.0).abs() < 1e-10);

    // eB/2Mc = 0.1: first-excited splitting 0.2; comparison column small
    fs::write(dir.join("s1.toml"), "[spectrum]\nn_max = 12\nb = 0.2\n").unwrap();
    let res = run(&["spectrum", "--config", "s1.toml", "--out", out.to_str().unwrap()], dir);
    assert!(res.status.success());
    let text = fs::read_to_string(&out).unwrap();
    let mut rows = Vec::new();
    for line in text.lines().skip(1) {
        let c: Vec<&str> = line.split(',').collect();
        rows.push((
            c[0].parse::<i64>().unwrap(),
            c[1].parse::<i64>().unwrap(),
            c[2].parse::<f64>().unwrap(),
            c[4].parse::<f64>().unwrap(),
        ));
    }
    let e10 = rows.iter().find(|r| r.0 == 1 && r.1 == 0).unwrap().2;
    let e01 = rows.iter().find(|r| r.0 == 0 && r.1 == 1).unwrap().2;
    assert!((e01 - e10 - 0.2).abs() < 1e-6, "split {}", e01 - e10);
    for r in rows.iter().take(6) {
        assert!(r.3.abs() < 1e-6, "exact_dev {} at ({}, {})", r.3, r.0, r.1);
    }
}

#[test]
fn check_commands_pass_and_fail_modes() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    write_config(dir);

    for cmd in ["solder", "invariants", "duality"] {
        let out = dir.join(format!("{cmd}.json"));
        let res = run(&[cmd, "--config", "run.toml", "--out", out.to_str().unwrap()], dir);
        assert_eq!(res.status.code(), Some(0), "{cmd} should pass");
        let report: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
        assert_eq!(report["command"], cmd);
        assert_eq!(report["pass"], true);
        for check in report["checks"].as_array().unwrap() {
            let mut keys: Vec<&str> =
                check.as_object().unwrap().keys().map(String::as_str).collect();
            keys.sort_unstable();
            assert_eq!(keys, ["comparison", "name", "pass", "threshold", "value"]);
        }
    }

    // injected broken tolerance: the invariant drift check must fail
    let out = dir.join("broken.json");
    let res = run(
        &["invariants", "--config", "run.toml", "--tol", "1e-2", "--out", out.to_str().unwrap()],
        dir,
    );
    assert_eq!(res.status.code(), Some(1));
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["pass"], false);
}

#[test]
fn json_format_output() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    write_config(dir);
    let out = dir.join("levels.json");
    let res = run(
        &["zeeman", "--config", "run.toml", "--format", "json", "--out", out.to_str().unwrap()],
        dir,
    );
    assert!(res.status.success());
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc["columns"][2], "E_minus");
    assert!((doc["rows"][0][3].as_f64().unwrap() - 1.5).abs() < 1e-15);
}
