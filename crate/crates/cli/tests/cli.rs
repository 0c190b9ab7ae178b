use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn twirlsim(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twirlsim"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn classify_reports() {
    let dir = tempfile::tempdir().unwrap();
    let o = twirlsim(&["classify", "bennett12"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("is_full_twirl=true"));

    let o = twirlsim(&["classify", "pauli4", "--json"], dir.path());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["is_single_qubit_averager"], true);
    assert_eq!(v["is_full_twirl"], false);

    let o = twirlsim(&["classify", "cyclic:2:z"], dir.path());
    assert!(stdout(&o).contains("is_single_qubit_averager=false"));
}

#[test]
fn unknown_spec_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = twirlsim(&["classify", "tetrahedron"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("tetrahedron"));
    assert_eq!(twirlsim(&["frobnicate"], dir.path()).status.code(), Some(1));
}

#[test]
fn shrink_and_twirl() {
    let dir = tempfile::tempdir().unwrap();
    let o = twirlsim(&["shrink", "random-axis"], dir.path());
    let values: Vec<f64> = stdout(&o).split_whitespace().map(|s| s.parse().unwrap()).collect();
    assert!(values.iter().all(|v| (v - 1.0 / 3.0).abs() < 1e-3));

    let o = twirlsim(&["twirl", "bennett12", "--state", "random", "--seed", "3"], dir.path());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let f_in = v["input"]["singlet_fidelity"].as_f64().unwrap();
    let f_out = v["output"]["singlet_fidelity"].as_f64().unwrap();
    assert!((f_in - f_out).abs() < 1e-12);
    let eps = v["werner_epsilon"].as_f64().unwrap();
    assert!((eps - (4.0 * f_in - 1.0) / 3.0).abs() < 1e-12);
}

#[test]
fn run_writes_a_four_line_spectrum() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("p.seq"), "pulse both 90 x; acquire 4096 0.000273").unwrap();
    let o = twirlsim(&["run", "p.seq", "--out", "out"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = fs::read_to_string(dir.path().join("out/spectrum.csv")).unwrap();
    let rows: Vec<(f64, f64)> = csv
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
            (f[0], f[1])
        })
        .collect();
    assert_eq!(rows.len(), 4096);
    // Local maxima of the real part above a tenth of the tallest line.
    let top = rows.iter().map(|r| r.1).fold(f64::MIN, f64::max);
    let peaks: Vec<f64> = (1..rows.len() - 1)
        .filter(|&k| rows[k].1 > 0.1 * top && rows[k].1 >= rows[k - 1].1 && rows[k].1 >= rows[k + 1].1)
        .map(|k| rows[k].0)
        .collect();
    let expected = [-461.5, -454.3, 454.3, 461.5];
    assert_eq!(peaks.len(), 4, "{peaks:?}");
    for (p, e) in peaks.iter().zip(expected) {
        assert!((p - e).abs() < 1.0, "{p} vs {e}");
    }
    assert!(dir.path().join("out/decomposition.json").exists());
}

#[test]
fn empty_program_gives_the_thermal_decomposition() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("empty.seq"), "# nothing\n").unwrap();
    let o = twirlsim(&["run", "empty.seq", "--out", "."], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(!dir.path().join("spectrum.csv").exists());
    let v: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("decomposition.json")).unwrap()).unwrap();
    assert_eq!(v["coefficients"]["Iz"], 1.0);
    assert_eq!(v["coefficients"]["Sz"], 1.0);
    assert_eq!(v["coefficients"]["Ix"], 0.0);
}

#[test]
fn unrefocused_gradient_warns() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("g.seq"), "pulse both 90 x\ngrad 0.001\n").unwrap();
    let o = twirlsim(&["run", "g.seq"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("warning"), "{}", stderr(&o));
}

#[test]
fn parse_errors_are_located() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("bad.seq"), "delay 0.1\npulse I 60\n").unwrap();
    let o = twirlsim(&["run", "bad.seq"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 2, column 11"), "{}", stderr(&o));
}

#[test]
fn missing_files_are_io_errors() {
    let dir = tempfile::tempdir().unwrap();
    let o = twirlsim(&["--config", "nowhere.cfg", "experiment1"], dir.path());
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("nowhere.cfg"));
    let o = twirlsim(&["run", "missing.seq"], dir.path());
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn bad_config_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("s.cfg"), "nu_i_hz=457.9\ndelta_hz=915.8\n").unwrap();
    let o = twirlsim(&["--config", "s.cfg", "experiment1"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
}

#[test]
fn experiment1_outputs() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("s.cfg"), "nu_i_hz=457.9\nnu_s_hz=-457.9\nj_hz=7.2\n").unwrap();
    let o = twirlsim(&["--config", "s.cfg", "--out", "e1", "experiment1"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = dir.path().join("e1");
    let csvs = fs::read_dir(&out).unwrap().filter(|e| e.as_ref().unwrap().path().extension().unwrap() == "csv").count();
    assert_eq!(csvs, 8);
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("metrics.json")).unwrap()).unwrap();
    assert_eq!(v["final_state_is_werner"], true);
    assert_eq!(v["stages"].as_array().unwrap().len(), 4);
}

#[test]
fn experiment2_period() {
    let dir = tempfile::tempdir().unwrap();
    let o = twirlsim(&["experiment2", "--out", "e2"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("e2/experiment2_fit.json")).unwrap()).unwrap();
    let period = v["fit"]["period_steps"].as_f64().unwrap();
    assert!((period - 10.0).abs() <= 0.1, "{period}");
    let csv = fs::read_to_string(dir.path().join("e2/experiment2_integrals.csv")).unwrap();
    assert_eq!(csv.lines().count(), 31);
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for out in ["a", "b"] {
        let o = twirlsim(&["--seed", "11", "--ng", "8", "--out", out, "experiment1"], dir.path());
        assert_eq!(o.status.code(), Some(0));
    }
    for name in ["metrics.json", "stage2_detected.csv", "stage0_direct.csv"] {
        let a = fs::read(dir.path().join("a").join(name)).unwrap();
        let b = fs::read(dir.path().join("b").join(name)).unwrap();
        assert_eq!(a, b, "{name}");
    }
    let mc = |seed: &str| stdout(&twirlsim(&["--seed", seed, "shrink", "euler:mc:500"], dir.path()));
    assert_eq!(mc("4"), mc("4"));
    assert_ne!(mc("4"), mc("5"));
}
