//! End-to-end tests of the binary: one process per case, asserting on
//! stdout bytes and exit codes.

// CLI inputs are decimal strings; the assertions naturally reuse the same
// truncated constants the command line was given
#![allow(clippy::approx_constant)]

use std::process::{Command, Output};

fn phason(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_phason"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_str(&stdout_str(out)).expect("json stdout")
}

/// Parse a CSV payload (skipping the schema comment line) into header +
/// float rows.
fn csv(out: &Output) -> (Vec<String>, Vec<Vec<f64>>) {
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout_str(out);
    let mut lines = text.split("\r\n").filter(|l| !l.is_empty());
    let first = lines.next().expect("schema line");
    assert_eq!(first, "# schema: phason/1");
    let header: Vec<String> = lines
        .next()
        .expect("header")
        .split(',')
        .map(|s| s.to_string())
        .collect();
    let rows = lines
        .map(|l| {
            l.split(',')
                .map(|f| f.parse::<f64>().expect("numeric field"))
                .collect()
        })
        .collect();
    (header, rows)
}

// a κ = 1 system: dipole length chosen so 2·e·r/ħ = 1 (rad/s)/(V/m)
const UNIT_KAPPA_DIPOLE_CM: &str = "3.2910554239116165e-14";

#[test]
fn constants_payload() {
    let out = phason(&["constants"]);
    let v = json(&out);
    assert_eq!(v["schema"], "phason/1");
    assert_eq!(v["z0"], 376.7);
    assert!((v["alpha"].as_f64().unwrap() - 1.0 / 137.036).abs() < 1e-6);
}

#[test]
fn evolve_zero_theta_trajectory_is_constant() {
    let out = phason(&[
        "evolve",
        "--method",
        "rwa-resonant",
        "--omega1-rad-s",
        "1e6",
        "--dipole-cm",
        UNIT_KAPPA_DIPOLE_CM,
        "--theta-rad",
        "0",
    ]);
    let (header, rows) = csv(&out);
    assert_eq!(
        header,
        ["t_s", "re_c0", "im_c0", "re_c1", "im_c1", "pop0", "pop1"]
    );
    assert_eq!(rows.len(), 201);
    for row in &rows {
        assert_eq!(row[1], 1.0);
        assert_eq!(row[5], 1.0);
        assert_eq!(row[6], 0.0);
    }
}

#[test]
fn evolve_ode_matches_closed_form_at_large_carrier() {
    // ω/(κE) = 1e4, Θ = π/2: the two methods must agree to 1 − 1e-3
    let common = [
        "--omega1-rad-s",
        "1e4",
        "--dipole-cm",
        UNIT_KAPPA_DIPOLE_CM,
        "--amplitude-v-per-m",
        "1.0",
        "--duration-s",
        "1.5707963267948966",
    ];
    let mut ode_args = vec!["evolve", "--method", "ode", "--tol", "1e-10"];
    ode_args.extend_from_slice(&common);
    let mut rwa_args = vec!["evolve", "--method", "rwa-resonant"];
    rwa_args.extend_from_slice(&common);

    let (_, ode_rows) = csv(&phason(&ode_args));
    let (_, rwa_rows) = csv(&phason(&rwa_args));
    let a = ode_rows.last().unwrap();
    let b = rwa_rows.last().unwrap();
    // |⟨a|b⟩|² from the four amplitude columns
    let (re, im) = (
        a[1] * b[1] + a[2] * b[2] + a[3] * b[3] + a[4] * b[4],
        a[1] * b[2] - a[2] * b[1] + a[3] * b[4] - a[4] * b[3],
    );
    let overlap = re * re + im * im;
    assert!(overlap >= 1.0 - 1e-3, "overlap {overlap}");
}

#[test]
fn evolve_missing_flag_names_it() {
    let out = phason(&["evolve", "--method", "ode", "--omega1-rad-s", "1e6"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("--dipole-cm"), "stderr: {err}");
}

#[test]
fn evolve_strict_regime_violation_exits_3() {
    let args = [
        "evolve",
        "--method",
        "rwa-resonant",
        "--omega1-rad-s",
        "1e4",
        "--dipole-cm",
        UNIT_KAPPA_DIPOLE_CM,
        "--amplitude-v-per-m",
        "1e3", // κℰ/ω = 0.1, far outside the resonant RWA regime
        "--duration-s",
        "0.001",
    ];
    let lenient = phason(&args);
    assert!(lenient.status.success());
    assert!(String::from_utf8_lossy(&lenient.stderr).contains("warning"));

    let mut strict_args = args.to_vec();
    strict_args.push("--strict");
    let strict = phason(&strict_args);
    assert_eq!(strict.status.code(), Some(3));
}

#[test]
fn gate_extract_phase_gate() {
    let out = phason(&[
        "gate-extract",
        "--omega1-rad-s",
        "1e15",
        "--dipole-cm",
        "6e-10",
        "--theta-rad",
        "3.141592653589793",
        "--phi-rad",
        "-1.0",
    ]);
    let v = json(&out);
    assert_eq!(v["nearest"]["name"], "Z(1.0000)");
    assert!(v["nearest"]["distance"].as_f64().unwrap() <= 1e-10);
}

#[test]
fn gate_extract_half_theta_is_x_up_to_phases() {
    let out = phason(&[
        "gate-extract",
        "--omega1-rad-s",
        "1e15",
        "--dipole-cm",
        "6e-10",
        "--theta-rad",
        "1.5707963267948966",
        "--phi-rad",
        "0",
    ]);
    let v = json(&out);
    assert_eq!(v["nearest"]["name"], "X");
    assert!(v["nearest"]["distance"].as_f64().unwrap() <= 1e-12);
    assert_eq!(v["equivalent_up_to_diagonal_phase"]["x"], true);
}

#[test]
fn gate_extract_identity() {
    let out = phason(&[
        "gate-extract",
        "--omega1-rad-s",
        "1e15",
        "--dipole-cm",
        "6e-10",
        "--theta-rad",
        "0",
    ]);
    let v = json(&out);
    assert_eq!(v["nearest"]["name"], "I");
    assert!(v["nearest"]["distance"].as_f64().unwrap() <= 1e-12);
}

#[test]
fn plan_published_chain_brackets_the_estimate() {
    let out = phason(&[
        "plan",
        "--scenario",
        "CaF2_Tm",
        "--theta-rad",
        "6.2832",
        "--spot-um",
        "3",
        "--t0-s",
        "1e-7",
        "--field-model",
        "paper",
    ]);
    let v = json(&out);
    let n = v["budget"]["n_photons"].as_u64().unwrap();
    assert!((10..=1000).contains(&n), "N0 = {n}");
    let achieved = v["budget"]["achieved_phase"].as_f64().unwrap();
    assert!(achieved >= 6.2832);
    assert_eq!(v["budget"]["dipole_source"], "paper");
}

#[test]
fn plan_rejects_zero_target() {
    let out = phason(&[
        "plan",
        "--scenario",
        "CaF2_Tm",
        "--theta-rad",
        "0",
        "--spot-um",
        "3",
        "--t0-s",
        "1e-7",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn plan_budget_cap_exits_4() {
    let out = phason(&[
        "plan",
        "--scenario",
        "CaF2_Tm",
        "--theta-rad",
        "1000",
        "--spot-um",
        "3",
        "--t0-s",
        "1e-7",
        "--field-model",
        "formula",
        "--cap",
        "1000",
    ]);
    assert_eq!(out.status.code(), Some(4));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("1000 photons reach only"), "stderr: {err}");
}

#[test]
fn qft_verify_and_schedule() {
    let out = phason(&["qft", "--n", "3", "--verify"]);
    let v = json(&out);
    assert!(v["verification"]["max_deviation"].as_f64().unwrap() <= 1e-12);

    // n = 1: empty schedule
    let out = phason(&[
        "qft", "--n", "1", "--scenario", "CaF2_Tm", "--spot-um", "3", "--t0-s", "1e-7",
    ]);
    let v = json(&out);
    assert_eq!(v["schedule"]["entries"].as_array().unwrap().len(), 0);

    // n = 4: multiplicities 3, 2, 1
    let out = phason(&[
        "qft", "--n", "4", "--scenario", "CaF2_Tm", "--spot-um", "3", "--t0-s", "1e-7",
        "--field-model", "paper",
    ]);
    let v = json(&out);
    let mults: Vec<u64> = v["schedule"]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["multiplicity"].as_u64().unwrap())
        .collect();
    assert_eq!(mults, vec![3, 2, 1]);

    // out-of-range verification
    let out = phason(&["qft", "--n", "11", "--verify"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_photon_number_monotone() {
    let out = phason(&[
        "sweep",
        "--lambda-nm",
        "472.3",
        "--dipole-cm",
        "6e-10",
        "--sweep",
        "n-photons=1:100:100:linear",
        "--t0-s",
        "1e-7",
        "--spot-um",
        "3",
        "--outputs",
        "phase_exact_rad",
    ]);
    let (header, rows) = csv(&out);
    assert_eq!(header, ["n-photons", "phase_exact_rad"]);
    assert_eq!(rows.len(), 100);
    for w in rows.windows(2) {
        assert!(w[1][1] > w[0][1], "phase must grow with photon number");
    }
}

#[test]
fn sweep_spot_follows_inverse_distance_law() {
    let out = phason(&[
        "sweep",
        "--lambda-nm",
        "472.3",
        "--dipole-cm",
        "6e-10",
        "--sweep",
        "spot-um=0.23615:4.723:20:linear",
        "--t0-s",
        "1e-7",
        "--n-photons",
        "1",
        "--outputs",
        "phase_exact_rad",
    ]);
    let (_, rows) = csv(&out);
    // φ·d should be constant
    let c0 = rows[0][0] * rows[0][1];
    for row in &rows {
        let c = row[0] * row[1];
        assert!((c - c0).abs() / c0 < 1e-9, "φ·d varies: {c} vs {c0}");
    }
}

#[test]
fn sweep_rejects_empty_grid_and_bad_names() {
    let out = phason(&[
        "sweep",
        "--lambda-nm",
        "472.3",
        "--dipole-cm",
        "6e-10",
        "--sweep",
        "n-photons=1:100:0:linear",
        "--t0-s",
        "1e-7",
        "--spot-um",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(2));

    let out = phason(&[
        "sweep",
        "--lambda-nm",
        "472.3",
        "--dipole-cm",
        "6e-10",
        "--sweep",
        "voltage=1:2:3:linear",
        "--t0-s",
        "1e-7",
        "--spot-um",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "plan",
        "--scenario",
        "CaF2_Tm",
        "--theta-rad",
        "3.14",
        "--spot-um",
        "3",
        "--t0-s",
        "1e-7",
    ];
    let a = phason(&args);
    let b = phason(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn config_file_fallback_and_flag_precedence() {
    let dir = std::env::temp_dir().join(format!("phason-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("cfg.json");
    std::fs::write(
        &cfg,
        r#"{"scenario": "CaF2_Tm", "theta-rad": 3.14, "spot-um": 3.0, "t0-s": 1e-7,
           "field-model": "paper"}"#,
    )
    .unwrap();
    let from_cfg = phason(&["plan", "--config", cfg.to_str().unwrap()]);
    let v = json(&from_cfg);
    assert_eq!(v["request"]["target_phase"], 3.14);

    // a flag overrides the file
    let with_flag = phason(&[
        "plan",
        "--config",
        cfg.to_str().unwrap(),
        "--theta-rad",
        "1.0",
    ]);
    let v = json(&with_flag);
    assert_eq!(v["request"]["target_phase"], 1.0);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn scenario_dir_lookup() {
    let dir = std::env::temp_dir().join(format!("phason-scen-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(
        dir.join("myline.json"),
        r#"{"name": "myline", "lambda_nm": 600.0, "gamma_per_s": 1e7}"#,
    )
    .unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_phason"))
        .env("PHASON_SCENARIO_DIR", &dir)
        .args([
            "plan", "--scenario", "myline", "--theta-rad", "0.1", "--spot-um", "1",
            "--t0-s", "1e-7",
        ])
        .output()
        .unwrap();
    let v = json(&out);
    assert_eq!(v["scenario"], "myline");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn trajectory_csv_goes_to_file_with_out() {
    let dir = std::env::temp_dir().join(format!("phason-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("traj.csv");
    let out = phason(&[
        "evolve",
        "--method",
        "rwa-resonant",
        "--omega1-rad-s",
        "1e6",
        "--dipole-cm",
        UNIT_KAPPA_DIPOLE_CM,
        "--theta-rad",
        "1.0",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# schema: phason/1\r\n"));
    std::fs::remove_dir_all(&dir).ok();
}
