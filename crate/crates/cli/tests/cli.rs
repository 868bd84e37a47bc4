use ache_core::report::VerificationReport;
use serde_json::Value;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn ache(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ache")).args(args).arg("--out").arg(out).output().expect("binary runs")
}

fn report(out: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(out.join("report.json")).unwrap()).unwrap()
}

fn check<'a>(r: &'a Value, id: &str) -> &'a Value {
    r["reports"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|x| x["checks"].as_array().unwrap())
        .find(|c| c["id"] == id)
        .unwrap_or_else(|| panic!("no check {id}"))
}

#[test]
fn tables_run_flags_row_three_and_round_trips() {
    let d = tempfile::tempdir().unwrap();
    let o = ache(&["tables"], d.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(d.path());
    let rows = r["summary"].as_array().unwrap();
    assert_eq!(rows.len(), 7);
    assert_eq!(check(&r, "table.row3.derived")["status"], "warn");
    assert_eq!(check(&r, "table.row1.derived")["status"], "pass");
    assert_eq!(check(&r, "table.end_to_end.derived")["status"], "pass");
    let text = fs::read_to_string(d.path().join("tables.txt")).unwrap();
    assert!(text.contains("3/8 R^2") && text.contains("differs from printed"));
    assert_eq!(fs::read_to_string(d.path().join("tables.csv")).unwrap().lines().count(), 8);
    for rep in r["reports"].as_array().unwrap() {
        let back: VerificationReport = serde_json::from_value(rep.clone()).unwrap();
        assert_eq!(&serde_json::to_value(&back).unwrap(), rep);
    }
}

#[test]
fn gbc_verify_passes_and_renders_latex() {
    let d = tempfile::tempdir().unwrap();
    let o = ache(&["gbc-verify"], d.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(d.path());
    assert_eq!(check(&r, "gbc.derived.divergent_4")["status"], "pass");
    assert!(check(&r, "gbc.derived.constant")["latex"].as_str().unwrap().contains("\\frac"));
    assert!(fs::read_to_string(d.path().join("gbc.csv")).unwrap().starts_with("order_eps,"));
}

#[test]
fn low_truncation_is_a_config_error() {
    let d = tempfile::tempdir().unwrap();
    let o = ache(&["gbc-verify", "--truncation", "1"], d.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("below 2"));
    assert!(!d.path().join("report.json").exists());
}

#[test]
fn unknown_config_key_is_rejected() {
    let d = tempfile::tempdir().unwrap();
    let cfg = d.path().join("run.toml");
    fs::write(&cfg, "resolution = 4\nresolutoin = 5\n").unwrap();
    let o = ache(&["tables", "--config", cfg.to_str().unwrap()], d.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("resolutoin"));
    fs::write(&cfg, "[tolerances]\nlaw = -1.0\n").unwrap();
    assert_eq!(ache(&["tables", "--config", cfg.to_str().unwrap()], d.path()).status.code(), Some(2));
}

#[test]
fn identical_config_gives_identical_bytes() {
    let d = tempfile::tempdir().unwrap();
    let files = ["report.json", "volume.csv", "tables.txt"];
    let mut runs = Vec::new();
    for _ in 0..2 {
        let o = ache(&["volume", "--manifold", "berger", "--resolution", "4", "--seed", "9"], d.path());
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        runs.push(files.map(|f| fs::read(d.path().join(f)).unwrap()));
    }
    assert_eq!(runs[0], runs[1]);
}

#[test]
fn ch2_run_yields_euler_characteristic_one() {
    let d = tempfile::tempdir().unwrap();
    let o = ache(&["volume", "--manifold", "ch2"], d.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(d.path());
    assert!((r["summary"]["chi"].as_f64().unwrap() - 1.0).abs() < 1e-7);
    let csv = fs::read_to_string(d.path().join("volume.csv")).unwrap();
    assert!(csv.lines().nth(1).unwrap().starts_with("ch2,"));
}

#[test]
fn verification_failure_exits_one() {
    let d = tempfile::tempdir().unwrap();
    let cfg = d.path().join("strict.toml");
    fs::write(&cfg, "manifold = \"berger\"\nlambda = [1.5]\nresolution = 4\n[tolerances]\nlinear = 1e-300\n").unwrap();
    let o = ache(&["volume", "--config", cfg.to_str().unwrap()], d.path());
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(report(d.path())["passed"], false);
}

#[test]
fn unit_factor_anomaly_is_zero() {
    let d = tempfile::tempdir().unwrap();
    let cfg = d.path().join("a.toml");
    fs::write(&cfg, "manifold = \"heisenberg\"\nfactors = 2\nresolution = 3\n").unwrap();
    let o = ache(&["anomaly", "--config", cfg.to_str().unwrap()], d.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(d.path());
    assert_eq!(check(&r, "anomaly.heisenberg.identity")["status"], "pass");
    assert_eq!(check(&r, "conformal.heisenberg.tau_printed")["status"], "warn");
    assert!(d.path().join("conformal_laws.csv").exists() && d.path().join("anomaly_heisenberg.csv").exists());
}

#[test]
fn stokes_passes_on_the_round_sphere() {
    let d = tempfile::tempdir().unwrap();
    let o = ache(&["stokes"], d.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(fs::read_to_string(d.path().join("stokes.csv")).unwrap().lines().count(), 11);
    assert_eq!(check(&report(d.path()), "stokes.form10.agreement")["status"], "pass");
}

#[test]
fn help_lists_checks_and_exit_codes() {
    let o = Command::new(env!("CARGO_BIN_EXE_ache")).arg("--help").output().unwrap();
    let s = String::from_utf8_lossy(&o.stdout);
    for id in ["table.end_to_end", "gbc.", "curly_v,chi", "anomaly.", "stokes.form", "Exit codes"] {
        assert!(s.contains(id), "{id}");
    }
}
