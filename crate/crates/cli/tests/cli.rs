use std::path::PathBuf;
use std::process::{Command as Proc, Output};

use clap::Parser;
use num_rational::BigRational;
use num_traits::Zero;

use surfdyn::exact::{Interval, Precision};
use surfdyn_cli::{entropy_floor, run, Cli, Command, Report, RunConfig, Status};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn surfdyn(args: &[&str]) -> Output {
    Proc::new(env!("CARGO_BIN_EXE_surfdyn"))
        .args(args)
        .env_remove("SURFDYN_PRECISION")
        .output()
        .expect("binary runs")
}

fn json_report(args: &[&str]) -> (Report, i32) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = surfdyn(&all);
    let report: Report = serde_json::from_slice(&out.stdout).expect("valid report JSON");
    (report, out.status.code().unwrap())
}

fn computed(r: &Report, quantity: &str) -> String {
    r.sections
        .iter()
        .flat_map(|s| &s.rows)
        .find(|row| row.quantity == quantity)
        .unwrap_or_else(|| panic!("no row {quantity}"))
        .computed
        .clone()
}

#[test]
fn salem_lehmer() {
    let (r, code) = json_report(&["salem", "--poly", "lehmer"]);
    assert_eq!(code, 0);
    assert_eq!(computed(&r, "kind"), "Salem");
    assert!(computed(&r, "largest root").contains("1.17628081"));
}

#[test]
fn abelian_square_of_pi_curve() {
    let spec = data("diag-pi-pi.json");
    let (r, code) = json_report(&["abelian", "--spec", spec.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(computed(&r, "ρ(X_ℝ)"), "3");
    assert_eq!(computed(&r, "α"), "1/2");
    let spec = data("diag-pi-invpi.json");
    let (r, _) = json_report(&["abelian", "--spec", spec.to_str().unwrap()]);
    assert_eq!(computed(&r, "ρ(X_ℝ)"), "2");
    assert_eq!(computed(&r, "α"), "1");
}

#[test]
fn exit_codes() {
    assert_eq!(surfdyn(&["surface222", "--word", "1,2,3"]).status.code(), Some(0));
    assert_eq!(surfdyn(&["thesis-report", "--only", "11"]).status.code(), Some(1));
    assert_eq!(surfdyn(&["--precision", "8", "salem", "--poly", "lehmer"]).status.code(), Some(2));
    assert_eq!(surfdyn(&["salem", "--poly", "1,x,1"]).status.code(), Some(2));
    assert_eq!(surfdyn(&["crofton", "--curve", "circle", "--samples", "0"]).status.code(), Some(2));
    assert_eq!(surfdyn(&["surface222", "--word", "1,4"]).status.code(), Some(2));
}

#[test]
fn precision_from_environment() {
    let out = Proc::new(env!("CARGO_BIN_EXE_surfdyn"))
        .args(["salem", "--poly", "lehmer"])
        .env("SURFDYN_PRECISION", "12")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let cli = Cli::try_parse_from(["surfdyn", "salem", "--poly", "lehmer"]).unwrap();
    assert!(cli.precision >= 16);
}

#[test]
fn malformed_json_reports_position() {
    let dir = std::env::temp_dir().join(format!("surfdyn-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\n  \"rank\": 2,\n  \"gram\": [[1, 2] [3]]\n}\n").unwrap();
    let out = surfdyn(&["classify", "--lattice", bad.to_str().unwrap(), "--isometry", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("bad.json:3:"), "{err}");
    let missing = dir.join("missing.json");
    let out = surfdyn(&["abelian", "--spec", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn classify_from_files() {
    let dir = std::env::temp_dir().join(format!("surfdyn-classify-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let iso = dir.join("swap.json");
    std::fs::write(&iso, r#"{"matrix": [[0, 1, 0], [1, 0, 0], [0, 0, 1]]}"#).unwrap();
    let lattice = data("fibre-lattice.json");
    let (r, code) = json_report(&["classify", "--lattice", lattice.to_str().unwrap(), "--isometry", iso.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(computed(&r, "type"), "Elliptic");
}

#[test]
fn json_round_trip() {
    for args in [
        vec!["surface222", "--word", "1,2", "--growth", "12"],
        vec!["torus", "--matrix", "2,1,1,1", "--alpha", "1/2"],
        vec!["lines", "--max", "3", "--y", "pi"],
        vec!["birational", "--map", "family:2,1,1/3,1/7"],
    ] {
        let mut all = vec!["--json"];
        all.extend(args.iter().copied());
        let out = surfdyn(&all);
        let text = String::from_utf8(out.stdout).unwrap();
        let r: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(r.to_json(), text.trim_end(), "{args:?}");
        let again: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(again, r);
    }
}

#[test]
fn deterministic_output() {
    let args = ["--json", "crofton", "--curve", "circle", "--samples", "3000", "--seed", "9"];
    let a = surfdyn(&args);
    let b = surfdyn(&args);
    assert_eq!(a.stdout, b.stdout);
    let other = surfdyn(&["--json", "crofton", "--curve", "circle", "--samples", "3000", "--seed", "10"]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn entropy_floor_values() {
    let p = Precision(128);
    let zero = entropy_floor(&BigRational::zero(), p).unwrap();
    assert!(zero.contains(&BigRational::zero()));
    let one = entropy_floor(&BigRational::from_integer(1.into()), p).unwrap();
    assert!((one.to_f64() - 0.16236).abs() < 1e-5);
    let half = entropy_floor(&BigRational::new(1.into(), 2.into()), p).unwrap();
    let doubled: Interval = half.scale(&BigRational::from_integer(2.into()));
    assert!(doubled.overlaps(&one));
    assert!(entropy_floor(&BigRational::new(3.into(), 2.into()), p).is_err());
    assert!(entropy_floor(&BigRational::from_integer((-1).into()), p).is_err());
}

#[test]
fn run_in_process() {
    let cli = Cli::try_parse_from(["surfdyn", "--precision", "40", "wehler", "--word", "1,2"]).unwrap();
    let cfg = RunConfig::from_cli(cli);
    assert_eq!(cfg.precision, 40);
    let r = run(&cfg).unwrap();
    assert!(r.passed());
    assert!(r.sections.iter().all(|s| s.status() == Status::Pass));
    assert!(computed(&r, "spectral radius λ").starts_with("7+4√3"));
    let bad = RunConfig::new(Command::Salem { poly: "lehmer".into() });
    let mut bad = bad;
    bad.precision = 15;
    assert!(run(&bad).is_err());
}

#[test]
fn clap_rejects_unknown_subcommands() {
    assert!(Cli::try_parse_from(["surfdyn", "frobnicate"]).is_err());
    assert!(Cli::try_parse_from(["surfdyn", "torus"]).is_err());
    assert!(Cli::try_parse_from(["surfdyn", "birational", "--map", "swap", "--file", "x.json"]).is_err());
}
