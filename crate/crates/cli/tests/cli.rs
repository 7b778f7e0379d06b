use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn heis() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_heis"));
    cmd.env_remove("HEIS_WORKERS");
    cmd
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    heis().args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "exit {:?}, stderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    let doc: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    assert!(doc["manifest"]["command"].is_string(), "manifest embedded");
    doc["report"].clone()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const X_MINUS_1: &str = r#"{"flavor":"int","terms":[[1,0,0,1],[0,0,0,-1]]}"#;
const X_MINUS_3: &str = r#"{"flavor":"int","terms":[[1,0,0,1],[0,0,0,-3]]}"#;
const CROSS_G0: &str = r#"{"terms":[[0,0,3],[1,0,-1],[-1,0,-1],[0,1,-1],[0,-1,-1]]}"#;
const CROSS_G1: &str = r#"{"terms":[[0,0,1],[1,0,-1],[-1,0,-1],[0,1,-1],[0,-1,-1]]}"#;

#[test]
fn eval_x_minus_one_is_singular_at_trivial_character() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.json", X_MINUS_1);
    let r = report(&run(&["eval", "--f", s(&f), "--p", "0", "--q", "1", "--s", "0", "--t", "0"]));
    assert_eq!(r["sigma_min"].as_f64().unwrap(), 0.0);
    assert!(r["inverse_norm"].is_null());
}

#[test]
fn eval_x_minus_three_has_distance_two() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.json", X_MINUS_3);
    let r = report(&run(&["eval", "--f", s(&f), "--p", "1", "--q", "5", "--matrix"]));
    assert!((r["sigma_min"].as_f64().unwrap() - 2.0).abs() <= 1e-10);
    let matrix = r["matrix"].as_array().unwrap();
    assert_eq!(matrix.len(), 5);
    assert!(matrix.iter().all(|row| row.as_array().unwrap().len() == 5));
}

#[test]
fn eval_worked_example_at_seventh_roots() {
    // f = g1 x - g0, ten distinct monomials
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "f.json",
        r#"{"flavor":"int","terms":[
            [1,0,0,1],[1,1,0,-1],[1,-1,0,-1],[1,0,1,-1],[1,0,-1,-1],
            [0,0,0,-3],[0,1,0,1],[0,-1,0,1],[0,0,1,1],[0,0,-1,1]]}"#,
    );
    let r = report(&run(&["eval", "--f", s(&f), "--p", "1", "--q", "7", "--matrix"]));
    let sigma = r["sigma_min"].as_f64().unwrap();
    assert!(sigma.is_finite() && sigma >= 0.0);
    assert_eq!(r["matrix"].as_array().unwrap().len(), 7);
    assert_eq!(r["dim"], 7);
}

#[test]
fn malformed_json_exits_two_with_offset() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.json", r#"{"flavor":"int","terms":[[1,0,0,1],}"#);
    let out = run(&["eval", "--f", s(&f), "--p", "1", "--q", "5"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("at byte 35"), "{err}");
}

#[test]
fn missing_file_exits_two() {
    let out = run(&["eval", "--f", "/nonexistent/f.json", "--p", "1", "--q", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn non_coprime_point_exits_three() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.json", X_MINUS_3);
    let out = run(&["eval", "--f", s(&f), "--p", "2", "--q", "4"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn unknown_subcommands_exit_one() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["linear", "frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn sweep_verdicts_are_payload_not_exit_codes() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.json", X_MINUS_1);
    let args = ["sweep", "--f", s(&f), "--q-max", "6", "--grid-s", "2", "--grid-t", "2", "--no-probes"];
    let r = report(&run(&args));
    assert_eq!(r["verdict"], "NonInvertibleEvidence");
    assert_eq!(r["global_min_sigma"].as_f64().unwrap(), 0.0);

    let f = write(&dir, "g.json", X_MINUS_3);
    let r = report(&run(&["sweep", "--f", s(&f), "--q-max", "6", "--grid-s", "2", "--grid-t", "2"]));
    assert_eq!(r["verdict"], "InvertibleEvidence");
    assert!((r["global_min_sigma"].as_f64().unwrap() - 2.0).abs() <= 1e-8);
    assert!((r["max_inverse_norm"].as_f64().unwrap() - 0.5).abs() <= 1e-8);
}

#[test]
fn invalid_sweep_config_exits_three() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.json", X_MINUS_3);
    assert_eq!(run(&["sweep", "--f", s(&f), "--q-max", "0"]).status.code(), Some(3));
    assert_eq!(run(&["sweep", "--f", s(&f), "--band", "0.5"]).status.code(), Some(3));
    assert_eq!(run(&["sweep", "--f", s(&f), "--workers", "0"]).status.code(), Some(3));
}

#[test]
fn sweep_reports_are_byte_identical_across_runs_and_workers() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.json", CROSS_FLAT);
    let base = ["sweep", "--f", s(&f), "--q-max", "9", "--grid-s", "3", "--grid-t", "3"];
    let first = run(&[&base[..], &["--workers", "1"]].concat());
    let again = run(&[&base[..], &["--workers", "1"]].concat());
    let wide = run(&[&base[..], &["--workers", "3"]].concat());
    let from_env = heis().args(base).env("HEIS_WORKERS", "2").output().unwrap();
    report(&first);
    assert_eq!(first.stdout, again.stdout);
    assert_eq!(first.stdout, wide.stdout);
    assert_eq!(first.stdout, from_env.stdout);
}

const CROSS_FLAT: &str = r#"{"flavor":"int","terms":[
    [1,0,0,1],[1,1,0,-1],[1,-1,0,-1],[1,0,1,-1],[1,0,-1,-1],
    [0,0,0,-3],[0,1,0,1],[0,-1,0,1],[0,0,1,1],[0,0,-1,1]]}"#;

#[test]
fn record_duration_is_opt_in() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.json", X_MINUS_3);
    let plain: Value = serde_json::from_slice(&run(&["eval", "--f", s(&f), "--p", "0", "--q", "1"]).stdout).unwrap();
    assert!(plain["manifest"].get("wall_clock_seconds").is_none());
    let timed = run(&["eval", "--f", s(&f), "--p", "0", "--q", "1", "--record-duration"]);
    let timed: Value = serde_json::from_slice(&timed.stdout).unwrap();
    assert!(timed["manifest"]["wall_clock_seconds"].as_f64().unwrap() >= 0.0);
}

#[test]
fn manifest_records_input_digest() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.json", "{\"flavor\":\"int\",\"terms\":[]}");
    let doc: Value = serde_json::from_slice(&run(&["eval", "--f", s(&f), "--p", "0", "--q", "1"]).stdout).unwrap();
    // sha256 of the exact file bytes
    assert_eq!(
        doc["manifest"]["inputs"][0]["sha256"],
        "8ae293f5bb111d14db42383e2a1b11f10534bfa768e69c78b8a76508081816d2"
    );
}

#[test]
fn out_flag_writes_file() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.json", X_MINUS_3);
    let out_path = dir.path().join("report.json");
    let out = run(&["eval", "--f", s(&f), "--p", "1", "--q", "3", "--out", s(&out_path)]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(out_path).unwrap()).unwrap();
    assert!((doc["report"]["sigma_min"].as_f64().unwrap() - 2.0).abs() < 1e-10);
}

#[test]
fn orbit_on_worked_example() {
    let dir = TempDir::new().unwrap();
    let g0 = write(&dir, "g0.json", CROSS_G0);
    let g1 = write(&dir, "g1.json", CROSS_G1);
    let r = report(&run(&["linear", "orbit", "--g0", s(&g0), "--g1", s(&g1), "--m", "0..4", "--swapped"]));
    let flags: Vec<bool> = r["per_m"].as_array().unwrap().iter().map(|x| x["nonempty"].as_bool().unwrap()).collect();
    assert_eq!(&flags[..3], &[false, false, true]);
    assert_eq!(r["verdict"], "non_expansive");
    assert_eq!(r["swapped"]["verdict"], "non_expansive");
    assert_eq!(r["swapped"]["per_m"][2]["m"], -2);
}

#[test]
fn orbit_defaults_to_worked_example_and_rejects_bad_ranges() {
    let r = report(&run(&["linear", "orbit", "--m", "2"]));
    assert_eq!(r["per_m"][0]["nonempty"], true);
    assert_eq!(run(&["linear", "orbit", "--m", "3..1"]).status.code(), Some(3));
    assert_eq!(run(&["linear", "orbit", "--m", "x"]).status.code(), Some(1));
}

#[test]
fn mahler_at_trivial_character_is_jensen_value() {
    // g0(y, 1) = 1 - y - 1/y has both roots on the circle: measure 0
    let dir = TempDir::new().unwrap();
    let g0 = write(&dir, "g0.json", CROSS_G0);
    let r = report(&run(&["linear", "mahler", "--g0", s(&g0), "--chi", "0,1"]));
    assert!(r["value"].as_f64().unwrap().abs() < 1e-12);

    // 3 - y - 1/y at chi = 1/4 (z + 1/z = 0): log((3 + sqrt 5)/2)
    let r = report(&run(&["linear", "mahler", "--g0", s(&g0), "--chi", "1,4"]));
    let expected = ((3.0 + 5f64.sqrt()) / 2.0).ln();
    assert!((r["value"].as_f64().unwrap() - expected).abs() < 1e-10);

    let r = report(&run(&["linear", "mahler", "--g0", s(&g0), "--nodes", "64"]));
    assert!(r["value"].as_f64().unwrap() > 0.0);
}

#[test]
fn roots_of_specialization() {
    let dir = TempDir::new().unwrap();
    let g0 = write(&dir, "g0.json", CROSS_G0);
    let r = report(&run(&["linear", "roots", "--g0", s(&g0), "--chi", "0,1"]));
    assert_eq!(r["roots"].as_array().unwrap().len(), 2);
    assert_eq!(r["circle"]["roots"].as_array().unwrap().len(), 2);
}

#[test]
fn ls2_fixtures() {
    let dir = TempDir::new().unwrap();
    let three = write(&dir, "three.json", r#"{"terms":[[0,0,3]]}"#);
    let one = write(&dir, "one.json", r#"{"terms":[[0,0,1]]}"#);
    let r = report(&run(&["linear", "ls2", "--g0", s(&three), "--g1", s(&one)]));
    assert_eq!(r["verdict"], "expansive");
    let r = report(&run(&["linear", "ls2", "--g0", s(&three), "--g1", s(&three)]));
    assert_eq!(r["verdict"], "non_expansive");
}

#[test]
fn one_empty_and_mismatch_dispatch() {
    let dir = TempDir::new().unwrap();
    let g0 = write(&dir, "g0.json", CROSS_G0);
    let g1 = write(&dir, "g1.json", CROSS_G1);
    let r = report(&run(&["linear", "one-empty", "--g0", s(&g0), "--g1", s(&g1), "--chi", "0.381966"]));
    assert!(r["verdict"].is_string());
    let r = report(&run(&["linear", "mismatch", "--g0", s(&g0), "--g1", s(&g1), "--chi", "0.1234567"]));
    assert!(r["verdict"].is_string());
}

#[test]
fn curves_csv() {
    let out = run(&["linear", "curves", "--m", "2", "--samples", "2000"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,curve,branch,s"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert!(rows.iter().all(|r| r.len() == 4));
    assert!(rows.iter().any(|r| r[1] == "K"));
    assert!(rows.iter().any(|r| r[1] == "K[2]"));
    // every s lies in [0, 1)
    assert!(rows.iter().all(|r| (0.0..1.0).contains(&r[3].parse::<f64>().unwrap())));
}

#[test]
fn twisted_deltas_pick_up_a_phase() {
    let dir = TempDir::new().unwrap();
    let dy = write(&dir, "dy.json", r#"{"theta":[1,5],"terms":[[0,1,1.0,0.0]]}"#);
    let dx = write(&dir, "dx.json", r#"{"theta":[1,5],"terms":[[1,0,1.0,0.0]]}"#);
    let yx = report(&run(&["twisted", "--theta", "1,5", "--f", s(&dy), "--g", s(&dx)]));
    let xy = report(&run(&["twisted", "--theta", "1,5", "--f", s(&dx), "--g", s(&dy)]));
    let coeff = |r: &Value| {
        let t = &r["product"]["terms"][0];
        assert_eq!((t[0].as_i64(), t[1].as_i64()), (Some(1), Some(1)));
        (t[2].as_f64().unwrap(), t[3].as_f64().unwrap())
    };
    let phase = 2.0 * std::f64::consts::PI / 5.0;
    assert!(close(coeff(&xy), (1.0, 0.0)));
    assert!(close(coeff(&yx), (phase.cos(), phase.sin())), "{:?}", coeff(&yx));
}

fn close(a: (f64, f64), b: (f64, f64)) -> bool {
    (a.0 - b.0).abs() < 1e-12 && (a.1 - b.1).abs() < 1e-12
}

#[test]
fn twisted_at_zero_is_plain_convolution() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.json", r#"{"theta":0.0,"terms":[[0,0,1.0,0.0],[1,2,2.0,0.0]]}"#);
    let g = write(&dir, "g.json", r#"{"theta":0.0,"terms":[[1,0,3.0,0.0],[-1,-2,-1.0,0.0]]}"#);
    let r = report(&run(&["twisted", "--theta", "0", "--f", s(&f), "--g", s(&g)]));
    // (1 + 2 d_{1,2})(3 d_{1,0} - d_{-1,-2}) = 3 d_{1,0} - d_{-1,-2} + 6 d_{2,2} - 2 d_{0,0}
    let mut got: Vec<(i64, i64, f64)> = r["product"]["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| (t[0].as_i64().unwrap(), t[1].as_i64().unwrap(), t[2].as_f64().unwrap()))
        .collect();
    got.sort_by_key(|t| (t.0, t.1));
    assert_eq!(got, vec![(-1, -2, -1.0), (0, 0, -2.0), (1, 0, 3.0), (2, 2, 6.0)]);
}

#[test]
fn twisted_theta_mismatch_exits_three() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.json", r#"{"theta":[1,3],"terms":[[1,0,1.0,0.0]]}"#);
    let out = run(&["twisted", "--theta", "1,5", "--f", s(&f), "--g", s(&f)]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn check_localize_residual_is_small() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.json", r#"{"flavor":"int","terms":[[1,2,-1,3],[0,-1,4,-2],[-2,1,0,1],[1,0,0,-1]]}"#);
    let g = write(
        &dir,
        "g.json",
        r#"{"flavor":"complex","terms":[[2,1,1,0.5,-1.5],[-1,0,2,2.0,0.25],[0,3,-1,-1.0,1.0]]}"#,
    );
    for theta in ["0", "1,2", "0.37", "3,7"] {
        let r = report(&run(&["twisted", "--theta", theta, "--f", s(&f), "--g", s(&g), "--check-localize"]));
        assert!(r["localize_residual"].as_f64().unwrap() <= 1e-10, "{theta}: {r}");
    }
}
