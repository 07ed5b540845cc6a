use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use adft::transforms::{adft32_matrix, GaussianMatrix};

fn adft(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_adft"))
        .args(args)
        .current_dir(dir)
        .env_remove("ADFT_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

/// Data rows of a CSV with a `#` header block (column header included).
fn csv_rows(text: &str) -> Vec<&str> {
    text.lines().filter(|l| !l.starts_with('#')).collect()
}

#[test]
fn verify_passes_on_clean_build() {
    let dir = tempfile::tempdir().unwrap();
    let o = adft(dir.path(), &["verify"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("additions: 348"), "{text}");
    assert!(text.contains("verify: PASS"));
    // report only: nothing written without -o
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn verify_reports_mutation() {
    let dir = tempfile::tempdir().unwrap();
    let o = adft(dir.path(), &["verify", "--mutate-stage", "3", "--mutate-index", "0"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("first difference at row"), "{text}");
    let o = adft(dir.path(), &["verify", "--mutate-stage", "9"]);
    assert!(!o.status.success());
}

#[test]
fn verify_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let o = adft(dir.path(), &["verify", "--json", "--vectors", "100"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    for key in ["passed", "factorization_identity", "equivalence", "op_counts"] {
        assert_eq!(v[key], serde_json::Value::Bool(true), "{key}");
    }
    assert_eq!(v["total_real_additions"], 348);
}

#[test]
fn matrix_files_reload() {
    let dir = tempfile::tempdir().unwrap();
    assert!(adft(dir.path(), &["matrix", "--kind", "adft", "-o", "adft.json"]).status.success());
    let m = GaussianMatrix::from_json(&fs::read_to_string(dir.path().join("adft.json")).unwrap()).unwrap();
    assert_eq!(m, adft32_matrix());
    assert!(m.parts_within(&[-1, 0, 1]));

    assert!(adft(dir.path(), &["matrix", "--kind", "dft", "-o", "dft.json"]).status.success());
    let f = GaussianMatrix::from_json(&fs::read_to_string(dir.path().join("dft.json")).unwrap()).unwrap();
    let gram = f.matmul(&f.conj_transpose()).unwrap();
    for r in 0..32 {
        for c in 0..32 {
            let want = if r == c { 32.0 } else { 0.0 };
            assert!((gram.get(r, c).re - want).abs() < 1e-9 && gram.get(r, c).im.abs() < 1e-9);
        }
    }
    assert!(dir.path().join("dft.json.manifest.json").exists());
}

#[test]
fn invalid_kind_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = adft(dir.path(), &["matrix", "--kind", "fft"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("possible values"));
}

#[test]
fn response_csv_and_side_lobe_summary() {
    let dir = tempfile::tempdir().unwrap();
    let o = adft(dir.path(), &["response", "--transform", "adft", "--grid", "4096", "-o", "resp.csv"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("largest side lobe: -11.03 dB"));
    let text = fs::read_to_string(dir.path().join("resp.csv")).unwrap();
    let rows = csv_rows(&text);
    assert_eq!(rows[0].split(',').count(), 33);
    assert_eq!(rows.len(), 4097);
}

#[test]
fn beams2d_runs_self_check() {
    let dir = tempfile::tempdir().unwrap();
    let o = adft(dir.path(), &["beams2d", "--k", "5", "--l", "9", "--grid", "361x181", "-o", "beam.csv"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("separability self-check"));
    let text = fs::read_to_string(dir.path().join("beam.csv")).unwrap();
    assert_eq!(csv_rows(&text).len(), 1 + 361 * 181);
}

#[test]
fn failed_command_leaves_no_output() {
    let dir = tempfile::tempdir().unwrap();
    let o = adft(dir.path(), &["beams2d", "--k", "40", "--l", "0", "-o", "bad.csv"]);
    assert!(!o.status.success());
    let err = String::from_utf8_lossy(&o.stderr);
    assert_eq!(err.lines().count(), 1, "{err}");
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn simulate_is_deterministic_and_replayable() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("chain.toml"), "snapshots = 256\nsnr_db = 20.0\nseed = 3\n").unwrap();
    let run = |out: &str| {
        let args = ["simulate", "--config", "chain.toml", "--engine", "fast_adft", "--points", "19", "-o", out];
        assert!(adft(dir.path(), &args).status.success());
        fs::read(dir.path().join(out)).unwrap()
    };
    let a = run("a.csv");
    assert_eq!(a, run("b.csv"));

    // the config file may change; the manifest keeps the resolved values
    fs::write(dir.path().join("chain.toml"), "snapshots = 64\n").unwrap();
    let o = adft(dir.path(), &["replay", "a.csv.manifest.json", "-o", "c.csv"]);
    assert!(o.status.success());
    assert_eq!(a, fs::read(dir.path().join("c.csv")).unwrap());
}

#[test]
fn simulate_seed_override_changes_noise() {
    let dir = tempfile::tempdir().unwrap();
    let run = |seed: &str, out: &str| {
        let args = ["simulate", "--snr-db", "10", "--snapshots", "128", "--azimuth", "0", "--seed", seed, "-o", out];
        assert!(adft(dir.path(), &args).status.success());
        fs::read_to_string(dir.path().join(out)).unwrap()
    };
    assert_ne!(csv_rows(&run("1", "a.csv")), csv_rows(&run("2", "b.csv")));
}

#[test]
fn replay_reproduces_deterministic_outputs() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["response", "--grid", "256", "-o", "r.json"],
        vec!["beams1d", "--dx", "0.6", "--points", "181", "--long", "-o", "r.csv"],
        vec!["nearfield", "--range", "7,14", "--points", "145", "-o", "r.csv"],
    ] {
        assert!(adft(dir.path(), &args).status.success());
        let out = args.last().unwrap();
        let manifest = format!("{out}.manifest.json");
        assert!(adft(dir.path(), &["replay", &manifest, "-o", "replayed"]).status.success());
        assert_eq!(
            fs::read(dir.path().join(out)).unwrap(),
            fs::read(dir.path().join("replayed")).unwrap(),
            "{args:?}"
        );
    }
}

#[test]
fn out_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_adft"))
        .args(["opcount", "-o", "ops.csv"])
        .current_dir(dir.path())
        .env("ADFT_OUT_DIR", dir.path().join("artifacts"))
        .output()
        .unwrap();
    assert!(o.status.success());
    let text = fs::read_to_string(dir.path().join("artifacts/ops.csv")).unwrap();
    assert!(text.contains("Fast Algorithm F̂32,348,0,computed,348,0"));
}

#[test]
fn pareto_emits_candidate_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let o = adft(dir.path(), &["pareto", "--beta-min", "0.5", "--beta-max", "1.5", "--emit-matrix", "1.0", "-o", "p.csv"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("equals the 32-point ADFT: true"));
    let m = GaussianMatrix::from_json(&fs::read_to_string(dir.path().join("p.beta-1.json")).unwrap()).unwrap();
    assert_eq!(m, adft32_matrix());
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("p.csv.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["outputs"].as_array().unwrap().len(), 2);
    assert_eq!(manifest["subcommand"], "pareto");
}

#[test]
fn measured_pattern_feeds_beams2d() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["simulate", "--snapshots", "256", "--points", "181", "-o", "meas.json"];
    assert!(adft(dir.path(), &args).status.success());
    let o = adft(dir.path(), &["beams2d", "--k", "3", "--l", "4", "--grid", "73x19", "--measured", "meas.json", "-o", "b.csv"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(dir.path().join("b.csv")).unwrap();
    assert!(text.contains("# source: measured meas.json"));
}
