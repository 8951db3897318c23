//! End-to-end checks of the `polythresh` binary.

use std::path::Path;
use std::process::{Command, Output};

use polythresh::experiments::{read_csv, SCHEMA_VERSION};

const SMALL_DUAL: &str = r#"
model = "dual_beta"

[mc]
n_outer = 40
n_inner = 50
seed = 3

[grid]
n = [3]
beta = [0.0, 1.0]
N = [4, 16]
R = [0.5]
annulus = [[1.0, 2.0]]
x_norm = [1.5]
"#;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_polythresh"))
}

fn run(cmd: &mut Command) -> Output {
    let out = cmd.output().expect("spawn polythresh");
    assert!(out.status.success(), "failed: {}", String::from_utf8_lossy(&out.stderr));
    out
}

/// serde_json's default float parser may be off by an ulp or two.
fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 4.0 * f64::EPSILON * a.abs().max(b.abs())
}

fn write_config(dir: &Path) -> std::path::PathBuf {
    let path = dir.join("sweep.toml");
    std::fs::write(&path, SMALL_DUAL).unwrap();
    path
}

#[test]
fn tabulate_csv_starts_at_one_half() {
    let out = run(bin().args([
        "tabulate",
        "--model",
        "beta",
        "--n",
        "3",
        "--beta",
        "0",
        "--d-grid",
        "0:0.5:0.25",
        "--bounds",
    ]));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(&rdr.headers().unwrap()[0], "schema_version");
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 3);
    let tail0: f64 = rows[0][6].parse().unwrap();
    assert!((tail0 - 0.5).abs() < 1e-10);
    let lo: f64 = rows[1][8].parse().unwrap();
    let up: f64 = rows[1][9].parse().unwrap();
    let tail: f64 = rows[1][6].parse().unwrap();
    assert!(lo <= tail && tail <= up);
}

#[test]
fn tabulate_json_mirrors_csv() {
    let args = ["tabulate", "--model", "beta-prime", "--n", "2", "--beta", "3", "--d-grid", "0:2:0.5"];
    let csv_out = run(bin().args(args)).stdout;
    let json_out = run(bin().args(args).arg("--json")).stdout;
    let json: serde_json::Value = serde_json::from_slice(&json_out).unwrap();
    let arr = json.as_array().unwrap();
    let mut rdr = csv::Reader::from_reader(csv_out.as_slice());
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(arr.len(), rows.len());
    for (j, c) in arr.iter().zip(&rows) {
        assert_eq!(j["schema_version"].as_u64(), Some(u64::from(SCHEMA_VERSION)));
        assert!(close(j["tail"].as_f64().unwrap(), c[6].parse::<f64>().unwrap()));
    }
}

#[test]
fn sample_is_seeded_and_inside_the_ball() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b, c) = (dir.path().join("a.txt"), dir.path().join("b.txt"), dir.path().join("c.txt"));
    let base = ["sample", "--model", "beta", "--n", "4", "--beta", "1", "--count", "200"];
    run(bin().args(base).args(["--seed", "5", "--out"]).arg(&a));
    run(bin().args(base).args(["--seed", "5", "--out"]).arg(&b));
    run(bin().args(base).args(["--seed", "6", "--out"]).arg(&c));
    let (ta, tb, tc) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap(), std::fs::read(&c).unwrap());
    assert_eq!(ta, tb);
    assert_ne!(ta, tc);
    let text = String::from_utf8(ta).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 200);
    for line in lines {
        let coords: Vec<f64> = line.split_whitespace().map(|s| s.parse().unwrap()).collect();
        assert_eq!(coords.len(), 4);
        assert!(coords.iter().map(|v| v * v).sum::<f64>() < 1.0);
    }
}

#[test]
fn estimate_emits_one_sweep_row() {
    let out = run(bin().args([
        "estimate",
        "--quantity",
        "membership",
        "--model",
        "beta",
        "--n",
        "3",
        "--beta",
        "0",
        "--N",
        "50",
        "--x",
        "0.1,0,0",
        "--outer",
        "20",
        "--seed",
        "1",
    ]));
    let rows = read_csv(out.stdout.as_slice()).unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].quantity, "membership");
    assert_eq!(rows[0].n_points, 50);
    assert!((0.0..=1.0).contains(&rows[0].mean));
}

#[test]
fn sweep_reruns_are_byte_identical_for_any_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path());
    let mut outputs = Vec::new();
    for (i, threads) in ["1", "3", "1"].iter().enumerate() {
        let out = dir.path().join(format!("out{i}.csv"));
        run(bin().env("POLYTHRESH_THREADS", threads).args(["sweep", "--config"]).arg(&cfg).arg("--out").arg(&out));
        outputs.push(std::fs::read(&out).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[0], outputs[2]);
    let rows = read_csv(outputs[0].as_slice()).unwrap();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r.schema_version == SCHEMA_VERSION && r.model == "dual_beta"));
}

#[test]
fn sweep_json_mirrors_csv() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path());
    let (c, j) = (dir.path().join("o.csv"), dir.path().join("o.json"));
    run(bin().args(["sweep", "--config"]).arg(&cfg).arg("--out").arg(&c));
    run(bin().args(["sweep", "--json", "--config"]).arg(&cfg).arg("--out").arg(&j));
    let rows = read_csv(std::fs::read(&c).unwrap().as_slice()).unwrap();
    let json: serde_json::Value = serde_json::from_slice(&std::fs::read(&j).unwrap()).unwrap();
    let arr = json.as_array().unwrap();
    assert_eq!(arr.len(), rows.len());
    for (row, obj) in rows.iter().zip(arr) {
        assert_eq!(obj["quantity"].as_str(), Some(row.quantity.as_str()));
        assert!(close(obj["mean"].as_f64().unwrap(), row.mean));
        assert_eq!(obj["seed"].as_u64(), Some(row.seed));
    }
}

#[test]
fn audit_default_grid_is_clean() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("audit.csv");
    let res = run(bin().args(["audit", "--out"]).arg(&out));
    assert!(String::from_utf8_lossy(&res.stdout).contains("violation 0"));
    assert!(std::fs::metadata(&out).unwrap().len() > 0);
}

#[test]
fn bad_inputs_exit_with_code_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "x").unwrap();
    let audit = bin().args(["audit", "--grid"]).arg(&bad).output().unwrap();
    assert_eq!(audit.status.code(), Some(2));
    let range =
        bin().args(["tabulate", "--model", "beta", "--n", "2", "--beta", "0", "--d-grid", "1:0:0.1"]).output().unwrap();
    assert_eq!(range.status.code(), Some(2));
    assert!(!range.stderr.is_empty());
    let unknown = dir.path().join("unknown.toml");
    std::fs::write(&unknown, SMALL_DUAL.replace("seed = 3", "seed = 3\nbogus = 1")).unwrap();
    let sweep = bin().args(["sweep", "--config"]).arg(&unknown).output().unwrap();
    assert_eq!(sweep.status.code(), Some(2));
}
