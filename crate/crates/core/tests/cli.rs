use std::path::Path;
use std::process::{Command, Output};

fn speckle(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_speckle"))
        .args(args)
        .current_dir(dir)
        .env_remove("SPECKLE_SEED")
        .output()
        .expect("binary runs")
}

fn header(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap().lines().next().unwrap().to_string()
}

#[test]
fn sweep_schema_and_default_path() {
    let dir = tempfile::tempdir().unwrap();
    let out = speckle(dir.path(), &["snr-sweep", "--axis", "g", "--values", "0:1.5:0.1", "--s", "2", "--trials", "50"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let path = dir.path().join("snr-sweep.csv");
    assert_eq!(header(&path), "axis_value,mean_n,fano_ratio,snr_ratio,stderr_snr,trials");
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 17);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert_eq!(stdout.lines().count(), 1);
    assert!(stdout.contains("wrote 16 rows"), "{stdout}");
}

#[test]
fn superres_schema() {
    let dir = tempfile::tempdir().unwrap();
    let out = speckle(
        dir.path(),
        &["superres", "--g", "1.5", "--s", "2,4,6,8", "--budgets", "1e6:3.5e10:log25", "--trials", "50"],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let path = dir.path().join("superres.csv");
    assert_eq!(header(&path), "s,mean_n,Q,W,W_Q,J");
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 1 + 5 * 25);
    assert!(text.lines().nth(1).unwrap().starts_with("coherent,"));
}

#[test]
fn json_mirrors_csv() {
    let dir = tempfile::tempdir().unwrap();
    for fmt in ["csv", "json"] {
        let out = speckle(dir.path(), &["nm-sweep", "--trials", "20", "--format", fmt]);
        assert!(out.status.success());
    }
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("nm-sweep.json")).unwrap()).unwrap();
    let mut csv = csv::Reader::from_path(dir.path().join("nm-sweep.csv")).unwrap();
    let headers = csv.headers().unwrap().clone();
    let records: Vec<csv::StringRecord> = csv.records().map(Result::unwrap).collect();
    let rows = json.as_array().unwrap();
    assert_eq!(rows.len(), records.len());
    for (row, rec) in rows.iter().zip(&records) {
        let keys: Vec<&str> = row.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, headers.iter().collect::<Vec<_>>());
        for (h, v) in headers.iter().zip(rec) {
            assert_eq!(row[h].as_f64().unwrap(), v.parse::<f64>().unwrap(), "{h}");
        }
    }
}

#[test]
fn csv_values_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = speckle(dir.path(), &["fano-scatter", "--trials", "30", "--format", "json", "--out", "a.json"]);
    assert!(out.status.success());
    assert!(speckle(dir.path(), &["fano-scatter", "--trials", "30", "--out", "a.csv"]).status.success());
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("a.json")).unwrap()).unwrap();
    let mut csv = csv::Reader::from_path(dir.path().join("a.csv")).unwrap();
    for (rec, row) in csv.records().zip(json.as_array().unwrap()) {
        let rec = rec.unwrap();
        // serde_json also round-trips f64 exactly, so equality means no digits were lost
        assert_eq!(rec[4].parse::<f64>().unwrap(), row["fano"].as_f64().unwrap());
        assert_eq!(rec[1].parse::<u64>().unwrap(), row["seed"].as_u64().unwrap());
    }
}

#[test]
fn usage_errors_exit_two_and_name_the_flag() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [(&[&str], &str); 6] = [
        (&["fano-scatter", "--s", "0.5"], "--s"),
        (&["fano-scatter", "--g=-1"], "--g"),
        (&["nm-sweep", "--values", "0:1:zero"], "--values"),
        (&["fano-scatter", "--n", "60"], "--n"),
        (&["psf", "--q", "40"], "--q"),
        (&["fano-scatter", "--bogus"], "--bogus"),
    ];
    for (args, flag) in cases {
        let out = speckle(dir.path(), args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains(flag), "{args:?}: {err}");
    }
}

#[test]
fn numerical_errors_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let out = speckle(dir.path(), &["superres", "--budgets", "1e-3", "--trials", "10"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("too small"));
}

#[test]
fn oracle_check_passes_and_reports_worst_case() {
    let dir = tempfile::tempdir().unwrap();
    let out = speckle(dir.path(), &["oracle-check", "--cases", "500", "--seed", "7"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("worst rel err"));
}

#[test]
fn seed_environment_overrides_flag() {
    let dir = tempfile::tempdir().unwrap();
    let run = |env: Option<&str>, seed: &str, out: &str| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_speckle"));
        cmd.args(["fano-scatter", "--trials", "5", "--seed", seed, "--out", out]).current_dir(dir.path());
        match env {
            Some(v) => cmd.env("SPECKLE_SEED", v),
            None => cmd.env_remove("SPECKLE_SEED"),
        };
        assert!(cmd.output().unwrap().status.success());
        std::fs::read(dir.path().join(out)).unwrap()
    };
    let by_flag = run(None, "9", "flag.csv");
    let by_env = run(Some("9"), "1", "env.csv");
    let plain = run(None, "1", "plain.csv");
    assert_eq!(by_flag, by_env);
    assert_ne!(by_flag, plain);

    let mut cmd = Command::new(env!("CARGO_BIN_EXE_speckle"));
    let out = cmd
        .args(["fano-scatter", "--trials", "5"])
        .env("SPECKLE_SEED", "not-a-number")
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("SPECKLE_SEED"));
}

#[test]
fn prolate_basis_export_reverifies_orthonormality() {
    let dir = tempfile::tempdir().unwrap();
    assert!(speckle(dir.path(), &["prolate-basis", "--c", "1"]).status.success());
    let text = std::fs::read_to_string(dir.path().join("prolate-basis.csv")).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# c=1 K=7 lambda="));
    let body = lines.collect::<Vec<_>>().join("\n");
    let mut csv = csv::Reader::from_reader(body.as_bytes());
    let rows: Vec<Vec<f64>> = csv
        .records()
        .map(|r| r.unwrap().iter().map(|v| v.parse().unwrap()).collect())
        .collect();
    for j in 0..7 {
        for k in 0..7 {
            let ip: f64 = rows.iter().map(|r| r[1] * r[2 + j] * r[2 + k]).sum();
            let target = if j == k { 1.0 } else { 0.0 };
            assert!((ip - target).abs() < 1e-8, "<{j},{k}> = {ip}");
        }
    }
}

#[test]
fn photon_budget_reference() {
    let dir = tempfile::tempdir().unwrap();
    let out = speckle(dir.path(), &["photon-budget", "--format", "json"]);
    assert!(out.status.success());
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("photon-budget.json")).unwrap()).unwrap();
    let n = json[0]["photons"].as_f64().unwrap();
    assert!((n / 3.47e10 - 1.0).abs() < 0.01);
}
