use std::path::Path;
use std::process::{Command, Output};

use hbt_cli::records::{read_scan, ScanRecord};

fn hbt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hbt"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn hbt_to(dir: &Path, name: &str, args: &[&str]) -> (Output, String) {
    let path = dir.join(name);
    let mut full: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap().to_string();
    full.extend(["--out", &p]);
    let out = hbt(&full);
    let text = std::fs::read_to_string(&path).unwrap_or_default();
    (out, text)
}

fn column(text: &str, name: &str) -> Vec<f64> {
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let k = header.iter().position(|h| *h == name).unwrap();
    lines.map(|l| l.split(',').nth(k).unwrap().parse().unwrap()).collect()
}

#[test]
fn scan_origin_row_and_invariants() {
    let dir = tempfile::tempdir().unwrap();
    let (out, text) = hbt_to(dir.path(), "s.csv", &["scan", "--nbar", "10", "--kappa", "1000"]);
    assert!(out.status.success());
    assert_eq!(text.lines().count(), 2002);
    assert_eq!(text.lines().next().unwrap(), "x,I,J,D,I_norm,J_norm,D_norm,g2m1");
    let rows = read_scan(&dir.path().join("s.csv")).unwrap();
    let r0 = rows[0];
    assert!((r0.i - (441.0f64 / 41.0).ln()).abs() < 1e-10);
    assert!((r0.j - (462.0f64 / 62.0).ln()).abs() < 1e-10);
    assert!((r0.d - (1302.0f64 / 902.0).ln()).abs() < 1e-10);
    assert_eq!((r0.i_norm, r0.j_norm, r0.d_norm, r0.g2m1), (1.0, 1.0, 1.0, 1.0));
    assert!(rows.iter().all(|r| r.check().is_ok()));
    assert!(rows[1..].iter().all(|r| r.d_norm <= r.j_norm));
}

#[test]
fn weak_light_scan_tracks_g2() {
    let out = hbt(&["scan", "--nbar", "0.01"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let i = column(&text, "I_norm");
    let g = column(&text, "g2m1");
    let worst = i.iter().zip(&g).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    assert!(worst <= 1e-4, "{worst}");
}

#[test]
fn json_matches_csv() {
    let csv = String::from_utf8(hbt(&["scan", "--points", "11"]).stdout).unwrap();
    let json = String::from_utf8(hbt(&["scan", "--points", "11", "--format", "json"]).stdout).unwrap();
    let rows: Vec<ScanRecord> = serde_json::from_str(&json).unwrap();
    assert_eq!(rows.len(), 11);
    let first: serde_json::Value = serde_json::from_str(&json).unwrap();
    let keys: Vec<&String> = first[0].as_object().unwrap().keys().collect();
    assert_eq!(keys, ["x", "I", "J", "D", "I_norm", "J_norm", "D_norm", "g2m1"]);
    for (r, v) in rows.iter().zip(column(&csv, "D")) {
        assert_eq!(r.d, v);
    }
}

#[test]
fn sweep_ratios() {
    let text = String::from_utf8(hbt(&["sweep-nbar", "--nbar-min", "1e-3", "--nbar-max", "100"]).stdout).unwrap();
    let nbar = column(&text, "nbar");
    let d_over_i = column(&text, "D_over_I");
    let j_over_i = column(&text, "J_over_I");
    assert_eq!(nbar.len(), 51);
    assert!(d_over_i.windows(2).all(|w| w[1] < w[0]));
    let at = |target: f64| nbar.iter().position(|n| (n / target - 1.0).abs() < 1e-9).unwrap();
    let k = at(0.01);
    assert!((d_over_i[k] - 0.495_097_568).abs() < 1e-8 && (j_over_i[k] - 0.504_902_432).abs() < 1e-8);
    let k = at(10.0);
    let want = (1302.0f64 / 902.0).ln() / (441.0f64 / 41.0).ln();
    assert!((d_over_i[k] - want).abs() < 1e-10);
}

#[test]
fn verify_report() {
    let out = hbt(&["verify"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pass"], true);
    for s in v["series"].as_array().unwrap() {
        assert_eq!(s["order_matched"], 3);
    }
    let dev = v["deviations"].as_array().unwrap();
    assert_eq!(dev[0]["status"], "pass");
    assert_eq!(dev[1]["status"], "expected-fail");

    let out = hbt(&[
        "verify",
        "--nbar",
        "0.001,0.1,100",
        "--kernel",
        "sinc",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let status = |nbar: &str| {
        let prefix = format!("weaklight_deviation,{nbar},");
        text.lines()
            .find(|l| l.starts_with(&prefix))
            .unwrap()
            .rsplit(',')
            .next()
            .unwrap()
            .to_string()
    };
    assert_eq!(
        (status("0.001"), status("0.1"), status("100")),
        ("pass".into(), "info".into(), "expected-fail".into())
    );
    assert_eq!(text.lines().filter(|l| l.ends_with(",pass")).count(), 6);
}

#[test]
fn verify_failure_exit_code() {
    let out = hbt(&["verify", "--nbar", "0.01", "--threshold", "1e-6"]);
    assert_eq!(out.status.code(), Some(3));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["pass"], false);
    assert_eq!(report["deviations"][0]["status"], "fail");
}

#[test]
fn mc_runs_are_byte_identical_across_thread_counts() {
    let args = [
        "mc",
        "--source-points",
        "64",
        "--trials",
        "2000",
        "--grid",
        "0:0.008:9",
        "--seed",
        "7",
    ];
    let one = hbt(&[&["--threads", "1"][..], &args[..]].concat());
    let three = hbt(&[&["--threads", "3"][..], &args[..]].concat());
    assert!(one.status.success());
    assert_eq!(one.stdout, three.stdout);
    let text = String::from_utf8(one.stdout).unwrap();
    assert_eq!(text.lines().next().unwrap(), "x,g2m1_estimate,std_error,g2m1_analytic");
    assert_eq!(text.lines().count(), 10);
    assert!(column(&text, "std_error").iter().all(|e| *e >= 0.0));
}

#[test]
fn exit_codes() {
    assert_eq!(hbt(&["scan", "--points", "1"]).status.code(), Some(2));
    assert_eq!(hbt(&["scan", "--nbar", "-1"]).status.code(), Some(2));
    assert_eq!(hbt(&["scan", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(hbt(&["mc", "--trials", "10"]).status.code(), Some(2));
    assert_eq!(hbt(&["mc", "--grid", "0:1"]).status.code(), Some(2));
    assert_eq!(hbt(&[]).status.code(), Some(2));
    assert_eq!(hbt(&["scan", "--out", "/nonexistent-dir/x.csv"]).status.code(), Some(4));
    assert_eq!(hbt(&["--check", "/nonexistent-dir/x.csv"]).status.code(), Some(4));
    assert_eq!(hbt(&["--help"]).status.code(), Some(0));
}

#[test]
fn check_mode_flags_corrupted_rows() {
    let dir = tempfile::tempdir().unwrap();
    let (out, text) = hbt_to(dir.path(), "s.csv", &["scan", "--points", "21"]);
    assert!(out.status.success());
    let path = dir.path().join("s.csv");
    let ok = hbt(&["--check", path.to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0));

    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let mut fields: Vec<String> = lines[3].split(',').map(String::from).collect();
    fields[3] = "0.5".into(); // D no longer equals I − J
    lines[3] = fields.join(",");
    std::fs::write(&path, lines.join("\n") + "\n").unwrap();
    let bad = hbt(&["--check", path.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("row 3"));

    std::fs::write(&path, "a,b\n1,2\n").unwrap();
    assert_eq!(hbt(&["--check", path.to_str().unwrap()]).status.code(), Some(4));

    let (_, _) = hbt_to(dir.path(), "s.json", &["scan", "--points", "21", "--format", "json"]);
    let json = dir.path().join("s.json");
    assert_eq!(hbt(&["--check", json.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# weak light\nnbar = 0.01\npoints = 3\nthreads = 1\n").unwrap();
    let from_cfg = hbt(&["scan", "--config", cfg.to_str().unwrap()]);
    let direct = hbt(&["scan", "--nbar", "0.01", "--points", "3"]);
    assert_eq!(from_cfg.stdout, direct.stdout);
    let overridden = hbt(&["scan", "--config", cfg.to_str().unwrap(), "--points", "4"]);
    assert_eq!(String::from_utf8(overridden.stdout).unwrap().lines().count(), 5);

    std::fs::write(&cfg, "trials = 5\n").unwrap();
    assert_eq!(hbt(&["scan", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(hbt(&["scan", "--config", "/nonexistent-dir/c"]).status.code(), Some(4));
}

#[test]
fn output_is_independent_of_thread_count() {
    let a = hbt(&["--threads", "1", "scan", "--points", "301"]);
    let b = hbt(&["--threads", "4", "scan", "--points", "301"]);
    assert_eq!(a.stdout, b.stdout);
    let a = hbt(&["--threads", "1", "sweep-nbar"]);
    let b = hbt(&["--threads", "4", "sweep-nbar"]);
    assert_eq!(a.stdout, b.stdout);
}
