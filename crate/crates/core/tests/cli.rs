use std::path::Path;
use std::process::{Command, Output};

fn qorrelate(args: &[&str], workers: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qorrelate"));
    cmd.args(args);
    match workers {
        Some(w) => cmd.env("QORRELATE_WORKERS", w),
        None => cmd.env_remove("QORRELATE_WORKERS"),
    };
    cmd.output().expect("binary runs")
}

fn stdout_ok(args: &[&str]) -> String {
    let out = qorrelate(args, None);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

// Rows after stripping `#` metadata, as header-keyed records.
fn rows(text: &str) -> Vec<std::collections::HashMap<String, String>> {
    let body: String = text.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
    let mut rdr = csv::Reader::from_reader(body.as_bytes());
    let headers = rdr.headers().unwrap().clone();
    rdr.records()
        .map(|r| {
            let r = r.unwrap();
            headers.iter().zip(r.iter()).map(|(h, v)| (h.to_string(), v.to_string())).collect()
        })
        .collect()
}

fn value(row: &std::collections::HashMap<String, String>, key: &str) -> f64 {
    row[key].parse().unwrap()
}

#[test]
fn table_c2_is_always_monogamous() {
    let out = stdout_ok(&["table", "--family", "haar", "--n", "3", "--measures", "c2", "--samples", "1000", "--seed", "7"]);
    assert!(out.starts_with("# qorrelate "));
    let rows = rows(&out);
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["percentage"], "100.0");
    assert_eq!(rows[0]["kind"], "c2");
    let header = out.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(header, "family,n,r,kind,samples,monogamous_count,percentage,eps,seed");
}

#[test]
fn gen_dicke_w_class_discord() {
    let out = stdout_ok(&["table", "--family", "gen-dicke", "--n", "3", "--r", "1", "--measures", "d-bwd", "--samples", "1000"]);
    assert_eq!(value(&rows(&out)[0], "percentage"), 0.0);
}

#[test]
fn table_bytes_do_not_depend_on_workers() {
    let args = ["table", "--family", "haar", "--n", "3", "--measures", "c,e,d-fwd,wd-bwd", "--samples", "300", "--seed", "5"];
    let one = qorrelate(&args, Some("1"));
    let four = qorrelate(&args, Some("4"));
    let again = qorrelate(&args, Some("1"));
    assert!(one.status.success() && four.status.success());
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(one.stdout, again.stdout);
    assert!(!String::from_utf8_lossy(&one.stdout).contains("workers"));
}

#[test]
fn table_writes_file_atomically() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let p = path.to_str().unwrap();
    let out = qorrelate(&["table", "--family", "symmetric", "--n", "3", "--measures", "d-fwd,d-bwd", "--samples", "100", "-o", p, "--check"], None);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let r = rows(&text);
    // pair states of symmetric states are swap-invariant
    assert_eq!(r[0]["monogamous_count"], r[1]["monogamous_count"]);
    let entries: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(entries.len(), 1);

    let bad = dir.path().join("bad.csv");
    let out = qorrelate(&["table", "--family", "gen-dicke", "--n", "3", "--samples", "10", "-o", bad.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(!bad.exists());
    assert!(String::from_utf8_lossy(&out.stderr).contains("excitation"));
}

#[test]
fn invalid_arguments_exit_nonzero() {
    for args in [
        &["table", "--family", "haar", "--n", "3", "--nodal", "4"][..],
        &["table", "--family", "haar", "--n", "3", "--measures", "d3"],
        &["table", "--family", "cubic", "--n", "3"],
        &["table", "--family", "haar", "--n", "13"],
        &["state", "--name", "dicke", "--n", "4"],
        &["dicke-scan", "--n-min", "2"],
    ] {
        let out = qorrelate(args, None);
        assert!(!out.status.success(), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    let out = qorrelate(&["table", "--family", "haar", "--n", "3", "--samples", "5"], Some("0"));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn state_reports() {
    let ghz = rows(&stdout_ok(&["state", "--name", "ghz", "--n", "3"]));
    assert_eq!(ghz.len(), 18);
    let c2 = ghz.iter().find(|r| r["quantity"] == "c2").unwrap();
    assert!((value(c2, "score") - 1.0).abs() < 1e-12);

    let w = rows(&stdout_ok(&["state", "--name", "w", "--n", "3", "--check"]));
    let t = w.iter().find(|r| r["quantity"] == "tangle").unwrap();
    assert!(value(t, "score").abs() < 1e-8);

    let d = rows(&stdout_ok(&["state", "--name", "dicke", "--n", "4", "--r", "2"]));
    let db = d.iter().find(|r| r["quantity"] == "d-bwd").unwrap();
    assert!(value(db, "score") < 0.0);
    assert_eq!(db["monogamous"], "false");
}

#[test]
fn state_from_amplitude_file() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("ghz.txt");
    std::fs::write(&good, "# GHZ on three qubits\n1 0\n0,0\n0 0\n0 0\n0 0\n0 0\n0 0\n1 0\n").unwrap();
    let out = stdout_ok(&["state", "--amplitudes", good.to_str().unwrap(), "--format", "json", "--nodal", "2"]);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["meta"]["config"]["nodal"], 2);
    assert!((doc["tangle"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 18);
    assert_eq!(doc["discord_bound"]["premise_holds"], false);

    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "1 0\n0 zero\n").unwrap();
    let out = qorrelate(&["state", "--amplitudes", bad.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let out = qorrelate(&["state", "--amplitudes", Path::new("/nonexistent/amps").to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn dicke_scan_rows() {
    let out = stdout_ok(&["dicke-scan", "--n-min", "3", "--n-max", "8", "--check"]);
    let r = rows(&out);
    assert_eq!(r.len(), (3..=8).map(|n| n - 1).sum::<usize>());
    let header = out.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(header, "n,r,discord_score,workdeficit_score_fwd,workdeficit_score_bwd,tangle");
    for row in &r {
        if row["r"] == "1" {
            assert!(value(row, "tangle").abs() < 1e-12);
        }
    }
    let n8: Vec<f64> = r.iter().filter(|x| x["n"] == "8").map(|x| value(x, "discord_score")).collect();
    assert!(n8[..4].windows(2).all(|w| w[1] < w[0]));
    let t42 = r.iter().find(|x| x["n"] == "4" && x["r"] == "2").unwrap();
    assert!(value(t42, "tangle") > 0.0);

    let big = rows(&stdout_ok(&["dicke-scan", "--n-min", "40", "--n-max", "40", "--r-max", "3"]));
    assert_eq!(big.len(), 3);
}

#[test]
fn fit_reports_exponent() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("p.csv");
    let lines: String = (3..=6).map(|n| format!("{n},{}\n", 100.0 * (n as f64).powf(-0.9))).collect();
    std::fs::write(&input, format!("n,p\n{lines}")).unwrap();
    let out = stdout_ok(&["fit", "--input", input.to_str().unwrap(), "--percent"]);
    let r = rows(&out);
    assert!((value(&r[0], "alpha") - 0.9).abs() < 1e-9);

    std::fs::write(&input, "n,p\n3,0.1\n4,0.05\n").unwrap();
    let out = qorrelate(&["fit", "--input", input.to_str().unwrap(), "--pc", "0.2"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn help_lists_subcommands() {
    let out = stdout_ok(&["--help"]);
    for sub in ["table", "state", "dicke-scan", "fit"] {
        assert!(out.contains(sub));
    }
}
