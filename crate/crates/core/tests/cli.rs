use std::path::Path;
use std::process::Command;

use tempfile::TempDir;

fn gelfand(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_gelfand")).args(args).output().expect("spawn gelfand")
}

fn run_to_file(dir: &Path, name: &str, args: &[&str]) -> (i32, String) {
    let out = dir.join(name);
    let mut full: Vec<&str> = args.to_vec();
    let path = out.to_str().unwrap().to_owned();
    full.extend(["--out", &path]);
    let o = gelfand(&full);
    let body = std::fs::read_to_string(&out).unwrap_or_default();
    (o.status.code().unwrap(), body)
}

fn column(csv_text: &str, name: &str) -> Vec<String> {
    let mut rdr = csv::Reader::from_reader(csv_text.as_bytes());
    let idx = rdr.headers().unwrap().iter().position(|h| h == name).unwrap();
    rdr.records().map(|r| r.unwrap()[idx].to_owned()).collect()
}

fn floats(csv_text: &str, name: &str) -> Vec<f64> {
    column(csv_text, name).iter().map(|v| v.parse().unwrap()).collect()
}

#[test]
fn branch_table_has_one_turning_point() {
    let dir = TempDir::new().unwrap();
    let (code, body) = run_to_file(dir.path(), "b.csv", &["branch", "--tau-min", "0.2", "--tau-max", "6", "--tau-count", "60"]);
    assert_eq!(code, 0);
    assert!(body.starts_with("tau,lambda,alpha,lambda_prime\n"));
    assert!(!body.contains('\r'));
    let lp = floats(&body, "lambda_prime");
    assert!(lp.iter().any(|v| v.abs() < 1e-12), "fold row missing");
    let signed: Vec<f64> = lp.into_iter().filter(|v| v.abs() >= 1e-12).collect();
    assert_eq!(signed.windows(2).filter(|w| w[0].signum() != w[1].signum()).count(), 1);

    let (code, body) = run_to_file(dir.path(), "m.csv", &["branch", "--kind", "minus"]);
    assert_eq!(code, 0);
    let lam = floats(&body, "lambda");
    assert_eq!(lam.len(), 15);
    assert!(lam.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn spectrum_table_contents() {
    let dir = TempDir::new().unwrap();
    let (code, body) = run_to_file(dir.path(), "s.csv", &["spectrum"]);
    assert_eq!(code, 0);
    let taus = floats(&body, "tau");
    let js = floats(&body, "j");
    let mus = floats(&body, "mu");
    let (lo, hi) = (floats(&body, "bracket_lo"), floats(&body, "bracket_hi"));
    let res = floats(&body, "equation_residual");
    assert_eq!(mus.len(), 26 * 5);
    let t1 = gelfand::tau1();
    let fold_row = (0..mus.len()).find(|&i| taus[i] == t1 && js[i] == 1.0).expect("fold row");
    assert_eq!(mus[fold_row], 0.0);
    for i in 0..mus.len() {
        assert!(res[i].abs() <= 1e-12);
        if lo[i] == hi[i] {
            assert_eq!(mus[i], lo[i]);
        } else {
            assert!(lo[i] < mus[i] && mus[i] < hi[i], "row {i}");
        }
    }
}

#[test]
fn eigenfunction_samples() {
    let dir = TempDir::new().unwrap();
    let (code, body) = run_to_file(dir.path(), "e.csv", &["eigenfunction", "--j", "1", "--tau", "3", "--samples", "101"]);
    assert_eq!(code, 0);
    let xs = floats(&body, "x");
    let raw = floats(&body, "phi_raw");
    assert_eq!((xs[0], xs[100]), (-1.0, 1.0));
    assert!(raw[0].abs() < 1e-12 && raw[100].abs() < 1e-12);
    assert!(raw[1..100].iter().all(|&v| v > 0.0));

    for j in 2..=5 {
        let js = j.to_string();
        let (code, body) = run_to_file(dir.path(), "e.csv", &["eigenfunction", "--kind", "minus", "--j", &js, "--tau", "1.2", "--samples", "801"]);
        assert_eq!(code, 0);
        let sup = floats(&body, "phi_sup_one");
        let inner: Vec<f64> = sup[1..800].iter().copied().filter(|v| v.abs() > 1e-9).collect();
        let changes = inner.windows(2).filter(|w| w[0].signum() != w[1].signum()).count();
        assert_eq!(changes, j - 1);
        assert!(sup.iter().all(|v| v.abs() <= 1.0 + 1e-12));
    }
}

#[test]
fn invalid_configurations_exit_two_without_output() {
    let dir = TempDir::new().unwrap();
    let cases: [&[&str]; 6] = [
        &["branch", "--tau-count", "0"],
        &["spectrum", "--kind", "minus", "--tau-max", "1.6"],
        &["spectrum", "--j-min", "4", "--j-max", "2"],
        &["verify", "--oracle-n", "16"],
        &["eigenfunction", "--j", "0", "--tau", "1"],
        &["eigenfunction", "--j", "2", "--tau", "1", "--samples", "1"],
    ];
    for (i, args) in cases.iter().enumerate() {
        let name = format!("bad{i}.csv");
        let (code, _) = run_to_file(dir.path(), &name, args);
        assert_eq!(code, 2, "{args:?}");
        assert!(!dir.path().join(&name).exists(), "{args:?}");
    }
    assert_eq!(gelfand(&["spectrum", "--kind", "sideways"]).status.code(), Some(2));
}

#[test]
fn json_document_shape() {
    let dir = TempDir::new().unwrap();
    let (code, body) = run_to_file(dir.path(), "s.json", &["spectrum", "--kind", "minus", "--format", "json", "--tau-count", "3"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert_eq!(v["meta"]["kind"], "minus");
    assert_eq!(v["meta"]["tau_grid"]["count"], 3);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 15);
    assert!(rows[0]["mu"].as_f64().unwrap() > 0.0);
}

#[test]
fn stdout_when_no_out_path() {
    let o = gelfand(&["branch", "--kind", "minus", "--tau-count", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 3);
}
