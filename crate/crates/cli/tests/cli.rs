use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    let cache = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_conngraph"))
        .args(args)
        .env("CONNGRAPH_CACHE_DIR", cache.path())
        .output()
        .unwrap();
    out
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&a)).unwrap()
}

#[test]
fn count_small_values() {
    assert_eq!(stdout(&["count", "--family", "csg", "--n", "4", "--k", "1"]).trim(), "6");
    assert_eq!(stdout(&["count", "--family", "csg", "--n", "4", "--k", "-1"]).trim(), "16");
    assert_eq!(stdout(&["count", "--family", "cmg", "--n", "2", "--k", "1"]).trim(), "56");
    let r = json(&["count", "--family", "csg", "--n", "4", "--k", "0"]);
    assert_eq!(r["count"], "15");
    assert_eq!(r["family"], "csg");
    assert_eq!(r["route"], "excess-gf");
}

#[test]
fn routes_agree_on_the_command_line() {
    for route in ["excess-gf", "recurrence", "brute-force"] {
        assert_eq!(stdout(&["count", "--family", "csg", "--n", "6", "--k", "2", "--route", route]).trim(), "6165");
        assert_eq!(stdout(&["count", "--family", "cmg", "--n", "3", "--k", "1", "--route", route]).trim(), "4848");
    }
}

#[test]
fn table_matches_individual_counts() {
    let rows = json(&["table", "--family", "cmg", "--n", "2..4", "--k=-1..1"]);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 9);
    let mut expect = vec![];
    for n in 2..=4 {
        for k in -1..=1 {
            expect.push((n, k));
        }
    }
    for (row, (n, k)) in rows.iter().zip(expect) {
        assert_eq!(row["n"], n);
        assert_eq!(row["k"], k);
        let single = json(&["count", "--family", "cmg", "--n", &n.to_string(), &format!("--k={k}")]);
        assert_eq!(row["count"], single["count"]);
    }
}

#[test]
fn csv_round_trip() {
    let text = stdout(&["table", "--family", "csg", "--n", "1..6", "--k", "0..2", "--format", "csv"]);
    let mut r = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(r.headers().unwrap(), vec!["family", "n", "k", "count", "route"]);
    let rows: Vec<csv::StringRecord> = r.records().map(|x| x.unwrap()).collect();
    assert_eq!(rows.len(), 18);
    let cell = rows.iter().find(|x| &x[1] == "5" && &x[2] == "1").unwrap();
    assert_eq!(&cell[3], "205");
}

#[test]
fn asympt_report() {
    let r = json(&["asympt", "--family", "csg", "--n", "60", "--k", "60"]);
    let ratio: f64 = r["ratio"].as_str().unwrap().parse().unwrap();
    assert!(ratio.is_finite() && ratio > 0.5 && ratio < 1.5, "{ratio}");
    let residual: f64 = r["residual"].as_str().unwrap().parse().unwrap();
    assert!(residual < 1e-30, "{residual}");
    for key in ["lambda", "zeta", "tau", "log_dominant", "log_exact"] {
        assert!(r[key].is_string(), "{key}");
    }
}

#[test]
fn lambda_stable_across_precision() {
    let lam = |p: &str| -> String {
        let r = json(&["asympt", "--family", "cmg", "--n", "400", "--k", "100", "--precision", p]);
        r["lambda"].as_str().unwrap().to_string()
    };
    let (a, b) = (lam("128"), lam("256"));
    assert!(a.len() > 32 && b.len() > 32);
    assert_eq!(a[..32], b[..32], "{a} vs {b}");
}

#[test]
fn validate_quick_passes() {
    let out = stdout(&["validate", "--suite", "quick"]);
    assert!(out.lines().count() >= 5);
    assert!(out.lines().all(|l| l.starts_with("PASS")), "{out}");
}

#[test]
fn output_is_deterministic() {
    let a = ["table", "--family", "sgpos", "--n", "1..8", "--k", "0..3", "--format", "json"];
    assert_eq!(stdout(&a), stdout(&a));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code().unwrap();
    assert_eq!(code(&["count", "--family", "csg", "--n", "4", "--k", "-2"]), 2);
    assert_eq!(code(&["count", "--family", "csg", "--n", "0", "--k", "1"]), 2);
    assert_eq!(code(&["count", "--family", "xyz", "--n", "4", "--k", "1"]), 2);
    assert_eq!(code(&["asympt", "--family", "csg", "--n", "60", "--k", "60", "--precision", "32"]), 2);
    assert_eq!(code(&["asympt", "--family", "csg", "--n", "60", "--k", "0"]), 2);
    assert_eq!(code(&["count", "--family", "csg", "--n", "9", "--k", "1", "--route", "brute-force"]), 3);
    assert_eq!(code(&["count", "--family", "csg", "--n", "5000", "--k", "1"]), 3);
}
