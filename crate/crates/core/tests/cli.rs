use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_kg-uniform"));
    cmd.args(args);
    match threads {
        Some(n) => cmd.env("KG_THREADS", n),
        None => cmd.env_remove("KG_THREADS"),
    };
    cmd.output().unwrap()
}

fn zero_timings(csv: &str) -> String {
    csv.lines()
        .map(|l| match l.rsplit_once(',') {
            Some((head, _)) => format!("{head},0.0\n"),
            None => format!("{l}\n"),
        })
        .collect::<String>()
        .replacen("err_h1,0.0", "err_h1,wall_time_s", 1)
}

#[test]
fn sweep_prints_csv_to_stdout() {
    let cfg = data("two_cells.toml");
    let out = run(&["sweep", "--config", cfg.to_str().unwrap()], None);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    let golden = std::fs::read_to_string(data("two_cells.csv")).unwrap();
    assert_eq!(zero_timings(&stdout), golden);
}

#[test]
fn flags_override_config_keys() {
    let cfg = data("two_cells.toml");
    let out = run(
        &["sweep", "--config", cfg.to_str().unwrap(), "--c", "1,10", "--tau-exp", "3", "--format", "json"],
        None,
    );
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["c"], 1.0);
    assert_eq!(rows[1]["tau"], 0.0125);
}

#[test]
fn sweep_writes_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.csv");
    let cfg = data("two_cells.toml");
    let out = run(
        &["sweep", "--config", cfg.to_str().unwrap(), "--out", path.to_str().unwrap()],
        None,
    );
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("scheme,c,tau,err_h1,wall_time_s\n"));
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let args = ["sweep", "--schemes", "uei1,uei2", "--c", "1,100", "--K", "8", "--tau-exp", "3..6"];
    let one = run(&args, Some("1"));
    let three = run(&args, Some("3"));
    assert!(one.status.success() && three.status.success());
    let a = zero_timings(&String::from_utf8(one.stdout).unwrap());
    let b = zero_timings(&String::from_utf8(three.stdout).unwrap());
    assert_eq!(a, b);
}

#[test]
fn failing_order_gives_nonzero_exit() {
    // steps far outside the asymptotic range miss the second-order band
    let out = run(&["sweep", "--schemes", "uei2", "--c", "1", "--K", "8", "--tau-exp", "0..2", "--T", "2"], None);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stderr).contains("FAIL"));
}

#[test]
fn invalid_input_is_an_error() {
    for args in [
        &["sweep", "--c", "-1"][..],
        &["sweep", "--schemes", "rk4"],
        &["sweep", "--T", "0"],
        &["sweep", "--config", "/nonexistent/cfg.toml"],
    ] {
        let out = run(args, None);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
    let out = run(&["sweep", "--K", "8"], Some("zero"));
    assert_eq!(out.status.code(), Some(2));
}
