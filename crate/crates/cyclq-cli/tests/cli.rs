use std::process::Command;

fn cyclq(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_cyclq"))
        .args(args)
        .env_remove("CYCLQ_CONFIG")
        .output()
        .expect("binary runs")
}

fn tmp(name: &str) -> std::path::PathBuf {
    std::env::temp_dir().join(format!("cyclq-cli-{}-{name}", std::process::id()))
}

#[test]
fn passing_suites_exit_zero_and_write_json() {
    let out = tmp("pass.json");
    let o = cyclq(&["verify", "--suite", "weyl,weights", "--n", "5", "--json-out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stdout));
    let stdout = String::from_utf8(o.stdout).unwrap();
    assert!(stdout.lines().any(|l| l.starts_with("PASS weyl.trace_orthogonality")));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["config"]["n"], 5);
    assert_eq!(v["summary"]["failed"], 0);
    for e in v["entries"].as_array().unwrap() {
        for key in ["check_id", "anchor", "params", "residual", "tolerance", "pass"] {
            assert!(e.get(key).is_some(), "{key}");
        }
    }
    std::fs::remove_file(out).unwrap();
}

#[test]
fn failing_check_gives_nonzero_exit() {
    let o = cyclq(&["verify", "--suite", "weyl", "--tol-rel", "1e-300"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stdout).contains("FAIL"));
}

#[test]
fn default_run_exit_code_tracks_failures() {
    let out = tmp("default.json");
    let o = cyclq(&["verify", "--json-out", out.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let failed = v["summary"]["failed"].as_u64().unwrap();
    assert_eq!(o.status.success(), failed == 0);
    std::fs::remove_file(out).unwrap();
}

#[test]
fn invalid_config_exits_two() {
    let o = cyclq(&["verify", "--alpha", "0.5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("2*alpha"));
    let o = cyclq(&["show-config", "--suite", "bogus"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn show_config_merges_file_env_and_flags() {
    let path = tmp("cfg.toml");
    std::fs::write(&path, "n = 5\nseed = 9\ndraws = 4\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_cyclq"))
        .args(["show-config", "--config", path.to_str().unwrap(), "--m", "3", "--flip-zs"])
        .env("CYCLQ_SEED", "11")
        .env("CYCLQ_DRAWS", "6")
        .output()
        .unwrap();
    assert!(o.status.success());
    let cfg: cyclq_cli::config::Config = toml::from_str(&String::from_utf8(o.stdout).unwrap()).unwrap();
    assert_eq!((cfg.n, cfg.seed, cfg.draws, cfg.sites, cfg.flip_zs), (5, 11, 6, 3, true));
    std::fs::remove_file(path).unwrap();
}

#[test]
fn weights_subcommand_writes_csv_and_json() {
    let dir = tmp("weights");
    let o = cyclq(&["weights", "--n", "5", "--seed", "3", "--csv-out", dir.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(dir.join("weights.csv")).unwrap();
    assert!(csv.starts_with("n,family,re,im\n"));
    assert_eq!(csv.lines().count(), 1 + 4 * 5);
    assert!(csv.lines().nth(1).unwrap().starts_with("0,w_hat,1.0,0.0"));
    assert!(dir.join("weights.json").exists());
    std::fs::remove_dir_all(dir).unwrap();
    let o = cyclq(&["weights"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 4);
}
