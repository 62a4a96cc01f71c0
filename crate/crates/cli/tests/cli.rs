use std::process::{Command, Output};

fn dessins(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dessins")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const EDGE_PAIR: &str = "d=2; s0=(0 1); s1=(0 1)";

#[test]
fn tutte_of_a_two_edge_cycle() {
    let o = dessins(&["poly", "tutte", "--dessin", EDGE_PAIR]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "x + y");
}

#[test]
fn closed_partition_function_agrees() {
    let o = dessins(&["--format", "json", "qsm", "partition", "--system", "S", "--beta", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let closed = v["closed_form"].as_f64().unwrap();
    assert!((closed - 11.265513321691).abs() < 1e-9);
}

#[test]
fn mgt_order() {
    let o = dessins(&["--format", "json", "bc", "mgt", "--n", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["order"], 20);
}

#[test]
fn divergent_series_exits_two() {
    let o = dessins(&["qsm", "partition", "--system", "Upsilon", "--beta", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("diverge"));
}

#[test]
fn malformed_dessin_reports_position() {
    let o = dessins(&["dessin", "--dessin", "d=2; s0=(0 1; s1=(0 1)"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 1") && err.contains("column"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(dessins(&["bogus"]).status.code(), Some(1));
    assert_eq!(dessins(&["--help"]).status.code(), Some(0));
}

#[test]
fn hopf_criterion_is_a_finding() {
    let o = dessins(&["verify-all", "--only", "hopf"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("FAIL  3"));
}

#[test]
fn passing_criteria_are_seed_independent() {
    let run = |seed: &str| {
        let o = dessins(&["--seed", seed, "--format", "csv", "verify-all", "--only", "rota-baxter", "--only", "7"]);
        assert_eq!(o.status.code(), Some(0));
        stdout(&o).lines().map(|l| l.split(',').take(3).collect::<Vec<_>>().join(",")).collect::<Vec<_>>()
    };
    assert_eq!(run("1"), run("12345"));
}

#[test]
fn json_input_round_trips() {
    let o = dessins(&["--format", "json", "dessin", "--dessin", "d=3; s0=(0 1 2); s1=(0 1)"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let dir = std::env::temp_dir().join(format!("dessins-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("d.json");
    std::fs::write(&path, v["dessin"].to_string()).unwrap();
    let o2 = dessins(&["--format", "json", "dessin", "--input", path.to_str().unwrap()]);
    assert_eq!(o2.status.code(), Some(0));
    let v2: serde_json::Value = serde_json::from_slice(&o2.stdout).unwrap();
    assert_eq!(v["canonical"], v2["canonical"]);
    assert_eq!(v["genus"], v2["genus"]);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn tree_table_as_csv() {
    let o = dessins(&["--format", "csv", "enum", "trees", "--max-degree", "3"]);
    let s = stdout(&o);
    assert!(s.starts_with("d,m,count\n"));
    assert!(s.contains("3,2,8\n"));
}

#[test]
fn hopf_check_passes_on_small_dessins() {
    let o = dessins(&["hopf", "check", "--dessin", "d=3; s0=(0 1 2); s1="]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn missing_orbit_table_is_a_coverage_error() {
    let o = dessins(&["hopf", "balanced", "--dessin", EDGE_PAIR]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("orbit table"));
}
