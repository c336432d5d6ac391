use std::process::{Command, Output};

fn qpk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qpk")).args(args).env_remove("QPK_HBAR").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn t_pentagon_symbolic_passes() {
    let o = qpk(&["verify", "--identity", "t-pentagon", "--mode", "symbolic"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS"));
}

#[test]
fn identity_names_are_case_insensitive() {
    assert_eq!(qpk(&["verify", "--identity", "S-Pentagon"]).status.code(), Some(0));
}

#[test]
fn catalog_lists_entries_with_refs() {
    let o = qpk(&["catalog", "list", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v.as_array().unwrap();
    assert!(rows.len() >= 24);
    assert!(rows.iter().all(|r| !r["paper_ref"].as_str().unwrap().is_empty()));
}

#[test]
fn usage_errors_exit_two_with_json() {
    let o = qpk(&["verify", "--identity", "no-such-entry"]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(v["error"]["kind"], "usage");
    assert_eq!(qpk(&["verify"]).status.code(), Some(2));
    assert_eq!(qpk(&["groupoid", "compile", "--moves", "bogus 1"]).status.code(), Some(2));
}

#[test]
fn symbolic_failure_exits_one() {
    let o = qpk(&["verify", "--identity", "tat"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("sides differ"));
}

#[test]
fn guard_exits_three() {
    let o = qpk(&["verify", "--identity", "intertwine-z1-vee", "--mode", "numeric", "--vectors", "1"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn json_report_is_versioned_and_deterministic() {
    let dir = std::env::temp_dir();
    let run = |tag: &str| {
        let p = dir.join(format!("qpk-cli-{tag}-{}.json", std::process::id()));
        let o = qpk(&["verify", "--identity", "s-pentagon", "--mode", "both", "--vectors", "2", "--out", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        let s = std::fs::read_to_string(&p).unwrap();
        std::fs::remove_file(&p).unwrap();
        s
    };
    let a = run("a");
    assert_eq!(a, run("b"));
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["schema"], "qpk-report/1");
    assert_eq!(v["engine_version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["reports"][0]["numeric"]["max_residual"], 0.0);
    assert!(v["reports"][0]["symbolic"]["steps"].as_array().is_some_and(|s| !s.is_empty()));
}

#[test]
fn hbar_default_comes_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_qpk"))
        .args(["fn", "eval", "--which", "phi-mdc", "--at", "0,0"])
        .env("QPK_HBAR", "1.0")
        .output()
        .unwrap();
    let line = stdout(&o).lines().nth(1).unwrap().to_string();
    let re: f64 = line.split(',').nth(2).unwrap().parse().unwrap();
    let want = qpk::qdilog::involutivity_constant(1.0, 1).sqrt();
    assert!((re - want).abs() < 1e-8, "{line}");
}

#[test]
fn eval_reads_points_csv() {
    let p = std::env::temp_dir().join(format!("qpk-points-{}.csv", std::process::id()));
    std::fs::write(&p, "re,im\n0.5,0.0\n-1.0,0.25\n").unwrap();
    let o = qpk(&["fn", "eval", "--which", "Psi", "--points", p.to_str().unwrap()]);
    std::fs::remove_file(&p).unwrap();
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(s.lines().count(), 3);
    for l in s.lines().skip(1) {
        let f: Vec<f64> = l.split(',').take(4).map(|x| x.parse().unwrap()).collect();
        assert!((f[2].hypot(f[3]) - 1.0).abs() < 1e-10);
    }
}

#[test]
fn groupoid_commands() {
    let o = qpk(&["groupoid", "compile", "--moves", "T 1 2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Psi["));
    let o = qpk(&["groupoid", "relations", "--size", "2", "--variant", "d"]);
    assert_eq!(o.status.code(), Some(0));
    let o = qpk(&["groupoid", "relations", "--size", "2", "--mode", "value", "--m", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL  t_jk a_j t_kj"));
    assert_eq!(qpk(&["groupoid", "connectivity", "--n", "5"]).status.code(), Some(0));
}

#[test]
fn dense_oracle_command() {
    let o = qpk(&["oracle", "dense", "--identity", "f-pentagon", "--grid", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(qpk(&["oracle", "dense", "--identity", "f-pentagon", "--grid", "8"]).status.code(), Some(2));
}
