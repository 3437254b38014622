use std::path::Path;
use std::process::{Command, Output};

fn ldpc(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ldpc")).current_dir(dir).env_remove("LDPC_WORKERS").args(args).output().unwrap()
}

fn read(p: impl AsRef<Path>) -> String {
    std::fs::read_to_string(p).unwrap()
}

const EXAMPLE: &str = r#"
seed = 5
[field]
p = 53
[construct]
target_rho = 10
restarts = 20
condition = { girth = 8 }
"#;

#[test]
fn construct_example_code() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("c.toml"), EXAMPLE).unwrap();
    let out = ldpc(dir.path(), &["construct", "--config", "c.toml", "--out", "a"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let alist = read(dir.path().join("a/H.alist"));
    assert!(alist.starts_with("530 159\n3 10\n"));
    assert_eq!(read(dir.path().join("a/W.csv")).lines().count(), 3);
    let manifest: serde_json::Value = serde_json::from_str(&read(dir.path().join("a/manifest.json"))).unwrap();
    assert_eq!(manifest["summary"]["rho"], 10);
    assert_eq!(manifest["summary"]["audit_passed"], true);
    assert!(manifest["outputs"]["H.alist"].is_string());
    let first = read(dir.path().join("a/build.jsonl")).lines().next().unwrap().to_string();
    let line: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert!(line["accepted"].is_boolean());

    let out = ldpc(dir.path(), &["analyze", "a/H.alist", "--out", "r"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&read(dir.path().join("r/report.json"))).unwrap();
    assert_eq!(report["girth"], 8);
    for p in report["patterns"].as_array().unwrap() {
        if p["b"] == 0 {
            assert!(p["witness"].is_null());
        }
    }
}

#[test]
fn construct_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("c.toml"), EXAMPLE).unwrap();
    for (d, workers) in [("x", "1"), ("y", "3")] {
        let out = ldpc(dir.path(), &["construct", "--config", "c.toml", "--seed", "9", "--workers", workers, "--out", d]);
        assert!(out.status.success());
    }
    for f in ["W.csv", "H.alist", "build.jsonl", "manifest.json"] {
        assert_eq!(read(dir.path().join("x").join(f)), read(dir.path().join("y").join(f)), "{f}");
    }
}

#[test]
fn infeasible_condition_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let out = ldpc(dir.path(), &["construct", "--p", "13", "--tau", "1", "--out", "o"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("columns"));
}

#[test]
fn config_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.toml"), "seed = 1\n[field]\np = 7\nbogus = 2\n").unwrap();
    let out = ldpc(dir.path(), &["construct", "--config", "bad.toml"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bogus"));
    std::fs::write(dir.path().join("bad2.toml"), "[field\np = 7\n").unwrap();
    assert_eq!(ldpc(dir.path(), &["construct", "--config", "bad2.toml"]).status.code(), Some(2));
    assert_eq!(ldpc(dir.path(), &["construct", "--p", "6", "--tau", "4"]).status.code(), Some(2));
    assert_eq!(ldpc(dir.path(), &["frobnicate"]).status.code(), Some(2));
    assert_eq!(ldpc(dir.path(), &["construct", "--config", "missing.toml"]).status.code(), Some(4));
}

#[test]
fn analyze_identity_and_truncated() {
    let dir = tempfile::tempdir().unwrap();
    let ident = "4 4\n1 1\n1 1 1 1\n1 1 1 1\n1\n2\n3\n4\n1\n2\n3\n4\n";
    std::fs::write(dir.path().join("i.alist"), ident).unwrap();
    let out = ldpc(dir.path(), &["analyze", "i.alist", "--out", "o"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("girth INFINITY") && text.contains("rank 4"));

    let cut: String = ident.lines().take(7).map(|l| format!("{l}\n")).collect();
    std::fs::write(dir.path().join("t.alist"), cut).unwrap();
    let out = ldpc(dir.path(), &["analyze", "t.alist", "--out", "o"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 8"));
}

#[test]
fn patterns_catalogs() {
    let dir = tempfile::tempdir().unwrap();
    for (a, b, count) in [("6", "0", 2), ("8", "0", 5), ("3", "1", 0)] {
        let out = ldpc(dir.path(), &["patterns", a, b, "--girth", "6", "--out", "p"]);
        assert!(out.status.success());
        let text = read(dir.path().join(format!("p/patterns-{a}-{b}-6.txt")));
        assert!(text.contains(&format!("# count {count}")));
        assert_eq!(text.matches("\nend\n").count(), count);
        if count == 0 {
            assert!(text.contains("# note:"));
        }
    }
}

#[test]
fn simulate_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("c.toml"), "seed = 3\n[field]\np = 11\n[construct]\ntau = 4\n").unwrap();
    assert!(ldpc(d, &["construct", "--config", "c.toml", "--out", "code"]).status.success());
    let sim = "seed = 21\n[simulate]\npoints = [1.0, 2.0, 3.0]\nmin_frame_errors = 15\nmax_frames = 3000\ngnuplot = true\n";
    std::fs::write(d.join("s.toml"), sim).unwrap();
    let a = ldpc(d, &["simulate", "code/H.alist", "--config", "s.toml", "--workers", "1", "--out", "a"]);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    let b = Command::new(env!("CARGO_BIN_EXE_ldpc"))
        .current_dir(d)
        .env("LDPC_WORKERS", "3")
        .args(["simulate", "code/H.alist", "--config", "s.toml", "--out", "b"])
        .output()
        .unwrap();
    assert!(b.status.success());
    for f in ["sim.csv", "sim.dat", "manifest.json"] {
        assert_eq!(std::fs::read(d.join("a").join(f)).unwrap(), std::fs::read(d.join("b").join(f)).unwrap(), "{f}");
    }
    assert_eq!(read(d.join("a/sim.csv")).lines().count(), 4);

    std::fs::write(d.join("z.toml"), "[simulate]\nalgorithm = \"gallager-a\"\nchannel = \"bsc\"\npoints = [0.0]\nmax_frames = 500\n").unwrap();
    let out = ldpc(d, &["simulate", "code/H.alist", "--config", "z.toml", "--out", "z"]);
    assert!(out.status.success());
    let row = read(d.join("z/sim.csv")).lines().nth(1).unwrap().to_string();
    assert!(row.starts_with("bsc,0,") && row.contains(",500,0,0,0.000000e0,"), "{row}");
}
