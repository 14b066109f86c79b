//! End-to-end checks of the rslab binary: exit codes per error category,
//! JSON payloads, job files, and the guard override variable.

use std::process::Command;

fn rslab() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rslab"))
}

#[test]
fn success_exit_zero_with_json() {
    let out = rslab()
        .args(["ghat", "--n", "10", "--k", "2", "--q", "11", "--json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["ghat"], 5);
    assert_eq!(v["results"]["ratio_at_ghat"][0], "252");
}

#[test]
fn usage_errors_exit_2() {
    let out = rslab().args(["ghat", "--n", "10", "--json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["category"], "usage");

    let out = rslab().args(["nonsense"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn guard_errors_exit_3_and_env_override_lifts_them() {
    // C(26, 13) = 10400600 just exceeds the 10^7 census guard
    let args = [
        "census", "--q", "29", "--h-poly", "2,0,1", "--g", "13", "--subset",
        "0,1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,23,24,25",
        "--json",
    ];
    let out = rslab().args(args).output().unwrap();
    assert_eq!(out.status.code(), Some(3), "stdout: {}", String::from_utf8_lossy(&out.stdout));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["category"], "guard");

    let out = rslab()
        .args(args)
        .env("RSLAB_GUARD_OVERRIDE", "20000000")
        .output()
        .unwrap();
    assert!(out.status.success(), "override must lift the guard");
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["total"], "10400600");
}

#[test]
fn computation_failure_exits_4() {
    // a tiny trial budget cannot finish the extraction stage
    let out = rslab()
        .args([
            "dlog", "--q", "7", "--h-poly", "1,0,1", "--base", "2,1", "--target", "4,5",
            "--variant", "list", "--g", "5", "--decoder", "brute", "--seed", "1",
            "--max-trials", "1", "--json",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4), "stdout: {}", String::from_utf8_lossy(&out.stdout));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["category"], "computation");
}

#[test]
fn job_file_runs_and_roundtrips() {
    let dir = std::env::temp_dir().join(format!("rslab-job-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ghat.json");
    std::fs::write(&path, r#"{"command":"ghat","n":2,"k":1,"q":2,"output":"json"}"#).unwrap();
    let out = rslab().args(["job", path.to_str().unwrap()]).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["ghat"], 2);

    // missing required field is named
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"n": 2}"#).unwrap();
    let out = rslab().args(["job", bad.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("command"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn seeded_json_runs_are_byte_identical() {
    let args = [
        "census", "--q", "5", "--h-poly", "2,0,1", "--g", "3", "--sample", "200",
        "--seed", "7", "--json",
    ];
    let a = rslab().args(args).output().unwrap();
    let b = rslab().args(args).output().unwrap();
    assert!(a.status.success());
    let va: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let vb: serde_json::Value = serde_json::from_slice(&b.stdout).unwrap();
    assert_eq!(
        serde_json::to_string(&va["results"]).unwrap(),
        serde_json::to_string(&vb["results"]).unwrap()
    );
}

#[test]
fn randomized_json_commands_demand_a_seed() {
    let out = rslab()
        .args([
            "dlog", "--q", "7", "--h-poly", "1,0,1", "--base", "2,1", "--target", "3",
            "--variant", "list", "--g", "4", "--json",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["error"]["message"].as_str().unwrap().contains("--seed"));
}

#[test]
fn selftest_human_mode_prints_pass_lines() {
    let out = rslab().args(["selftest"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("psi-correspondence"));
    assert!(text.contains("PASS"));
    assert!(text.contains("all passed: true"));
}
