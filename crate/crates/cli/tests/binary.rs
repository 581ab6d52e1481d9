use std::fs;
use std::process::Command;

fn jetres() -> Command {
    Command::new(env!("CARGO_BIN_EXE_jetres"))
}

#[test]
fn identical_jobs_give_identical_documents() {
    let dir = tempfile::tempdir().unwrap();
    let job = dir.path().join("ggl.job.json");
    fs::write(&job, r#"{"schema_version": 1, "command": "ggl", "n": 2}"#).unwrap();
    let mut outputs = Vec::new();
    for i in 0..2 {
        let out = dir.path().join(format!("run{i}.json"));
        let status = jetres()
            .args(["ggl", "--verify", "--job"])
            .arg(&job)
            .arg("--out")
            .arg(&out)
            .output()
            .unwrap();
        assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
        let timing: serde_json::Value = serde_json::from_slice(&status.stderr).unwrap();
        assert!(timing["elapsed_ms"].is_number());
        outputs.push(fs::read(&out).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn errors_are_documents_with_exit_codes() {
    let out = jetres()
        .args(["integral", "--set", "n=2", "--set", "k=1", "--set", "poly=u1 + w"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["error"]["code"], "parse_unknown_variable");

    let out = jetres()
        .args(["fixed-points", "--set", "n=4", "--set", "k=6", "--max-points", "100"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn negative_findings_still_succeed() {
    let out = jetres()
        .args(["ample-check", "--set", "a=[1,2]"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["result"]["classification"], "neither");
}
