use std::path::Path;
use std::process::{Command, Output};

fn htsurf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_htsurf")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap().trim().to_string()
}

fn small_construct(genus: &str, out: &Path, extra: &[&str]) -> Output {
    let mut args = vec![
        "construct", "--genus", genus, "--word-len", "2", "--tuple-max", "1", "--window", "1",
        "--orbit-target", "4", "-o",
    ];
    args.push(out.to_str().unwrap());
    args.extend_from_slice(extra);
    htsurf(&args)
}

#[test]
fn genus_one_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = small_construct("1", &dir.path().join("x.json"), &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!dir.path().join("x.json").exists());
}

#[test]
fn bad_designated_word_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = small_construct("2", &dir.path().join("x.json"), &["--designated", "sigma^2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn odd_genus_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g3.json");
    let o = small_construct("3", &out, &["--format", "json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let summary: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(summary["genus"], 3);
    let spec: serde_json::Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(spec["homomorphism"]["parity"], "odd");
    assert_eq!(spec["homomorphism"]["images"]["b'"], "tau2");

    let report = dir.path().join("report.json");
    let v = htsurf(&["verify", out.to_str().unwrap(), "--report", report.to_str().unwrap()]);
    assert!(v.status.success());
    let r: serde_json::Value = serde_json::from_slice(&std::fs::read(&report).unwrap()).unwrap();
    assert_eq!(r["replay_failures"].as_array().unwrap().len(), 0);
    assert_eq!(r["relator_symbolic_empty"], true);
}

#[test]
fn seeded_construct_records_the_seed_and_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.json");
    assert!(small_construct("2", &out, &["--seed", "17"]).status.success());
    let spec: serde_json::Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(spec["seed"], 17);
    assert!(htsurf(&["verify", out.to_str().unwrap()]).status.success());
}

#[test]
fn tampered_log_fails_verify() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.json");
    assert!(small_construct("2", &out, &[]).status.success());
    let mut spec: serde_json::Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    let entry = spec["log"]
        .as_array_mut()
        .unwrap()
        .iter_mut()
        .find(|e| e["witness"]["kind"] == "nontrivial")
        .unwrap();
    let image = entry["witness"]["image"].as_i64().unwrap();
    entry["witness"]["image"] = (image + 1000).into();
    std::fs::write(&out, serde_json::to_vec(&spec).unwrap()).unwrap();
    let v = htsurf(&["verify", out.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(1));
}

#[test]
fn twist_examples() {
    assert_eq!(stdout(&htsurf(&["twist", "--genus", "2", "--n", "0", "a1"])), "phi1");
    let b1 = stdout(&htsurf(&["twist", "--genus", "2", "--n", "1", "b1"]));
    let expected: htsurf::words::Word = "[phi1, phi1'] phi1 [phi1, phi1']^-1".parse().unwrap();
    assert_eq!(b1.parse::<htsurf::words::Word>().unwrap(), expected);
    let relator = "[a1, a1'] [b1', b1]";
    assert_eq!(stdout(&htsurf(&["twist", "--genus", "2", "--n", "3", relator])), "1");
    assert_eq!(htsurf(&["twist", "--genus", "2", "--n", "1", "zz"]).status.code(), Some(2));
}

#[test]
fn faithful_index_output() {
    assert_eq!(stdout(&htsurf(&["faithful-index", "--genus", "2", "b1 ~a1"])), "1");
    assert_eq!(stdout(&htsurf(&["faithful-index", "--genus", "2", "--n-max", "4", "[a1, a1'] [b1', b1]"])), "none <= 4");
}
