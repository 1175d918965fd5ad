use std::path::Path;
use std::process::{Command, Output};

fn vsqec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vsqec"))
        .args(args)
        .env_remove("VSQEC_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_string_lossy().into_owned()
}

#[test]
fn qpe_prints_the_correct_bitstring() {
    let dir = tempfile::tempdir().unwrap();
    let out = vsqec(&["qpe", "--counting", "5", "--phase-num", "0", "--phase-den", "32", "--out", &path(dir.path(), "c.json")]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out).trim(), "00000");

    let doc = vsqec(&["qpe"]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&doc)).unwrap();
    assert_eq!(json["correct_bitstring"], "00101");
    assert_eq!(json["circuit"]["num_qubits"], 6);
}

#[test]
fn zero_denominator_is_a_validation_error() {
    let out = vsqec(&["qpe", "--phase-den", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--phase-den"), "{}", stderr(&out));
}

#[test]
fn compiled_qpe_has_only_discrete_gates() {
    let dir = tempfile::tempdir().unwrap();
    let file = path(dir.path(), "c.json");
    let out = vsqec(&["qpe", "--compile", "1e-3", "--out", &file]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = std::fs::read_to_string(&file).unwrap();
    assert!(!text.contains("\"Rz\"") && !text.contains("\"CPhase\""));

    let sim = vsqec(&["simulate", "--circuit", &file, "--correct", "00101"]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&sim)).unwrap();
    assert!(json["pst"].as_f64().unwrap() > 0.98);
}

#[test]
fn step_by_step_commands_share_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = |n: &str| path(dir.path(), n);
    assert!(vsqec(&["qpe", "--out", &d("c.json")]).status.success());
    let compiled = vsqec(&["compile", "--circuit", &d("c.json"), "--epsilon", "0.1", "--out", &d("cc.json")]);
    assert!(compiled.status.success(), "{}", stderr(&compiled));
    let inject = vsqec(&[
        "inject", "--circuit", &d("c.json"), "--mode", "full", "--out-profile", &d("p.json"),
        "--out-csv", &d("h.csv"), "--out-svg", &d("h.svg"),
    ]);
    assert!(inject.status.success(), "{}", stderr(&inject));
    assert!(std::fs::read_to_string(d("h.csv")).unwrap().starts_with("qubit,timestep,mean_relative_pst"));

    let heat = vsqec(&["heatmap", "--circuit", &d("c.json"), "--profile", &d("p.json"), "--out-csv", &d("h2.csv"), "--out-svg", &d("h2.svg")]);
    assert!(heat.status.success(), "{}", stderr(&heat));
    assert_eq!(std::fs::read_to_string(d("h.csv")).unwrap(), std::fs::read_to_string(d("h2.csv")).unwrap());

    let assign = vsqec(&["assign", "--circuit", &d("c.json"), "--profile", &d("p.json"), "--d-low", "3", "--d-high", "5"]);
    assert!(stdout(&assign).contains("\"d=3,5\""));

    let tts = vsqec(&[
        "tts", "--circuit", &d("c.json"), "--profile", &d("p.json"), "--config", "3", "--config", "3,5",
        "--points", "4", "--out-svg", &d("curves.svg"),
    ]);
    assert!(tts.status.success(), "{}", stderr(&tts));
    let csv = stdout(&tts);
    assert!(csv.starts_with("config,p,latency_cycles,pst_bound,tts"));
    assert_eq!(csv.lines().count(), 1 + 2 * 4);
}

#[test]
fn tts_without_profile_reports_it_missing() {
    let dir = tempfile::tempdir().unwrap();
    let c = path(dir.path(), "c.json");
    assert!(vsqec(&["qpe", "--out", &c]).status.success());
    let out = vsqec(&["tts", "--circuit", &c, "--profile", &path(dir.path(), "profile.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("profile"), "{}", stderr(&out));
}

#[test]
fn stale_profile_is_refused() {
    let dir = tempfile::tempdir().unwrap();
    let d = |n: &str| path(dir.path(), n);
    assert!(vsqec(&["qpe", "--out", &d("a.json")]).status.success());
    assert!(vsqec(&["qpe", "--phase-num", "3", "--out", &d("b.json")]).status.success());
    assert!(vsqec(&["inject", "--circuit", &d("a.json"), "--out-profile", &d("p.json")]).status.success());
    let out = vsqec(&["tts", "--circuit", &d("b.json"), "--profile", &d("p.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("stale"), "{}", stderr(&out));
}

#[test]
fn pipeline_is_byte_identical_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, threads: &str| {
        let out = vsqec(&["pipeline", "--exact", "--points", "8", "--threads", threads, "--out-dir", &path(dir.path(), name)]);
        assert!(out.status.success(), "{}", stderr(&out));
    };
    run("one", "1");
    run("eight", "8");
    for f in ["circuit.json", "profile.json", "heatmap.csv", "heatmap.svg", "assignment.json", "sweep.csv", "curves.svg", "manifest.json"] {
        let a = std::fs::read_to_string(dir.path().join("one").join(f)).unwrap();
        let b = std::fs::read_to_string(dir.path().join("eight").join(f)).unwrap();
        assert_eq!(a, b, "{f} differs");
    }
}

#[test]
fn pipeline_reads_config_and_env_threads() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = path(dir.path(), "run.json");
    std::fs::write(&cfg, r#"{"schema_version": 1, "synthesis_epsilon": null, "tau": 0.5, "p_grid": {"min": 1e-4, "max": 1e-3, "points": 3}}"#).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_vsqec"))
        .args(["pipeline", "--config", &cfg, "--out-dir", &path(dir.path(), "out")])
        .env("VSQEC_THREADS", "2")
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("out/manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["config"]["tau"], 0.5);
    assert_eq!(manifest["correct_bitstring"], "00101");

    let bad = vsqec(&["pipeline", "--config", &path(dir.path(), "nope.json")]);
    assert_eq!(bad.status.code(), Some(2));
    std::fs::write(&cfg, r#"{"schema_version": 9}"#).unwrap();
    let bad = vsqec(&["pipeline", "--config", &cfg, "--out-dir", &path(dir.path(), "x")]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(stderr(&bad).contains("config stage failed"), "{}", stderr(&bad));
}

#[test]
fn synth_reports_a_word() {
    let out = vsqec(&["synth", "--theta", "0.7853981633974483", "--epsilon", "1e-9"]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["sequence"], "T");
    let bad = vsqec(&["synth", "--theta", "1", "--epsilon", "-1"]);
    assert_eq!(bad.status.code(), Some(2));
}
