use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use trirays::experiments::sha256_hex;

fn trirays(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trirays")).args(args).output().expect("binary runs")
}

fn write_config(dir: &Path, name: &str, v: &Value) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, serde_json::to_string_pretty(v).unwrap()).unwrap();
    p
}

fn files(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut v: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.is_file())
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap()))
        .collect();
    v.sort();
    v
}

/// Runs `command` twice into fresh directories and checks the outputs are
/// byte-identical and listed in the manifest with their hashes; then reruns
/// from the config stored in the manifest.
fn deterministic(command: &str, config: Value) {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "cfg.json", &config);
    let mut runs = Vec::new();
    for i in 0..2 {
        let out = tmp.path().join(format!("run{i}"));
        let o = trirays(&[command, "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
        assert!(o.status.success(), "{command}: {}", String::from_utf8_lossy(&o.stderr));
        runs.push(files(&out));
    }
    assert_eq!(runs[0], runs[1], "{command} outputs differ between runs");

    let manifest: Value = serde_json::from_slice(&runs[0].iter().find(|f| f.0 == "manifest.json").unwrap().1).unwrap();
    assert_eq!(manifest["command"], command);
    let listed = manifest["outputs"].as_array().unwrap();
    assert_eq!(listed.len() + 1, runs[0].len());
    for o in listed {
        let (_, bytes) = runs[0].iter().find(|f| f.0 == o["file"].as_str().unwrap()).expect("listed file exists");
        assert_eq!(o["sha256"].as_str().unwrap(), sha256_hex(bytes));
    }

    let replay = write_config(tmp.path(), "replay.json", &manifest["config"]);
    let out = tmp.path().join("replay");
    let o = trirays(&[command, "--config", replay.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(files(&out), runs[0], "{command} replay from manifest differs");
}

#[test]
fn roots_deterministic() {
    deterministic(
        "roots",
        json!({ "params": {
            "function": { "kind": "rational", "map": { "num": [[-1, 0], [0, 0], [0, 0], [1, 0]], "den": [[1, 0]] } },
            "region": { "kind": "rectangle", "lo": [-2, -2], "hi": [2, 2] },
            "target": "0",
            "rays": [0.0]
        }}),
    );
}

#[test]
fn sector_search_deterministic() {
    deterministic("sector-search", json!({ "seed": 11, "params": { "tuples": 40, "n_max": 2000 } }));
}

#[test]
fn harmonic_deterministic() {
    deterministic(
        "harmonic",
        json!({ "seed": 5, "params": { "mode": { "kind": "disk_self_test", "configs": 3, "floor": 0.05 }, "walks": 3000 } }),
    );
}

#[test]
fn seed_flag_changes_walks() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "c.json", &json!({ "params": { "tuples": 5, "n_max": 100, "include_exceptional": false } }));
    let run = |seed: &str, dir: &str| {
        let out = tmp.path().join(dir);
        let o = trirays(&["sector-search", "--config", cfg.to_str().unwrap(), "--seed", seed, "--out", out.to_str().unwrap()]);
        assert!(o.status.success());
        fs::read(out.join("sweep.csv")).unwrap()
    };
    assert_ne!(run("1", "a"), run("2", "b"));
}

#[test]
fn config_errors_are_listed() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "bad.json", &json!({ "params": { "schedule": [0.1, 0.2], "lambda": -1.0 } }));
    let o = trirays(&["peaks", "--config", cfg.to_str().unwrap(), "--out", tmp.path().join("o").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("lambda") && err.contains("schedule"), "{err}");

    let cfg = write_config(tmp.path(), "typo.json", &json!({ "params": { "walkz": 10 } }));
    let o = trirays(&["harmonic", "--config", cfg.to_str().unwrap(), "--out", tmp.path().join("o").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn failed_check_exits_one_with_name() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        "s.json",
        &json!({ "params": {
            "function": { "kind": "schwarzian", "q": { "num": [[0, 0], [-2, 0]], "den": [[1, 0]] }, "base": [0, 0] },
            "expected": { "num": [[0, 0], [-2, 0]], "den": [[1, 0]] },
            "grid": { "r_lo": 0.5, "r_hi": 3, "n_r": 3, "n_theta": 4, "points": 8, "min_distance": 0.2 },
            "tol": 1e-30
        }}),
    );
    let out = tmp.path().join("o");
    let o = trirays(&["schwarzian-check", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("schwarzian_residual"));
    assert!(out.join("manifest.json").is_file());
}

#[test]
fn monodromy_predicted_and_perturbed() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("m");
    let o = trirays(&["monodromy", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_slice(&fs::read(out.join("monodromy.json")).unwrap()).unwrap();
    assert!(v["report"]["defect"].as_f64().unwrap() <= 1e-6);
    assert!(v["perturbed"]["defect"].as_f64().unwrap() >= 1e-3);
}

#[test]
fn shipped_configs_parse() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    for e in fs::read_dir(&dir).unwrap() {
        let p = e.unwrap().path();
        let name = p.file_stem().unwrap().to_string_lossy().into_owned();
        let text = fs::read_to_string(&p).unwrap();
        use trirays::experiments::*;
        let ok = match name.split('-').next().unwrap() {
            "verify" => serde_json::from_str::<ExperimentConfig<Example1Params>>(&text).is_ok(),
            "roots" => serde_json::from_str::<ExperimentConfig<RootsParams>>(&text).is_ok(),
            "schwarzian" => serde_json::from_str::<ExperimentConfig<SchwarzianParams>>(&text).is_ok(),
            "monodromy" => serde_json::from_str::<ExperimentConfig<MonodromyParams>>(&text).is_ok(),
            "peaks" => serde_json::from_str::<ExperimentConfig<PeaksParams>>(&text).is_ok(),
            "sector" => serde_json::from_str::<ExperimentConfig<SectorParams>>(&text).is_ok(),
            "harmonic" => serde_json::from_str::<ExperimentConfig<HarmonicParams>>(&text).is_ok(),
            other => panic!("unexpected config {other}"),
        };
        assert!(ok, "{} does not parse", p.display());
    }
}
