use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn mstn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mstn"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_config(dir: &Path, body: &str) -> String {
    let path = dir.join("config.toml");
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

/// Trains a small bundle and returns its path alongside the config used.
fn train_small(dir: &Path) -> (String, String) {
    let config = write_config(dir, "hidden = 3\nepochs = 20\nseed = 7\n");
    let bundle = dir.join("model.json");
    let o = mstn(&[
        "--config",
        &config,
        "train",
        "--scenario",
        data("scenario1.toml").to_str().unwrap(),
        "--out",
        bundle.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    (bundle.to_str().unwrap().to_string(), config)
}

#[test]
fn check_passes_on_shipped_fixture() {
    let o = mstn(&["check"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    for name in ["table1-checksum", "suppression", "gradient", "enumeration"] {
        assert!(text.contains(name), "missing {name} in {text}");
    }
}

#[test]
fn check_detects_tampered_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table1.csv");
    let original = std::fs::read_to_string(data("table1.csv")).unwrap();
    std::fs::write(&path, original.replacen("0.421", "0.422", 1)).unwrap();
    let o = mstn(&["check", "--fixture", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn illegal_discount_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "discount = 2.0\nmax_effective = 2\n");
    let o = mstn(&["--config", &config, "check"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
}

#[test]
fn unknown_config_key_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "learning_rat = 0.1\n");
    assert_eq!(mstn(&["--config", &config, "check"]).status.code(), Some(2));
}

#[test]
fn bad_scenario_exits_with_validation_code() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    std::fs::write(&path, "version = \"1\"\nname = \"b\"\n[[episodes]]\n[[episodes.events]]\nemotions = { joyy = 0.5 }\n").unwrap();
    let o = mstn(&["simulate", "--scenario", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("joyy") && err.contains("line 5"), "{err}");
}

#[test]
fn simulate_prints_every_episode() {
    let o = mstn(&["simulate", "--scenario", data("scenario1.toml").to_str().unwrap()]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("episode")).count(), 14);
    assert!(text.contains("quiet --[4]--> sad"), "{text}");
}

#[test]
fn train_requires_out() {
    let o = mstn(&["train", "--scenario", data("scenario1.toml").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn freq_csv_and_text_agree() {
    let dir = tempfile::tempdir().unwrap();
    let (bundle, config) = train_small(dir.path());
    let csv = stdout(&mstn(&["--config", &config, "--format", "csv", "freq", "--bundle", &bundle]));
    let text = stdout(&mstn(&["--config", &config, "--format", "text", "freq", "--bundle", &bundle]));
    let numbers = |s: &str, sep: &dyn Fn(char) -> bool| -> Vec<String> {
        s.lines()
            .skip(1)
            .flat_map(|l| l.split(sep).skip(1).map(|t| t.trim_end_matches('*').to_string()).filter(|t| !t.is_empty()).collect::<Vec<_>>())
            .collect()
    };
    let a = numbers(&csv, &|c| c == ',');
    let b = numbers(&text, &|c: char| c.is_whitespace());
    assert_eq!(a.len(), 49);
    assert_eq!(a, b);
    assert_eq!(csv.lines().next().unwrap(), "current,Surprise,Happy,Sad,Angry,Disgust,Fear,Normal");
}

#[test]
fn freq_modes_and_orders() {
    let dir = tempfile::tempdir().unwrap();
    let (bundle, config) = train_small(dir.path());
    let argmax = stdout(&mstn(&["--config", &config, "--mode", "argmax", "--format", "structured", "freq", "--bundle", &bundle]));
    let doc: serde_json::Value = serde_json::from_str(&argmax).unwrap();
    for row in doc["rows"].as_array().unwrap() {
        let sum: f64 = row.as_array().unwrap().iter().map(|v| v.as_f64().unwrap()).sum();
        assert!((sum - 1.0).abs() < 1e-9);
    }
    let paper1 = stdout(&mstn(&["--config", &config, "--format", "csv", "--table-order", "paper1", "freq", "--bundle", &bundle]));
    assert!(paper1.starts_with("current,happy,quiet,sad,surprise,angry,fear,disgust"), "{paper1}");
}

#[test]
fn traits_report_lists_five_traits() {
    let dir = tempfile::tempdir().unwrap();
    let (bundle, config) = train_small(dir.path());
    let o = mstn(&["--config", &config, "--format", "csv", "traits", "--bundle", &bundle]);
    assert!(o.status.success());
    let text = stdout(&o);
    for t in ["Openness", "Conscientiousness", "Extraversion", "Agreeableness", "Neuroticism"] {
        assert!(text.contains(t), "{text}");
    }
}

#[test]
fn freq_on_truncated_bundle_fails_cleanly() {
    let dir = tempfile::tempdir().unwrap();
    let (bundle, _) = train_small(dir.path());
    let text = std::fs::read_to_string(&bundle).unwrap();
    std::fs::write(&bundle, &text[..100]).unwrap();
    let o = mstn(&["freq", "--bundle", &bundle]);
    assert_eq!(o.status.code(), Some(2));
}
