//! Behavioral checks of the binary: pinned outputs, exit codes, and the
//! file-based pipelines between subcommands.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hpkit::battery;

struct Fixtures {
    dir: PathBuf,
}

impl Fixtures {
    fn new() -> Self {
        let dir = battery::unique_temp_dir();
        battery::write_fixtures(&dir).expect("fixtures");
        Fixtures { dir }
    }

    fn run(&self, args: &[&str]) -> Output {
        Command::new(Path::new(env!("CARGO_BIN_EXE_hpkit")))
            .args(args)
            .current_dir(&self.dir)
            .env("HPKIT_SEED", "7")
            .output()
            .expect("binary runs")
    }
}

impl Drop for Fixtures {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.dir);
    }
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf8 stdout")
}

#[test]
fn step_prints_the_pinned_extension_set() {
    let f = Fixtures::new();
    let o = f.run(&[
        "step", "--alphabet", "ab.json", "--word", "aab", "-m", "1", "-k", "1", "--side", "right",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "[\"aab\",\"aabb\"]\n");
}

#[test]
fn equiv_prints_false_and_succeeds() {
    let f = Fixtures::new();
    let o = f.run(&[
        "equiv", "--alphabet", "ab.json", "-m", "1", "-k", "1", "--mode", "right", "ab", "ba",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "false\n");
}

#[test]
fn unknown_symbols_exit_with_validation_code() {
    let f = Fixtures::new();
    let o = f.run(&[
        "step", "--alphabet", "ab.json", "--word", "axb", "-m", "1", "-k", "1", "--side", "right",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(!o.stderr.is_empty());
}

#[test]
fn missing_arguments_exit_with_usage_code() {
    let f = Fixtures::new();
    let o = f.run(&["step", "--alphabet", "ab.json", "-m", "1", "-k", "1", "--side", "right"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn exceeded_caps_exit_with_cap_code() {
    let f = Fixtures::new();
    let o = f.run(&[
        "closure", "--alphabet", "ab.json", "--word", "aab", "-m", "1", "-k", "1", "--side",
        "right", "--max-len", "20", "--word-cap", "5",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn help_exits_cleanly() {
    let f = Fixtures::new();
    let o = f.run(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("suite"));
}

#[test]
fn unknown_criterion_ids_are_rejected() {
    let f = Fixtures::new();
    let o = f.run(&["suite", "--only", "12"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reconstruct_matches_the_closure_command() {
    let f = Fixtures::new();
    let rebuilt = f.run(&[
        "reconstruct", "--alphabet", "ab.json", "--grammar", "gl.json", "--max-len", "8",
    ]);
    assert_eq!(rebuilt.status.code(), Some(0));
    let direct = f.run(&[
        "closure", "--alphabet", "ab.json", "--words", "seeds.json", "-m", "1", "-k", "1",
        "--side", "both", "--max-len", "8",
    ]);
    assert_eq!(direct.status.code(), Some(0));
    let direct_json: serde_json::Value =
        serde_json::from_str(&stdout(&direct)).expect("closure JSON");
    let rebuilt_json: serde_json::Value =
        serde_json::from_str(&stdout(&rebuilt)).expect("reconstruct JSON");
    assert_eq!(rebuilt_json, direct_json["words"]);
}

#[test]
fn word_files_feed_multi_word_commands() {
    let f = Fixtures::new();
    let o = f.run(&[
        "step", "--alphabet", "ab.json", "--word-file", "word_aabb.json", "-m", "1", "-k", "1",
        "--side", "right",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let words: serde_json::Value = serde_json::from_str(&stdout(&o)).expect("JSON");
    assert!(words.as_array().expect("array").iter().any(|w| w == "aabb"));
}

#[test]
fn outputs_can_be_written_to_files() {
    let f = Fixtures::new();
    let o = f.run(&[
        "gsm", "build", "--alphabet", "ab.json", "-m", "1", "-k", "1", "--side", "right",
        "--out", "machine.json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(f.dir.join("machine.json")).expect("file written");
    let v: serde_json::Value = serde_json::from_str(&text).expect("machine JSON");
    assert!(v["states"].as_array().is_some());
}
