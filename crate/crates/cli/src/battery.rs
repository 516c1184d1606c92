//! The determinism battery: a fixed list of invocations covering every
//! subcommand, run twice against the built binary and compared byte for
//! byte (stdout, stderr, and exit status).

use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::atomic::{AtomicU64, Ordering};

use hpkit_core::grammar::{build_gl, DEFAULT_CLASS_CAP};
use hpkit_core::universal::{RegProduction, SourceRegularGrammar};
use hpkit_core::{Alphabet, LanguageSet};

/// A fresh scratch directory under the system temp dir.
pub fn unique_temp_dir() -> PathBuf {
    static COUNTER: AtomicU64 = AtomicU64::new(0);
    let n = COUNTER.fetch_add(1, Ordering::Relaxed);
    std::env::temp_dir().join(format!("hpkit-battery-{}-{n}", std::process::id()))
}

fn pretty(v: &serde_json::Value) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(v).expect("fixture serializes");
    s.push('\n');
    s.into_bytes()
}

/// Writes the input files the battery commands read: two alphabets, a seed
/// word list, a source regular grammar, and a prebuilt closure grammar.
pub fn write_fixtures(dir: &Path) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    let ab = Alphabet::new(&["a", "b"], &[("a", "b")], false).expect("fixture alphabet");
    let single = Alphabet::new(&["a"], &[("a", "a")], false).expect("fixture alphabet");
    fs::write(dir.join("ab.json"), pretty(&ab.to_json()))?;
    fs::write(dir.join("a1.json"), pretty(&single.to_json()))?;
    fs::write(dir.join("seeds.json"), b"[\"aab\", \"bba\"]\n")?;
    fs::write(dir.join("word_aabb.json"), b"\"aabb\"\n")?;
    let a = single.symbol("a").expect("fixture symbol");
    let loop_grammar = SourceRegularGrammar::new(
        "S",
        &["S"],
        vec![
            RegProduction {
                lhs: "S".into(),
                terminal: a,
                next: Some("S".into()),
            },
            RegProduction {
                lhs: "S".into(),
                terminal: a,
                next: None,
            },
        ],
        &single,
    )
    .expect("fixture grammar");
    fs::write(
        dir.join("src_grammar.json"),
        pretty(&loop_grammar.to_json(&single)),
    )?;
    let seeds: LanguageSet = ["aab", "bba"]
        .iter()
        .map(|t| ab.parse_word(t).expect("fixture word"))
        .collect();
    let gl = build_gl(&seeds, 1, 1, DEFAULT_CLASS_CAP, &ab).expect("fixture grammar");
    fs::write(dir.join("gl.json"), pretty(&gl.to_json()))?;
    Ok(())
}

/// The invocations, as argv lists relative to the fixture directory.
pub fn commands() -> Vec<Vec<&'static str>> {
    vec![
        vec!["step", "--alphabet", "ab.json", "--word", "aab", "-m", "1", "-k", "1", "--side", "right"],
        vec!["step", "--alphabet", "ab.json", "--word", "aab", "-m", "1", "-k", "1", "--side", "right", "--format", "text"],
        vec!["step", "--alphabet", "ab.json", "--word-file", "word_aabb.json", "-m", "2", "-k", "1", "--side", "both"],
        vec!["iter", "--alphabet", "ab.json", "--word", "aab", "-m", "1", "-k", "1", "--side", "both", "--depth", "2"],
        vec!["closure", "--alphabet", "ab.json", "--words", "seeds.json", "-m", "2", "-k", "1", "--side", "both", "--max-len", "8"],
        vec!["closure", "--alphabet", "ab.json", "--words", "seeds.json", "-m", "2", "-k", "1", "--side", "both", "--max-len", "8", "--format", "text"],
        vec!["sig", "--alphabet", "ab.json", "--word", "aabb", "-m", "1", "-k", "1", "--mode", "full"],
        vec!["sig", "--alphabet", "ab.json", "--word", "aabb", "-m", "2", "-k", "1", "--mode", "right", "--format", "text"],
        vec!["equiv", "--alphabet", "ab.json", "-m", "1", "-k", "1", "--mode", "right", "ab", "ba"],
        vec!["grammar", "gw", "--alphabet", "ab.json", "--word", "aab", "-m", "1", "-k", "1", "--side", "right"],
        vec!["grammar", "gw", "--alphabet", "ab.json", "--word", "aab", "-m", "1", "-k", "1", "--side", "right", "--format", "dot"],
        vec!["grammar", "gl", "--alphabet", "ab.json", "--words", "seeds.json", "-m", "1", "-k", "1", "--format", "text"],
        vec!["reconstruct", "--alphabet", "ab.json", "--grammar", "gl.json", "--max-len", "8"],
        vec!["universal", "encode", "--alphabet", "a1.json", "--grammar", "src_grammar.json"],
        vec!["universal", "encode", "--alphabet", "a1.json", "--grammar", "src_grammar.json", "--format", "text"],
        vec!["universal", "verify", "--alphabet", "a1.json", "--grammar", "src_grammar.json", "--max-len", "3"],
        vec!["gsm", "build", "--alphabet", "ab.json", "-m", "1", "-k", "1", "--side", "right"],
        vec!["gsm", "build", "--alphabet", "ab.json", "-m", "1", "-k", "2", "--side", "left", "--format", "dot"],
        vec!["gsm", "apply", "--alphabet", "ab.json", "-m", "1", "-k", "1", "--side", "left", "--word", "baa"],
        vec!["suite", "--only", "2"],
    ]
}

#[derive(PartialEq, Eq)]
pub struct Outcome {
    pub status: Option<i32>,
    pub stdout: Vec<u8>,
    pub stderr: Vec<u8>,
}

/// Runs every battery command once, with the seed pinned in the
/// environment and the fixture directory as working directory.
pub fn run_once(exe: &Path, dir: &Path, seed: u64) -> io::Result<Vec<Outcome>> {
    commands()
        .iter()
        .map(|argv| {
            let output = Command::new(exe)
                .args(argv)
                .current_dir(dir)
                .env("HPKIT_SEED", seed.to_string())
                .output()?;
            Ok(Outcome {
                status: output.status.code(),
                stdout: output.stdout,
                stderr: output.stderr,
            })
        })
        .collect()
}

/// Runs the battery twice and reports the first command whose output or
/// status differs, or whose first run fails outright.
pub fn compare_two_runs(exe: &Path, dir: &Path, seed: u64) -> Result<String, String> {
    let first = run_once(exe, dir, seed).map_err(|e| format!("battery run failed: {e}"))?;
    let second = run_once(exe, dir, seed).map_err(|e| format!("battery run failed: {e}"))?;
    for ((argv, a), b) in commands().iter().zip(&first).zip(&second) {
        if a.status != Some(0) {
            let stderr = String::from_utf8_lossy(&a.stderr);
            return Err(format!(
                "command failed (exit {:?}): hpkit {}: {}",
                a.status,
                argv.join(" "),
                stderr.lines().next().unwrap_or("no diagnostics")
            ));
        }
        if a != b {
            return Err(format!("output differs across runs: hpkit {}", argv.join(" ")));
        }
    }
    Ok(format!(
        "{} commands byte-identical across two runs",
        commands().len()
    ))
}
