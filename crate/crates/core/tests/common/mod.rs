//! Golden transcript runner shared by the CLI tests and the acceptance suite.
//!
//! A golden file is a transcript: `$ qabacus <args>` lines followed by the
//! exact stdout of that command, its stderr lines prefixed with `! `, and
//! `[exit N]` after a nonzero exit. All commands of one file run in order in
//! the same fresh directory, against the built binary. Set `UPDATE_GOLDENS=1` to rewrite the files.

#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn commands(transcript: &str) -> Vec<Vec<String>> {
    transcript
        .lines()
        .filter_map(|l| l.strip_prefix("$ qabacus "))
        .map(|args| args.split_whitespace().map(str::to_string).collect())
        .collect()
}

/// Runs every command in `transcript` and returns the transcript it produces.
pub fn replay(transcript: &str) -> String {
    let dir = tempfile::tempdir().expect("temp dir");
    let mut out = String::new();
    for args in commands(transcript) {
        let output = Command::new(env!("CARGO_BIN_EXE_qabacus"))
            .args(&args)
            .current_dir(dir.path())
            .env("LC_ALL", "C")
            .output()
            .expect("run qabacus");
        out.push_str(&format!("$ qabacus {}\n", args.join(" ")));
        out.push_str(&String::from_utf8(output.stdout).expect("utf-8 stdout"));
        for line in String::from_utf8(output.stderr)
            .expect("utf-8 stderr")
            .lines()
        {
            out.push_str(&format!("! {line}\n"));
        }
        match output.status.code() {
            Some(0) => {}
            Some(code) => out.push_str(&format!("[exit {code}]\n")),
            None => out.push_str("[killed]\n"),
        }
    }
    out
}

/// Replays `tests/golden/<name>` and compares bit-exactly. Returns the
/// first differing line on mismatch.
pub fn check_golden(name: &str) -> Result<(), String> {
    let path = golden_dir().join(name);
    let expected =
        std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    let actual = replay(&expected);
    if std::env::var_os("UPDATE_GOLDENS").is_some() {
        std::fs::write(&path, &actual).map_err(|e| e.to_string())?;
        return Ok(());
    }
    if actual == expected {
        return Ok(());
    }
    let line = expected
        .lines()
        .zip(actual.lines())
        .position(|(a, b)| a != b)
        .unwrap_or_else(|| expected.lines().count().min(actual.lines().count()));
    Err(format!(
        "{name}: line {} differs\n  expected: {:?}\n  actual:   {:?}",
        line + 1,
        expected.lines().nth(line).unwrap_or("<eof>"),
        actual.lines().nth(line).unwrap_or("<eof>")
    ))
}
