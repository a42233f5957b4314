#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn ccnr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ccnr"))
        .args(args)
        .output()
        .expect("failed to spawn ccnr")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is utf-8")
}

pub fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is utf-8")
}

pub fn code(out: &Output) -> i32 {
    out.status.code().expect("process exited normally")
}

/// Writes `contents` to a fresh file under the cargo test temp directory.
pub fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).expect("write temp file");
    path
}

/// Parses `family` CSV output into rows of fields, checking the header.
pub fn parse_csv(text: &str) -> Vec<Vec<String>> {
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(ccnr_cli::CSV_HEADER));
    lines.map(|l| l.split(',').map(str::to_string).collect()).collect()
}
