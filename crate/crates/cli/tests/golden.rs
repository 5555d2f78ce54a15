//! Replays every payload in `docs/examples` through the binary and compares
//! with the recorded output. `<name>.cmd` holds the arguments, `<name>.json`
//! the payload, `<name>.out` the expected stdout; a failing run records
//! `exit N`, then stdout, then stderr. Set `UPDATE_GOLDEN=1` to rewrite the records.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

fn examples_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/examples")
}

fn replay(cmd_file: &Path) -> String {
    let args = fs::read_to_string(cmd_file).unwrap();
    let payload = cmd_file.with_extension("json");
    let out = Command::new(env!("CARGO_BIN_EXE_ramify"))
        .args(args.split_whitespace())
        .arg("--input")
        .arg(&payload)
        .output()
        .unwrap();
    let code = out.status.code().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    if code == 0 {
        stdout
    } else {
        format!("exit {code}\n{stdout}{}", String::from_utf8(out.stderr).unwrap())
    }
}

fn cases() -> Vec<PathBuf> {
    let mut cmds: Vec<PathBuf> = fs::read_dir(examples_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "cmd"))
        .collect();
    cmds.sort();
    cmds
}

#[test]
fn examples_match_recorded_output() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let cmds = cases();
    assert!(cmds.len() >= 20, "examples directory looks empty");
    let mut mismatched = Vec::new();
    for cmd in &cmds {
        let got = replay(cmd);
        let golden = cmd.with_extension("out");
        if update {
            fs::write(&golden, &got).unwrap();
            continue;
        }
        let want = fs::read_to_string(&golden).unwrap_or_default();
        if got != want {
            eprintln!("--- {}\nexpected:\n{want}\ngot:\n{got}", cmd.display());
            mismatched.push(cmd.file_stem().unwrap().to_string_lossy().into_owned());
        }
    }
    assert!(mismatched.is_empty(), "mismatched examples: {mismatched:?}");
}

#[test]
fn replays_are_byte_identical() {
    for cmd in cases() {
        assert_eq!(replay(&cmd), replay(&cmd), "{}", cmd.display());
    }
}
