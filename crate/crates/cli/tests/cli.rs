mod common;

use std::fs;
use std::io::{BufRead, BufReader, Read, Write};
use std::net::TcpStream;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn argkg(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_argkg"))
        .current_dir(dir)
        .args(args)
        .env_remove("ARGKG_SNAPSHOT")
        .output()
        .unwrap()
}

fn stderr_json(out: &Output) -> Value {
    let text = String::from_utf8_lossy(&out.stderr);
    serde_json::from_str(text.trim()).unwrap_or_else(|e| panic!("stderr {text:?}: {e}"))
}

#[test]
fn missing_snapshot_is_reported() {
    let dir = common::fixture_copy();
    let out = argkg(dir.path(), &["analyze"]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr_json(&out);
    assert_eq!(err["error"]["kind"], "snapshot_missing");
    assert!(err["error"]["message"].as_str().unwrap().starts_with("snapshot missing"));
}

#[test]
fn bad_config_exits_with_two() {
    let dir = common::fixture_copy();
    fs::write(dir.path().join("bad.toml"), "output_dir = \"out\"\n[inputs]\ndebates = \"debates.jsonl\"\ncolour = 1\n").unwrap();
    let out = argkg(dir.path(), &["-c", "bad.toml", "ingest"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"]["kind"], "config");

    let out = argkg(dir.path(), &["-c", "absent.toml", "ingest"]);
    assert_eq!(out.status.code(), Some(2));

    fs::write(dir.path().join("sel.toml"), "[inputs]\ndebates = \"debates.jsonl\"\n[[analyze.comparisons]]\nname = \"x\"\na = \"stance:maybe\"\nb = \"\"\n").unwrap();
    let out = argkg(dir.path(), &["-c", "sel.toml", "ingest"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_json(&out)["error"]["message"].as_str().unwrap().contains("stance"));
}

#[test]
fn stepwise_matches_run() {
    let steps = common::fixture_copy();
    for cmd in ["ingest", "link", "annotate", "analyze", "eval", "export"] {
        let out = argkg(steps.path(), &[cmd]);
        assert!(out.status.success(), "{cmd}: {}", String::from_utf8_lossy(&out.stderr));
        let summary: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert!(summary.is_object(), "{cmd}");
    }
    let whole = common::fixture_copy();
    assert!(argkg(whole.path(), &["run"]).status.success());
    for sub in ["reports", "export"] {
        for entry in fs::read_dir(whole.path().join("out").join(sub)).unwrap() {
            let entry = entry.unwrap();
            if entry.path().extension().is_some_and(|e| e == "json") {
                continue;
            }
            let other = steps.path().join("out").join(sub).join(entry.file_name());
            assert_eq!(fs::read(entry.path()).unwrap(), fs::read(&other).unwrap(), "{:?}", entry.file_name());
        }
    }
    assert_eq!(
        fs::read(whole.path().join("out/graph.snap")).unwrap(),
        fs::read(steps.path().join("out/graph.snap")).unwrap()
    );
}

#[test]
fn snapshot_flag_overrides_config() {
    let dir = common::fixture_copy();
    let out = argkg(dir.path(), &["--snapshot", "elsewhere.snap", "ingest"]);
    assert!(out.status.success());
    assert!(dir.path().join("elsewhere.snap").exists());
    assert!(!dir.path().join("out/graph.snap").exists());
}

fn http_get(addr: &str, path: &str) -> String {
    let mut s = TcpStream::connect(addr).unwrap();
    write!(s, "GET {path} HTTP/1.1\r\nhost: x\r\nconnection: close\r\n\r\n").unwrap();
    let mut body = String::new();
    s.read_to_string(&mut body).unwrap();
    body
}

#[cfg(unix)]
#[test]
fn serve_answers_and_stops_on_sigterm() {
    let (dir, snapshot) = common::built_snapshot();
    let before = fs::read(&snapshot).unwrap();
    let mut child = Command::new(env!("CARGO_BIN_EXE_argkg"))
        .current_dir(dir.path())
        .args(["serve", "--addr", "127.0.0.1:0"])
        .env_remove("ARGKG_SNAPSHOT")
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut line = String::new();
    BufReader::new(child.stdout.take().unwrap()).read_line(&mut line).unwrap();
    let banner: Value = serde_json::from_str(line.trim()).unwrap();
    let addr = banner["listening"].as_str().unwrap().to_owned();

    let health = http_get(&addr, "/health");
    assert!(health.starts_with("HTTP/1.1 200"), "{health}");
    assert!(health.contains("\"arguments\":6"));
    let missing = http_get(&addr, "/arguments/zz");
    assert!(missing.starts_with("HTTP/1.1 404"));

    let killed = Command::new("kill").args(["-TERM", &child.id().to_string()]).status().unwrap();
    assert!(killed.success());
    let status = child.wait().unwrap();
    assert!(status.success(), "{status:?}");
    assert_eq!(fs::read(&snapshot).unwrap(), before);
}
