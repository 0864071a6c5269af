use std::path::PathBuf;
use std::process::{Command, Output};

use ellft::catalog::BUILTIN;

fn ellft(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ellft"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("ellft-cli-{}-{name}", std::process::id()));
    std::fs::write(&p, text).unwrap();
    p
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn counts_pass() {
    let o = ellft(&["verify", "--check", "counts"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains(" 0 fail"));
}

#[test]
fn e8_main_passes_with_partials_listed() {
    let o = ellft(&["verify", "--group", "E8", "--check", "main"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("partial main"));
    assert!(out.contains("pass    main          E8/E8(a6)/(1,1)"));
    let o = ellft(&["verify", "--group", "E8", "--check", "main", "--allow-partial", "false"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn flipped_sign_fails_with_witness() {
    let mut v: serde_json::Value = serde_json::from_str(BUILTIN).unwrap();
    let groups = v["groups"].as_array_mut().unwrap();
    let e7 = groups.iter_mut().find(|g| g["name"] == "E7").unwrap();
    let r = e7["restrictions"]
        .as_array_mut()
        .unwrap()
        .iter_mut()
        .find(|r| r["unipotent"] == "A4+A1" && r["s"] == "1" && r["h"] == "delta")
        .unwrap();
    let t = &mut r["terms"][0];
    assert_eq!(t["family"], "512_11");
    assert_eq!(t["coeff"], "-1");
    t["coeff"] = "1".into();
    let p = scratch("flip.json", &v.to_string());
    let o = ellft(&["--catalog", p.to_str().unwrap(), "verify", "--check", "main"]);
    let _ = std::fs::remove_file(&p);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("fail    main          E7/A4+A1/(1,delta)"), "{out}");
    assert!(out.contains("family 512_11"), "{out}");
}

#[test]
fn json_format() {
    let o = ellft(&["verify", "--check", "selfdual", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["checks"].as_array().unwrap().iter().any(|c| c["status"] == "partial"));
}

#[test]
fn usage_errors() {
    assert_eq!(ellft(&["verify", "--bogus"]).status.code(), Some(2));
    assert_eq!(ellft(&["verify", "--check", "nope"]).status.code(), Some(2));
    assert_eq!(ellft(&[]).status.code(), Some(2));
    assert_eq!(ellft(&["ft", "no_such_family"]).status.code(), Some(2));
}

#[test]
fn catalog_errors() {
    let p = scratch("bad.json", "{\"schema_version\": 7}");
    assert_eq!(ellft(&["--catalog", p.to_str().unwrap(), "verify"]).status.code(), Some(3));
    let _ = std::fs::remove_file(&p);
    let missing = std::env::temp_dir().join("ellft-cli-does-not-exist.json");
    assert_eq!(
        ellft(&["--catalog", missing.to_str().unwrap(), "verify"]).status.code(),
        Some(3)
    );
    let p = scratch("empty.json", "");
    let o = ellft(&["--catalog", p.to_str().unwrap(), "verify"]);
    let _ = std::fs::remove_file(&p);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn other_subcommands() {
    let o = ellft(&["chartab", "S4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("lambda1"));
    let o = ellft(&["ft", "4_13"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("4 pairs"));
    let o = ellft(&["pairs", "--group", "E7", "--unipotent", "A4+A1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("(delta,delta)  dual (delta,delta)"));
}
