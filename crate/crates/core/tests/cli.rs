use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn legk(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_legk"))
        .args(args)
        .env("LEGK_CACHE", cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str], cache: &Path) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let o = legk(&all, cache);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn info_reports() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c.jsonl");
    let v = json(&["info", "plat 3 : 2 2 4 3 3 3 2 4"], &c);
    assert_eq!(v["classical"]["tb"], 1);
    assert_eq!(v["classical"]["rotation"], 0);
    assert_eq!(v["degrees"]["-1"]["crossings"], 1);
    assert_eq!(v["degrees"]["0"]["crossings"], 6);
    assert_eq!(v["degrees"]["1"], serde_json::json!({"crossings": 1, "right_cusps": 3}));
    assert!(v.get("rulings").is_none());
    assert_eq!(json(&["info", "--family", "3"], &c)["classical"]["tb"], 3);
    assert_eq!(json(&["info", "plat 1 :"], &c)["classical"]["tb"], -1);
    let text = stdout(&legk(&["info", "plat 1 :"], &c));
    assert!(text.contains("tb           -1"), "{text}");
}

#[test]
fn rulings_and_polys() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c.jsonl");
    let v = json(&["rulings", "--mode", "2graded", "--max", "--family", "2"], &c);
    let sets: Vec<Value> = v["rulings"].as_array().unwrap().iter().map(|r| r["switches"].clone()).collect();
    assert_eq!(sets, [serde_json::json!([1, 2, 5, 7]), serde_json::json!([1, 4, 5, 6])]);
    assert_eq!(v["rulings"][1]["classification"]["6"], "S");
    assert_eq!(v["rulings"][1]["classification"]["7"], "R");

    let v = json(&["polys", "--family", "2"], &c);
    assert_eq!(v["chekanov_polynomials"], serde_json::json!([{"-1": 1, "0": 4, "1": 2}, {"0": 2, "1": 1}]));
    let v = json(&["polys", "plat 1 :"], &c);
    assert_eq!(v["chekanov_polynomials"], serde_json::json!([{"1": 1}]));

    let v = json(&["polys", "--mcs", "--family", "2"], &c);
    assert_eq!(v["mcs"].as_array().unwrap().len(), 16);
    let v = json(&["ruling-poly", "--family", "2"], &c);
    assert_eq!(v["f_max"], 2);
}

#[test]
fn verify_suites() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c.jsonl");
    let o = legk(&["verify", "thm2", "--m", "4"], &c);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("C_4: P = 6 + t"), "{text}");
    assert!(text.contains("thm2: PASS"));
    let o = legk(&["verify", "thm1", "--max-crossings", "6", "--threads", "2"], &c);
    assert!(o.status.success(), "{}", stdout(&o));
    let o = legk(&["verify", "duality", "--family", "3"], &c);
    assert!(o.status.success());
    let v = json(&["verify", "fmax", "--m", "4"], &c);
    assert_eq!(v["passed"], true);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c.jsonl");
    assert_eq!(legk(&["info", "plat 2 : 2 2"], &c).status.code(), Some(1));
    assert_eq!(legk(&["info", "plat 2 : 9"], &c).status.code(), Some(1));
    assert_eq!(legk(&["info"], &c).status.code(), Some(1));
    assert_eq!(legk(&["nonsense"], &c).status.code(), Some(1));
    assert_eq!(legk(&["verify", "thm2", "--m", "1"], &c).status.code(), Some(1));
    assert_eq!(legk(&["info", "-f", "/nonexistent/file"], &c).status.code(), Some(1));
    assert_eq!(legk(&["--help"], &c).status.code(), Some(0));
}

#[test]
fn file_input_and_stable_json() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c.jsonl");
    let f = dir.path().join("d.txt");
    std::fs::write(&f, "# trefoil\nplat 2 : 2 2 2\n").unwrap();
    let fs = f.to_str().unwrap();
    let a = legk(&["polys", "-f", fs, "--json", "--no-cache"], &c);
    let b = legk(&["polys", "-f", fs, "--json", "--no-cache"], &c);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(!c.exists(), "--no-cache must not write");
}

#[test]
fn cache_grows_and_is_reused() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("nested/c.jsonl");
    let first = json(&["info", "--family", "2"], &c);
    let lines = std::fs::read_to_string(&c).unwrap().lines().count();
    assert_eq!(lines, 1);
    let again = json(&["info", "--family", "2"], &c);
    assert_eq!(first, again);
    assert_eq!(std::fs::read_to_string(&c).unwrap().lines().count(), 1);
    let polys = json(&["polys", "--family", "2"], &c);
    assert!(polys.get("classical").is_none(), "cached fields stay out of the output");
    let text = std::fs::read_to_string(&c).unwrap();
    assert_eq!(text.lines().count(), 2);
    let last: Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(last["report"]["classical"]["tb"], 1);
    assert!(last["report"]["chekanov_polynomials"].is_array());
    assert_eq!(last["key"].as_str().unwrap().len(), 64);
}

#[test]
fn family_listing() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&["family", "3"], &dir.path().join("c"));
    assert_eq!(v["diagram"], "plat 3 : 2 2 4 3 3 3 2 4 2 4 3 3 4 2");
    assert_eq!(v["labels"]["b_3"], 12);
}
