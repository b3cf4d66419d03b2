use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orthoconf")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let o = run(&full);
    (serde_json::from_slice(&o.stdout).unwrap(), o.status.code().unwrap())
}

fn failures(suite: &Value) -> Vec<(String, String)> {
    let mut out = Vec::new();
    for c in suite["checks"].as_array().unwrap() {
        for f in c["failures"].as_array().unwrap() {
            out.push((c["name"].as_str().unwrap().to_owned(), f.as_str().unwrap().to_owned()));
        }
    }
    out
}

#[test]
fn charpoly_text() {
    let o = run(&["charpoly", "--series", "D", "--mu", "1,0"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("computed:    (t-1)^9(t+1)^6(t+3)"), "{s}");
    assert!(s.contains("closed-form match"));
}

#[test]
fn charpoly_json_half_spin() {
    let (v, code) = json(&["charpoly", "--series", "B", "--mu", "1/2,1/2"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["result"]["charpoly_computed"], "(t-1/2)^16(t+2)^4");
    assert_eq!(v["result"]["match"], true);
}

#[test]
fn scan_verdicts() {
    let (v, code) = json(&["scan", "--series", "D", "--mu", "1,0", "--b", "1/3", "--max-degree", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "irreducible-up-to-3");
    let (v, code) = json(&["scan", "--series", "D", "--mu", "1,0", "--b", "3", "--max-degree", "2"]);
    assert_eq!(code, 1);
    assert_eq!(v["verdict"], "proper-submodule-found");
    assert_eq!(v["scan"]["levels"][0]["rank"], 15);
    assert_eq!(v["scan"]["levels"][0]["dim"], 16);
}

#[test]
fn classify_sets() {
    let o = run(&["classify", "--series", "B", "--mu", "1/2,1/2", "--b", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("excluded(b in 2-N/2)"));
    let o = run(&["classify", "--series", "D", "--mu", "1,0", "--b", "1/3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("generic"));
    let o = run(&["classify", "--series", "D", "--n", "2", "--b", "-2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("excluded(b in 0-N)"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["charpoly", "--series", "D", "--mu", "1,2"][..],
        &["charpoly", "--series", "X", "--mu", "1,0"],
        &["charpoly", "--series", "D", "--mu", "1,0", "--n", "3"],
        &["scan", "--series", "D", "--mu", "1,0"],
        &["scan", "--series", "D", "--mu", "1,0", "--b", "x"],
        &["nonsense"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn json_is_deterministic() {
    let args = ["--format", "json", "t-operator", "--series", "B", "--mu", "1/2,1/2", "--b", "1/3", "--k", "1"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(a.status.code(), Some(0));
}

#[test]
fn suite_fault_injection_adds_one_failure() {
    let (base, code) = json(&["suite"]);
    assert_eq!(code, 1);
    let (faulty, code) = json(&["suite", "--inject-fault"]);
    assert_eq!(code, 1);
    let before = failures(&base);
    let mut after = failures(&faulty);
    assert_eq!(after.len(), before.len() + 1);
    after.retain(|f| !before.contains(f));
    assert_eq!(after.len(), 1);
    assert_eq!(after[0].0, "03-shen-embedding");
    let names: Vec<&str> = base["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(names.len(), 11);
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("orthoconf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("h.json");
    let o = run(&["--format", "json", "--output", path.to_str().unwrap(), "harmonic", "--series", "D", "--n", "2", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["schema"], 1);
    std::fs::remove_dir_all(&dir).unwrap();
}
