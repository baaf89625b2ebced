//! The `smallorb` binary: formats, standard input and exit codes.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_smallorb"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn crosscheck_cube_agrees_on_every_ring() {
    let o = run(&["crosscheck", &data("i3.json"), "--format", "json"], None);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["results"]["homology_Z"], "(Z, 0, Z^3 ⊕ Z2, 0)");
    let verdicts = v["verdicts"].as_array().unwrap();
    for c in ["Z", "Q", "Z2"] {
        let check = format!("homology over {c}");
        assert!(verdicts.iter().any(|x| x["check"] == check.as_str() && x["agree"] == true));
    }
    assert!(v["input_sha256"].as_str().unwrap().len() == 64);
}

#[test]
fn search_simplex_is_empty_and_exhaustive() {
    let o = run(&["search", &data("simplex3.json")], None);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("found: 0"));
    assert!(s.contains("exhaustive: true"));
}

#[test]
fn toric_cube() {
    let o = run(&["toric", &data("i3.json")], None);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("homology_Z: (Z, 0, 0, Z^4, 0, Z)"));
    assert!(s.contains("euler_characteristic: -4"));
}

#[test]
fn square_search_finds_the_constant_function() {
    let o = run(&["search", &data("square.json")], None);
    assert!(stdout(&o).contains("F0:(1) F1:(1) F2:(1) F3:(1)"));
}

#[test]
fn reads_standard_input_and_echoes_seed() {
    let text = std::fs::read_to_string(data("prism3.json")).unwrap();
    let o = run(&["hvector", "--seed", "77"], Some(&text));
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("h_vector: [1, 2, 2, 1]"), "{s}");
    assert!(s.contains("seed: 77"));
}

#[test]
fn input_errors_exit_one() {
    let bad = r#"{"schema_version":1,"name":"x","dim":3,"vertex_count":5,
        "facets":[[0,1,2,3],[0,1,4],[1,2,4],[2,3,4],[3,0,4]]}"#;
    let o = run(&["validate"], Some(bad));
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("vertex 4"));
    assert_eq!(run(&["homology", "/nonexistent.json"], None).status.code(), Some(1));
    assert_eq!(run(&["ring", &data("i3.json")], None).status.code(), Some(1));
    assert_eq!(run(&["homology", &data("simplex4.json")], None).status.code(), Some(1));
}

#[test]
fn invalid_schar_is_rejected() {
    let mut doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(data("i3.json")).unwrap()).unwrap();
    doc["schar"] = serde_json::json!([[1, 0], [1, 0], [1, 1], [1, 1], [0, 1], [1, 0]]);
    let o = run(&["validate"], Some(&doc.to_string()));
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("schar_valid: false"));
}

#[test]
fn generate_round_trips_through_validate() {
    let o = run(&["generate", "product", "3", "4"], None);
    assert_eq!(o.status.code(), Some(0));
    let doc = stdout(&o);
    let v = run(&["validate"], Some(&doc));
    assert_eq!(v.status.code(), Some(0));
    assert!(stdout(&v).contains("facets: 7"));
    assert_eq!(run(&["generate", "dodecahedron", "1"], None).status.code(), Some(1));
}
