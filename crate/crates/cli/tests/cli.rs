use std::io::Write;
use std::process::{Command, Output};

use graphprod::io;
use serde_json::{json, Value};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_graphprod"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {:?}", out))
}

fn racg(vertices: &[&str], edges: &[(&str, &str)]) -> Value {
    let groups: serde_json::Map<String, Value> =
        vertices.iter().map(|v| (v.to_string(), json!({"type": "cyclic", "order": 2}))).collect();
    json!({"graph": {"vertices": vertices, "edges": edges}, "groups": groups})
}

fn c5() -> String {
    racg(&["0", "1", "2", "3", "4"], &[("0", "1"), ("1", "2"), ("2", "3"), ("3", "4"), ("4", "0")]).to_string()
}

fn k13() -> String {
    racg(&["w", "u", "v", "z"], &[("w", "u"), ("w", "v"), ("w", "z")]).to_string()
}

fn inner_x0_data() -> String {
    let map: serde_json::Map<String, Value> =
        (0..5).map(|u| (u.to_string(), json!({"g": [["0", 1]], "w": u.to_string()}))).collect();
    json!({ "map": map }).to_string()
}

#[test]
fn dist_prints_two() {
    let out = run(&["dist", &c5(), "[]", r#"[["0",1],["2",1]]"#]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out), json!(2));
}

#[test]
fn reduce_and_round_trip_through_a_file() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(c5().as_bytes()).unwrap();
    let path = f.path().to_str().unwrap();
    let out = run(&["reduce", path, r#"[["2",1],["4",1],["0",1]]"#]);
    assert!(out.status.success(), "{out:?}");
    let v = stdout_json(&out);
    assert_eq!(v["normal_form"], json!([["2", 1], ["0", 1], ["4", 1]]));
    let gp = io::parse_product(&serde_json::from_str(&c5()).unwrap()).unwrap();
    let nf = gp.reduce(&io::word_from_json(&gp, &v["normal_form"]).unwrap());
    assert_eq!(io::word_to_json(&gp, &nf), v["normal_form"]);
}

#[test]
fn out_finite_examples() {
    let v = stdout_json(&run(&["out-finite", &k13()]));
    assert_eq!(v["out_finite"], json!(false));
    assert_eq!(v["witness"], json!({"sil": true, "u": "u", "v": "v", "component": ["z"]}));
    let v = stdout_json(&run(&["out-finite", &c5()]));
    assert_eq!(v["out_finite"], json!(true));
}

#[test]
fn decompose_inner_conjugation() {
    let out = run(&["decompose", &c5(), &c5(), &inner_x0_data()]);
    assert!(out.status.success(), "{out:?}");
    let v = stdout_json(&out);
    assert_eq!(v["complexity_log"], json!([2, 0]));
    assert_eq!(v["partial_conjugations"], json!([{"kind": "partial", "u": "0", "component": ["2", "3"], "h": 1}]));
    let gp = io::parse_product(&serde_json::from_str(&c5()).unwrap()).unwrap();
    let r = io::decomposition_from_json(&gp, &gp, &v).unwrap();
    assert_eq!(io::decomposition_to_json(&gp, &gp, &r), v);
}

#[test]
fn decompose_rejects_a_non_isomorphism_with_status_two() {
    let map: serde_json::Map<String, Value> = (0..5).map(|u| (u.to_string(), json!({"w": "0"}))).collect();
    let out = run(&["decompose", &c5(), &c5(), &json!({ "map": map }).to_string()]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
    assert_eq!(stdout_json(&out)["isomorphism"], json!(false));
}

#[test]
fn from_images_transvection_is_not_conjugating() {
    let free = racg(&["a", "b"], &[]).to_string();
    let out = run(&["from-images", &free, r#"{"a":{"1":[["a",1],["b",1]]},"b":{"1":[["b",1]]}}"#]);
    assert_eq!(out.status.code(), Some(2));
    let v = stdout_json(&out);
    assert_eq!(v["conjugating"], json!(false));
    assert_eq!(v["core_length"], json!(2));
    let ok = run(&["from-images", &free, r#"{"a":{"1":[["b",1],["a",1],["b",1]]},"b":{"1":[["b",1]]}}"#]);
    assert!(ok.status.success());
    assert_eq!(stdout_json(&ok)["conjugating"], json!(true));
}

#[test]
fn input_errors_exit_one_and_name_the_key() {
    let out = run(&["reduce", &c5(), r#"[["0",1],["7",1]]"#]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("word[1]") && err.contains("\"7\""), "{err}");
    assert!(out.stdout.is_empty());
    let missing = json!({"graph": {"vertices": ["0"], "edges": []}, "groups": {}}).to_string();
    let out = run(&["reduce", &missing, "[]"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("\"0\""));
    let out = run(&["reduce", "/no/such/spec.json", "[]"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn infinite_enumeration_is_unsupported() {
    let spec = json!({"graph": {"vertices": ["a", "b"], "edges": []}, "groups": {"a": {"type": "int"}, "b": {"type": "int"}}});
    let out = run(&["ball", &spec.to_string(), "--radius", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unsupported"));
    let out = run(&["reduce", &spec.to_string(), r#"[["a",2],["a",-2],["b",-1]]"#]);
    assert_eq!(stdout_json(&out)["normal_form"], json!([["b", -1]]));
}

#[test]
fn hyperplane_queries() {
    let v = stdout_json(&run(&["hyperplane", &c5(), r#"[["0",1]]"#, r#"["2",1]"#]));
    assert_eq!(v, json!({"label": "2", "base": [["0", 1]]}));
    let v = stdout_json(&run(&["separates", &c5(), r#"{"label":"0","base":[]}"#, "[]", r#"[["0",1],["2",1]]"#]));
    assert_eq!(v["separates"], json!(true));
    let v = stdout_json(&run(&["transverse", &c5(), r#"{"label":"0","base":[]}"#, r#"{"label":"2","base":[]}"#]));
    assert_eq!(v["transverse"], json!(false));
}

#[test]
fn ball_dumps_reparse() {
    let gp = io::parse_product(&serde_json::from_str(&c5()).unwrap()).unwrap();
    let v = stdout_json(&run(&["ball", &c5(), "--radius", "2"]));
    assert_eq!(v["vertices"].as_array().unwrap().len(), 21);
    let ball = io::qm_ball_from_json(&gp, &v).unwrap();
    assert_eq!(io::qm_ball_to_json(&gp, &ball), v);
    let d = stdout_json(&run(&["ball", &c5(), "--radius", "1", "--davis"]));
    let davis = io::davis_ball_from_json(&gp, &d).unwrap();
    assert_eq!(io::davis_ball_to_json(&gp, &davis), d);
    let t = stdout_json(&run(&["transversality-graph", &c5(), "--radius", "2"]));
    assert_eq!(io::transversality_graph_to_json(&gp, &io::transversality_graph_from_json(&gp, &t).unwrap()), t);
    let dot = run(&["ball", &c5(), "--radius", "1", "--dot"]);
    assert!(String::from_utf8_lossy(&dot.stdout).starts_with("graph qm {"));
}

#[test]
fn classify_and_sil_accept_graph_or_spec() {
    let v = stdout_json(&run(&["classify", &c5()]));
    assert_eq!(v["atomic"], json!(true));
    assert_eq!(v["girth"], json!(5));
    let g = json!({"vertices": ["w", "u", "v", "z"], "edges": [["w", "u"], ["w", "v"], ["w", "z"]]}).to_string();
    let v = stdout_json(&run(&["sil", &g]));
    assert_eq!(v["sil"], json!(true));
    let gp = io::parse_product(&serde_json::from_str(&k13()).unwrap()).unwrap();
    let w = io::sil_from_json(gp.graph(), &v).unwrap();
    assert_eq!(io::sil_to_json(gp.graph(), w.as_ref()), v);
}

#[test]
fn rigid_and_fixing_locals() {
    let v = stdout_json(&run(&["rigid", &c5()]));
    assert_eq!(v["sequence"], json!(["0", "2", "4", "1", "3"]));
    assert_eq!(v["unique_reduced_word"], json!(true));
    let g = v["element"].to_string();
    let f = stdout_json(&run(&["fixing-locals", &c5(), &g]));
    assert_eq!(f["count"], json!(1));
    assert_eq!(stdout_json(&run(&["fixing-locals", &c5(), "[]"]))["count"], json!(10));
    let gp = io::parse_product(&serde_json::from_str(&c5()).unwrap()).unwrap();
    let phi = io::automorphism_from_json(&gp, &f["locals"]).unwrap();
    assert_eq!(io::automorphism_to_json(&gp, &phi), f["locals"]);
    let p3 = racg(&["0", "1", "2"], &[("0", "1"), ("1", "2")]).to_string();
    assert_eq!(run(&["rigid", &p3]).status.code(), Some(1));
}

#[test]
fn verify_is_deterministic() {
    let a = run(&["verify", &c5(), "--radius", "2", "--seed", "3"]);
    let b = run(&["verify", &c5(), "--radius", "2", "--seed", "3"]);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let v = stdout_json(&a);
    assert_eq!(v["passed"], json!(true));
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert!(names.contains(&"decomposition-round-trip") && names.contains(&"davis-links-are-flag"));
    let qm = stdout_json(&run(&["verify", &c5(), "--radius", "1", "--suite", "qm"]));
    assert!(qm["checks"].as_array().unwrap().iter().all(|c| !c["name"].as_str().unwrap().starts_with("davis")));
}
