use std::io::Write;
use std::process::{Command, Output, Stdio};

use compalg::algebra::{matrix_algebra, StructureConstants};
use compalg::json::{pencil_to_json, sc_to_json};
use compalg::pencil::{example_1_3, example_1_3_operator, idempotent_algebra};
use compalg::{Cyclotomic, Field, Pencil};
use serde_json::{json, Value};

type Q = Cyclotomic;

fn q(x: i64) -> Q {
    Q::from_i64(x)
}

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_compalg"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut input = child.stdin.take().unwrap();
    input.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(input);
    child.wait_with_output().unwrap()
}

fn doc(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn example_pencil() -> Pencil<Q> {
    example_1_3(&[q(1), q(2)], &[q(3), q(-1)], &q(5)).unwrap()
}

#[test]
fn version_names_schema() {
    let out = run(&["--version"], None);
    assert!(out.status.success());
    assert!(stdout(&out).contains("compalg/1"));
}

#[test]
fn catalog_e6() {
    let out = run(&["catalog", "E6"], None);
    assert_eq!(out.status.code(), Some(0));
    let d = doc(&out);
    assert_eq!(d["matrix"], json!([[1, 1, 0, 0], [1, 0, 1, 0], [1, 0, 0, 1]]));
    assert_eq!(d["m"], json!([2, 2, 2]));
    assert_eq!(d["n"], json!([3, 1, 1, 1]));
    assert_eq!(run(&["catalog", "A2k-1", "--k", "1"], None).status.code(), Some(2));
    assert_eq!(run(&["catalog", "F4"], None).status.code(), Some(2));
}

#[test]
fn zero_circle_pencil_passes() {
    let p = Pencil::new(matrix_algebra::<Q>(2), StructureConstants::zero(4)).unwrap();
    let out = run(&["verify-pencil"], Some(&pencil_to_json(&p).to_string()));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(doc(&out)["passed"], true);
}

#[test]
fn failing_pencil_names_the_identity() {
    let mut star = matrix_algebra::<Q>(2);
    star.set(0, 1, 2, q(5));
    let p = Pencil::new(star, StructureConstants::zero(4)).unwrap();
    let input = pencil_to_json(&p).to_string();
    let out = run(&["verify-pencil"], Some(&input));
    assert_eq!(out.status.code(), Some(1));
    let d = doc(&out);
    let failing: Vec<&Value> = d["residuals"].as_array().unwrap().iter().filter(|r| r["zero"] == false).collect();
    assert!(!failing.is_empty());
    assert!(failing[0]["witness"]["indices"].is_array());
    // deterministic output
    assert_eq!(run(&["verify-pencil"], Some(&input)).stdout, out.stdout);
}

#[test]
fn malformed_json_reports_location() {
    let out = run(&["verify-pencil"], Some("{\"star\": [1, "));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
    let out = run(&["verify-pencil", "/nonexistent/file.json"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn a2k1_pipeline() {
    let built = run(&["build-a2k1", "--k", "2", "--m", "2"], None);
    assert_eq!(built.status.code(), Some(0));
    let rep = run(&["build-a2k1", "--k", "2", "--m", "2", "--s", "5"], None);
    assert_eq!(rep.status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rep.json");
    std::fs::write(&path, &rep.stdout).unwrap();
    let out = run(&["verify-pmstructure", "--representation", path.to_str().unwrap()], Some(&stdout(&built)));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let labels: Vec<String> =
        doc(&out)["residuals"].as_array().unwrap().iter().map(|r| r["label"].as_str().unwrap().to_string()).collect();
    assert!(labels.iter().any(|l| l == "(rel2)"));
}

#[test]
fn cyclic_pipeline() {
    let rep = run(&["build-cyclic", "--p", "2", "--s", "2"], None);
    assert_eq!(rep.status.code(), Some(0));
    let ex = run(&["extract-tensors"], Some(&stdout(&rep)));
    assert_eq!(ex.status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rep.json");
    std::fs::write(&path, &rep.stdout).unwrap();
    let out = run(&["verify-mstructure", "--representation", path.to_str().unwrap()], Some(&stdout(&ex)));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let built = run(&["build-cyclic", "--p", "3"], None);
    assert_eq!(doc(&built)["field"], json!({"kind": "cyclotomic", "order": 4}));
    assert_eq!(run(&["verify-mstructure"], Some(&stdout(&built))).status.code(), Some(0));
}

#[test]
fn comma_commands() {
    let (u, v, qq) = ("[10, 9, 5]", "[-21, -14, -6]", "[[0, 3, 7], [2, 0, 7], [2, 3, 0]]");
    let out = run(&["classify-comma", "--u", u, "--v", v, "--q", qq], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(doc(&out)["class"], "Mat2");
    let out = run(&["build-comma", "--u", u, "--v", v, "--q", qq], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(doc(&out)["b_algebra"]["dim"], 4);
    let bad = "[[0, 100, 7], [2, 0, 7], [2, 3, 0]]";
    let out = run(&["build-comma", "--u", u, "--v", v, "--q", bad], None);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("(BB3)"));
    let out = run(&["classify-comma", "--u", "[1, 2]", "--v", "[0, 0]", "--q", "[[1, 1], [2, 2]]"], None);
    assert_eq!(doc(&out)["class"], "regular");
}

#[test]
fn classify_matrix_command() {
    let out = run(&["classify-matrix", "[[1, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 1, 1, 1, 0], [0, 0, 0, 1, 1]]"], None);
    let d = doc(&out);
    assert_eq!(d["admissible"], false);
    let e8t = "[[1, 1, 0, 0], [0, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1], [0, 0, 0, 1]]";
    let d = doc(&run(&["classify-matrix", e8t], None));
    assert_eq!(d["family"], "E8");
    assert_eq!(d["transposed"], true);
    assert_eq!(d["m"], json!([4, 3, 5, 3, 1]));
    let d = doc(&run(&["classify-matrix", "[[3]]"], None));
    assert_eq!(d["result"], "not admissible");
    let d = doc(&run(&["classify-matrix", "[[2, 0], [0, 2]]"], None));
    assert_eq!(d["decomposable"]["rows"], json!([1]));
}

#[test]
fn poisson_check_command() {
    let input = pencil_to_json(&example_pencil()).to_string();
    let out = run(&["poisson-check", "--n", "2"], Some(&input));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(doc(&out)["coordinates"], 8);
    let out = run(&["poisson-check", "--n", "5"], Some(&input));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn extend_poly_command() {
    let input = pencil_to_json(&example_pencil()).to_string();
    let out = run(&["extend-poly", "--roots", "[1, 3]"], Some(&input));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(doc(&out)["dim"], 4);
    let out = run(&["extend-poly", "--q", "[0, 1, 1, 1]"], Some(&input));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(run(&["extend-poly"], Some(&input)).status.code(), Some(2));
}

#[test]
fn deform_command() {
    let star = sc_to_json(&idempotent_algebra::<Q>(2)).to_string();
    let r = example_1_3_operator(&[q(1), q(2)], &[q(3), q(-1)], &q(5)).unwrap();
    let r_json = serde_json::to_string(&compalg::json::matrix_to_json(&r, &compalg::FieldSpec::rational())).unwrap();
    let out = run(&["deform", "--r", &r_json], Some(&star));
    assert_eq!(out.status.code(), Some(0));
    let d = doc(&out);
    assert_eq!(d["kind"], "pencil");
    assert_eq!(d["circle"], pencil_to_json(&example_pencil())["circle"]);
}

#[test]
fn float_backend() {
    let out = run(&["--field", "float:1e-9", "build-cyclic", "--p", "2", "--s", "2"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(doc(&out)["field"]["kind"], "float");
    let ex = run(&["extract-tensors"], Some(&stdout(&out)));
    assert_eq!(ex.status.code(), Some(0), "{}", String::from_utf8_lossy(&ex.stderr));
}

#[test]
fn text_format() {
    let out = run(&["--format", "text", "catalog", "D2k", "--k", "3"], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("D̃_6"));
}
