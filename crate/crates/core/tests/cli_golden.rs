use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn dcoset(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_dcoset"))
        .args(args)
        .env_remove("COSET_MAX_POINTS")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(input) = stdin {
        child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    }
    child.wait_with_output().unwrap()
}

fn path(name: &str) -> String {
    golden(name).to_string_lossy().into_owned()
}

#[test]
fn reduce_golden() {
    let out = dcoset(&["reduce", "x1 x1^-1"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(out.stdout, std::fs::read(golden("reduce.out")).unwrap());
}

#[test]
fn coset_product_golden() {
    let out = dcoset(&["coset-product", "--m", "1", "--g", &path("g.json"), "--h", &path("h.json")], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(out.stdout, std::fs::read(golden("coset_product.out")).unwrap());
}

#[test]
fn rep_matrix_golden() {
    let out = dcoset(&["rep-matrix", "--group", "c2", "--m", "1", "--g", &path("g.json")], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(out.stdout, std::fs::read(golden("rep_matrix.out")).unwrap());
}

#[test]
fn stdin_input_matches_file_input() {
    let g = std::fs::read_to_string(golden("g.json")).unwrap();
    let out = dcoset(&["coset-product", "--m", "1", "--g", "-", "--h", &path("h.json")], Some(&g));
    assert_eq!(out.stdout, std::fs::read(golden("coset_product.out")).unwrap());
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--suite", "all", "--seed", "11"];
    let (a, b) = (dcoset(&args, None), dcoset(&args, None));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn text_rendering() {
    let out = dcoset(&["--text", "rep-matrix", "--group", "c2", "--m", "1", "--g", &path("g.json")], None);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "1/2  1/2\n1/2  1/2\n");
    let out = dcoset(&["--text", "reduce", "x2 x1 x1^-1 x3"], None);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "x2 x3\n");
}

#[test]
fn exit_codes() {
    // usage errors
    assert_eq!(dcoset(&["frobnicate"], None).status.code(), Some(2));
    assert_eq!(dcoset(&["compose", "--a", "/no/such/file.json", "--b", "-"], Some("{}")).status.code(), Some(2));
    // domain errors
    assert_eq!(dcoset(&["reduce", "x0"], None).status.code(), Some(1));
    let not_inverse = r#"{"images":{"1":[[1,1],[2,1]]},"inverse_images":{"1":[[2,1],[1,1]]}}"#;
    assert_eq!(dcoset(&["invert", "--a", not_inverse], None).status.code(), Some(1));
}

#[test]
fn point_budget_from_environment() {
    let args = ["rep-matrix", "--group", "s3", "--m", "1", "--g", &path("g.json")];
    let ok = dcoset(&args, None);
    assert_eq!(ok.status.code(), Some(0));
    let limited = Command::new(env!("CARGO_BIN_EXE_dcoset"))
        .args(args)
        .env("COSET_MAX_POINTS", "10")
        .output()
        .unwrap();
    assert_eq!(limited.status.code(), Some(1));
    let flag = dcoset(&[&args[..], &["--max-points", "10"]].concat(), None);
    assert_eq!(flag.status.code(), Some(1));
}
