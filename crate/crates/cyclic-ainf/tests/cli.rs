use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cyclic-ainf"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cyclic-ainf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn diagonal_matches_the_shipped_fixture() {
    let out = scratch("d4.json");
    let o = run(&[
        "diagonal",
        "--max-arity",
        "4",
        "--cocommutative",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        std::fs::read(&out).unwrap(),
        std::fs::read(fixture("diagonal_4.json")).unwrap()
    );
    let o = run(&["verify-diagonal", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 3);
}

#[test]
fn freedom_prints_a_dimension() {
    let o = run(&["freedom", "--arity", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1");
    let o = run(&["freedom", "--arity", "4", "--cocommutative"]);
    assert_eq!(stdout(&o).trim(), "0");
}

#[test]
fn homotopy_between_stored_diagonals() {
    let out = scratch("h.json");
    let d3 = fixture("diagonal_3.json");
    let o = run(&[
        "homotopy",
        "--from",
        d3.to_str().unwrap(),
        "--to",
        d3.to_str().unwrap(),
        "--max-arity",
        "3",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert!(std::fs::read_to_string(out).unwrap().contains("dt_poly"));
}

#[test]
fn tensor_algebra_writes_a_valid_product() {
    let out = scratch("ab.json");
    let (a, d) = (fixture("algebra_dual_odd.json"), fixture("diagonal_4.json"));
    let o = run(&[
        "tensor-algebra",
        "--a",
        a.to_str().unwrap(),
        "--b",
        a.to_str().unwrap(),
        "--diagonal",
        d.to_str().unwrap(),
        "--max-arity",
        "4",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["basis"].as_array().unwrap().len(), 4);
}

#[test]
fn kontsevich_and_tensor_formula_on_theta() {
    let (q, g, d) = (
        fixture("algebra_field.json"),
        fixture("graph_theta.json"),
        fixture("diagonal_4.json"),
    );
    let o = run(&[
        "kontsevich",
        "--algebra",
        q.to_str().unwrap(),
        "--graph",
        g.to_str().unwrap(),
        "--seed",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], "-1/1");
    let o = run(&[
        "tensor-formula",
        "--a",
        q.to_str().unwrap(),
        "--b",
        q.to_str().unwrap(),
        "--diagonal",
        d.to_str().unwrap(),
        "--graph",
        g.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["equal"], true);
    assert_eq!(v["lhs"], v["rhs"]);
}

#[test]
fn input_errors_exit_with_two() {
    assert_eq!(
        run(&["freedom", "--arity", "4", "--bogus"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify-diagonal", "/nonexistent/d.json"])
            .status
            .code(),
        Some(2)
    );
    let bad = scratch("bad.json");
    std::fs::write(&bad, "{\"max_arity\": 3}").unwrap();
    let o = run(&["verify-diagonal", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("flags"));
    let (odd, g) = (
        fixture("algebra_dual_odd.json"),
        fixture("graph_theta.json"),
    );
    let o = run(&[
        "kontsevich",
        "--algebra",
        odd.to_str().unwrap(),
        "--graph",
        g.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn broken_diagonals_fail_verification() {
    let text = std::fs::read_to_string(fixture("diagonal_3.json"))
        .unwrap()
        .replacen("-1/2", "1/2", 1);
    let bad = scratch("broken.json");
    std::fs::write(&bad, text).unwrap();
    let o = run(&["verify-diagonal", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}
