use std::fs;

use serde_json::Value;
use threefold_cli::run_command;

fn run(args: &[&str]) -> (i32, Value, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv: Vec<String> = std::iter::once("threefold").chain(args.iter().copied()).map(String::from).collect();
    let code = run_command(argv, &mut out, &mut err);
    let text = String::from_utf8(out).unwrap();
    let value = serde_json::from_str(&text).unwrap_or(Value::Null);
    (code, value, String::from_utf8(err).unwrap())
}

fn fermat_file(dir: &tempfile::TempDir) -> String {
    let path = dir.path().join("fermat.txt");
    fs::write(&path, "# Fermat cubic\nz0^3+z1^3+z2^3+z3^3+z4^3\n").unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn ring_over_rationals() {
    let dir = tempfile::tempdir().unwrap();
    let (code, v, _) = run(&["ring", "--cubic", &fermat_file(&dir), "--field", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["dims"], serde_json::json!([1, 5, 10, 10, 5, 1]));
    assert_eq!(v["dim_r6"], 0);
    assert_eq!(v["smooth"], true);
}

#[test]
fn classify_fermat_line() {
    let dir = tempfile::tempdir().unwrap();
    let (code, v, _) = run(&["classify", "--cubic", &fermat_file(&dir), "--line", "1,0,0,0,0;0,1,0,0,0", "--field", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["in_v"], false);
    assert_eq!(v["type"], "second");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "z0^2 + z1^3").unwrap();
    let (code, v, _) = run(&["ring", "--cubic", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(v["reason"], "parse");

    let (code, _, err) = run(&["frobnicate"]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());

    let (code, v, _) = run(&["ring", "--cubic", &fermat_file(&dir), "--field", "9x"]);
    assert_eq!((code, v["reason"].as_str()), (2, Some("usage")));

    let (code, v, _) = run(&["census", "--cubic", &fermat_file(&dir), "--field", "0"]);
    assert_eq!((code, v["reason"].as_str()), (1, Some("finite_field_required")));

    let (code, v, _) = run(&["dphi", "--cubic", &fermat_file(&dir), "--field", "7"]);
    assert_eq!((code, v["reason"].as_str()), (1, Some("not_normalized")));

    let (code, v, _) = run(&["xi", "--cubic", &fermat_file(&dir), "--field", "7", "--xi", "z0^3"]);
    assert_eq!((code, v["reason"].as_str()), (1, Some("zero_class")));

    let singular = "z0^3 + z1^3 + z2^3 + z3^3";
    let (code, v, _) = run(&["adjoint", "--cubic", singular, "--field", "7", "--xi", "z2*z3*z4"]);
    assert_eq!((code, v["reason"].as_str()), (1, Some("singular_cubic")));

    let (code, v, _) = run(&["ring", "--cubic", singular, "--field", "3"]);
    assert_eq!((code, v["reason"].as_str()), (2, Some("characteristic")));
    let (code, _, _) = run(&["ring", "--cubic", singular, "--field", "3", "--allow-small-char"]);
    assert_eq!(code, 0);
}

#[test]
fn census_out_file_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let base = ["census", "--cubic", "random", "--field", "5", "--seed", "11", "--tasks", "lines,sigma,double,eckardt", "--quiet"];
    let mut args = base.to_vec();
    args.extend(["--workers", "1", "--out", out.to_str().unwrap()]);
    let (code, v, err) = run(&args);
    assert_eq!(code, 0);
    assert_eq!(v, Value::Null, "report goes to the file, not stdout");
    assert!(err.is_empty());
    let one = fs::read_to_string(&out).unwrap();
    for w in ["2", "8"] {
        let mut args = base.to_vec();
        args.extend(["--workers", w, "--out", out.to_str().unwrap()]);
        assert_eq!(run(&args).0, 0);
        assert_eq!(fs::read_to_string(&out).unwrap(), one);
    }
    let v: Value = serde_json::from_str(&one).unwrap();
    assert_eq!(v["seed"], 11);
    assert_eq!(v["counts"]["lines_scanned"], 20306);
    assert_eq!(v["counts"]["double_by_type"], v["counts"]["double_by_witness"]);
    assert_eq!(v["classical_constants"]["double_curve_degree"], 90);
    assert_eq!(v["timing"], Value::Null);
}

#[test]
fn geometry_commands_on_fermat() {
    let dir = tempfile::tempdir().unwrap();
    let fermat = fermat_file(&dir);
    let (code, v, _) = run(&["adjoint", "--cubic", &fermat, "--field", "7", "--xi", "z2*z3*z4", "--meeting-lines"]);
    assert_eq!(code, 0);
    assert_eq!(v["vanishes"], false);
    assert_eq!(v["meeting_lines"]["flag"], "eckardt_family");

    let (code, v, _) = run(&["eckardt", "--cubic", &fermat, "--field", "7", "--quiet"]);
    assert_eq!((code, v["count"].as_u64()), (0, Some(30)));
    let (code, v, _) = run(&["eckardt", "--cubic", &fermat, "--field", "7", "--point", "1,6,0,0,0", "--lines"]);
    assert_eq!(code, 0);
    assert_eq!(v["is_eckardt"], true);
    assert_eq!(v["lines_through"]["eckardt"], true);

    let (code, v, _) = run(&["section", "--cubic", &fermat, "--field", "7", "--plane", "1,1,0,0,0;0,0,1,1,0"]);
    assert_eq!(code, 0);
    assert_eq!(v["lines"][0]["multiplicity"], 3);

    let (code, v, _) = run(&["hessian", "--cubic", &fermat, "--field", "7"]);
    assert_eq!((code, v["hessian"].as_str()), (0, Some("6*z0*z1*z2*z3*z4")));

    let (code, v, _) = run(&["xi", "--cubic", &fermat, "--field", "7", "--line", "1,0,0,0,0;0,1,0,0,0"]);
    assert_eq!(code, 0);
    assert_eq!(v["rank"], 2);
    assert_eq!(v["primitive"]["decomposable"], true);
}

#[test]
fn reconstruct_from_line_file() {
    let dir = tempfile::tempdir().unwrap();
    let lines = dir.path().join("lines.txt");
    fs::write(&lines, "1,6,0,0,0;0,0,1,6,0\n# comment\n\n1,6,0,0,0;0,0,1,0,6\n").unwrap();
    let (code, v, _) = run(&["reconstruct", "--cubic", &fermat_file(&dir), "--field", "7", "--lines", lines.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["lines"], 2);
    assert_eq!(v["insufficient_sample"], true);
    assert_eq!(v["contains_source"], true);
}
