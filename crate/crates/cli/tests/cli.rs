use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name).display().to_string()
}

fn cgt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cgt")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn ct_cmc_s3() {
    let o = cgt(&["ct", "cmc", &data("s3.ct"), "2A", "2A", "3A"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "3");
}

#[test]
fn ct_validate() {
    let o = cgt(&["ct", "validate", &data("s3.ct")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("overall pass"));
    assert!(stdout(&o).contains("1+3+2 = 6"));
    assert_eq!(code(&cgt(&["ct", "validate", "missing.ct"])), 2);
}

#[test]
fn ct_validate_corrupted_table_fails() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(data("s3.ct")).unwrap().replace("IRR 2 : 2 0 -1", "IRR 2 : 2 1 -1");
    let path = dir.path().join("bad.ct");
    std::fs::write(&path, text).unwrap();
    let o = cgt(&["ct", "validate", path.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("row orthogonality"));
}

#[test]
fn ct_decompose_value_and_json() {
    let o = cgt(&["ct", "decompose", &data("th_partial.ct"), "--char", "1"]);
    assert_eq!(code(&o), 2, "decomposition needs a full table");
    let o = cgt(&["--format", "json", "ct", "decompose", &data("a5.ct"), "--sum", "1+3a+3a"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["remainder_zero"], true);
    let o = cgt(&["ct", "value", &data("th_partial.ct"), "--char", "30628", "--class", "2A"]);
    assert_eq!(stdout(&o).trim(), "-92");
    assert_eq!(code(&cgt(&["ct", "value", &data("s3.ct"), "--char", "9", "--class", "2A"])), 2);
}

#[test]
fn ct_product_and_restrict() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s3xs3.ct");
    let o = cgt(&["ct", "product", &data("s3.ct"), &data("s3.ct"), "-o", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(code(&cgt(&["ct", "validate", out.to_str().unwrap()])), 0);
    let o = cgt(&["ct", "restrict", &data("s3.ct"), &data("c3.ct"), &data("c3_s3.fus"), "--char", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("3A       -1"));
}

#[test]
fn pg_orders() {
    assert_eq!(stdout(&cgt(&["pg", "order", &data("psu38.gens")])).trim(), "5515776");
    assert_eq!(stdout(&cgt(&["pg", "order", &data("psl28.gens")])).trim(), "504");
}

#[test]
fn pg_subgroups_min_order() {
    let o = cgt(&["--format", "json", "pg", "subgroups", &data("a5.gens"), "--min-order", "14"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["count"], 1);
    assert_eq!(v["subgroups"][0]["order"], 60);
}

#[test]
fn pg_conjugacy_queries() {
    let a5 = data("a5.gens");
    let o = cgt(&["pg", "conjugate", &a5, "--x", "(1,2,3,4,5)", "--y", "(1,3,5,2,4)"]);
    assert_eq!((code(&o), stdout(&o).trim().to_string()), (0, "not conjugate".to_string()));
    let o = cgt(&["pg", "centralizer", &a5, "--elt", "(1,2,3)"]);
    assert!(stdout(&o).starts_with("order 3"));
    let o = cgt(&["pg", "conjugate", &a5, "--x", "(1,2,3)", "--y", "(1,1,2)"]);
    assert_eq!(code(&o), 2);
    let o = cgt(&["--budget", "2", "pg", "conjugate", &a5, "--x", "(1,2,3,4,5)", "--y", "(1,3,5,2,4)"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget of 2"));
}

#[test]
fn pg_psu38_checks() {
    let g = data("psu38.gens");
    let o = cgt(&["pg", "c9census", &g]);
    assert!(stdout(&o).trim().ends_with("all conjugate"));
    let o = cgt(&["pg", "d18census", &g, "--c9", &data("psu38_c9.gens")]);
    assert!(stdout(&o).contains("count 1"));
    let o = cgt(&["pg", "generate", &g, "--sub", &data("psu38_sub.gens"), "--ext", &data("psu38_ext.gens")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("full group"));
    let o = cgt(&["pg", "generate", &g, "--sub", &data("psu38_sub.gens"), "--ext", "()"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("|<H, t>| = 1512"));
    let o = cgt(&["pg", "sylow3", &g]);
    assert!(stdout(&o).starts_with("order 81"));
}

#[test]
fn pg_small_censuses() {
    let o = cgt(&["pg", "c9census", &data("c9xc3.gens")]);
    assert!(stdout(&o).trim().ends_with("3 classes"));
    let o = cgt(&["pg", "d18census", &data("d18.gens"), "--c9", &data("d18.gens")]);
    assert_eq!(code(&o), 2, "d18.gens does not generate a group of order 9");
    let dir = tempfile::tempdir().unwrap();
    let c9 = dir.path().join("c9.gens");
    std::fs::write(&c9, "DEGREE 9\nGEN (1,2,3,4,5,6,7,8,9)\n").unwrap();
    let o = cgt(&["pg", "d18census", &data("d18.gens"), "--c9", c9.to_str().unwrap()]);
    assert!(stdout(&o).contains("count 1"));
}

#[test]
fn verify_only_c2() {
    let o = cgt(&["verify", "--data", &data(""), "--only", "C2", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["steps"].as_array().unwrap().len(), 1);
    assert_eq!(v["steps"][0]["witnesses"]["bound"], "40/3");
    assert_eq!(v["steps"][0]["witnesses"]["integer bound"], "14");
}

#[test]
fn verify_json_is_byte_identical() {
    let a = cgt(&["verify", "--data", &data(""), "--format", "json", "--seed", "42"]);
    let b = cgt(&["verify", "--data", &data(""), "--format", "json", "--seed", "42"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["overall"], "pass");
    assert_eq!(v["seed"], 42);
}

#[test]
fn verify_errors() {
    let empty = tempfile::tempdir().unwrap();
    assert_eq!(code(&cgt(&["verify", "--data", empty.path().to_str().unwrap()])), 2);
    assert_eq!(code(&cgt(&["verify", "--data", &data(""), "--only", "Q7"])), 2);
    assert_eq!(code(&cgt(&["verify", "--bogus-flag"])), 2);
}
