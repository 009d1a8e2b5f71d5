use std::path::PathBuf;
use std::process::{Command, Output};

use jsonschema::JSONSchema;
use serde_json::Value;

fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn tdkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tdkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn schema(name: &str) -> JSONSchema {
    let path = manifest_dir().join("schemas").join(format!("{name}.schema.json"));
    let text = std::fs::read_to_string(&path).expect("schema file");
    let doc: Value = serde_json::from_str(&text).expect("schema json");
    JSONSchema::compile(&doc).expect("valid schema")
}

fn assert_valid(name: &str, v: &Value) {
    let s = schema(name);
    let msgs: Vec<String> = match s.validate(v) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| format!("{e} at {}", e.instance_path)).collect(),
    };
    panic!("{name} output fails schema: {msgs:?}\n{v}");
}

/// Runs, checks the exit code and validates stdout against the schema.
fn json_of(schema_name: &str, args: &[&str], code: i32) -> Value {
    let out = tdkit(args);
    assert_eq!(out.status.code(), Some(code), "args {args:?}, stderr {}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1, "single-line JSON");
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_valid(schema_name, &v);
    v
}

fn error_of(args: &[&str], code: i32) -> Value {
    let out = tdkit(args);
    assert_eq!(out.status.code(), Some(code), "args {args:?}");
    assert!(out.stdout.is_empty());
    let text = String::from_utf8(out.stderr).unwrap();
    assert_eq!(text.lines().count(), 1, "single-line error: {text}");
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_valid("error", &v);
    v
}

fn dual_dir() -> String {
    manifest_dir().join("tests/data/dual").to_string_lossy().into_owned()
}

#[test]
fn td_path() {
    let v = json_of("td", &["td", "named:P_4"], 0);
    assert_eq!(v["treedepth"], 3);
    assert_eq!(v["witness"]["height"], 3);
}

#[test]
fn size_refusal_exits_3() {
    let v = error_of(&["td", "--exact-limit", "5", "named:K_8"], 3);
    assert_eq!(v["error"], "size_limit");
}

#[test]
fn usage_errors_exit_2() {
    error_of(&["nosuch"], 2);
    error_of(&["td"], 2);
    error_of(&["td", "--bogus", "named:K_3"], 2);
    error_of(&["td", "named:NotAGraph"], 2);
    error_of(&["td", "/nonexistent/graph.el"], 2);
    error_of(&["dncolor", "-n", "2", "named:P_5"], 2);
}

#[test]
fn count_triangles_in_petersen() {
    let v = json_of("count", &["count", "--pattern", "named:K_3", "named:Petersen"], 0);
    assert_eq!(v["count"], 0);
    let v = json_of("count", &["count", "--pattern", "named:P_3", "--mode", "induced", "named:C_5"], 0);
    assert_eq!(v["count"], 5);
    let v = json_of(
        "count",
        &["count", "--pattern", "named:C_4", "--method", "bruteforce", "named:K_4"],
        0,
    );
    assert_eq!(v["count"], 3);
}

#[test]
fn decompose_then_verify() {
    let v = json_of("decompose", &["decompose", "-p", "3", "named:grid(4,4)"], 0);
    assert_eq!(v["verified"], true);
    let dir = std::env::temp_dir().join(format!("tdkit-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("d.json");
    std::fs::write(&file, v.to_string()).unwrap();
    let f = file.to_string_lossy().into_owned();
    let ok = json_of("verify-ltd", &["verify-ltd", "--decomposition", &f, "named:grid(4,4)"], 0);
    assert_eq!(ok["verdict"]["status"], "holds");
    // a constant coloring of a path on 4 vertices fails for p = 1
    std::fs::write(&file, r#"{"p": 1, "colors": [0, 0, 0, 0]}"#).unwrap();
    let bad = json_of("verify-ltd", &["verify-ltd", "--decomposition", &f, "named:P_4"], 1);
    assert_eq!(bad["verdict"]["status"], "violated");
    assert_eq!(bad["verdict"]["detail"], serde_json::json!([0]));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn density_measures() {
    let v = json_of("density", &["density", "--measure", "grad", "-r", "1", "named:Petersen"], 0);
    assert_eq!(v["value"], "2/1");
    let v = json_of("density", &["density", "--measure", "topgrad", "-r", "0", "named:K_4"], 0);
    assert_eq!(v["value"], "3/2");
    let v = json_of("density", &["density", "--measure", "immgrad", "-r", "1", "named:C_5"], 0);
    assert_eq!(v["value"], "1/1");
}

#[test]
fn density_profile_csv_and_json() {
    let out = tdkit(&["density-profile", "--family", "subdivided_cliques:1", "--sizes", "3,4"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("size,n,m,top_grad,exact,log_density,minor_log_density\n"));
    assert_eq!(text.lines().count(), 3);
    let v = json_of(
        "density-profile",
        &["density-profile", "--family", "grids", "--sizes", "2,3", "--format", "json"],
        0,
    );
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);
}

#[test]
fn applications_commands() {
    let v = json_of("dncolor", &["dncolor", "-n", "3", "named:C_6"], 0);
    assert_eq!(v["palette"], 2);
    let v = json_of("cover", &["cover", "-r", "2", "named:grid(4,4)"], 0);
    assert_eq!(v["verified"], true);
    let v = json_of("oddset", &["oddset", "named:K_4"], 0);
    assert_eq!(v["size"], 4);
    let v = json_of("choosable", &["choosable", "-k", "2", "named:C_4"], 0);
    assert_eq!(v["choosable"], true);
    let v = json_of("choosable", &["choosable", "-k", "2", "named:K_{2,4}"], 0);
    assert_eq!(v["choosable"], false);
    let v = json_of("scan", &["scan", "--s", "5", "--t", "4", "--q", "2", "named:C_7"], 0);
    assert_eq!(v["path"]["present"], true);
    assert_eq!(v["clique"]["present"], false);
}

#[test]
fn homomorphism_commands() {
    let v = json_of("hom", &["hom", "named:K_3", "named:Clebsch"], 0);
    assert_eq!(v["answer"], "no");
    let v = json_of("hom", &["hom", "named:C_5", "named:K_3"], 0);
    assert_eq!(v["answer"], "yes");
    let v = json_of("hom", &["hom", "--budget", "1", "named:Petersen", "named:K_3"], 4);
    assert_eq!(v["answer"], "indeterminate");
    let v = json_of("core", &["core", "named:C_6"], 0);
    assert_eq!(v["size"], 2);
    let dir = dual_dir();
    let v = json_of(
        "dual-check",
        &["dual-check", "--pattern", "named:K_3", "--dual", "named:Clebsch", &dir],
        0,
    );
    assert_eq!(v["violations"], 0);
    // K_4 is no dual for K_3: C_5 is triangle-free but maps to K_4
    let v = json_of(
        "dual-check",
        &["dual-check", "--pattern", "named:K_3", "--dual", "named:K_4", &dir],
        1,
    );
    assert!(v["holds"] == false);
}

#[test]
fn gen_is_reproducible() {
    let a = tdkit(&["gen", "random_tree(10, 7)"]);
    let b = tdkit(&["gen", "random_tree(10,7)"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(tdkit(&["gen", "named:Clebsch"]).stdout).unwrap();
    let edges = text.lines().filter(|l| !l.starts_with('#')).count();
    assert_eq!(edges, 40);
    let v = json_of("gen", &["gen", "named:Petersen", "--format", "json"], 0);
    assert_eq!(v["edges"].as_array().unwrap().len(), 15);
}

#[test]
fn file_and_stdin_inputs_agree() {
    let path = manifest_dir().join("tests/data/dual/c7.el");
    let p = path.to_string_lossy().into_owned();
    let from_file = tdkit(&["td", &p]).stdout;
    let from_name = tdkit(&["td", "named:C_7"]).stdout;
    assert_eq!(from_file, from_name);
    let mut child = Command::new(env!("CARGO_BIN_EXE_tdkit"))
        .args(["td", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write;
    child
        .stdin
        .take()
        .unwrap()
        .write_all(&std::fs::read(&path).unwrap())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.stdout, from_name);
}

#[test]
fn text_format_lists_fields() {
    let out = tdkit(&["oddset", "named:K_3", "--format", "text"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "size: 3\nvertices: [0,1,2]\n");
}
