use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn sc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sc")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn triangle() -> String {
    let path = scratch("tri.txt");
    fs::write(&path, "a b\nb c\na c\n").unwrap();
    path.to_string_lossy().into_owned()
}

fn without_time(text: &str) -> serde_json::Value {
    let mut v: serde_json::Value = serde_json::from_str(text).unwrap();
    v["report"]["wall_time"] = serde_json::Value::Null;
    v
}

#[test]
fn validate_prints_the_answer() {
    let tri = triangle();
    let o = sc(&["validate", &tri, "--set", "a,b", "--type", "sc", "--source", "a"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "false\n");
    let o = sc(&["validate", &tri, "--set", "a,b,c", "--type", "wc"]);
    assert_eq!(stdout(&o), "true\n");
}

#[test]
fn binary_search_on_the_triangle() {
    let o = sc(&["hierarchy", &triangle(), "--mode", "binary", "--step", "1/9"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("h = 2\n"));
}

#[test]
fn parametric_counter_identity_on_karate() {
    let out = scratch("karate.json");
    let o = sc(&["hierarchy", &data("karate.gml"), "--best-modularity", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    let h = v["h"].as_u64().unwrap();
    assert_eq!(v["cutc_calls"].as_u64().unwrap(), 2 * (h - 2) + 1);
    assert_eq!(v["format_version"], 1);
    assert!(v["best_modularity_level"].is_u64());
}

#[test]
fn tree_then_query() {
    let tree = scratch("lesmis.tree");
    let o = sc(&["tree", &data("lesmis.gml"), "--out", tree.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("flow_count = 76\n"));

    let anchor = scratch("anchor.txt");
    fs::write(&anchor, "# Myriel's circle\nMyriel\nMlleBaptistine\nMmeMagloire\n").unwrap();
    let arg = format!("@{}", anchor.display());
    let o = sc(&["query", "max-clustering", tree.to_str().unwrap(), "--anchor", &arg, "--source", "Myriel", "--out", "-"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = without_time(&stdout(&o));
    assert_eq!(v["anchors"][0].as_array().unwrap().len(), 3);
    let again = sc(&["query", "max-clustering", &data("lesmis.gml"), "--anchor", &arg, "--source", "Myriel", "--out", "-"]);
    assert_eq!(without_time(&stdout(&again)), v);

    let o = sc(&["query", "max-clustering", tree.to_str().unwrap(), "--anchor", "Myriel,Valjean", "--source", "Myriel"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("not a source community"));
}

#[test]
fn overlay_with_repeated_anchors() {
    let o = sc(&["query", "overlay", &triangle(), "--anchor", "a", "--anchor", "b", "--anchor", "c"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 3);
}

#[test]
fn bench_emits_csv() {
    let o = sc(&["bench", &data("karate.gml")]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "instance,n,m,h,cutc_calls_param,cutc_calls_binary,time_param,time_binary,factor"
    );
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(&row[..6], ["karate", "34", "78", "4", "5", "27"]);
}

#[test]
fn errors_go_to_stderr() {
    let bad = scratch("bad.txt");
    fs::write(&bad, "a b c d\n").unwrap();
    let o = sc(&["tree", bad.to_str().unwrap()]);
    assert!(!o.status.success());
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
}
