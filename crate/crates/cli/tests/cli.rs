use std::process::{Command, Output};

fn cycpres(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cycpres")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(stdout(o).trim()).expect("valid json")
}

#[test]
fn analyze_non_orientable_word() {
    let o = cycpres(&["analyze", "-n", "4", "-w", "x0 x2^-1 x3 x1^-1"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["kind"], "non_orientable");
    assert_eq!(v["rotation"], 1);
    assert_eq!(v["refinement_t"], 2);
}

#[test]
fn analyze_text_mentions_theta_and_phi() {
    let o = cycpres(&["analyze", "-n", "4", "-w", "x0 x2^-1 x3 x1^-1", "-o", "text"]);
    let s = stdout(&o);
    assert!(s.contains("theta^"), "{s}");
    assert!(s.contains("phi^1"), "{s}");
}

#[test]
fn refine_lists_t_relators() {
    let o = cycpres(&["refine", "-n", "6", "-w", "x0 x1 x2 x3 x4 x5"]);
    let v = json(&o);
    assert_eq!(v["t"], 1);
    assert_eq!(v["relators"].as_array().unwrap().len(), 1);
}

#[test]
fn special_heawood_agrees() {
    let o = cycpres(&["special", "-n", "14", "-w", "x0 x1 x10 x7 x8 x3"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!((v["m"].as_u64(), v["k"].as_u64(), v["nu"].as_u64()), (Some(3), Some(6), Some(2)));
    assert_eq!(v["theorem_checker"]["name"], "three_k_nu");
    assert_eq!(v["witness"]["modulus"], 7);
}

#[test]
fn special_by_fixture_name() {
    let o = cycpres(&["special", "--fixture", "non-orientable-6", "-o", "text"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("(2,6,2)-special"));
}

#[test]
fn stargraph_dot_and_json() {
    let o = cycpres(&["stargraph", "-n", "2", "-w", "x0 x1", "-o", "dot"]);
    assert!(stdout(&o).starts_with("graph star {"));
    let o = cycpres(&["stargraph", "-n", "2", "-w", "x0 x1"]);
    let v = json(&o);
    assert_eq!(v["components"], 2);
    assert!(v["girth"].is_null());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(cycpres(&["analyze", "-n", "0", "-w", "x0"]).status.code(), Some(2));
    assert_eq!(cycpres(&["analyze", "-n", "3", "-w", "y7"]).status.code(), Some(2));
    assert_eq!(cycpres(&["analyze", "-n", "3"]).status.code(), Some(2));
    assert_eq!(cycpres(&["search", "--n-range", "5..2"]).status.code(), Some(2));
    assert_eq!(cycpres(&["special", "--fixture", "nope"]).status.code(), Some(2));
    assert_eq!(cycpres(&["analyze", "-n", "3", "-w", "x0", "-o", "dot"]).status.code(), Some(2));
}

#[test]
fn budget_exhaustion_is_a_usage_error() {
    let o = cycpres(&["search", "--n-range", "1..6", "--k-range", "1..6", "--budget", "10"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn search_emits_hits_and_trailer() {
    let o = cycpres(&["search", "--n-range", "6..6", "--k-range", "6..6", "--up-to-symmetry"]);
    assert!(o.status.success());
    let lines: Vec<serde_json::Value> =
        stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let last = lines.last().unwrap();
    assert_eq!(last["type"], "summary");
    assert_eq!(last["hits"].as_u64().unwrap() as usize, lines.len() - 1);
    assert!(lines[..lines.len() - 1].iter().all(|l| l["type"] == "hit"));
}

#[test]
fn crossvalidate_small_range_is_clean() {
    let o = cycpres(&[
        "search", "--n-range", "1..4", "--k-range", "1..4", "--up-to-symmetry", "--crossvalidate",
    ]);
    assert!(o.status.success(), "{}", stdout(&o));
    let out = stdout(&o);
    let last: serde_json::Value = serde_json::from_str(out.lines().last().unwrap()).unwrap();
    assert_eq!(last["type"], "summary");
}
