use std::io::Write;
use std::process::{Command, Output, Stdio};

fn gmatk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gmatk")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_gmatk"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

#[test]
fn fano_whitney_numbers() {
    let out = gmatk(&["matroid", "--named", "fano"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("Whitney:    (1, 7, 7, 1)"), "{text}");
    assert!(text.contains("rank:       3"));
}

#[test]
fn four_cycle_with_chord_lattice() {
    let out = gmatk(&["matroid", "--named", "example-2-1", "--lattice"]);
    let text = stdout(&out);
    assert!(text.contains("(1, 5, 6, 1)"));
    assert!(text.contains("rank 2 flats: {0,1,2} {0,3} {1,3} {0,4} {1,4} {2,3,4}"), "{text}");

    let out = gmatk(&["matroid", "--named", "example-2-1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["whitney"], serde_json::json!([1, 5, 6, 1]));
}

#[test]
fn trampoline_is_not_strongly_chordal() {
    let out = gmatk(&["chordality", "--named", "trampoline3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("chordal: yes"));
    assert!(text.contains("strongly chordal: no"));
    assert!(text.contains("induced trampoline: n = 3"));
    assert!(text.contains("MAT-labeling: none"));
    assert!(text.contains("quadratic: yes"));
}

#[test]
fn broken_trampoline_gets_labels() {
    let out = gmatk(&["chordality", "--named", "broken-trampoline3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["graph"]["strongly_chordal"], true);
    assert_eq!(v["graph"]["seeo_verified"], true);
    assert!(v["graph"]["mat_labeling"].is_object() || v["graph"]["mat_labeling"].is_array());

    let out = gmatk(&["chordality", "--named", "broken-trampoline3", "--format", "dot"]);
    assert!(stdout(&out).starts_with("graph G {"));
}

#[test]
fn betsy_ross_is_quadratic_but_not_c_chordal() {
    let text = stdout(&gmatk(&["chordality", "--named", "betsy-ross"]));
    assert!(text.contains("C-chordal: no"), "{text}");
    assert!(text.contains("quadratic: yes"), "{text}");
}

#[test]
fn ag23_exhaustive_search_finds_nothing() {
    let text = stdout(&gmatk(&["groebner", "--named", "ag23", "--strategy", "exhaustive"]));
    assert!(text.contains("outcome: ExhaustedNone"), "{text}");
    assert!(text.contains("orders examined: 362880"), "{text}");
}

#[test]
fn fano_identity_order_is_certified() {
    let text = stdout(&gmatk(&["groebner", "--named", "fano", "--order", "0,1,2,3,4,5,6"]));
    assert!(text.contains("certified: yes"), "{text}");
    assert!(text.contains("21 of degree 2"), "{text}");
}

#[test]
fn uniform_matroid_search_succeeds() {
    let text = stdout(&gmatk(&["groebner", "--named", "u25"]));
    assert!(text.contains("outcome: Found"), "{text}");
}

#[test]
fn random_order_depends_only_on_seed() {
    let a = stdout(&gmatk(&["groebner", "--named", "trampoline3", "--order", "random", "--seed", "7"]));
    let b = stdout(&gmatk(&["groebner", "--named", "trampoline3", "--order", "random", "--seed", "7"]));
    assert_eq!(a, b);
    assert!(a.contains("certified: no"));
}

#[test]
fn bad_order_is_rejected() {
    assert_eq!(gmatk(&["groebner", "--named", "fano", "--order", "0,1,2"]).status.code(), Some(2));
    assert_eq!(gmatk(&["groebner", "--named", "fano", "--order", "0,1,2,3,4,5,5"]).status.code(), Some(2));
}

#[test]
fn trampoline_betti_table() {
    let out = gmatk(&["betti", "--named", "trampoline3", "--steps", "4", "--check-identities"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let row0 = text.lines().find(|l| l.starts_with("0:")).unwrap();
    let nums: Vec<&str> = row0.split_whitespace().skip(2).collect();
    assert_eq!(nums, ["1", "9", "53", "260", "1156"]);
    assert!(text.contains("first nonlinear entry: beta_4,5 = 1"));
    assert!(text.contains("functional equation (n = 3): holds"));
}

#[test]
fn zero_steps_gives_a_single_entry() {
    let out = gmatk(&["betti", "--named", "trampoline3", "--steps", "0", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["table"]["entries"], serde_json::json!([{"i": 0, "j": 0, "beta": 1}]));
}

#[test]
fn degree_cap_below_steps_is_rejected() {
    let out = gmatk(&["betti", "--named", "fano", "--steps", "3", "--degree-cap", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn graph_from_stdin() {
    let out = with_stdin(
        &["matroid", "--input", "-"],
        r#"{"vertices": 4, "edges": [[0,1],[1,2],[2,3],[3,0],[0,2]]}"#,
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("(1, 5, 6, 1)"));
}

#[test]
fn bad_inputs_exit_with_2() {
    assert_eq!(gmatk(&["matroid", "--named", "nope"]).status.code(), Some(2));
    assert_eq!(gmatk(&["matroid"]).status.code(), Some(2));
    assert_eq!(gmatk(&["--char", "4", "matroid", "--named", "fano"]).status.code(), Some(2));
    assert_eq!(gmatk(&["chordality", "--named", "fano", "--format", "dot"]).status.code(), Some(2));
    assert_eq!(gmatk(&["reproduce-paper", "--criteria", "12"]).status.code(), Some(2));
    assert_eq!(with_stdin(&["matroid", "--input", "-"], "{\"x\": 1}").status.code(), Some(2));
}

#[test]
fn reproduce_selected_criteria() {
    let out = gmatk(&["reproduce-paper", "--criteria", "3", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["criteria"][0]["id"], 3);
}
