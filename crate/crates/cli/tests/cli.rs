use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_formality"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let out = bin().arg("--json").args(args).output().expect("binary runs");
    let text = String::from_utf8(out.stdout).unwrap();
    let v = serde_json::from_str(&text).unwrap_or_else(|e| panic!("bad JSON ({e}): {text}"));
    (out.status.code().unwrap(), v)
}

fn write(name: &str, v: &Value) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("formality-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
    p
}

fn s(p: &PathBuf) -> &str {
    p.to_str().unwrap()
}

#[test]
fn heisenberg_massey_product() {
    let (code, v) = run_json(&["cdga", "massey", "--builtin", "heisenberg", "--triple", "0,0,1"]);
    assert_eq!(code, 0);
    let p = &v["products"][0];
    assert_eq!(p["defined"], true);
    assert_eq!(p["vanishes"], false);
    assert_eq!(p["representative"], "az");
    assert_eq!(p["indeterminacy_dim"], 0);
}

#[test]
fn heisenberg_cdga_from_file() {
    // basis 1 | a b z | ab az bz | abz with dz = ab
    let cdga = json!({
        "degrees": { "1": 0, "a": 1, "b": 1, "z": 1, "ab": 2, "az": 2, "bz": 2, "abz": 3 },
        "diff": { "1": { "rows": 3, "cols": 3, "entries": [[0, 0, 1], [0, 0, 0], [0, 0, 0]] },
                  "2": { "rows": 1, "cols": 3, "entries": [[0, 0, 0]] } },
        "mult": [
            [1, 2, [[4, 1]]], [2, 1, [[4, -1]]],
            [1, 3, [[5, 1]]], [3, 1, [[5, -1]]],
            [2, 3, [[6, 1]]], [3, 2, [[6, -1]]],
            [1, 6, [[7, 1]]], [6, 1, [[7, 1]]],
            [2, 5, [[7, -1]]], [5, 2, [[7, -1]]],
            [3, 4, [[7, 1]]], [4, 3, [[7, 1]]]
        ]
    });
    let p = write("heisenberg.json", &cdga);
    let (code, v) = run_json(&["cdga", "cohomology", "--cdga", s(&p)]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["betti"], json!([1, 2, 2, 1]));
    assert_eq!(v["cup"]["mu"], json!({}));
    let (code, v) = run_json(&["analyze", "--cdga", s(&p)]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "non-formal");
    assert_eq!(v["facts"]["one_formal"], false);
}

#[test]
fn invalid_cdga_is_a_validation_error() {
    let cdga = json!({
        "degrees": { "1": 0, "a": 1, "b": 1, "ab": 2 },
        "mult": [[1, 2, [[3, 1]]], [2, 1, [[3, 1]]]]
    });
    let p = write("bad.json", &cdga);
    let out = run(&["cdga", "validate", "--cdga", s(&p)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("commutativ"));
}

#[test]
fn malformed_input_exits_with_two() {
    let p = write("junk.json", &json!({ "rows": 2 }));
    assert_eq!(run(&["linalg", "snf", "--matrix", s(&p)]).status.code(), Some(2));
    assert_eq!(run(&["linalg", "snf", "--matrix", "/nonexistent/m.json"]).status.code(), Some(2));
}

#[test]
fn snf_and_cokernel() {
    let p = write("m.json", &json!({ "rows": 2, "cols": 2, "entries": [[2, 4], [6, "8"]] }));
    let (code, v) = run_json(&["linalg", "snf", "--matrix", s(&p)]);
    assert_eq!(code, 0);
    assert_eq!(v["divisors"], json!([2, 4]));
    let (_, v) = run_json(&["linalg", "cokernel", "--matrix", s(&p)]);
    assert_eq!(v["text"], "Z/2 ⊕ Z/4");
}

#[test]
fn rule_engine_examples() {
    let (code, v) = run_json(&["infer", "--fact", "commutator_relators=true", "--fact", "cup_zero=true", "--fact", "free=false"]);
    assert_eq!(code, 0);
    assert_eq!(v["facts"]["one_formal"], false);
    assert_eq!(v["derived"][0]["chain"], json!(["R4"]));

    let facts = write("r8.json", &json!({
        "closed_orientable_3mfld": true, "b1_even": true, "one_formal": true, "fibers_over_circle": true
    }));
    let (code, v) = run_json(&["infer", "--facts", s(&facts), "--cite"]);
    assert_eq!(code, 4);
    assert_eq!(v["contradictions"][0]["rule"], "R8");
    assert!(v["contradictions"][0]["citation"]["statement"].as_str().is_some_and(|x| !x.is_empty()));
}

#[test]
fn inconsistent_facts_are_rejected() {
    let out = run(&["infer", "--fact", "one_formal=true", "--fact", "one_formal=false"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn torus_family_and_sweep() {
    let (code, v) = run_json(&["torus", "family", "--g", "3", "--n", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["h1"]["text"], "Z^2 ⊕ Z/5 ⊕ Z/5 ⊕ Z/5");
    assert_eq!(v["quasi_kahler_obstruction"]["obstructed"], true);
    let (code, v) = run_json(&["torus", "sweep", "--g-max", "2", "--n-max", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["rows"].as_array().unwrap().len(), 10);
    assert_eq!(v["pairwise_distinct"], true);
    let out = run(&["torus", "sweep", "--g-max", "5", "--n-max", "20", "--budget", "10"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn monodromy_analysis() {
    let heis = write("heis.json", &json!({ "rows": 2, "cols": 2, "entries": [[1, 1], [0, 1]] }));
    let (code, v) = run_json(&["torus", "analyze", "--matrix", s(&heis)]);
    assert_eq!(code, 0);
    assert_eq!(v["jordan_at_one"], "block_of_size_ge_two");
    assert_eq!(v["jordan_obstruction"], true);
    assert_eq!(v["h1"]["text"], "Z^2");
    let (_, v) = run_json(&["analyze", "--matrix", s(&heis)]);
    assert_eq!(v["verdict"], "non-formal");

    let a2 = write("a2.json", &json!({ "rows": 2, "cols": 2, "entries": [[4, -1], [1, 0]] }));
    let (_, v) = run_json(&["analyze", "--matrix", s(&a2), "--cite"]);
    let findings = v["findings"].as_array().unwrap();
    assert!(findings.iter().any(|f| f["statement"].as_str().unwrap().contains("no Kähler metric")
        && f["citation"].as_str().is_some()));
}

#[test]
fn holonomy_ranks_and_budgets() {
    let cup = write("surface2.json", &json!({
        "b1": 4, "b2": 1, "mu": { "0,1": [1], "2,3": [1] }
    }));
    let (code, v) = run_json(&["holonomy", "ranks", "--cup", s(&cup), "--max-degree", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["ranks"], json!([4, 5, 16]));
    let (_, v) = run_json(&["holonomy", "ranks", "--builtin", "wedge:3", "--max-degree", "4"]);
    assert_eq!(v["ranks"], json!([3, 3, 8, 18]));
    // core budget and user budget both exit with 3
    assert_eq!(run(&["holonomy", "ranks", "--builtin", "wedge:10", "--max-degree", "8"]).status.code(), Some(3));
    assert_eq!(run(&["holonomy", "ranks", "--builtin", "wedge:3", "--budget", "5"]).status.code(), Some(3));
}

#[test]
fn graph_commands() {
    let (_, v) = run_json(&["graph", "classify-raag", "--named", "complete:4"]);
    assert_eq!((v["quasi_kahler"].clone(), v["kahler"].clone()), (json!(true), json!(true)));
    let (_, v) = run_json(&["graph", "classify-bb", "--named", "complete:5", "--cite"]);
    assert_eq!(v["kahler"], true);
    assert!(v["citation"].is_string());
    let (_, v) = run_json(&["graph", "classify-raag", "--named", "path:4"]);
    assert_eq!(v["quasi_kahler"], false);

    let (code, v) = run_json(&["graph", "subdivide", "--rp2"]);
    assert_eq!(code, 0);
    assert_eq!(v["flag"], true);
    let g = write("rp2graph.json", &v["graph"]);
    let (_, v) = run_json(&["graph", "artin-kernel", "--graph", s(&g)]);
    assert_eq!(v["verdict"], "one_formal");
    assert_eq!(v["torsion_warning"], true);
    assert_eq!(v["integral_h1"]["text"], "Z/2");

    let (_, v) = run_json(&["graph", "artin-kernel", "--named", "cycle:4"]);
    assert_eq!(v["verdict"]["criterion_fails"]["degree"], 1);
    let out = run(&["graph", "classify-bb", "--named", "empty:3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn resonance_commands() {
    let (_, v) = run_json(&["resonance", "member", "--builtin", "torus:3", "--point", "1,2,-1/3"]);
    assert_eq!(v["member"], false);
    let (_, v) = run_json(&["resonance", "member", "--builtin", "wedge:3", "--point", "1,0,0", "--depth", "2"]);
    assert_eq!(v["member"], true);

    let whole = write("whole4.json", &json!({ "ambient": 4, "basis": [[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]] }));
    let cup = write("surface2b.json", &json!({ "b1": 4, "b2": 1, "mu": { "0,1": [1], "2,3": [1] } }));
    let (_, v) = run_json(&["resonance", "component", "--cup", s(&cup), "--subspace", s(&whole)]);
    assert_eq!(v["contained"], true);
    assert_eq!(v["isotropicity"], "1-isotropic");
    let (_, v) = run_json(&["resonance", "position", "--cup", s(&cup), "--components", s(&whole)]);
    assert_eq!(v["verdict"], "pass");
    let (_, v) = run_json(&["resonance", "sigma", "--cup", s(&cup)]);
    assert_eq!(v["kind"], "empty");

    let alex = write("alex.json", &json!({ "vars": 2, "terms": [
        { "exp": [0, 0], "coeff": 1 }, { "exp": [1, 0], "coeff": 1 }, { "exp": [0, 1], "coeff": 1 }
    ] }));
    let (_, v) = run_json(&["resonance", "alexander", "--poly", s(&alex)]);
    assert_eq!(v["single_variable"], false);
}

#[test]
fn analyze_position_failure_with_one_formal_input() {
    let cup = write("free2.json", &json!({ "b1": 2, "b2": 0 }));
    let comp = write("line.json", &json!([{ "ambient": 2, "basis": [[1, 0]] }]));
    let out = bin()
        .args(["--json", "analyze", "--cup", s(&cup), "--components", s(&comp)])
        .args(["--fact", "quasi_kahler_group=true", "--fact", "one_formal=true"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "not-quasi-kahler");
    assert_eq!(v["contradictions"][0]["rule"], "R6");
}

#[test]
fn text_output_mentions_verdict() {
    let out = run(&["analyze", "--builtin", "heisenberg"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("verdict: non-formal"), "{text}");
}
