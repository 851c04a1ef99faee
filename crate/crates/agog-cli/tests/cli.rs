//! End-to-end CLI checks: exit codes, deterministic machine output, and
//! the documented document formats.

use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> String {
    format!("{}/corpus/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn agog(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_agog"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn vrc_is_deterministic_and_exits_zero() {
    let input = corpus("gk2.json");
    let run = || agog(&["vrc", "--input", &input, "--format", "json", "--quiet"]);
    let a = run();
    let b = run();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b), "machine output must be byte-identical");
    let v: serde_json::Value = serde_json::from_str(stdout(&a).trim()).unwrap();
    assert_eq!(v["status"], "NOT_VRC");
    assert_eq!(v["certificate"]["type"], "gram_infeasible");
}

#[test]
fn unknown_is_exit_zero() {
    let input = corpus("gersten.json");
    let out = agog(&["vrc", "--input", &input, "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["status"], "UNKNOWN");
}

#[test]
fn malformed_input_is_exit_two() {
    let dir = std::env::temp_dir().join("agog-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let bad: PathBuf = dir.join("bad.json");
    std::fs::write(&bad, "{\"vertices\": 3}").unwrap();
    let out = agog(&["vrc", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());

    let missing = dir.join("does-not-exist.json");
    let out = agog(&["validate", "--input", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn family_command_matches_closed_forms() {
    let out = agog(&["family", "--name", "bs", "--k", "2", "--l", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["vrc"], false);
    assert_eq!(v["lr"], false);

    let out = agog(&["family", "--name", "gk", "--k", "-4", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "negative parameters must parse");
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["vrc"], false);
    assert_eq!(v["virtually_free_by_cyclic"], false);

    let out = agog(&["family", "--name", "hk", "--k", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["vrc"], true);
    assert_eq!(v["has_encoding"], false);
}

#[test]
fn reduce_pipeline_round_trips() {
    let graph = corpus("g0.json");
    let word = corpus("word_g0_relator.json");
    let out = agog(&[
        "reduce", "--input", &graph, "--word", &word, "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["trivial"], true);
    assert_eq!(v["length"], 0);

    // Tree letters are rejected with exit 2.
    let dir = std::env::temp_dir().join("agog-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let w = dir.join("tree_letter.json");
    std::fs::write(&w, r#"[{"t": "e_b", "exp": 1}]"#).unwrap();
    let out = agog(&[
        "reduce", "--input", &corpus("raag_path3.json"), "--word", w.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn witness_build_verify_pipeline() {
    let dir = std::env::temp_dir().join("agog-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let graph = corpus("multi_hnn.json");
    let build = agog(&["witness-build", "--input", &graph, "--format", "json"]);
    assert_eq!(build.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&build).trim()).unwrap();
    assert_eq!(v["built"], true);
    let wpath = dir.join("witness.json");
    std::fs::write(&wpath, v["witness"].to_string()).unwrap();

    let verify = agog(&[
        "witness-verify", "--input", &graph, "--witness", wpath.to_str().unwrap(),
        "--format", "json",
    ]);
    assert_eq!(verify.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_str(stdout(&verify).trim()).unwrap();
    assert_eq!(r["passes"], true);

    // The witness feeds the vrc pipeline via --witness.
    let vrc = agog(&[
        "vrc", "--input", &graph, "--witness", wpath.to_str().unwrap(),
        "--format", "json", "--quiet",
    ]);
    let v: serde_json::Value = serde_json::from_str(stdout(&vrc).trim()).unwrap();
    assert_eq!(v["status"], "VRC");
}

#[test]
fn balanced_and_order_and_classify() {
    let out = agog(&["balanced", "--input", &corpus("bs23.json"), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["balanced"], false);

    let dir = std::env::temp_dir().join("agog-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let w = dir.join("letter.json");
    std::fs::write(&w, r#"[{"t": "t", "exp": 1}]"#).unwrap();
    let out = agog(&[
        "order", "--input", &corpus("bs23.json"), "--word", w.to_str().unwrap(),
        "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["order"], "infinity");

    let out = agog(&[
        "classify", "--input", &corpus("bs23.json"), "--word", w.to_str().unwrap(),
        "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["class"], "hyperbolic");
}

#[test]
fn abelianize_reports_canonical_form() {
    let out = agog(&["abelianize", "--input", &corpus("two_vertex_rank5.json"), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["abelianization"]["free_rank"], 3);
    assert_eq!(v["tree"], serde_json::json!(["e1"]));
}

#[test]
fn explicit_tree_file_is_honored() {
    let dir = std::env::temp_dir().join("agog-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let tree = dir.join("tree_e2.json");
    std::fs::write(&tree, r#"["e2"]"#).unwrap();
    let out = agog(&[
        "abelianize", "--input", &corpus("two_vertex_rank5.json"), "--tree", tree.to_str().unwrap(),
        "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["tree"], serde_json::json!(["e2"]));

    // A non-spanning set is rejected.
    let bad = dir.join("tree_e3.json");
    std::fs::write(&bad, r#"["e3"]"#).unwrap();
    let out = agog(&[
        "abelianize", "--input", &corpus("two_vertex_rank5.json"), "--tree", bad.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));

    // --all-trees annotates the notes without changing the verdict.
    let out = agog(&[
        "vrc", "--input", &corpus("two_vertex_rank5.json"), "--all-trees", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["status"], "VRC");
    assert!(v["notes"].as_array().unwrap().iter().any(|n| {
        n.as_str().unwrap().contains("near linear independence")
    }));
}

#[test]
fn validate_reports_violations() {
    let out = agog(&["validate", "--input", &corpus("raag_path3.json"), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["valid"], true);

    // Non-injective edge map.
    let dir = std::env::temp_dir().join("agog-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("noninjective.json");
    std::fs::write(
        &bad,
        r#"{
            "vertices": [
                {"id": "u", "group": {"free_rank": 1, "torsion": [2]}},
                {"id": "w", "group": {"free_rank": 1, "torsion": []}}
            ],
            "edges": [
                {"id": "e", "from": "u", "to": "w",
                 "group": {"free_rank": 1, "torsion": []},
                 "alpha": [[0],[1]], "omega": [[1]]}
            ]
        }"#,
    )
    .unwrap();
    let out = agog(&["validate", "--input", bad.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["valid"], false);
    assert!(v["violations"].as_array().unwrap().iter().any(|x| {
        x.as_str().unwrap().contains("alpha not injective")
    }));
}

#[test]
fn lr_amalgam_from_document() {
    let dir = std::env::temp_dir().join("agog-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let doc = dir.join("amalgam.json");
    std::fs::write(
        &doc,
        r#"{"n": 2, "x": [[0,1],[1,0]], "y": [[-1,0],[2,1]]}"#,
    )
    .unwrap();
    let out = agog(&["lr-amalgam", "--input", doc.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["status"], "NOT_LR");

    let doc2 = dir.join("hnn.json");
    std::fs::write(
        &doc2,
        r#"{"base": {"free_rank": 1, "torsion": []},
            "subgroup": {"free_rank": 1, "torsion": []},
            "embedding": [[3]], "xi": [[-1]]}"#,
    )
    .unwrap();
    let out = agog(&["lr-hnn", "--input", doc2.to_str().unwrap(), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["status"], "LR");
}
