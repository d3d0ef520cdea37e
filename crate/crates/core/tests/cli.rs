use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn embed3(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_embed3"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("embed3-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn corpus_file(name: &str) -> PathBuf {
    let path = scratch(&format!("{}.json", name.replace(['(', ')', ','], "_")));
    let out = embed3(&["corpus", name, "--out", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn certified_tetrahedron_exits_zero_with_certificate() {
    let input = corpus_file("tetrahedron");
    let cert = scratch("tetra-cert.json");
    let out = embed3(&[
        "check",
        input.to_str().unwrap(),
        "--certificate",
        cert.to_str().unwrap(),
        "--format",
        "structured",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["format"], "embed3-report");
    assert_eq!(doc["version"], 1);
    assert_eq!(doc["status"], "EMBEDDABLE_CERTIFIED");
    assert!(doc["verdicts"][0]["certificate"].is_object());
    let verify = embed3(&["verify", cert.to_str().unwrap()]);
    assert_eq!(
        verify.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&verify.stdout)
    );
}

#[test]
fn cone_exits_two_with_locality_witness() {
    let input = corpus_file("cone(K5)");
    let out = embed3(&[
        "check",
        input.to_str().unwrap(),
        "--field",
        "gf3",
        "--format",
        "structured",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    let v = &doc["verdicts"][0];
    assert_eq!(v["field"], "gf3");
    assert_eq!(v["witnesses"]["locality"]["vertex"], "0");
}

#[test]
fn torus_exits_three() {
    let input = corpus_file("torus7");
    let out = embed3(&["check", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stdout).contains("status: INCONCLUSIVE"));
}

#[test]
fn all_fields_mode() {
    let input = corpus_file("octahedron");
    let out = embed3(&[
        "check",
        input.to_str().unwrap(),
        "--field",
        "all",
        "--format",
        "structured",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["verdicts"].as_array().unwrap().len(), 4);
    assert_eq!(doc["dual_matroids_isomorphic"], true);
}

#[test]
fn malformed_input_is_an_error() {
    let bad = scratch("bad.json");
    std::fs::write(&bad, r#"{"vertices": [1, 2], "edges": [[ "a", 1 ]]"#).unwrap();
    let out = embed3(&["check", bad.to_str().unwrap()]);
    assert!(out.status.code().unwrap() >= 10);
    assert!(String::from_utf8_lossy(&out.stderr).contains("malformed"));

    let dangling = scratch("dangling.json");
    std::fs::write(
        &dangling,
        r#"{"vertices": [1, 2, 3], "edges": [["a", 1, 9]], "faces": []}"#,
    )
    .unwrap();
    let out = embed3(&["check", dangling.to_str().unwrap()]);
    assert!(out.status.code().unwrap() >= 10);

    assert!(embed3(&["check", "/nonexistent/file.json"]).status.code().unwrap() >= 10);
    assert!(embed3(&["check", "x", "--format", "yaml"]).status.code().unwrap() >= 10);
    assert!(embed3(&["corpus", "dodecahedron"]).status.code().unwrap() >= 10);
    assert!(embed3(&["frobnicate"]).status.code().unwrap() >= 10);
}

#[test]
fn matroid_subcommand_realizes_inline_matrices() {
    let out = embed3(&[
        "matroid",
        r#"{"field":"gf2","labels":["a","b","c"],"rows":[[1,1,0],[0,1,1]]}"#,
        "--realize",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["rank"], 2);
    assert_eq!(doc["graphic"], true);
    assert_eq!(doc["graph"]["vertices"].as_array().unwrap().len(), 3);

    let out = embed3(&[
        "matroid",
        r#"{"field":"gf3","rows":[[1,0,1,1],[0,1,1,2]]}"#,
        "--realize",
    ]);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["graphic"], false);
}

#[test]
fn matroid_and_maclane_accept_complex_files() {
    let input = corpus_file("octahedron");
    let out = embed3(&["matroid", input.to_str().unwrap(), "--field", "rational"]);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["rank"], 1);
    assert_eq!(doc["elements"].as_array().unwrap().len(), 8);

    let out = embed3(&["maclane", input.to_str().unwrap(), "--field", "gf5"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["graphic"], true);
    assert_eq!(doc["sparse_family"]["vectors"].as_array().unwrap().len(), 2);
}

#[test]
fn corpus_output_parses_back() {
    let out = embed3(&["corpus", "suspension-of-cycle(5)"]);
    assert!(out.status.success());
    let c = embed3::parse_complex(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!((c.vertex_count(), c.edge_count(), c.face_count()), (7, 15, 10));
}
