//! Exit-code and report-shape tests for the `phopf` binary.

use serde_json::Value;
use std::process::{Command, Output};

fn phopf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_phopf"))
        .args(args)
        .output()
        .expect("phopf runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

#[test]
fn audit_reports_chi_and_genus() {
    let out = phopf(&["audit", "klein:4x4"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["command"], "audit");
    assert_eq!(r["results"]["euler"], 0);
    assert_eq!(r["results"]["orientable"], false);
    assert_eq!(r["results"]["genus"], 2);
    assert_eq!(r["pass"], true);
    assert!(r["input"]["digest"].as_str().unwrap().starts_with("sha256:"));
}

#[test]
fn audit_of_invalid_mesh_fails_the_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("disk.off");
    // An open disk: boundary edges have one incident triangle.
    std::fs::write(&path, "OFF\n4 2 0\n0 0 0\n1 0 0\n0 1 0\n1 1 0\n3 0 1 2\n3 1 3 2\n").unwrap();
    let out = phopf(&["audit", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let r = report(&out);
    assert_eq!(r["pass"], false);
    assert_eq!(r["results"]["valid"], false);
    assert!(r["results"]["diagnostic"].as_str().unwrap().contains("incident to 1"));
}

#[test]
fn unparsable_mesh_is_an_input_error() {
    let out = phopf(&["audit", "no_such_mesh_name"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("junk.off");
    std::fs::write(&path, "not an off file").unwrap();
    let out = phopf(&["audit", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn audit_accepts_off_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tet.off");
    let out = phopf(&["cover", "tetrahedron", "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let out = phopf(&["audit", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    // The cover of the (orientable) tetrahedron is two disjoint spheres.
    assert_eq!(r["results"]["euler"], 4);
    assert_eq!(r["results"]["components"], 2);
    assert_eq!(r["results"]["genus"], Value::Null);
}

#[test]
fn hopf_table_matches_chi() {
    let out = phopf(&["hopf", "torus:3x3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["results"]["euler"], 0);
    assert_eq!(r["results"]["total"], 0);
    // K' of an (9, 27, 18) mesh has 54 vertices.
    assert_eq!(r["results"]["entries"].as_array().unwrap().len(), 54);
}

#[test]
fn index_command_checks_two_radii() {
    let out = phopf(&["index", "--field", "conj:2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["results"]["index"], -2);
    assert_eq!(r["results"]["index_at_half_radius"], -2);
    let out = phopf(&["index", "--field", "power:0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn index_command_reads_csv_fields() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("radial.csv");
    let mut rows = String::new();
    for i in 0..256 {
        let t = std::f64::consts::TAU * i as f64 / 256.0;
        for r in [0.2, 0.5, 1.0] {
            let (x, y) = (r * t.cos(), r * t.sin());
            rows.push_str(&format!("{x},{y},{x},{y}\n"));
        }
    }
    std::fs::write(&path, rows).unwrap();
    let out = phopf(&["index", "--field", &format!("csv:{}", path.display())]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["results"]["index"], 1);
}

#[test]
fn degree_s1_agrees_across_algorithms() {
    let out = phopf(&["degree-s1", "--map", "mult:3", "--samples", "128"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["results"]["winding"], 3);
    assert_eq!(r["results"]["crossing_degree"], 3);
    assert_eq!(r["results"]["crossings"].as_array().unwrap().len(), 3);

    let out = phopf(&["degree-s1", "--map", "sine:1.5", "--value", "3.0916"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let signs: Vec<i64> = r["results"]["crossings"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["sign"].as_i64().unwrap())
        .collect();
    assert_eq!(signs, [1, -1, 1]);
}

#[test]
fn degree_s2_runs_gauss_maps() {
    let out = phopf(&["degree-s2", "--map", "gauss:conj:2", "--level", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["results"]["solid_angle"], -2);
    assert_eq!(r["results"]["regular_value_degree"], -2);
}

#[test]
fn lemma_passes_and_rejects_constant_fields() {
    let out = phopf(&["lemma", "--field", "power:2", "--level", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["results"]["planar_index"], 2);
    assert_eq!(r["results"]["solid_angle_degree"], 2);
    assert_eq!(r["results"]["regular_value_degree"], 2);
    assert_eq!(r["pass"], true);

    let out = phopf(&["lemma", "--field", "const"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no isolated zero"));
}

#[test]
fn cover_writes_off_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let off_path = dir.path().join("cover.off");
    let csv_path = dir.path().join("maps.csv");
    let out = phopf(&[
        "cover",
        "rp2",
        "-o",
        off_path.to_str().unwrap(),
        "--csv",
        csv_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["results"]["cover"]["euler"], 2);
    assert_eq!(r["results"]["cover"]["components"], 1);
    assert_eq!(r["results"]["euler_doubles"], true);
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert!(csv.starts_with("cover_id,base_id,deck_id\n"));
    assert_eq!(csv.lines().count(), 13, "header plus one row per cover vertex");
    // The exported OFF is itself a valid sphere.
    let out = phopf(&["audit", off_path.to_str().unwrap()]);
    let r = report(&out);
    assert_eq!(r["results"]["euler"], 2);
    assert_eq!(r["results"]["orientable"], true);
}

#[test]
fn verify_passes_on_models() {
    for mesh in ["tetrahedron", "rp2", "klein:3x3"] {
        let out = phopf(&["verify", mesh, "--trials", "25"]);
        assert_eq!(out.status.code(), Some(0), "mesh {mesh}");
        let r = report(&out);
        assert_eq!(r["results"]["trials_passed"], 25);
        assert_eq!(r["seed"], 0);
        assert_eq!(r["pass"], true);
    }
}
