use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

use cubiso::complex::generators::{block, grid};

fn cubiso(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubiso")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}\n{}", String::from_utf8_lossy(&o.stdout), String::from_utf8_lossy(&o.stderr))
    })
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn isometry(a: Value, b: Value) -> String {
    let n = a.as_array().unwrap().len();
    json!({ "n": n, "A": a, "b": b }).to_string()
}

fn rotation() -> String {
    isometry(json!([["3/5", "-4/5"], ["4/5", "3/5"]]), json!(["0", "0"]))
}

/// Three squares around `o`, corners at `o`.
fn three_squares() -> String {
    let mut cells = vec![json!({"id": "o", "dim": 0})];
    let edge = |id: String, a: String, b: String| {
        json!({"id": id, "dim": 1, "facets": [{"id": a, "face": "-1"}, {"id": b, "face": "+1"}]})
    };
    for i in 0..3 {
        cells.push(json!({"id": format!("p{i}"), "dim": 0}));
        cells.push(json!({"id": format!("q{i}"), "dim": 0}));
        cells.push(edge(format!("e{i}"), "o".into(), format!("p{i}")));
    }
    for i in 0..3 {
        let j = (i + 1) % 3;
        cells.push(edge(format!("a{i}"), format!("p{j}"), format!("q{i}")));
        cells.push(edge(format!("b{i}"), format!("p{i}"), format!("q{i}")));
        cells.push(json!({"id": format!("s{i}"), "dim": 2, "facets": [
            {"id": format!("e{j}"), "face": "-1"},
            {"id": format!("b{i}"), "face": "+1"},
            {"id": format!("e{i}"), "face": "-2"},
            {"id": format!("a{i}"), "face": "+2"},
        ]}));
    }
    json!({"dimension": 2, "cells": cells}).to_string()
}

#[test]
fn check_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "grid.json", &grid(0..3, 0..3).to_json());
    let o = cubiso(&["check", s(&g)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["npc"], true);

    let t = write(dir.path(), "three.json", &three_squares());
    let o = cubiso(&["check", s(&t)]);
    assert_eq!(code(&o), 1);
    let offences = stdout_json(&o)["offences"].clone();
    assert_eq!(offences.as_array().unwrap().len(), 1);
    assert!(offences.to_string().contains("\"o\""));

    let text = grid(0..2, 0..2).to_json();
    let bad = write(dir.path(), "bad.json", &text[..text.len() / 2]);
    assert_eq!(code(&cubiso(&["check", s(&bad)])), 2);
    assert_eq!(code(&cubiso(&["check", "/nonexistent/file.json"])), 2);
}

#[test]
fn check_reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cubiso"))
        .args(["check", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(grid(0..2, 0..2).to_json().as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["vertices_checked"], 9);
}

#[test]
fn analyze_isometries() {
    let dir = tempfile::tempdir().unwrap();
    let swap = isometry(json!([["-5/13", "12/13"], ["12/13", "5/13"]]), json!(["0", "0"]));
    let o = cubiso(&["analyze", s(&write(dir.path(), "swap.json", &swap))]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["cubical"], false);
    let blocks = v["normal_form"]["blocks"].as_array().unwrap();
    assert_eq!(blocks.iter().filter(|b| b["kind"] == "B_STRICT").count(), 1);
    assert_eq!(v["product_structure"]["factors"][0]["dim"], 2);
    assert_eq!(v["preserves_hypersurface"], false);

    let perm = isometry(json!([["0", "-1", "0"], ["1", "0", "0"], ["0", "0", "1"]]), json!(["2", "0", "-1"]));
    let v = stdout_json(&cubiso(&["analyze", s(&write(dir.path(), "perm.json", &perm))]));
    assert_eq!(v["cubical"], true);
    assert_eq!(v["product_structure"], Value::Null);

    let shear = isometry(json!([["1", "1"], ["0", "1"]]), json!(["0", "0"]));
    let o = cubiso(&["analyze", s(&write(dir.path(), "shear.json", &shear))]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("not orthogonal"));
}

#[test]
fn develop_on_grid_and_cone() {
    let dir = tempfile::tempdir().unwrap();
    let rot = write(dir.path(), "rot.json", &rotation());
    let g = write(dir.path(), "grid.json", &grid(0..11, 0..11).to_json());
    let o = cubiso(&["develop", s(&g), "--seed", "5,5:12", s(&rot), "--radius", "3"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["branch_vertices"], json!({}));
    assert_eq!(v["charts"].as_object().unwrap().len(), 25);

    let o = cubiso(&["generate", "cone", "--n", "5", "--radius", "4"]);
    let cone = write(dir.path(), "cone.json", std::str::from_utf8(&o.stdout).unwrap());
    let o = cubiso(&["develop", s(&cone), "--seed", "q0:0,0:12", s(&rot), "--radius", "3"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    let branch = v["branch_vertices"].as_object().unwrap();
    assert_eq!(branch.keys().collect::<Vec<_>>(), ["o"]);
    assert_eq!(branch["o"]["kind"], "circle");
    assert_eq!(branch["o"]["k"], 5);

    let o = cubiso(&["develop", s(&cone), "--seed", "q0:0,0:12", s(&rot), "--format", "dot"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("graph"));

    let flip = write(dir.path(), "flip.json", &isometry(json!([["0", "1"], ["1", "0"]]), json!(["0", "0"])));
    assert_eq!(code(&cubiso(&["develop", s(&g), "--seed", "5,5:12", s(&flip)])), 1);
    assert_eq!(code(&cubiso(&["develop", s(&g), "--seed", "5,5:1", s(&rot)])), 2);
    assert_eq!(code(&cubiso(&["develop", s(&g), "--seed", "nope", s(&rot)])), 2);
}

#[test]
fn generate_and_classify() {
    let dir = tempfile::tempdir().unwrap();
    let o = cubiso(&["generate", "doubles", "--limit", "8"]);
    assert_eq!(code(&o), 0);
    let pairs = stdout_json(&o);
    assert!(pairs.as_array().unwrap().iter().any(|p| p["a"] == json!([1, 8]) && p["b"] == json!([7, 4])));

    let out = dir.path().join("torus.json");
    let o = cubiso(&["generate", "torus", "--a", "1,8", "--b", "7,4", "--output", s(&out)]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let torus: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let squares = torus["cells"].as_array().unwrap().iter().filter(|c| c["dim"] == 2).count();
    assert_eq!(squares, 52);
    let v = stdout_json(&cubiso(&["classify", s(&out)]));
    assert_eq!(v["cone"]["classification"], "euclidean");
    assert_eq!(v["gauss_bonnet"]["holds"], true);

    let spec = write(dir.path(), "spec.json", r#"{"degree":3,"sigma_a":[2,1,3],"sigma_b":[1,3,2]}"#);
    let o = cubiso(&["generate", "cover", s(&spec)]);
    assert_eq!(code(&o), 0);
    let cover = write(dir.path(), "cover.json", std::str::from_utf8(&o.stdout).unwrap());
    let v = stdout_json(&cubiso(&["classify", s(&cover)]));
    assert_eq!(v["cone"]["classification"], "qi_hyperbolic_plane");
    assert_eq!(v["cone"]["euler_characteristic"], -2);
    assert_eq!(v["gauss_bonnet"]["curvature"], -8);
    let twelve = v["cone"]["orders"].as_object().unwrap().values().filter(|k| **k == 12).count();
    assert_eq!(twelve, 1);

    assert_eq!(code(&cubiso(&["generate", "cone", "--n", "3"])), 2);
    assert_eq!(code(&cubiso(&["generate", "torus", "--a", "1,2", "--b", "2,4"])), 2);
    assert_eq!(code(&cubiso(&["generate", "torus", "--a", "1", "--b", "2,4"])), 2);
    assert_eq!(code(&cubiso(&["frobnicate"])), 2);
}

#[test]
fn cube_surface_is_invalid() {
    let mut doc = block(3, 1).to_json_value(true);
    doc.cells.retain(|c| c.dim < 3);
    doc.dimension = 2;
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "cube.json", &serde_json::to_string(&doc).unwrap());
    let o = cubiso(&["classify", s(&p)]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout_json(&o)["cone"]["classification"], "invalid");
    // missing marker
    let g = write(dir.path(), "grid.json", &grid(0..2, 0..2).to_json());
    assert_eq!(code(&cubiso(&["classify", s(&g)])), 2);
}

#[test]
fn emitted_complexes_round_trip() {
    for args in [&["generate", "cone", "--n", "6", "--radius", "2"][..], &["generate", "torus", "--a", "2,1", "--b", "-1,3"]] {
        let o = cubiso(args);
        assert_eq!(code(&o), 0);
        let text = String::from_utf8(o.stdout).unwrap();
        let cx = cubiso::CubeComplex::from_json(&text).unwrap();
        let surface = text.contains("\"surface\": true");
        let again = serde_json::to_string_pretty(&cx.to_json_value(surface)).unwrap() + "\n";
        assert_eq!(again, text);
    }
}
