use std::process::{Command, Output};

use serde_json::Value;

fn hypersing(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypersing"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(args: &[&str]) -> Value {
    let out = hypersing(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn assert_w23(v: &Value) {
    let f = &v["factors"];
    assert_eq!((f["8"].as_i64(), f["4"].as_i64(), f["2"].as_i64(), f["1"].as_i64()), (Some(1), Some(-1), Some(1), Some(-1)));
    assert_eq!(f.as_object().unwrap().len(), 4);
    assert_eq!(v["degree"], "5");
    assert_eq!(v["value_at_one"], "4");
    assert_eq!(v["coefficients"], serde_json::json!(["1", "1", "0", "0", "1", "1"]));
}

#[test]
fn monodromy_of_w_2_3() {
    assert_w23(&json_of(&["monodromy", "--family", "W", "-n", "2", "-d", "3"]));
}

#[test]
fn monodromy_from_weights_matches_family() {
    assert_w23(&json_of(&["monodromy", "--weights", "2,4,8/3"]));
}

#[test]
fn monodromy_of_smooth_point_is_empty() {
    let v = json_of(&["monodromy", "--family", "W", "-n", "2", "-d", "2"]);
    assert!(v["factors"].as_object().unwrap().is_empty());
    assert_eq!(v["degree"], "0");
}

#[test]
fn invalid_parameters_exit_2() {
    for args in [
        &["monodromy", "--family", "W", "-n", "2", "-d", "1"][..],
        &["monodromy", "--weights", "2,1/2"],
        &["monodromy", "--family", "V", "-n", "2"],
        &["model", "--ring", "torus"],
        &["catalog", "--family", "W", "-n", "4..2", "-d", "3"],
        &["homotopy-class", "--a", "0"],
        &["no-such-command"],
    ] {
        assert_eq!(hypersing(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn model_generators() {
    for (ring, cutoff, want) in [
        ("pn:3", "7", vec![2, 7]),
        ("twisted-quadric:2:1", "8", vec![2, 4, 5, 7]),
        ("s2", "4", vec![2, 3]),
    ] {
        let v = json_of(&["model", "--ring", ring, "--cutoff", cutoff]);
        let degs: Vec<u64> = v["generator_degrees"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_u64().unwrap())
            .collect();
        assert_eq!(degs, want, "{ring}");
        assert_eq!(v["ellipticity"]["verdict"], "elliptic at cutoff");
        assert_eq!(v["verification"]["d_squared_zero"], true);
    }
}

#[test]
fn wedge_model_is_inconclusive() {
    let v = json_of(&["model", "--ring", "wedge-s2:2", "--cutoff", "6"]);
    assert_eq!(v["ellipticity"]["verdict"], "inconclusive at cutoff");
}

#[test]
fn catalog_w_grid_to_file_is_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.jsonl");
    let b = dir.path().join("b.jsonl");
    for path in [&a, &b] {
        let out = hypersing(&["catalog", "--family", "W", "-n", "2,4", "-d", "2,4,6", "--out", path.to_str().unwrap()]);
        assert!(out.status.success());
    }
    let text = std::fs::read(&a).unwrap();
    assert_eq!(text, std::fs::read(&b).unwrap());
    let lines: Vec<Value> = std::str::from_utf8(&text)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 6);
    for r in &lines {
        let betti = r["betti"].as_array().unwrap();
        assert_eq!(betti[betti.len() / 2], 2);
    }
}

#[test]
fn catalog_single_v_and_h() {
    let out = hypersing(&["catalog", "--family", "V", "-n", "3", "-d", "5"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["betti"], serde_json::json!([1, 0, 1, 0, 1, 0, 1]));
    let out = hypersing(&["catalog", "--family", "H", "--a", "2,2,2,2,2"]);
    let h: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(h["kollar"]["admissible"], false);
    assert_eq!(h["kollar"]["d"], 33);
}

#[test]
fn catalog_pretty_is_one_document() {
    let v = json_of(&["catalog", "--family", "V", "-n", "1..2", "-d", "3", "--pretty"]);
    assert_eq!(v.as_array().unwrap().len(), 2);
}

#[test]
fn catalog_unwritable_path_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("out.jsonl");
    let out = hypersing(&["catalog", "--family", "V", "-n", "1", "-d", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_passes_and_perturbation_fails() {
    let v = json_of(&["verify", "--max-n", "4", "--max-d", "5"]);
    assert_eq!(v["passed"], true);

    let out = hypersing(&["verify", "--max-n", "4", "--max-d", "5", "--perturb"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], false);
    assert_eq!(v["failures"][0]["identity"], "oracle-equivalence-phi");
    assert!(v["failures"][0]["params"].as_str().unwrap().starts_with("n="));
}

#[test]
fn verify_empty_range_warns() {
    let out = hypersing(&["verify", "--min-n", "5", "--max-n", "4"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("vacuously"));
}

#[test]
fn small_subcommands() {
    let k = json_of(&["kollar", "--a", "2,2,2,2,2"]);
    assert_eq!(k["weights"], serde_json::json!(["11", "11", "11", "11", "11"]));
    assert_eq!(k["residual_zero"], true);

    let b = json_of(&["betti", "--family", "W", "-n", "4", "-d", "4"]);
    assert_eq!(b["betti"], serde_json::json!([1, 0, 1, 0, 2, 0, 1, 0, 1]));

    let s = json_of(&["signature", "--ring", "twisted-quadric:2:1"]);
    assert_eq!(s["signature"], 2);

    let h = json_of(&["homotopy-class", "--a", "-4/9"]);
    assert_eq!((h["real_class"].as_i64(), h["rational_class"].as_str()), (Some(-1), Some("-1")));

    let t = json_of(&["threefolds", "-n", "3", "-m", "3"]);
    assert_eq!(t["discriminant"], -243);
    assert_eq!(t["compare"]["cubic_forms"]["verdict"], "equivalent");

    let r = json_of(&["ring", "--ring", "pn:2"]);
    assert_eq!(r["top_degree"], 4);

    let w = json_of(&["weights", "--family", "W", "-n", "2", "-d", "3"]);
    assert_eq!(w["weights"], serde_json::json!(["2", "4", "8/3"]));
}
