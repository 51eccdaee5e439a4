use std::process::Command;

fn qgdual(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qgdual")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> (i32, serde_json::Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let (code, out, err) = qgdual(&all);
    (code, serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out} {err}")))
}

#[test]
fn validate_passes_on_corpus_groups() {
    for g in ["cz2", "C[S3]", "h4"] {
        let (code, v) = json(&["validate", g]);
        assert_eq!(code, 0, "{g}");
        assert_eq!(v["biduality"], true);
    }
}

#[test]
fn dual_output_loads_back() {
    let (code, out, _) = qgdual(&["dual", "fz2"]);
    assert_eq!(code, 0);
    let dir = std::env::temp_dir().join(format!("qgdual-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("dual.qg.json");
    std::fs::write(&path, out).unwrap();
    let (code, v) = json(&["modpairs", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    // pairs of C^Z2 dualise to pairs of its dual
    assert_eq!(v["pairs"].as_array().unwrap().len(), 3);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn modpairs_counts() {
    for (g, n) in [("cz2", 2), ("cz4", 4), ("h4", 0)] {
        let (code, v) = json(&["modpairs", g]);
        assert_eq!(code, 0);
        assert_eq!(v["pairs"].as_array().unwrap().len(), n, "{g}");
    }
}

#[test]
fn forms_and_dump_ops() {
    let (code, v) = json(&["forms", "cz2", "--algebra", "z2", "--max-degree", "2", "--dump-ops"]);
    assert_eq!(code, 0);
    let c = &v["complexes"][0];
    assert_eq!(c["dims"], serde_json::json!([4, 12, 24]));
    assert_eq!(c["d"].as_array().unwrap().len(), 2);
    assert_eq!(c["d"][0]["shape"], serde_json::json!([12, 4]));
    // AYD plus one YD picture per pair
    assert_eq!(v["complexes"].as_array().unwrap().len(), 3);
}

#[test]
fn xcomplex_and_duality() {
    let (code, v) = json(&["xcomplex", "h4", "--algebra", "z2"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
    let (code, v) = json(&["xcomplex", "fz2", "--pair", "0", "--invariants", "--coinvariants"]);
    assert_eq!(code, 0);
    assert_eq!(v["invariants"]["square_zero"], true);
    let (code, v) = json(&["duality", "cz2", "--algebra", "z2", "--degree", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
}

#[test]
fn dsl_exit_codes() {
    let (code, _, _) = qgdual(&["dsl", "h4", "S(S(S(S(t)))) == t"]);
    assert_eq!(code, 0);
    let (code, out, _) = qgdual(&["dsl", "h4", "S2(t) == t"]);
    assert_eq!(code, 1);
    assert!(out.contains("FAILS"));
    let (code, _, err) = qgdual(&["dsl", "cz2", "t +"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error:"));
    let (code, v) = json(&["dsl", "cz2", "phi(t)"]);
    assert_eq!(code, 0);
    assert_eq!(v["entries"], serde_json::json!([[[0], "1"]]));
}

#[test]
fn input_errors_exit_with_two() {
    assert_eq!(qgdual(&["validate", "/no/such/file.json"]).0, 2);
    assert_eq!(qgdual(&["duality", "h4"]).0, 2);
    assert_eq!(qgdual(&["forms", "cz3", "--algebra", "z2"]).0, 2);
}

#[test]
fn suite_filter_from_the_command_line() {
    let (code, v) = json(&["suite", "--filter", "pairs"]);
    assert_eq!(code, 0);
    assert_eq!(v["sections"], serde_json::json!(["pairs"]));
}
