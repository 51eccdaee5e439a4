use qgdual::corpus::{self, FILES};
use qgdual::schema::{algebra_from_str, group_from_str, to_json, AlgebraFile, GroupFile, InputError};
use serde_json::Value;

fn cz2_text() -> &'static str {
    FILES[0].1
}

fn edit(text: &str, f: impl FnOnce(&mut Value)) -> String {
    let mut v: Value = serde_json::from_str(text).unwrap();
    f(&mut v);
    v.to_string()
}

fn pointer(e: InputError) -> String {
    match e {
        InputError::Schema { pointer, .. } => pointer,
        other => panic!("expected a schema error, got {other}"),
    }
}

#[test]
fn shipped_corpus_loads_and_validates() {
    let entries = corpus::load().unwrap();
    assert_eq!(entries.len(), 7);
    let names: Vec<&str> = entries.iter().map(|e| e.group.name.as_str()).collect();
    assert_eq!(names, ["C[Z2]", "C[Z3]", "C[Z4]", "C[S3]", "C^Z2", "C^S3", "H4"]);
    for e in &entries {
        assert!(e.group.validate().passed(), "{}", e.group.name);
        assert!(!e.algebras.is_empty());
    }
    let h = group_from_str(cz2_text()).unwrap();
    assert_eq!(h.dim(), 2);
}

#[test]
fn files_are_what_the_writer_produces() {
    for (_, text, algs) in FILES {
        let h = group_from_str(text).unwrap();
        assert_eq!(to_json(&GroupFile::from_group(&h)), text);
        for a in algs {
            let alg = algebra_from_str(a, &h).unwrap();
            assert_eq!(to_json(&AlgebraFile::from_algebra(&alg, &h)), *a);
        }
    }
}

#[test]
fn integrals_are_solved_when_absent() {
    let text = edit(cz2_text(), |v| {
        v.as_object_mut().unwrap().remove("left_integral");
    });
    let h = group_from_str(&text).unwrap();
    assert_eq!(h.left_integral, group_from_str(cz2_text()).unwrap().left_integral);
}

#[test]
fn non_associative_product_names_the_triple() {
    // e g = e, so (g e) g = e but g (e g) = g
    let text = edit(cz2_text(), |v| v["mult"][1] = serde_json::json!([0, 1, 0, "1"]));
    match group_from_str(&text).unwrap_err() {
        InputError::Invalid { failures, .. } => {
            let assoc = failures.iter().find(|f| f.starts_with("associativity")).expect("associativity fails");
            assert!(assoc.contains("at ["), "{assoc}");
        }
        other => panic!("{other}"),
    }
}

#[test]
fn schema_errors_carry_json_pointers() {
    let t = edit(cz2_text(), |v| v["mult"][2][3] = "1/0".into());
    assert_eq!(pointer(group_from_str(&t).unwrap_err()), "/mult/2/3");
    let t = edit(cz2_text(), |v| v["comult"][0][1] = 5.into());
    assert_eq!(pointer(group_from_str(&t).unwrap_err()), "/comult/0/1");
    let t = edit(cz2_text(), |v| v["antipode"][1] = serde_json::json!(["0"]));
    assert_eq!(pointer(group_from_str(&t).unwrap_err()), "/antipode/1");
    let t = edit(cz2_text(), |v| v["unit"][0] = 1.into());
    assert_eq!(pointer(group_from_str(&t).unwrap_err()), "/unit/0");
    let t = edit(cz2_text(), |v| v["colour"] = "blue".into());
    assert_eq!(pointer(group_from_str(&t).unwrap_err()), "/colour");
}

#[test]
fn algebra_for_a_larger_host_is_a_shape_error() {
    let cz2 = group_from_str(cz2_text()).unwrap();
    let cz4_alg = FILES[2].2[1];
    let t = edit(cz4_alg, |v| v["host"] = "C[Z2]".into());
    assert!(pointer(algebra_from_str(&t, &cz2).unwrap_err()).starts_with("/action/"));
    let cz4 = group_from_str(FILES[2].1).unwrap();
    assert_eq!(pointer(algebra_from_str(FILES[0].2[1], &cz4).unwrap_err()), "/host");
}

#[test]
fn broken_action_fails_validation() {
    let h = group_from_str(cz2_text()).unwrap();
    // g fixes p0 but still moves p1: not an algebra action
    let t = edit(FILES[0].2[1], |v| v["action"][2] = serde_json::json!([1, 0, 0, "1"]));
    assert!(matches!(algebra_from_str(&t, &h).unwrap_err(), InputError::Invalid { .. }));
}
