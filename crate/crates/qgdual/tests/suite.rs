use qgdual::suite::{prepare, run_suite_on, SECTIONS};

#[test]
fn filters_select_sections_by_tag() {
    let ps = prepare().unwrap();
    let r = run_suite_on(&ps, "modular");
    assert_eq!(r.sections, ["pairs", "identities"]);
    let r = run_suite_on(&ps, "integrals, dsl");
    assert_eq!(r.sections, ["integrals", "dsl"]);
    assert!(run_suite_on(&ps, "nothing-matches").checks.is_empty());
}

#[test]
fn empty_filter_runs_every_section() {
    let names: Vec<&str> = SECTIONS.iter().map(|s| s.name).collect();
    assert_eq!(names.len(), 12);
    for s in &SECTIONS {
        assert!(!s.claim.is_empty());
    }
}

#[test]
fn reports_are_deterministic_and_renderings_agree() {
    let ps = prepare().unwrap();
    let a = run_suite_on(&ps, "hopf,pairs,fourier");
    let b = run_suite_on(&ps, "hopf,pairs,fourier");
    assert_eq!(a.canonical_json(), b.canonical_json());
    assert!(a.passed);
    let text = a.render_text();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), a.checks.len() + 1);
    for (line, c) in lines.iter().zip(&a.checks) {
        assert!(line.contains(&c.id) && line.contains(c.section));
        assert_eq!(line.starts_with("ok"), c.passed);
    }
    let v: serde_json::Value = serde_json::from_str(&a.to_json()).unwrap();
    assert_eq!(v["checks"].as_array().unwrap().len(), a.checks.len());
}
