//! The regression suite over the shipped corpus.
//!
//! Checks are grouped in sections; each section carries a few tags and a
//! filter selects sections by tag. Report-only checks are recorded but never
//! fail the run.

use std::fmt::Write as _;
use std::time::Instant;

use qgdual_core::corpus::{trivial_algebra, trivial_group, z2_algebra};
use qgdual_core::dsl::{check_identity, parse_identity, Env, Verdict};
use qgdual_core::duality::{duality_comparison, fourier_lemma};
use qgdual_core::forms::{build_ayd, build_yd, paramixed_check, AydForms, YdForms};
use qgdual_core::halg::{is_equivariant, is_multiplicative, takesaki_takai};
use qgdual_core::modular::{corpus_pairs, derived_identity_suite, dualize_pair, verify_pair_with, ModularPair};
use qgdual_core::xcomplex::{compare_coinvariants, compare_invariants, invariant_report, QuotientComplex, XComplex};
use qgdual_core::yd::{ayd_to_yd, coefficient_module, is_morphism, yd_to_ayd};
use qgdual_core::{FiniteQuantumGroup, ModuleAlgebra, SparseMatrix};
use serde::Serialize;

use crate::corpus::{self, CorpusEntry};
use crate::golden;
use crate::schema::{group_from_str, to_json, GroupFile, InputError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub section: &'static str,
    /// What is being checked, in words.
    pub claim: &'static str,
    pub gating: bool,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub wall_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub filter: String,
    pub sections: Vec<&'static str>,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl SuiteReport {
    pub fn gating_failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.gating && !c.passed)
    }

    pub fn section(&self, name: &str) -> impl Iterator<Item = &CheckResult> + '_ {
        let name = name.to_string();
        self.checks.iter().filter(move |c| c.section == name)
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }

    /// JSON with every timing field zeroed, for byte comparisons.
    pub fn canonical_json(&self) -> String {
        let mut r = self.clone();
        r.checks.iter_mut().for_each(|c| c.wall_ms = 0);
        to_json(&r)
    }

    /// One line per check.
    pub fn render_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let mark = match (c.passed, c.gating) {
                (true, _) => "ok  ",
                (false, true) => "FAIL",
                (false, false) => "note",
            };
            let _ = write!(s, "{mark} {:<10} {}", c.section, c.id);
            if let Some(w) = &c.witness {
                let _ = write!(s, "  [{w}]");
            }
            s.push('\n');
        }
        let failed = self.gating_failures().count();
        let _ = writeln!(s, "{} checks, {} gating failures", self.checks.len(), failed);
        s
    }
}

/// A corpus entry with its dual and verified pairs.
pub struct Prepared {
    pub entry: CorpusEntry,
    pub hhat: FiniteQuantumGroup,
    pub pairs: Vec<ModularPair>,
}

impl Prepared {
    fn h(&self) -> &FiniteQuantumGroup {
        &self.entry.group
    }

    fn name(&self) -> &str {
        &self.entry.group.name
    }

    fn algebras(&self) -> &[ModuleAlgebra] {
        &self.entry.algebras
    }
}

pub fn prepare() -> Result<Vec<Prepared>, InputError> {
    corpus::load()?
        .into_iter()
        .map(|entry| {
            let hhat = entry.group.dualize().map_err(|e| invalid(&entry.group.name, e))?;
            let pairs = corpus_pairs(&entry.group).map_err(|e| invalid(&entry.group.name, e))?;
            Ok(Prepared { entry, hhat, pairs })
        })
        .collect()
}

fn invalid(what: &str, e: impl std::fmt::Display) -> InputError {
    InputError::Invalid {
        what: what.to_string(),
        failures: vec![e.to_string()],
    }
}

type Outcome = Result<(), String>;

fn verdict(v: &Verdict) -> Outcome {
    match v {
        Verdict::Equal => Ok(()),
        other => Err(format!("{other:?}")),
    }
}

fn ensure(ok: bool, why: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

struct Recorder<'a> {
    section: &'static str,
    claim: &'static str,
    out: &'a mut Vec<CheckResult>,
}

impl Recorder<'_> {
    fn run(&mut self, id: String, gating: bool, f: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let r = f();
        self.out.push(CheckResult {
            id,
            section: self.section,
            claim: self.claim,
            gating,
            passed: r.is_ok(),
            witness: r.err(),
            wall_ms: start.elapsed().as_millis() as u64,
        });
    }

    fn check(&mut self, id: String, f: impl FnOnce() -> Outcome) {
        self.run(id, true, f)
    }
}

pub struct Section {
    pub name: &'static str,
    pub tags: &'static [&'static str],
    pub claim: &'static str,
    run: fn(&[Prepared], &mut Recorder),
}

impl Section {
    fn selected(&self, filter: &str) -> bool {
        let pats: Vec<&str> = filter.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        pats.is_empty() || pats.iter().any(|p| *p == self.name || self.tags.contains(p))
    }
}

pub const SECTIONS: [Section; 12] = [
    Section {
        name: "hopf",
        tags: &["corpus"],
        claim: "corpus groups and their duals satisfy the Hopf axioms; the bidual is the group itself",
        run: hopf_section,
    },
    Section {
        name: "integrals",
        tags: &["hopf"],
        claim: "dual integrals are normalised against the Fourier transforms: phihat(G_r t) = psihat(F_l t) = counit(t)",
        run: integrals_section,
    },
    Section {
        name: "pairs",
        tags: &["modular"],
        claim: "modular pairs enumerate as recorded and dualise to pairs of the dual",
        run: pairs_section,
    },
    Section {
        name: "identities",
        tags: &["modular"],
        claim: "antipode and integral identities derived from a modular pair hold on both sides",
        run: identities_section,
    },
    Section {
        name: "yd",
        tags: &["modules"],
        claim: "AYD to YD conversion yields YD modules, round trips exactly, and C(sigma,delta) is AYD",
        run: yd_section,
    },
    Section {
        name: "forms",
        tags: &["paramixed"],
        claim: "b^2 = 0, B^2 = 0 and Bb + bB = id - T on forms of degree at most three",
        run: forms_section,
    },
    Section {
        name: "lambda",
        tags: &["forms"],
        claim: "lambda is invertible, intertwines the YD structure and commutes with d, B, b",
        run: lambda_section,
    },
    Section {
        name: "gamma",
        tags: &["algebras"],
        claim: "the double crossed product map into A (x) K_H is a bijective equivariant homomorphism",
        run: gamma_section,
    },
    Section {
        name: "fourier",
        tags: &["duality"],
        claim: "the twisted Fourier transform is inverted by Glhat and intertwines the bullet action",
        run: fourier_section,
    },
    Section {
        name: "duality",
        tags: &[],
        claim: "tau_hat tau_H agrees with T tr Omega(gamma) in degrees 0 and 1; degree 2 is reported",
        run: duality_section,
    },
    Section {
        name: "xcomplex",
        tags: &[],
        claim: "X-complex paracomplex law; invariants are integral (x) forms; twisted coinvariants match the plain complex",
        run: xcomplex_section,
    },
    Section {
        name: "dsl",
        tags: &["golden"],
        claim: "DSL expressions evaluate to hand-assembled tensors, independent of contraction order",
        run: dsl_section,
    },
];

/// Runs the sections selected by `filter`: a comma separated list of
/// section names or tags, empty for everything.
pub fn run_suite(filter: &str) -> Result<SuiteReport, InputError> {
    let prepared = prepare()?;
    Ok(run_suite_on(&prepared, filter))
}

pub fn run_suite_on(prepared: &[Prepared], filter: &str) -> SuiteReport {
    let mut checks = Vec::new();
    let mut sections = Vec::new();
    for s in SECTIONS.iter().filter(|s| s.selected(filter)) {
        sections.push(s.name);
        let mut r = Recorder {
            section: s.name,
            claim: s.claim,
            out: &mut checks,
        };
        (s.run)(prepared, &mut r);
    }
    let passed = checks.iter().all(|c| !c.gating || c.passed);
    SuiteReport {
        filter: filter.to_string(),
        sections,
        checks,
        passed,
    }
}

fn with_pairs(ps: &[Prepared]) -> impl Iterator<Item = &Prepared> {
    ps.iter().filter(|p| !p.pairs.is_empty())
}

fn grid(ps: &[Prepared]) -> impl Iterator<Item = &Prepared> {
    ps.iter().filter(|p| ["C[Z2]", "C[Z4]", "H4"].contains(&p.name()))
}

fn hopf_section(ps: &[Prepared], r: &mut Recorder) {
    for p in ps {
        let h = p.h();
        let fails = |rep: qgdual_core::ValidationReport| rep.failures().map(|a| a.name.to_string()).collect::<Vec<_>>().join(", ");
        r.check(format!("validate/{}", h.name), || {
            let rep = h.validate();
            ensure(rep.passed(), || fails(rep))
        });
        r.check(format!("dual validates/{}", h.name), || {
            let rep = p.hhat.validate();
            ensure(rep.passed(), || fails(rep))
        });
        r.check(format!("biduality/{}", h.name), || {
            let back = p.hhat.dualize().map_err(|e| e.to_string())?;
            ensure(back.same_structure(h), || String::from("dual of dual differs"))
        });
        r.check(format!("json round trip/{}", h.name), || {
            let again = group_from_str(&to_json(&GroupFile::from_group(h))).map_err(|e| e.to_string())?;
            ensure(again.same_structure(h) && again.grouplike_candidates == h.grouplike_candidates, || String::from("reloaded group differs"))
        });
        r.check(format!("matches built-in/{}", h.name), || {
            let built = qgdual_core::corpus::group_by_name(&h.name).ok_or("not built in")?;
            ensure(built.same_structure(h), || String::from("corpus file differs from the constructor"))
        });
    }
}

fn identity(src: &str, env: &Env) -> Outcome {
    let (l, rhs) = parse_identity(src).map_err(|e| e.to_string())?;
    verdict(&check_identity(&l, &rhs, env).map_err(|e| e.to_string())?)
}

fn integrals_section(ps: &[Prepared], r: &mut Recorder) {
    for p in ps {
        let env = Env::new(p.h(), &p.hhat);
        for src in ["phihat(Gr(t)) == counit(t)", "psihat(Fl(t)) == counit(t)"] {
            r.check(format!("{src}/{}", p.name()), || identity(src, &env));
        }
    }
}

fn pairs_section(ps: &[Prepared], r: &mut Recorder) {
    for p in ps {
        let h = p.h();
        r.check(format!("recorded enumeration/{}", h.name), || {
            let found: Vec<(usize, usize)> = p
                .pairs
                .iter()
                .map(|q| {
                    let s = h.grouplike_candidates.iter().position(|g| *g == q.sigma).unwrap_or(usize::MAX);
                    let d = h.character_candidates.iter().position(|c| *c == q.delta).unwrap_or(usize::MAX);
                    (s, d)
                })
                .collect();
            ensure(found == p.entry.expected.pairs, || format!("found {found:?}, recorded {:?}", p.entry.expected.pairs))
        });
        for (k, q) in p.pairs.iter().enumerate() {
            r.check(format!("dual pair/{}/{k}", h.name), || {
                let d = dualize_pair(q);
                let rep = verify_pair_with(&p.hhat, h, &d.sigma, &d.delta).map_err(|e| e.to_string())?;
                ensure(rep.passed(), || format!("{:?}", rep.failures().map(|(n, _)| *n).collect::<Vec<_>>()))
            });
        }
    }
    let count = |name: &str| ps.iter().find(|p| p.name() == name).map(|p| p.pairs.len());
    r.check(String::from("C[Z2] has two pairs, (1, counit) and (g, counit)"), || {
        let p = ps.iter().find(|p| p.name() == "C[Z2]").ok_or("C[Z2] missing")?;
        let h = p.h();
        let want = [h.unit.clone(), h.basis_vector(1)].map(|s| ModularPair { sigma: s, delta: h.counit.clone() });
        ensure(p.pairs == want, || format!("{:?}", p.pairs))
    });
    r.check(String::from("C[Z4] has four pairs"), || ensure(count("C[Z4]") == Some(4), || format!("{:?}", count("C[Z4]"))));
    r.check(String::from("H4 has no pairs"), || ensure(count("H4") == Some(0), || format!("{:?}", count("H4"))));
}

fn identities_section(ps: &[Prepared], r: &mut Recorder) {
    for p in with_pairs(ps) {
        for (k, q) in p.pairs.iter().enumerate() {
            let report = |h: &FiniteQuantumGroup, q: &ModularPair| -> Outcome {
                let rep = derived_identity_suite(h, q).map_err(|e| e.to_string())?;
                ensure(rep.passed(), || format!("{:?}", rep.failures().map(|(n, _)| *n).collect::<Vec<_>>()))
            };
            r.check(format!("{}/{k}", p.name()), || report(p.h(), q));
            r.check(format!("dual of {}/{k}", p.name()), || report(&p.hhat, &dualize_pair(q)));
        }
    }
}

fn yd_section(ps: &[Prepared], r: &mut Recorder) {
    for p in with_pairs(ps) {
        let (h, hh) = (p.h(), &p.hhat);
        for (k, q) in p.pairs.iter().enumerate() {
            r.check(format!("C(sigma,delta) is AYD/{}/{k}", h.name), || {
                let m = coefficient_module(h, q);
                verdict(&m.check_module_axioms(h, hh))?;
                verdict(&m.check_ayd(h, hh))
            });
            for a in p.algebras() {
                let f = AydForms::new(h, a, 1);
                for n in 0..=1 {
                    r.check(format!("forms/{}/{}/{k}/degree {n}", h.name, a.name), || {
                        let m = f.module(n);
                        let yd = ayd_to_yd(&m, h, hh, q).map_err(|e| e.to_string())?;
                        verdict(&yd.check_yd(h, hh))?;
                        let back = yd_to_ayd(&yd, h, hh, q).map_err(|e| e.to_string())?;
                        ensure(back == m, || String::from("round trip differs"))
                    });
                }
            }
        }
    }
}

fn all_equal(checks: Vec<(String, Verdict)>) -> Outcome {
    match checks.into_iter().find(|(_, v)| !v.is_equal()) {
        None => Ok(()),
        Some((what, v)) => Err(format!("{what}: {v:?}")),
    }
}

fn forms_section(ps: &[Prepared], r: &mut Recorder) {
    for p in grid(ps) {
        let h = p.h();
        for a in p.algebras() {
            r.check(format!("AYD/{}/{}", h.name, a.name), || all_equal(paramixed_check(&build_ayd(h, a, 3))));
            for (k, q) in p.pairs.iter().enumerate() {
                r.check(format!("YD/{}/{}/{k}", h.name, a.name), || all_equal(paramixed_check(&build_yd(h, &p.hhat, a, q, 3))));
            }
        }
        if h.name == "H4" {
            r.check(String::from("T is not the identity on degree one forms/H4"), || {
                let a = p.entry.algebra("C^Z2").ok_or("H4 algebra missing")?;
                let f = AydForms::new(h, a, 1);
                ensure(f.t(1) != SparseMatrix::identity(f.basis.dim(1)), || String::from("T = id"))
            });
        }
    }
}

fn lambda_section(ps: &[Prepared], r: &mut Recorder) {
    for p in grid(ps).filter(|p| !p.pairs.is_empty()) {
        let (h, hh) = (p.h(), &p.hhat);
        for a in p.algebras() {
            let ayd = build_ayd(h, a, 2);
            for (k, q) in p.pairs.iter().enumerate() {
                r.check(format!("{}/{}/{k}", h.name, a.name), || {
                    let yd = build_yd(h, hh, a, q, 2);
                    let f = YdForms::new(h, hh, a, q, 2);
                    for n in 0..=2 {
                        let (l, li) = (f.lambda(n), f.lambda_inv(n));
                        ensure(l.compose(&li) == SparseMatrix::identity(l.rows()), || format!("not invertible in degree {n}"))?;
                        let target = ayd_to_yd(&ayd.modules[n], h, hh, q).map_err(|e| e.to_string())?;
                        ensure(is_morphism(&l, &yd.modules[n], &target), || format!("not intertwining in degree {n}"))?;
                    }
                    for n in 0..2 {
                        let (l0, l1) = (f.lambda(n), f.lambda(n + 1));
                        ensure(l1.compose(&yd.d[n]) == ayd.d[n].compose(&l0), || format!("d in degree {n}"))?;
                        ensure(l1.compose(&yd.big_b[n]) == ayd.big_b[n].compose(&l0), || format!("B in degree {n}"))?;
                        ensure(l0.compose(&yd.b[n + 1]) == ayd.b[n + 1].compose(&l1), || format!("b in degree {}", n + 1))?;
                    }
                    Ok(())
                });
            }
        }
    }
}

fn gamma_section(ps: &[Prepared], r: &mut Recorder) {
    for p in with_pairs(ps) {
        let (h, hh) = (p.h(), &p.hhat);
        for a in p.algebras() {
            let double = a.crossed_product(h).crossed_product(hh);
            let target = qgdual_core::halg::tensor_kernel(h, a);
            for (k, q) in p.pairs.iter().enumerate() {
                r.check(format!("{}/{}/{k}", h.name, a.name), || {
                    let g = takesaki_takai(h, hh, a, &q.sigma, &q.delta).map_err(|e| e.to_string())?;
                    ensure(g.rank() == double.dim(), || format!("rank {}", g.rank()))?;
                    if let Some(w) = is_multiplicative(&g, &double, &target) {
                        return Err(format!("not multiplicative at {w:?}"));
                    }
                    match is_equivariant(&g, &double, &target) {
                        None => Ok(()),
                        Some(t) => Err(format!("not equivariant for basis element {t}")),
                    }
                });
            }
        }
    }
}

fn fourier_section(ps: &[Prepared], r: &mut Recorder) {
    for p in with_pairs(ps) {
        for (k, q) in p.pairs.iter().enumerate() {
            r.check(format!("{}/{k}", p.name()), || {
                let vs = fourier_lemma(p.h(), &p.hhat, q).map_err(|e| e.to_string())?;
                all_equal(vs.into_iter().map(|(n, v)| (n.to_string(), v)).collect())
            });
        }
    }
}

fn duality_section(ps: &[Prepared], r: &mut Recorder) {
    for p in with_pairs(ps) {
        let (h, hh) = (p.h(), &p.hhat);
        for a in p.algebras() {
            for (k, q) in p.pairs.iter().enumerate() {
                // degree 2 is computed for the first pair only and never gates
                let top = if k == 0 { 2 } else { 1 };
                for n in 0..=top {
                    r.run(format!("{}/{}/{k}/degree {n}", h.name, a.name), n < 2, || {
                        let c = duality_comparison(h, hh, a, q, n).map_err(|e| e.to_string())?;
                        verdict(&c.verdict())?;
                        ensure(c.composite.rank() == c.composite.rows(), || String::from("composite not invertible"))
                    });
                }
            }
        }
    }
}

fn xcomplex_section(ps: &[Prepared], r: &mut Recorder) {
    for p in ps.iter().filter(|p| ["C[Z2]", "C[Z4]", "C^Z2", "H4"].contains(&p.name())) {
        for a in p.algebras() {
            r.check(format!("paracomplex/{}/{}", p.name(), a.name), || {
                let x = XComplex::ayd(p.h(), a);
                all_equal(x.paracomplex_check())?;
                ensure(x.x1.dim() + x.boundary_rank == x.omega1_dim, || String::from("rank-nullity"))
            });
        }
    }
    // K = C^G acting through its dual C[G] on B = A ⋊ C[G], trivial pair
    let one = trivial_group();
    for p in ps.iter().filter(|p| ["C^Z2", "C^S3"].contains(&p.name())) {
        let (k, khat) = (p.h(), &p.hhat);
        let pair = ModularPair {
            sigma: k.unit.clone(),
            delta: k.counit.clone(),
        };
        let mut algs = vec![trivial_algebra(khat)];
        algs.extend(z2_algebra(khat));
        for a in &algs {
            let b = a.crossed_product(khat);
            let x = XComplex::yd(k, khat, &b, &pair);
            let plain = XComplex::ayd(&one, &b.without_action());
            r.check(format!("invariants/{}/{}", k.name, a.name), || {
                ensure(p.pairs.contains(&pair), || String::from("trivial pair not verified"))?;
                let inv = x.invariants(&khat.counit);
                let integral = k.left_integral.clone().ok_or("no integral")?;
                if let Some((what, _)) = compare_invariants(&x, &plain, &integral, &inv).into_iter().find(|(_, ok)| !ok) {
                    return Err(what);
                }
                let rep = invariant_report(&x, &inv);
                ensure(rep.t_is_identity && rep.square_zero && rep.dims == plain.dims(), || format!("{rep:?}"))
            });
            r.check(format!("coinvariants/{}/{}", k.name, a.name), || {
                let coinv = QuotientComplex::new(&x, x.coinvariant_relations(&khat.counit));
                let rep = coinv.report();
                ensure(rep.t_is_identity && rep.square_zero, || format!("{rep:?}"))?;
                let cmp = compare_coinvariants(&x, &plain, &coinv, &khat.counit, &khat.unit);
                match cmp.checks.into_iter().find(|(_, ok)| !ok) {
                    None => Ok(()),
                    Some((what, _)) => Err(what),
                }
            });
        }
    }
}

fn dsl_section(ps: &[Prepared], r: &mut Recorder) {
    for p in ps {
        let (h, hh) = (p.h(), &p.hhat);
        let mut cases: Vec<(golden::GoldenCase, Option<&ModularPair>)> = golden::plain_cases(h, hh).into_iter().map(|c| (c, None)).collect();
        if let Some(q) = p.pairs.last() {
            cases.extend(golden::pair_cases(h, hh, q).into_iter().map(|c| (c, Some(q))));
        }
        for (case, pair) in cases {
            r.check(format!("{}/{}", case.expr, h.name), || {
                let env = Env::new(h, hh);
                let env = match pair {
                    Some(q) => env.with_pair(&q.sigma, &q.delta),
                    None => env,
                };
                let o = golden::run_case(&case, &env).map_err(|e| e.to_string())?;
                ensure(o.matches, || String::from("differs from the direct tensor"))?;
                ensure(o.order_invariant, || String::from("depends on contraction order"))
            });
        }
    }
}
