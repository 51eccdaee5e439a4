use qgdual_core::corpus::{self, trivial_algebra, trivial_group, z2_algebra};
use qgdual_core::forms::build_ayd;
use qgdual_core::modular::{corpus_pairs, ModularPair};
use qgdual_core::xcomplex::{compare_coinvariants, compare_invariants, invariant_report, QuotientComplex, XComplex};
use qgdual_core::{FiniteQuantumGroup, ModuleAlgebra, SparseMatrix};

fn algebras(h: &FiniteQuantumGroup) -> Vec<ModuleAlgebra> {
    let mut v = vec![trivial_algebra(h)];
    v.extend(z2_algebra(h));
    v
}

#[test]
fn paracomplex_law_and_rank_nullity() {
    for name in ["C[Z2]", "C[Z4]", "C^Z2", "H4"] {
        let h = corpus::group_by_name(name).unwrap();
        for a in algebras(&h) {
            let x = XComplex::ayd(&h, &a);
            for (what, v) in x.paracomplex_check() {
                assert!(v.is_equal(), "{name} {}: {what}", a.name);
            }
            assert_eq!(x.x1.dim() + x.boundary_rank, x.omega1_dim);
        }
    }
    let h = corpus::c_z2();
    let x = XComplex::from_forms(&build_ayd(&h, &trivial_algebra(&h), 2));
    assert_eq!(x.dims()[0], 2);
    assert!(x.d1.compose(&x.d0).is_zero());
    let h = corpus::sweedler();
    let x = XComplex::from_forms(&build_ayd(&h, &z2_algebra(&h).unwrap(), 2));
    assert_ne!(x.t1, SparseMatrix::identity(x.dims()[1]));
    assert!(!x.d0.compose(&x.d1).is_zero());
}

fn trivial_pair(k: &FiniteQuantumGroup) -> ModularPair {
    let p = ModularPair {
        sigma: k.unit.clone(),
        delta: k.counit.clone(),
    };
    assert!(corpus_pairs(k).unwrap().contains(&p));
    p
}

/// `K = C^G` with `K̂ = C[G]` acting on the coefficients by multiplication.
fn function_algebra_cases() -> Vec<(FiniteQuantumGroup, FiniteQuantumGroup, ModuleAlgebra)> {
    let mut out = Vec::new();
    for name in ["C^Z2", "C^S3"] {
        let k = corpus::group_by_name(name).unwrap();
        let khat = k.dualize().unwrap();
        for a in algebras(&khat) {
            let b = a.crossed_product(&khat);
            out.push((k.clone(), khat.clone(), b));
        }
    }
    out
}

#[test]
fn invariants_are_integral_times_forms() {
    let one = trivial_group();
    for (k, khat, b) in function_algebra_cases() {
        let x = XComplex::yd(&k, &khat, &b, &trivial_pair(&k));
        let plain = XComplex::ayd(&one, &b.without_action());
        let inv = x.invariants(&khat.counit);
        let integral = k.left_integral.clone().unwrap();
        for (what, ok) in compare_invariants(&x, &plain, &integral, &inv) {
            assert!(ok, "{} / {}: {what}", k.name, b.name);
        }
        let r = invariant_report(&x, &inv);
        assert!(r.t_is_identity && r.square_zero, "{r:?}");
        assert_eq!(r.dims, plain.dims());
    }
}

#[test]
fn twisted_coinvariants_match_the_plain_complex() {
    let one = trivial_group();
    for (k, khat, b) in function_algebra_cases() {
        let x = XComplex::yd(&k, &khat, &b, &trivial_pair(&k));
        let plain = XComplex::ayd(&one, &b.without_action());
        let delta_inv = khat.counit.clone();
        let coinv = QuotientComplex::new(&x, x.coinvariant_relations(&delta_inv));
        let r = coinv.report();
        assert!(r.t_is_identity && r.square_zero, "{r:?}");
        let cmp = compare_coinvariants(&x, &plain, &coinv, &delta_inv, &khat.unit);
        for (what, ok) in cmp.checks {
            assert!(ok, "{} / {}: {what}", k.name, b.name);
        }
    }
}
