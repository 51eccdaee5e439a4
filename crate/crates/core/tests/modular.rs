use qgdual_core::corpus::{self, c_z2, group_by_name, sweedler};
use qgdual_core::modular::{
    corpus_pairs, derived_identity_suite, dualize_pair, enumerate_pairs, tensor_pair, verify_pair, ModularPair,
};
use qgdual_core::{FiniteQuantumGroup, Scalar};

fn pair(sigma: Vec<Scalar>, delta: Vec<Scalar>) -> ModularPair {
    ModularPair { sigma, delta }
}

fn inverse_modular(h: &FiniteQuantumGroup) -> Vec<Scalar> {
    let nu = h.modular_element().unwrap();
    h.antipode_of(&nu)
}

#[test]
fn pair_counts_over_the_corpus() {
    let expected = [("C[Z2]", 2), ("C[Z3]", 1), ("C[Z4]", 4), ("C[S3]", 2), ("C^Z2", 3), ("C^S3", 2), ("H4", 0)];
    for (name, count) in expected {
        let h = group_by_name(name).unwrap();
        let pairs = corpus_pairs(&h).unwrap();
        assert_eq!(pairs.len(), count, "{name}: {pairs:?}");
    }
}

#[test]
fn z4_pairs_are_the_even_elements_with_either_character() {
    let h = group_by_name("C[Z4]").unwrap();
    let pairs = corpus_pairs(&h).unwrap();
    let sigmas: Vec<usize> = pairs
        .iter()
        .map(|p| p.sigma.iter().position(|x| x.is_one()).unwrap())
        .collect();
    assert_eq!(sigmas, vec![0, 0, 2, 2]);
    assert_eq!(h.character_candidates.len(), 2);
    assert_eq!(h.grouplike_candidates.len(), 4);
}

#[test]
fn sweedler_trivial_pair_breaks_invariance_only_through_the_modular_element() {
    let h = sweedler();
    assert_eq!(h.modular_element().unwrap(), h.basis_vector(1));
    let r = verify_pair(&h, &h.unit, &h.counit).unwrap();
    assert!(!r.checks[0].1.is_equal());
}

#[test]
fn sigma_squared_is_inverse_modular_element_and_delta_squared_is_unique() {
    for h in corpus::all_groups() {
        let pairs = corpus_pairs(&h).unwrap();
        let hhat = h.dualize().unwrap();
        let mut delta_sq = None;
        for p in &pairs {
            assert_eq!(h.mul(&p.sigma, &p.sigma), inverse_modular(&h), "{}", h.name);
            let d2 = hhat.mul(&p.delta, &p.delta);
            match &delta_sq {
                None => delta_sq = Some(d2),
                Some(d) => assert_eq!(*d, d2, "{}", h.name),
            }
        }
    }
}

#[test]
fn dual_pairs_verify_and_dualize_back() {
    for h in corpus::all_groups() {
        let hhat = h.dualize().unwrap();
        let hhh = hhat.dualize().unwrap();
        assert!(hhh.same_structure(&h));
        for p in corpus_pairs(&h).unwrap() {
            let d = dualize_pair(&p);
            let r = verify_pair(&hhat, &d.sigma, &d.delta).unwrap();
            assert!(r.passed(), "{}: {r:?}", h.name);
            assert_eq!(dualize_pair(&d), p);
            let r = verify_pair(&hhh, &p.sigma, &p.delta).unwrap();
            assert!(r.passed());
        }
    }
}

#[test]
fn z2_dual_pairs_are_evaluations() {
    let h = c_z2();
    let hhat = h.dualize().unwrap();
    for g in 0..2 {
        let p = pair(h.basis_vector(g), h.counit.clone());
        let d = dualize_pair(&p);
        assert_eq!(d.sigma, hhat.unit);
        // the character f ↦ f(g) in the dual basis has coordinates of g
        assert!(hhat.is_character(&d.delta));
        assert!(verify_pair(&hhat, &d.sigma, &d.delta).unwrap().passed());
    }
}

#[test]
fn tensor_products_of_pairs() {
    let z2 = c_z2();
    let z4 = group_by_name("C[Z4]").unwrap();
    let trivial = |h: &FiniteQuantumGroup| pair(h.unit.clone(), h.counit.clone());
    let cases = [
        (&z2, trivial(&z2), &z2, pair(z2.basis_vector(1), z2.counit.clone())),
        (&z2, trivial(&z2), &z2, trivial(&z2)),
        (&z4, pair(z4.basis_vector(2), z4.character_candidates[1].clone()), &z2, pair(z2.basis_vector(1), z2.counit.clone())),
    ];
    for (h1, p1, h2, p2) in cases {
        assert!(verify_pair(h1, &p1.sigma, &p1.delta).unwrap().passed());
        assert!(verify_pair(h2, &p2.sigma, &p2.delta).unwrap().passed());
        let h = h1.tensor_product(h2).unwrap();
        assert!(h.validate().passed());
        let p = tensor_pair(&p1, &p2);
        let r = verify_pair(&h, &p.sigma, &p.delta).unwrap();
        assert!(r.passed(), "{r:?}");
    }
    let h = z2.tensor_product(&z2).unwrap();
    let p = tensor_pair(&trivial(&z2), &trivial(&z2));
    assert_eq!(p, trivial(&h));
}

#[test]
fn derived_identities_hold_for_every_pair_and_its_dual() {
    for h in corpus::all_groups() {
        let hhat = h.dualize().unwrap();
        for p in corpus_pairs(&h).unwrap() {
            let r = derived_identity_suite(&h, &p).unwrap();
            assert_eq!(r.checks.len(), 11);
            assert!(r.passed(), "{}: {:?}", h.name, r.failures().collect::<Vec<_>>());
            let r = derived_identity_suite(&hhat, &dualize_pair(&p)).unwrap();
            assert!(r.passed(), "{}: {:?}", hhat.name, r.failures().collect::<Vec<_>>());
        }
    }
}

#[test]
fn derived_identities_fail_without_a_pair() {
    let z4 = group_by_name("C[Z4]").unwrap();
    let r = derived_identity_suite(&z4, &pair(z4.basis_vector(1), z4.counit.clone())).unwrap();
    assert!(!r.passed());
    let h = sweedler();
    let r = derived_identity_suite(&h, &pair(h.unit.clone(), h.counit.clone())).unwrap();
    assert!(r.failures().any(|(n, _)| *n == "S^2 on H"));
}

#[test]
fn verification_ignores_integral_scale() {
    for h in corpus::all_groups() {
        let pairs = corpus_pairs(&h).unwrap();
        let mut scaled = h.clone();
        let c = Scalar::from(7) / Scalar::from(3);
        scaled.left_integral = scaled.left_integral.map(|v| v.iter().map(|x| x * &c).collect());
        scaled.right_integral = scaled.right_integral.map(|v| v.iter().map(|x| x * &c).collect());
        let again = enumerate_pairs(&scaled, &h.grouplike_candidates, &h.character_candidates).unwrap();
        assert_eq!(pairs, again, "{}", h.name);
    }
}

#[test]
fn z2_sign_character_also_gives_a_pair() {
    // the full character list of Z2 admits (1, sign) as well
    let h = corpus::group_algebra("C[Z2]", &corpus::FiniteGroup::cyclic(2));
    let pairs = corpus_pairs(&h).unwrap();
    assert_eq!(pairs.len(), 3);
}
