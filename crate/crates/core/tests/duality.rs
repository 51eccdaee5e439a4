use qgdual_core::corpus::{self, trivial_algebra, z2_algebra};
use qgdual_core::duality::{duality_comparison, fourier_lemma, tau, tau_expression, trace_map, twisted_fourier};
use qgdual_core::forms::YdForms;
use qgdual_core::halg::tensor_kernel;
use qgdual_core::modular::{corpus_pairs, dualize_pair};
use qgdual_core::yd::is_morphism;
use qgdual_core::SparseMatrix;

#[test]
fn fourier_lemma_holds_for_every_pair() {
    for h in corpus::all_groups() {
        let hhat = h.dualize().unwrap();
        for p in corpus_pairs(&h).unwrap() {
            for (name, v) in fourier_lemma(&h, &hhat, &p).unwrap() {
                assert!(v.is_equal(), "{} {name}: {v:?}", h.name);
            }
            let f = twisted_fourier(&h, &hhat, &p.sigma, &p.delta).unwrap();
            assert!(f.inverse().is_some());
        }
    }
}

#[test]
fn generated_expressions() {
    assert_eq!(
        tau_expression(0, false),
        "Fhat(f(3) g0(2) (sigma .> S(f(1)))) @ act(f(2) Sinv(g0(1)), a0)"
    );
    assert_eq!(
        tau_expression(1, false),
        "Fhat(f(4) g0(2) g1(3) (sigma .> S(f(1)))) @ act(f(2) Sinv(g0(1) g1(2)), a0) @ act(f(3) Sinv(g1(1)), a1)"
    );
    assert_eq!(
        tau_expression(1, true),
        "counit(f(2) Sinv(g1(2))) Fhat(f(4) g1(3) (sigma .> S(f(1)))) @ act(f(3) Sinv(g1(1)), a1)"
    );
}

/// Hand-coded degree zero map, straight from the coordinates.
#[test]
fn degree_zero_matches_direct_assembly() {
    let h = corpus::c_z2();
    let hhat = h.dualize().unwrap();
    for p in corpus_pairs(&h).unwrap() {
        let b = z2_algebra(&h).unwrap().crossed_product(&h);
        let generated = tau(&h, &hhat, &p, &b, 0).unwrap();
        let fhat = twisted_fourier(&h, &hhat, &p.sigma, &p.delta).unwrap();
        let m = hhat.dim();
        let sinv = hhat.antipode_power(-1);
        let mut direct = SparseMatrix::zeros(generated.rows(), generated.ncols());
        let mut cols = Vec::new();
        for f in 0..m {
            for a in 0..b.dim() {
                for g in 0..m {
                    let mut col = qgdual_core::SparseVec::new();
                    for (l, c) in hhat.iterated_comul_basis(f, 3) {
                        for (g1, g2, e) in hhat.comul_basis(g) {
                            let s = hhat.antipode_of(&hhat.basis_vector(l[0]));
                            let hit = h.hit_left(&p.sigma, &s);
                            let x = hhat.mul(&hhat.mul(&hhat.basis_vector(l[2]), &hhat.basis_vector(*g2)), &hit);
                            let coef = fhat.apply(&x);
                            let y = hhat.mul(&hhat.basis_vector(l[1]), &sinv.col(*g1));
                            let acted = b.act(&y, &qgdual_core::SparseVec::unit(a));
                            for (k, kc) in coef.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                                for (z, zc) in acted.iter() {
                                    col.add_at(k * b.dim() + z, &(&c * &(e * &(kc * zc))));
                                }
                            }
                        }
                    }
                    cols.push(col);
                }
            }
        }
        direct = direct.add(&SparseMatrix::from_cols(generated.rows(), cols));
        assert_eq!(generated, direct);
    }
}

#[test]
fn tau_is_a_yd_morphism_commuting_with_the_operators() {
    for name in ["C[Z2]", "C[Z3]", "C^Z2"] {
        let h = corpus::group_by_name(name).unwrap();
        let hhat = h.dualize().unwrap();
        let b = z2_algebra(&h).unwrap_or_else(|| trivial_algebra(&h)).crossed_product(&h);
        let c = b.crossed_product(&hhat);
        for p in corpus_pairs(&h).unwrap() {
            let dp = dualize_pair(&p);
            let src = YdForms::new(&h, &hhat, &c, &p, 2);
            let dst = YdForms::new(&hhat, &h, &b, &dp, 2);
            let taus: Vec<SparseMatrix> = (0..=2).map(|n| tau(&h, &hhat, &p, &b, n).unwrap()).collect();
            for n in 0..=2 {
                let flipped = dst.module(n).flipped();
                assert!(is_morphism(&taus[n], &src.module(n), &flipped), "{name} deg {n}");
            }
            for n in 0..2 {
                assert_eq!(taus[n + 1].compose(&src.d(n)), dst.d(n).compose(&taus[n]), "{name} d {n}");
                assert_eq!(taus[n + 1].compose(&src.big_b(n)), dst.big_b(n).compose(&taus[n]), "{name} B {n}");
                for j in 0..=n + 1 {
                    assert_eq!(
                        taus[n].compose(&src.face(n + 1, j)),
                        dst.face(n + 1, j).compose(&taus[n + 1]),
                        "{name} face {j} deg {}",
                        n + 1
                    );
                }
            }
        }
    }
}

#[test]
fn trace_map_in_degree_zero() {
    // tr(e ⊗ a⊗r⊗g) = g(r) e ⊗ a for the unit e of C[Z2]
    let h = corpus::c_z2();
    let a = trivial_algebra(&h);
    let tr = trace_map(&h, &a, 0);
    for x in 0..4 {
        let (r, g) = (x / 2, x % 2);
        let col = tr.col(x);
        assert_eq!(col.get(0), if r == g { qgdual_core::Scalar::one() } else { qgdual_core::Scalar::zero() });
    }
    let ak = tensor_kernel(&h, &z2_algebra(&h).unwrap());
    let src = qgdual_core::forms::build_ayd(&h, &ak, 1);
    let dst = qgdual_core::forms::build_ayd(&h, &z2_algebra(&h).unwrap(), 1);
    for n in 0..=1 {
        let tr = trace_map(&h, &z2_algebra(&h).unwrap(), n);
        assert!(is_morphism(&tr, &src.modules[n], &dst.modules[n]), "deg {n}");
    }
}

#[test]
fn duality_composite_in_low_degrees() {
    for name in ["C[Z2]", "C[Z3]", "C[Z4]", "C^Z2"] {
        let h = corpus::group_by_name(name).unwrap();
        let hhat = h.dualize().unwrap();
        let mut algs = vec![trivial_algebra(&h)];
        algs.extend(z2_algebra(&h));
        for p in corpus_pairs(&h).unwrap() {
            for a in &algs {
                for n in 0..=1 {
                    let c = duality_comparison(&h, &hhat, a, &p, n).unwrap();
                    assert!(c.verdict().is_equal(), "{name} {} deg {n}: {:?}", a.name, c.verdict());
                    assert_eq!(c.composite.rank(), c.composite.rows(), "{name} deg {n}");
                }
            }
        }
    }
}
