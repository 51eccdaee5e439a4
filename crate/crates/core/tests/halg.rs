use qgdual_core::corpus::{self, trivial_algebra, z2_algebra};
use qgdual_core::halg::{is_equivariant, is_multiplicative, kernel_algebra, takesaki_takai, tensor_kernel};
use qgdual_core::modular::corpus_pairs;
use qgdual_core::{Matrix, ModuleAlgebra, Scalar, SparseVec};

fn center_dim(a: &ModuleAlgebra) -> usize {
    let d = a.dim();
    let mut rows = Vec::new();
    for y in 0..d {
        // coefficient of e_k in x y - y x, as a row in the coordinates of x
        let mut block = vec![vec![Scalar::zero(); d]; d];
        for x in 0..d {
            let c = a.mul_basis(x, y).sub(a.mul_basis(y, x));
            for (k, v) in c.iter() {
                block[k][x] = v.clone();
            }
        }
        rows.extend(block);
    }
    d - Matrix::from_rows(&rows).rank()
}

fn valid(a: &ModuleAlgebra, h: &qgdual_core::FiniteQuantumGroup) {
    let r = a.validate(h);
    assert!(r.passed(), "{}: {:?}", a.name, r.failures().collect::<Vec<_>>());
}

#[test]
fn corpus_algebras_and_constructions_validate() {
    for h in corpus::all_groups() {
        let hhat = h.dualize().unwrap();
        let mut algs = vec![trivial_algebra(&h)];
        algs.extend(z2_algebra(&h));
        for a in algs {
            valid(&a, &h);
            valid(&a.unitarise(&h), &h);
            let cp = a.crossed_product(&h);
            valid(&cp, &hhat);
            assert_eq!(cp.dim(), a.dim() * h.dim());
        }
        valid(&kernel_algebra(&h), &h);
    }
}

#[test]
fn unitarisation_of_the_scalars() {
    let h = corpus::c_z2();
    let c = trivial_algebra(&h).unitarise(&h);
    assert_eq!(c.dim(), 2);
    // (a,λ)(b,μ) = (ab + aμ + λb, λμ)
    assert_eq!(c.mul_basis(0, 0), &SparseVec::unit(0));
    assert_eq!(c.mul_basis(0, 1), &SparseVec::unit(0));
    assert_eq!(c.mul_basis(1, 1), &SparseVec::unit(1));
    // already unital algebras still get a fresh unit
    let a = z2_algebra(&h).unwrap();
    assert_eq!(a.unitarise(&h).dim(), 3);
}

#[test]
fn crossed_products_of_small_algebras() {
    let h = corpus::c_z2();
    let triv = trivial_algebra(&h).crossed_product(&h);
    for i in 0..2 {
        for j in 0..2 {
            assert_eq!(triv.mul_basis(i, j), h.mul_basis(i, j));
        }
    }
    let m = z2_algebra(&h).unwrap().crossed_product(&h);
    assert_eq!(m.dim(), 4);
    assert_eq!(center_dim(&m), 1);
}

#[test]
fn kernel_algebra_is_a_matrix_algebra() {
    for h in corpus::all_groups() {
        let k = kernel_algebra(&h);
        let n = h.dim();
        assert_eq!(center_dim(&k), 1, "{}", h.name);
        let tr = |v: &SparseVec| v.iter().filter(|(i, _)| i / n == i % n).fold(Scalar::zero(), |s, (_, x)| s + x);
        for x in 0..k.dim() {
            if x / n == x % n {
                assert_eq!(k.mul_basis(x, x), &SparseVec::unit(x));
            }
            for y in 0..k.dim() {
                assert_eq!(tr(k.mul_basis(x, y)), tr(k.mul_basis(y, x)));
            }
        }
    }
}

#[test]
fn takesaki_takai_is_an_equivariant_isomorphism() {
    for h in corpus::all_groups() {
        let hhat = h.dualize().unwrap();
        let mut algs = vec![trivial_algebra(&h)];
        algs.extend(z2_algebra(&h));
        for p in corpus_pairs(&h).unwrap() {
            for a in &algs {
                let double = a.crossed_product(&h).crossed_product(&hhat);
                let target = tensor_kernel(&h, a);
                valid(&target, &h);
                let g = takesaki_takai(&h, &hhat, a, &p.sigma, &p.delta).unwrap();
                let ctx = format!("{} / {} / {:?}", h.name, a.name, p.sigma);
                assert_eq!(g.rank(), double.dim(), "{ctx}");
                assert_eq!(is_multiplicative(&g, &double, &target), None, "{ctx}");
                assert_eq!(is_equivariant(&g, &double, &target), None, "{ctx}");
            }
        }
    }
}

#[test]
fn takesaki_takai_depends_on_the_pair() {
    // σ enters only through its action on A, so over ℂ the two pairs of
    // C[Z2] (both with δ = ε) give the same map
    let h = corpus::c_z2();
    let hhat = h.dualize().unwrap();
    let ps = corpus_pairs(&h).unwrap();
    assert_eq!(ps.len(), 2);
    let gamma = |a: &ModuleAlgebra, i: usize| takesaki_takai(&h, &hhat, a, &ps[i].sigma, &ps[i].delta).unwrap();
    let c = trivial_algebra(&h);
    assert_eq!(gamma(&c, 0), gamma(&c, 1));
    let a = z2_algebra(&h).unwrap();
    assert_ne!(gamma(&a, 0), gamma(&a, 1));
}
