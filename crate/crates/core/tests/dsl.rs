use qgdual_core::corpus::{self, sweedler, z2_algebra};
use qgdual_core::dsl::{
    check_identity, compile, evaluate, evaluate_reversed, parse, parse_identity, parse_identity_file, AlgebraSide,
    DslError, Env, Signature, Space, Verdict,
};
use qgdual_core::duality::twisted_fourier;
use qgdual_core::{FiniteQuantumGroup, Scalar, SparseTensor};

fn q(n: i64) -> Scalar {
    Scalar::from(n)
}

fn dense(shape: &[usize], f: impl Fn(&[usize]) -> Scalar) -> SparseTensor {
    let mut entries = Vec::new();
    let total: usize = shape.iter().product();
    for flat in 0..total {
        let mut idx = vec![0; shape.len()];
        let mut r = flat;
        for k in (0..shape.len()).rev() {
            idx[k] = r % shape[k];
            r /= shape[k];
        }
        let v = f(&idx);
        if !v.is_zero() {
            entries.push((idx, v));
        }
    }
    SparseTensor::from_entries(shape, entries).unwrap()
}

fn eval(src: &str, env: &Env) -> SparseTensor {
    let c = compile(&parse(src).unwrap(), env).unwrap_or_else(|e| panic!("{src}: {e}"));
    let t = evaluate(&c).unwrap();
    assert_eq!(t, evaluate_reversed(&c).unwrap(), "order dependence in {src}");
    t
}

fn groups() -> Vec<(FiniteQuantumGroup, FiniteQuantumGroup)> {
    corpus::all_groups()
        .into_iter()
        .map(|h| {
            let hh = h.dualize().unwrap();
            (h, hh)
        })
        .collect()
}

#[test]
fn golden_expressions_match_direct_computation() {
    for (h, hh) in groups() {
        let n = h.dim();
        let env = Env::new(&h, &hh);
        let e = |i: usize| h.basis_vector(i);
        let cases: Vec<(&str, SparseTensor)> = vec![
            ("S(t)", dense(&[n, n], |i| h.antipode[(i[1], i[0])].clone())),
            ("S2(t)", dense(&[n, n], |i| h.antipode_power(2)[(i[1], i[0])].clone())),
            ("t s", dense(&[n, n, n], |i| h.mul_basis(i[0], i[1]).get(i[2]))),
            ("f(t)", dense(&[n, n], |i| if i[0] == i[1] { q(1) } else { q(0) })),
            ("x .> f", dense(&[n, n, n], |i| h.hit_left(&e(i[0]), &e(i[1]))[i[2]].clone())),
            ("f <. x", dense(&[n, n, n], |i| h.hit_right(&e(i[0]), &e(i[1]))[i[2]].clone())),
            ("phi(t)", dense(&[n], |i| h.left_integral.as_ref().unwrap()[i[0]].clone())),
            ("psi(t)", dense(&[n], |i| h.right_integral.as_ref().unwrap()[i[0]].clone())),
            ("t(1) @ t(2)", dense(&[n, n, n], |i| h.comul(&e(i[0]))[(i[1], i[2])].clone())),
            ("t(2) @ t(1)", dense(&[n, n, n], |i| h.comul(&e(i[0]))[(i[2], i[1])].clone())),
            ("counit(t)", dense(&[n], |i| h.counit[i[0]].clone())),
            ("t(1) S(t(2))", dense(&[n, n], |i| h.counit[i[0]].clone() * h.unit[i[1]].clone())),
            ("f g", dense(&[n, n, n], |i| hh.mul_basis(i[0], i[1]).get(i[2]))),
            ("2 t - 3 t", dense(&[n, n], |i| if i[0] == i[1] { q(-1) } else { q(0) })),
            (
                "f(t(1)) g(t(2))",
                dense(&[n, n, n], |i| h.comul(&e(i[1]))[(i[0], i[2])].clone()),
            ),
            ("phihat(1) @ phihat(2)", {
                let p = hh.left_integral.clone().unwrap();
                dense(&[n, n], |i| h.comul(&p)[(i[0], i[1])].clone())
            }),
        ];
        for (src, want) in cases {
            assert_eq!(eval(src, &env), want, "{} on {}", src, h.name);
        }
    }
}

#[test]
fn module_algebra_expressions() {
    for (h, hh) in groups() {
        let Some(alg) = z2_algebra(&h) else { continue };
        let env = Env::new(&h, &hh).with_algebra(&alg, AlgebraSide::H);
        let (n, d) = (h.dim(), alg.dim());
        let act = eval("act(t, a)", &env);
        assert_eq!(act, alg.action_tensor(), "{}", h.name);
        let co = eval("a(0) @ a(1)", &env);
        assert_eq!(co, alg.coaction_tensor());
        let ab = eval("a b", &env);
        assert_eq!(ab, alg.mult_tensor());
        // module algebra compatibility
        let v = check_identity(
            &parse("act(t, a b)").unwrap(),
            &parse("act(t(1), a) act(t(2), b)").unwrap(),
            &env,
        )
        .unwrap();
        assert!(v.is_equal(), "{}: {v:?}", h.name);
        // the coaction reconstructs the action
        let (l, r) = parse_identity("act(t, a) == a(0) a(1)(t)").unwrap();
        assert!(check_identity(&l, &r, &env).unwrap().is_equal());
        assert_eq!(eval("act(t, a)", &env).shape(), &[n, d, d]);
    }
}

#[test]
fn standard_identities_hold_everywhere() {
    let ids = "
        m(S(t(1)), t(2)) == counit(t) unit
        t(1) S(t(2)) == S(t(1)) t(2)
        # product in the dual is dual to the coproduct
        (f g)(t) == f(t(1)) g(t(2))
    ";
    let parsed = parse_identity_file(ids).unwrap();
    assert_eq!(parsed.len(), 3);
    for (h, hh) in groups() {
        let env = Env::new(&h, &hh);
        for (l, r) in &parsed {
            assert_eq!(check_identity(l, r, &env).unwrap(), Verdict::Equal, "{l} == {r} on {}", h.name);
        }
        let more = [
            "t(1) phi(t(2)) == phi(t) unit",
            "psi(t(1)) t(2) == psi(t) unit",
            "S(t s) == S(s) S(t)",
            "Sinv(S(t)) == t",
            "f(t s) == f(1)(t) f(2)(s)",
            "S(f)(t) == f(S(t))",
            "x .> (y .> f) == (x y) .> f",
            "(f <. x) <. y == f <. (x y)",
            "(x .> f)(y) == f(y x)",
            "counit(t(1)) t(2) == t",
        ];
        for src in more {
            let (l, r) = parse_identity(src).unwrap();
            assert!(check_identity(&l, &r, &env).unwrap().is_equal(), "{src} on {}", h.name);
        }
    }
}

#[test]
fn false_identity_gives_witness() {
    let h = sweedler();
    let hh = h.dualize().unwrap();
    let env = Env::new(&h, &hh);
    let (l, r) = parse_identity("t(1) @ t(2) == t(2) @ t(1)").unwrap();
    match check_identity(&l, &r, &env).unwrap() {
        Verdict::NotEqual { witness, outputs, lhs, rhs } => {
            assert_eq!(witness.len(), 1);
            assert_eq!(outputs.len(), 2);
            assert_ne!(lhs, rhs);
        }
        Verdict::Equal => panic!("Sweedler's algebra is not cocommutative"),
    }
    let (l, r) = parse_identity("S2(t) == t").unwrap();
    assert!(!check_identity(&l, &r, &env).unwrap().is_equal());
}

#[test]
fn twisted_fourier_matches_macro() {
    for (h, hh) in groups() {
        for sigma in &h.grouplike_candidates {
            for delta in &h.character_candidates {
                let env = Env::new(&h, &hh).with_pair(sigma, delta);
                let m = twisted_fourier(&h, &hh, sigma, delta).unwrap();
                let n = h.dim();
                let want = dense(&[n, n], |i| m[(i[1], i[0])].clone());
                assert_eq!(eval("Fhat(f)", &env), want);
                let (l, r) = parse_identity("Fhat(f)(g) == psihat(Sinv(f) (sigma .> g) delta)").unwrap();
                assert!(check_identity(&l, &r, &env).unwrap().is_equal());
                let sw = env.swapped();
                let (l, r) = parse_identity("Fhat(f)(g) == psihat(Sinv(f) (sigma .> g) delta)").unwrap();
                assert!(check_identity(&l, &r, &sw).unwrap().is_equal());
            }
        }
    }
}

#[test]
fn powers_and_copies() {
    let h = corpus::group_by_name("C[Z4]").unwrap();
    let hh = h.dualize().unwrap();
    let g = h.basis_vector(1);
    let env = Env::new(&h, &hh).with_pair(&g, &h.counit);
    let (l, r) = parse_identity("sigma^2 == sigma sigma").unwrap();
    assert!(check_identity(&l, &r, &env).unwrap().is_equal());
    let (l, r) = parse_identity("sigma^-1 sigma t == t").unwrap();
    assert!(check_identity(&l, &r, &env).unwrap().is_equal());
    let t = eval("sigma^3", &env);
    assert_eq!(t.get(&[3]), q(1));
    let (l, r) = parse_identity("psihat[1](1) @ psihat[1](2) @ psihat[2](1) == psihat(1) @ psihat(2) @ psihat").unwrap();
    assert!(check_identity(&l, &r, &env).unwrap().is_equal());
}

#[test]
fn signature_overrides_default_tags() {
    let h = sweedler();
    let hh = h.dualize().unwrap();
    let env = Env::new(&h, &hh).with_signature(Signature::default().with("omega", Space::Hhat));
    let t = eval("omega(t)", &env);
    assert_eq!(t.shape(), &[4, 4]);
    assert!(matches!(compile(&parse("mu").unwrap(), &Env::new(&h, &hh)), Err(DslError::Unbound(_))));
}

#[test]
fn rejects_ill_formed_expressions() {
    let h = sweedler();
    let hh = h.dualize().unwrap();
    let env = Env::new(&h, &hh);
    let bad = |s: &str| compile(&parse(s).unwrap(), &env).unwrap_err();
    assert!(matches!(bad("f(g)"), DslError::TagMismatch(_)));
    assert!(matches!(bad("t f"), DslError::TagMismatch(_)));
    assert!(matches!(bad("t(1) t(1)"), DslError::Legs(_)));
    assert!(matches!(bad("t(2)"), DslError::Legs(_)));
    assert!(matches!(bad("t t"), DslError::Legs(_)));
    assert!(matches!(bad("t + s"), DslError::SignatureMismatch(_)));
    assert!(matches!(bad("sigma"), DslError::Unbound(_)));
    assert!(matches!(bad("act(t, s)"), DslError::Unbound(_)));
    match parse("t +\n  * s") {
        Err(DslError::Syntax { line, col, .. }) => assert_eq!((line, col), (2, 3)),
        other => panic!("{other:?}"),
    }
    match parse_identity_file("t == t\n\nt == s )") {
        Err(DslError::Syntax { line, .. }) => assert_eq!(line, 3),
        other => panic!("{other:?}"),
    }
}

#[test]
fn printing_round_trips() {
    let srcs = [
        "t(1) S(t(2))",
        "m(S(t(1)), t(2))",
        "delta^-1 .> (sigma t sigma^-1) <. delta",
        "phi(r t) - phi(t (delta .> (sigma r sigma^-1) <. delta))",
        "-2 t + 1/3 * S(t)",
        "Fhat(f(3) g(2) (sigma .> S(f(1)))) @ act(f(2) Sinv(g(1)), a)",
        "(x .> f) <. y",
        "x .> f <. y",
        "psihat[1](2) @ sigma^2",
        "t @ s + s @ t",
        "(t + s) (t - s)",
        "f(t)(s)",
        "a(0) @ a(1)",
        "counit(t) unit",
    ];
    for s in srcs {
        let e = parse(s).unwrap();
        let printed = e.to_string();
        assert_eq!(parse(&printed).unwrap(), e, "{s} printed as {printed}");
    }
}

#[test]
fn hits_bind_tighter_than_products() {
    let e = parse("t delta .> x <. delta").unwrap();
    let f = parse("t (delta .> (x <. delta))").unwrap();
    assert_eq!(e, f);
    let e = parse("sigma .> f delta").unwrap();
    let f = parse("(sigma .> f) delta").unwrap();
    assert_eq!(e, f);
}
