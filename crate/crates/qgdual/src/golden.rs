//! DSL expressions next to direct tensor implementations of the same thing.
//!
//! Each expected tensor is assembled from the structure tables alone, never
//! through the DSL, so a pass means parser, compiler and contraction agree
//! with plain loops.

use qgdual_core::dsl::{compile, evaluate, evaluate_reversed, parse, DslError, Env};
use qgdual_core::modular::ModularPair;
use qgdual_core::{FiniteQuantumGroup, Matrix, Scalar, SparseTensor};

pub struct GoldenCase {
    pub expr: &'static str,
    pub expected: SparseTensor,
}

/// Axes in row-major order; `f` gives the entry at a multi-index.
fn dense(shape: &[usize], f: impl Fn(&[usize]) -> Scalar) -> SparseTensor {
    let total: usize = shape.iter().product();
    let mut entries = Vec::new();
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
    SparseTensor::from_entries(shape, entries).expect("shape fits")
}

/// A linear map `t ↦ M t` as a tensor with axes `(t, out)`.
fn map_tensor(m: &Matrix) -> SparseTensor {
    dense(&[m.cols(), m.rows()], |i| m[(i[1], i[0])].clone())
}

/// Cases that need only the quantum group and its integrals.
pub fn plain_cases(h: &FiniteQuantumGroup, hh: &FiniteQuantumGroup) -> Vec<GoldenCase> {
    let n = h.dim();
    let e = |i: usize| h.basis_vector(i);
    let phi = h.left_integral.clone().expect("integrals solved");
    let psi = h.right_integral.clone().expect("integrals solved");
    let comul = |t: usize, a: usize, b: usize| h.comul_basis(t).iter().filter(|(x, y, _)| *x == a && *y == b).map(|(_, _, c)| c.clone()).sum::<Scalar>();
    vec![
        GoldenCase { expr: "S(t)", expected: map_tensor(&h.antipode) },
        GoldenCase { expr: "Sinv(t)", expected: map_tensor(&h.antipode_power(-1)) },
        GoldenCase { expr: "S2(t)", expected: map_tensor(&h.antipode_power(2)) },
        GoldenCase { expr: "t s", expected: dense(&[n, n, n], |i| h.mul_basis(i[0], i[1]).get(i[2])) },
        GoldenCase { expr: "x .> f", expected: dense(&[n, n, n], |i| h.hit_left(&e(i[0]), &e(i[1]))[i[2]].clone()) },
        GoldenCase { expr: "f <. x", expected: dense(&[n, n, n], |i| h.hit_right(&e(i[0]), &e(i[1]))[i[2]].clone()) },
        GoldenCase { expr: "phi(t)", expected: dense(&[n], |i| phi[i[0]].clone()) },
        GoldenCase { expr: "psi(t)", expected: dense(&[n], |i| psi[i[0]].clone()) },
        GoldenCase { expr: "t(1) @ t(2)", expected: dense(&[n, n, n], |i| comul(i[0], i[1], i[2])) },
        GoldenCase { expr: "f g", expected: dense(&[n, n, n], |i| hh.mul_basis(i[0], i[1]).get(i[2])) },
        GoldenCase { expr: "f(t(1)) g(t(2))", expected: dense(&[n, n, n], |i| comul(i[1], i[0], i[2])) },
        GoldenCase { expr: "t(1) S(t(2))", expected: dense(&[n, n], |i| &h.counit[i[0]] * &h.unit[i[1]]) },
        // φ(r t) as a functional of r
        GoldenCase { expr: "Fl(t)", expected: dense(&[n, n], |i| h.mul_basis(i[1], i[0]).iter().map(|(k, c)| c * &phi[k]).sum()) },
        GoldenCase { expr: "phihat(Gr(t))", expected: dense(&[n], |i| h.counit[i[0]].clone()) },
        GoldenCase { expr: "psihat(Fl(t))", expected: dense(&[n], |i| h.counit[i[0]].clone()) },
        GoldenCase {
            expr: "phi(t(1)) t(2)",
            expected: dense(&[n, n], |i| (0..n).map(|a| &comul(i[0], a, i[1]) * &phi[a]).sum()),
        },
    ]
}

/// Cases involving a modular pair.
pub fn pair_cases(h: &FiniteQuantumGroup, hh: &FiniteQuantumGroup, pair: &ModularPair) -> Vec<GoldenCase> {
    let n = h.dim();
    let sigma_inv = h.antipode_of(&pair.sigma);
    let delta_inv = hh.antipode_of(&pair.delta);
    let conj = |t: usize| h.mul(&h.mul(&pair.sigma, &h.basis_vector(t)), &sigma_inv);
    // δ(t(1)) t(2) δ⁻¹(t(3))
    let twisted = |t: usize, out: usize| {
        h.iterated_comul_basis(t, 3)
            .into_iter()
            .filter(|(l, _)| l[1] == out)
            .map(|(l, c)| &(&c * &pair.delta[l[0]]) * &delta_inv[l[2]])
            .sum::<Scalar>()
    };
    vec![
        GoldenCase { expr: "sigma t sigma^-1", expected: dense(&[n, n], |i| conj(i[0])[i[1]].clone()) },
        GoldenCase { expr: "delta^-1 .> t <. delta", expected: dense(&[n, n], |i| twisted(i[0], i[1])) },
        GoldenCase { expr: "delta(t)", expected: dense(&[n], |i| pair.delta[i[0]].clone()) },
    ]
}

/// Outcome of one golden case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenOutcome {
    pub expr: &'static str,
    pub matches: bool,
    pub order_invariant: bool,
}

pub fn run_case(case: &GoldenCase, env: &Env) -> Result<GoldenOutcome, DslError> {
    let c = compile(&parse(case.expr)?, env)?;
    let forward = evaluate(&c)?;
    let backward = evaluate_reversed(&c)?;
    Ok(GoldenOutcome {
        expr: case.expr,
        matches: forward == case.expected,
        order_invariant: forward == backward,
    })
}
