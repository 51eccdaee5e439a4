//! The equivariant X-complex `X⁰ = Ω⁰`, `X¹ = Ω¹ / b(Ω²)`, with
//! `∂₀ = q∘d` and `∂₁ = b`, and its invariant and twisted coinvariant parts.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::dsl::Verdict;
use crate::forms::{build_ayd, build_yd, compare_matrices, AydForms, FormComplex, YdForms};
use crate::hopf::FiniteQuantumGroup;
use crate::halg::ModuleAlgebra;
use crate::modular::ModularPair;
use crate::linalg::{Echelon, Quotient, SparseMatrix, SparseVec};
use crate::scalar::Scalar;

/// A paracomplex `X⁰ ⇄ X¹` with the coefficient actions carried along.
#[derive(Clone, Debug)]
pub struct XComplex {
    pub x1: Quotient,
    pub d0: SparseMatrix,
    pub d1: SparseMatrix,
    pub t0: SparseMatrix,
    pub t1: SparseMatrix,
    /// Actions of the first and second acting quantum group on `X⁰`, `X¹`.
    pub h_action: [Vec<SparseMatrix>; 2],
    pub hhat_action: [Vec<SparseMatrix>; 2],
    pub omega1_dim: usize,
    pub boundary_rank: usize,
}

/// `Q ∘ M` for a quotient `Q` of the target of `M`.
fn into_quotient(q: &Quotient, m: &SparseMatrix) -> SparseMatrix {
    SparseMatrix::from_fn(q.dim(), m.ncols(), |j| q.project(m.col(j)))
}

/// `M ∘ L` for the representative lift `L` out of `Q`.
fn out_of_quotient(q: &Quotient, m: &SparseMatrix) -> SparseMatrix {
    SparseMatrix::from_fn(m.rows(), q.dim(), |k| m.apply(&q.lift(k)))
}

pub(crate) fn span(dim: usize, cols: impl IntoIterator<Item = SparseVec>) -> Echelon {
    let mut e = Echelon::new(dim);
    for c in cols {
        e.insert(c);
    }
    e
}

/// Stacks maps with a common source on top of each other.
fn vstack(ms: &[SparseMatrix], cols: usize) -> SparseMatrix {
    let rows: usize = ms.iter().map(|m| m.rows()).sum();
    SparseMatrix::from_fn(rows, cols, |j| {
        let mut out = SparseVec::new();
        let mut off = 0;
        for m in ms {
            for (i, x) in m.col(j).iter() {
                out.add_at(off + i, x);
            }
            off += m.rows();
        }
        out
    })
}

impl XComplex {
    /// Needs forms up to degree 2.
    pub fn from_forms(c: &FormComplex) -> XComplex {
        assert!(c.max_degree >= 2, "X-complex needs forms of degree 2");
        Self::assemble(c, &c.b[2])
    }

    /// Anti-Yetter-Drinfeld picture, built from degree one forms and `b₂`.
    pub fn ayd(k: &FiniteQuantumGroup, alg: &ModuleAlgebra) -> XComplex {
        let b2 = AydForms::new(k, alg, 2).b(2);
        Self::assemble(&build_ayd(k, alg, 1), &b2)
    }

    pub fn yd(k: &FiniteQuantumGroup, khat: &FiniteQuantumGroup, alg: &ModuleAlgebra, pair: &ModularPair) -> XComplex {
        let b2 = YdForms::new(k, khat, alg, pair, 2).b(2);
        Self::assemble(&build_yd(k, khat, alg, pair, 1), &b2)
    }

    /// `c` up to degree one at least, `b2` the boundary out of degree two.
    fn assemble(c: &FormComplex, b2: &SparseMatrix) -> XComplex {
        let dim1 = c.basis.dim(1);
        let sub = span(dim1, b2.columns().iter().cloned());
        let boundary_rank = sub.rank();
        let x1 = Quotient::new(sub);
        let d0 = into_quotient(&x1, &c.d[0]);
        let d1 = out_of_quotient(&x1, &c.b[1]);
        let t1 = x1.induced(&c.t[1], &x1);
        let induce = |acts: &Vec<SparseMatrix>| acts.iter().map(|a| x1.induced(a, &x1)).collect::<Vec<_>>();
        let h_action = [c.modules[0].h_action.clone(), induce(&c.modules[1].h_action)];
        let hhat_action = [c.modules[0].hhat_action.clone(), induce(&c.modules[1].hhat_action)];
        XComplex {
            x1,
            d0,
            d1,
            t0: c.t[0].clone(),
            t1,
            h_action,
            hhat_action,
            omega1_dim: dim1,
            boundary_rank,
        }
    }

    pub fn dims(&self) -> [usize; 2] {
        [self.d1.rows(), self.x1.dim()]
    }

    /// `∂₁∂₀ = id − T` on `X⁰` and `∂₀∂₁ = id − T` on `X¹`.
    pub fn paracomplex_check(&self) -> Vec<(String, Verdict)> {
        let [n0, n1] = self.dims();
        let id0 = SparseMatrix::identity(n0).sub(&self.t0);
        let id1 = SparseMatrix::identity(n1).sub(&self.t1);
        alloc::vec![
            (String::from("d1 d0 = id - T on X0"), compare_matrices(&self.d1.compose(&self.d0), &id0, "X0")),
            (String::from("d0 d1 = id - T on X1"), compare_matrices(&self.d0.compose(&self.d1), &id1, "X1")),
        ]
    }

    /// The subspace of each level fixed by the second action up to its
    /// counit: `f·m = ε(f)m`.
    pub fn invariants(&self, counit: &[Scalar]) -> [Vec<SparseVec>; 2] {
        let dims = self.dims();
        [0, 1].map(|lvl| {
            let n = dims[lvl];
            let ms: Vec<SparseMatrix> = self.hhat_action[lvl]
                .iter()
                .zip(counit)
                .map(|(a, e)| a.sub(&SparseMatrix::identity(n).scaled(e)))
                .collect();
            vstack(&ms, n).kernel()
        })
    }

    /// The subspaces `span{t•m − δ⁻¹(t)m}` killed by the twisted
    /// coinvariants, with `δ⁻¹(t)` given per basis element.
    pub fn coinvariant_relations(&self, delta_inv: &[Scalar]) -> [Echelon; 2] {
        let dims = self.dims();
        [0, 1].map(|lvl| {
            let n = dims[lvl];
            let cols = self.hhat_action[lvl]
                .iter()
                .zip(delta_inv)
                .flat_map(|(a, d)| a.sub(&SparseMatrix::identity(n).scaled(d)).columns().to_vec());
            span(n, cols)
        })
    }
}

/// Restriction of an honest subquotient: whether `T` is the identity and
/// `∂² = 0` there, and the homology dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubquotientReport {
    pub dims: [usize; 2],
    pub t_is_identity: bool,
    pub square_zero: bool,
    pub homology: [usize; 2],
}

fn rank_on(m: &SparseMatrix, basis: &[SparseVec]) -> usize {
    span(m.rows(), basis.iter().map(|v| m.apply(v))).rank()
}

/// Checks the invariant subcomplex spanned by `inv`.
pub fn invariant_report(x: &XComplex, inv: &[Vec<SparseVec>; 2]) -> SubquotientReport {
    let t_id = inv[0].iter().all(|v| &x.t0.apply(v) == v) && inv[1].iter().all(|v| &x.t1.apply(v) == v);
    let sq0 = x.d1.compose(&x.d0);
    let sq1 = x.d0.compose(&x.d1);
    let square_zero = inv[0].iter().all(|v| sq0.apply(v).is_zero()) && inv[1].iter().all(|v| sq1.apply(v).is_zero());
    let (r0, r1) = (rank_on(&x.d0, &inv[0]), rank_on(&x.d1, &inv[1]));
    SubquotientReport {
        dims: [inv[0].len(), inv[1].len()],
        t_is_identity: t_id,
        square_zero,
        homology: [inv[0].len() - r0 - r1, inv[1].len() - r1 - r0],
    }
}

/// Maps `∂₀`, `∂₁`, `T` induced on quotients of both levels.
#[derive(Clone, Debug)]
pub struct QuotientComplex {
    pub q: [Quotient; 2],
    pub d0: SparseMatrix,
    pub d1: SparseMatrix,
    pub t0: SparseMatrix,
    pub t1: SparseMatrix,
}

impl QuotientComplex {
    pub fn new(x: &XComplex, rel: [Echelon; 2]) -> Self {
        let [r0, r1] = rel;
        let q = [Quotient::new(r0), Quotient::new(r1)];
        QuotientComplex {
            d0: q[0].induced(&x.d0, &q[1]),
            d1: q[1].induced(&x.d1, &q[0]),
            t0: q[0].induced(&x.t0, &q[0]),
            t1: q[1].induced(&x.t1, &q[1]),
            q,
        }
    }

    pub fn report(&self) -> SubquotientReport {
        let n = [self.q[0].dim(), self.q[1].dim()];
        let t_is_identity = self.t0 == SparseMatrix::identity(n[0]) && self.t1 == SparseMatrix::identity(n[1]);
        let square_zero = self.d1.compose(&self.d0).is_zero() && self.d0.compose(&self.d1).is_zero();
        let (r0, r1) = (self.d0.rank(), self.d1.rank());
        SubquotientReport {
            dims: n,
            t_is_identity,
            square_zero,
            homology: [n[0] - r0 - r1, n[1] - r1 - r0],
        }
    }
}

/// Whether every relation vector maps to zero under `map` followed by the
/// projection to `target`.
pub fn kills(map: &SparseMatrix, rel: &Echelon, target: &Quotient) -> bool {
    rel.basis().all(|v| target.project(&map.apply(v)).is_zero())
}

/// `α` and `β` between the twisted coinvariants of the equivariant complex
/// and a nonequivariant complex, with the checks that they are inverse
/// chain maps.
#[derive(Clone, Debug)]
pub struct CoinvariantComparison {
    pub alpha: [SparseMatrix; 2],
    pub beta: [SparseMatrix; 2],
    pub checks: Vec<(String, bool)>,
}

/// `α(t ⊗ ω) = δ⁻¹(t) ω` and `β(ω) = 1 ⊗ ω` on the form level, for a
/// coefficient space of dimension `coef_dim` and the unit `unit` of the
/// coefficients.
pub fn compare_coinvariants(
    x: &XComplex,
    plain: &XComplex,
    coinv: &QuotientComplex,
    delta_inv: &[Scalar],
    unit: &[Scalar],
) -> CoinvariantComparison {
    let coef_dim = delta_inv.len();
    let words = [plain.dims()[0], plain.x1.ambient_dim()];
    let ambient = [x.dims()[0], x.x1.ambient_dim()];
    // form-level maps
    let alpha_form: [SparseMatrix; 2] = [0, 1].map(|l| {
        SparseMatrix::from_fn(words[l], ambient[l], |col| {
            let (t, w) = (col / words[l], col % words[l]);
            let mut v = SparseVec::new();
            v.add_at(w, &delta_inv[t]);
            v
        })
    });
    let beta_form: [SparseMatrix; 2] = [0, 1].map(|l| {
        SparseMatrix::from_fn(ambient[l], words[l], |w| {
            (0..coef_dim).filter(|&t| !unit[t].is_zero()).map(|t| (t * words[l] + w, unit[t].clone())).collect()
        })
    });
    // level 1 passes through Ω¹ → X¹ on both sides
    let alpha = [
        out_of_quotient(&coinv.q[0], &alpha_form[0]),
        SparseMatrix::from_fn(plain.x1.dim(), coinv.q[1].dim(), |k| {
            let m = x.x1.lift_vec(&coinv.q[1].lift(k));
            plain.x1.project(&alpha_form[1].apply(&m))
        }),
    ];
    let beta = [
        into_quotient(&coinv.q[0], &beta_form[0]),
        SparseMatrix::from_fn(coinv.q[1].dim(), plain.x1.dim(), |k| {
            let m = beta_form[1].apply(&plain.x1.lift(k));
            coinv.q[1].project(&x.x1.project(&m))
        }),
    ];
    let mut checks = Vec::new();
    let alpha_x1 = SparseMatrix::from_fn(plain.x1.dim(), x.x1.dim(), |k| plain.x1.project(&alpha_form[1].apply(&x.x1.lift(k))));
    checks.push((
        String::from("alpha well defined on X0"),
        kills(&alpha_form[0], coinv.q[0].subspace(), &identity_quotient(words[0])),
    ));
    checks.push((String::from("alpha preserves b(Omega2)"), kills(&alpha_form[1], x.x1.subspace(), &plain.x1)));
    // only modulo the coinvariant relations
    let beta_ok = plain.x1.subspace().basis().all(|v| coinv.q[1].project(&x.x1.project(&beta_form[1].apply(v))).is_zero());
    checks.push((String::from("beta preserves b(Omega2)"), beta_ok));
    checks.push((String::from("alpha well defined on X1"), kills(&alpha_x1, coinv.q[1].subspace(), &identity_quotient(plain.x1.dim()))));
    let n = [coinv.q[0].dim(), coinv.q[1].dim()];
    let m = plain.dims();
    for l in 0..2 {
        checks.push((format!("alpha beta = id on level {l}"), alpha[l].compose(&beta[l]) == SparseMatrix::identity(m[l])));
        checks.push((format!("beta alpha = id on level {l}"), beta[l].compose(&alpha[l]) == SparseMatrix::identity(n[l])));
    }
    checks.push((String::from("alpha d0 = d0 alpha"), alpha[1].compose(&coinv.d0) == plain.d0.compose(&alpha[0])));
    checks.push((String::from("alpha d1 = d1 alpha"), alpha[0].compose(&coinv.d1) == plain.d1.compose(&alpha[1])));
    checks.push((String::from("beta d0 = d0 beta"), beta[1].compose(&plain.d0) == coinv.d0.compose(&beta[0])));
    checks.push((String::from("beta d1 = d1 beta"), beta[0].compose(&plain.d1) == coinv.d1.compose(&beta[1])));
    CoinvariantComparison { alpha, beta, checks }
}

fn identity_quotient(n: usize) -> Quotient {
    Quotient::new(Echelon::new(n))
}

/// `ι(ω) = φ̂ ⊗ ω` from a nonequivariant complex into the invariants, and
/// the checks that it is an injective chain map onto them.
pub fn compare_invariants(x: &XComplex, plain: &XComplex, integral: &[Scalar], inv: &[Vec<SparseVec>; 2]) -> Vec<(String, bool)> {
    let words = [plain.dims()[0], plain.x1.ambient_dim()];
    let iota_form: [SparseMatrix; 2] = [0, 1].map(|l| {
        SparseMatrix::from_fn(words[l] * integral.len(), words[l], |w| {
            integral.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(t, c)| (t * words[l] + w, c.clone())).collect()
        })
    });
    let iota = [
        iota_form[0].clone(),
        SparseMatrix::from_fn(x.x1.dim(), plain.x1.dim(), |k| x.x1.project(&iota_form[1].apply(&plain.x1.lift(k)))),
    ];
    let mut out = alloc::vec![(String::from("iota preserves b(Omega2)"), kills(&iota_form[1], plain.x1.subspace(), &x.x1))];
    for l in 0..2 {
        let image = span(iota[l].rows(), iota[l].columns().iter().cloned());
        let invs = span(iota[l].rows(), inv[l].iter().cloned());
        let same = image.rank() == invs.rank() && inv[l].iter().all(|v| image.contains(v));
        out.push((format!("invariants of level {l} are integral ⊗ forms"), same));
        out.push((format!("integral ⊗ - injective on level {l}"), iota[l].rank() == iota[l].ncols()));
    }
    out.push((String::from("iota d0 = d0 iota"), iota[1].compose(&plain.d0) == x.d0.compose(&iota[0])));
    out.push((String::from("iota d1 = d1 iota"), iota[0].compose(&plain.d1) == x.d1.compose(&iota[1])));
    out
}
