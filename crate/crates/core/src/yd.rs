//! Anti-Yetter-Drinfeld and Yetter-Drinfeld modules over a quantum group
//! and its dual, the conversion between them given by a modular pair, and
//! the symmetry operator `T`.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::dsl::Verdict;
use crate::hopf::FiniteQuantumGroup;
use crate::linalg::{SparseMatrix, SparseVec};
use crate::modular::{verify_pair_with, ModularPair, PairError};
use crate::scalar::Scalar;

/// A space with a left `H`-action and a left `Ĥ`-action, one matrix per
/// basis element of each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiModule {
    pub name: String,
    pub dim: usize,
    pub h_action: Vec<SparseMatrix>,
    pub hhat_action: Vec<SparseMatrix>,
}

fn combine(mats: &[SparseMatrix], coeffs: &[Scalar], dim: usize) -> SparseMatrix {
    let mut out = SparseMatrix::zeros(dim, dim);
    for (m, c) in mats.iter().zip(coeffs) {
        if !c.is_zero() {
            out = out.add(&m.scaled(c));
        }
    }
    out
}

fn mismatch(names: [&str; 3], idx: [usize; 3], row: usize, lhs: Scalar, rhs: Scalar) -> Verdict {
    Verdict::NotEqual {
        witness: names.iter().zip(idx).map(|(n, i)| (n.to_string(), i)).collect(),
        outputs: vec![row],
        lhs,
        rhs,
    }
}

fn compare(l: &SparseMatrix, r: &SparseMatrix, names: [&str; 3], ab: [usize; 2]) -> Option<Verdict> {
    let col = l.first_difference(r)?;
    let d = l.col(col).sub(r.col(col));
    let (row, _) = d.first().expect("columns differ");
    Some(mismatch(names, [ab[0], ab[1], col], row, l.get(row, col), r.get(row, col)))
}

impl BiModule {
    pub fn new(name: impl Into<String>, dim: usize, h_action: Vec<SparseMatrix>, hhat_action: Vec<SparseMatrix>) -> Self {
        BiModule {
            name: name.into(),
            dim,
            h_action,
            hhat_action,
        }
    }

    /// `x·` for an arbitrary element of `H`.
    pub fn act_h(&self, x: &[Scalar]) -> SparseMatrix {
        combine(&self.h_action, x, self.dim)
    }

    pub fn act_hhat(&self, f: &[Scalar]) -> SparseMatrix {
        combine(&self.hhat_action, f, self.dim)
    }

    /// The same data with the roles of the two actions exchanged.
    pub fn flipped(&self) -> BiModule {
        BiModule {
            name: self.name.clone(),
            dim: self.dim,
            h_action: self.hhat_action.clone(),
            hhat_action: self.h_action.clone(),
        }
    }

    /// Unitality and associativity of both actions.
    pub fn check_module_axioms(&self, h: &FiniteQuantumGroup, hhat: &FiniteQuantumGroup) -> Verdict {
        for (g, acts, tag) in [(h, &self.h_action, "t"), (hhat, &self.hhat_action, "f")] {
            let id = SparseMatrix::identity(self.dim);
            let unit = combine(acts, &g.unit, self.dim);
            if let Some(v) = compare(&unit, &id, [tag, tag, "m"], [0, 0]) {
                return v;
            }
            for a in 0..g.dim() {
                for b in 0..g.dim() {
                    let l = acts[a].compose(&acts[b]);
                    let r = combine(acts, &g.mul_basis(a, b).to_dense(g.dim()), self.dim);
                    if let Some(v) = compare(&l, &r, [tag, tag, "m"], [a, b]) {
                        return v;
                    }
                }
            }
        }
        Verdict::Equal
    }

    /// `t·(f·m) = (S^k(t(1)) ⇀ f ↼ S⁻¹(t(3)))·(t(2)·m)` with `k = 2` for the
    /// anti-Yetter-Drinfeld condition and `k = 0` for the Yetter-Drinfeld one.
    fn check_compat(&self, h: &FiniteQuantumGroup, hhat: &FiniteQuantumGroup, k: i32) -> Verdict {
        let n = h.dim();
        let sk = h.antipode_power(k);
        let sinv = h.antipode_power(-1);
        for t in 0..n {
            let legs = h.iterated_comul_basis(t, 3);
            for f in 0..hhat.dim() {
                let lhs = self.h_action[t].compose(&self.hhat_action[f]);
                let mut rhs = SparseMatrix::zeros(self.dim, self.dim);
                for (l, c) in &legs {
                    let left = h.hit_left(&sk.col(l[0]), &hhat.basis_vector(f));
                    let g = h.hit_right(&left, &sinv.col(l[2]));
                    let term = self.act_hhat(&g).compose(&self.h_action[l[1]]);
                    rhs = rhs.add(&term.scaled(c));
                }
                if let Some(v) = compare(&lhs, &rhs, ["t", "f", "m"], [t, f]) {
                    return v;
                }
            }
        }
        Verdict::Equal
    }

    pub fn check_ayd(&self, h: &FiniteQuantumGroup, hhat: &FiniteQuantumGroup) -> Verdict {
        self.check_compat(h, hhat, 2)
    }

    pub fn check_yd(&self, h: &FiniteQuantumGroup, hhat: &FiniteQuantumGroup) -> Verdict {
        self.check_compat(h, hhat, 0)
    }

    /// `T = S⁻¹(m(-1))·m(0)`, where `m(-1) ⊗ m(0) = Σ_k e_k ⊗ e^k·m` is the
    /// `H`-coaction dual to the `Ĥ`-action. On forms this is
    /// `t⊗ω ↦ t(2) ⊗ S⁻¹(t(1))·ω`.
    pub fn symmetry_t(&self, h: &FiniteQuantumGroup) -> SparseMatrix {
        let sinv = h.antipode_power(-1);
        let mut out = SparseMatrix::zeros(self.dim, self.dim);
        for k in 0..h.dim() {
            out = out.add(&self.act_h(&sinv.col(k)).compose(&self.hhat_action[k]));
        }
        out
    }

    /// Whether `op` commutes with every basis element of both actions.
    pub fn commutes_with(&self, op: &SparseMatrix) -> bool {
        self.h_action
            .iter()
            .chain(&self.hhat_action)
            .all(|a| a.compose(op) == op.compose(a))
    }
}

/// The one-dimensional module `ℂ_(σ,δ)`: `t·1 = δ(t)`, `f·1 = f(σ⁻¹)`.
pub fn coefficient_module(h: &FiniteQuantumGroup, pair: &ModularPair) -> BiModule {
    let sigma_inv = h.antipode_of(&pair.sigma);
    let scalar = |x: &Scalar| SparseMatrix::from_fn(1, 1, |_| SparseVec::from_dense(core::slice::from_ref(x)));
    BiModule::new(
        "C(sigma,delta)",
        1,
        pair.delta.iter().map(scalar).collect(),
        sigma_inv.iter().map(scalar).collect(),
    )
}

/// Both actions through the counits.
pub fn trivial_module(h: &FiniteQuantumGroup) -> BiModule {
    let scalar = |x: &Scalar| SparseMatrix::from_fn(1, 1, |_| SparseVec::from_dense(core::slice::from_ref(x)));
    BiModule::new("C", 1, h.counit.iter().map(scalar).collect(), h.unit.iter().map(scalar).collect())
}

fn checked_pair(h: &FiniteQuantumGroup, hhat: &FiniteQuantumGroup, pair: &ModularPair) -> Result<(), PairError> {
    let r = verify_pair_with(h, hhat, &pair.sigma, &pair.delta)?;
    if r.passed() {
        Ok(())
    } else {
        Err(PairError::NotAPair(r.failures().map(|(n, _)| *n).collect()))
    }
}

fn twist(
    m: &BiModule,
    h: &FiniteQuantumGroup,
    hhat: &FiniteQuantumGroup,
    delta_side: &[Scalar],
    sigma_side: &[Scalar],
    name: &str,
) -> BiModule {
    let h_action = (0..h.dim())
        .map(|t| {
            let mut out = SparseMatrix::zeros(m.dim, m.dim);
            for (a, b, c) in h.comul_basis(t) {
                let w = c * &delta_side[*a];
                if !w.is_zero() {
                    out = out.add(&m.h_action[*b].scaled(&w));
                }
            }
            out
        })
        .collect();
    let hhat_action = (0..hhat.dim())
        .map(|f| {
            let mut out = SparseMatrix::zeros(m.dim, m.dim);
            for (a, b, c) in hhat.comul_basis(f) {
                let w = c * &sigma_side[*b];
                if !w.is_zero() {
                    out = out.add(&m.hhat_action[*a].scaled(&w));
                }
            }
            out
        })
        .collect();
    BiModule::new(name, m.dim, h_action, hhat_action)
}

/// `t•m = δ⁻¹(t(1)) t(2)·m`, `f•m = σ(f(2)) f(1)·m`.
pub fn ayd_to_yd(
    m: &BiModule,
    h: &FiniteQuantumGroup,
    hhat: &FiniteQuantumGroup,
    pair: &ModularPair,
) -> Result<BiModule, PairError> {
    checked_pair(h, hhat, pair)?;
    let delta_inv = hhat.antipode_of(&pair.delta);
    Ok(twist(m, h, hhat, &delta_inv, &pair.sigma, &m.name))
}

/// Inverse of [`ayd_to_yd`]: `t·m = δ(t(1)) t(2)•m`, `f·m = σ⁻¹(f(2)) f(1)•m`.
pub fn yd_to_ayd(
    m: &BiModule,
    h: &FiniteQuantumGroup,
    hhat: &FiniteQuantumGroup,
    pair: &ModularPair,
) -> Result<BiModule, PairError> {
    checked_pair(h, hhat, pair)?;
    let sigma_inv = h.antipode_of(&pair.sigma);
    Ok(twist(m, h, hhat, &pair.delta, &sigma_inv, &m.name))
}

/// A map `op: M → N` intertwining both actions.
pub fn is_morphism(op: &SparseMatrix, m: &BiModule, n: &BiModule) -> bool {
    m.h_action.iter().zip(&n.h_action).all(|(a, b)| op.compose(a) == b.compose(op))
        && m.hhat_action.iter().zip(&n.hhat_action).all(|(a, b)| op.compose(a) == b.compose(op))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::modular::corpus_pairs;

    #[test]
    fn coefficient_modules_are_ayd_with_trivial_t() {
        for h in corpus::all_groups() {
            let hhat = h.dualize().unwrap();
            for p in corpus_pairs(&h).unwrap() {
                let c = coefficient_module(&h, &p);
                assert!(c.check_module_axioms(&h, &hhat).is_equal());
                assert!(c.check_ayd(&h, &hhat).is_equal(), "{}", h.name);
                assert_eq!(c.symmetry_t(&h), SparseMatrix::identity(1));
                let y = ayd_to_yd(&c, &h, &hhat, &p).unwrap();
                assert!(y.check_yd(&h, &hhat).is_equal());
                assert_eq!(yd_to_ayd(&y, &h, &hhat, &p).unwrap(), c);
            }
        }
    }

    #[test]
    fn trivial_module_is_yd_everywhere() {
        for h in corpus::all_groups() {
            let hhat = h.dualize().unwrap();
            let c = trivial_module(&h);
            assert!(c.check_yd(&h, &hhat).is_equal(), "{}", h.name);
        }
    }

    #[test]
    fn unverified_pair_is_rejected() {
        let h = corpus::sweedler();
        let hhat = h.dualize().unwrap();
        let p = ModularPair {
            sigma: h.unit.clone(),
            delta: h.counit.clone(),
        };
        assert!(matches!(ayd_to_yd(&trivial_module(&h), &h, &hhat, &p), Err(PairError::NotAPair(_))));
    }
}
