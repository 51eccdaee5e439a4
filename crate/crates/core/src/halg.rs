//! Module algebras over a finite quantum group and the constructions built
//! from them: unitarisation, crossed products, the kernel algebra `H ⊗ Ĥ`,
//! and the isomorphism `A ⋊ H ⋊ Ĥ ≅ A ⊗ K_H`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::hopf::{dot, FiniteQuantumGroup, ValidationReport, Vector, Witness};
use crate::linalg::{Matrix, SparseMatrix, SparseVec};
use crate::scalar::Scalar;
use crate::tensor::SparseTensor;

/// An algebra with a left action of a quantum group, given on bases.
#[derive(Clone, PartialEq, Eq)]
pub struct ModuleAlgebra {
    pub name: String,
    pub basis: Vec<String>,
    mult: Vec<SparseVec>,
    pub unit: Option<Vector>,
    action: Vec<SparseMatrix>,
}

impl fmt::Debug for ModuleAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleAlgebra({}, dim {})", self.name, self.dim())
    }
}

/// Failure of a module algebra axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HAlgebraError {
    pub axiom: &'static str,
    pub witness: Witness,
}

impl fmt::Display for HAlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails {}", self.axiom, self.witness)
    }
}

impl ModuleAlgebra {
    /// Builds an algebra from a product table (`mult[a * d + b]` lists the
    /// terms of `e_a e_b`) and one action matrix per basis element of the
    /// acting quantum group (column `a` is `e_t · e_a`).
    pub fn from_parts(
        name: impl Into<String>,
        basis: Vec<String>,
        dim: usize,
        mult: Vec<Vec<(usize, Scalar)>>,
        unit: Option<Vector>,
        action: Vec<Matrix>,
    ) -> Self {
        assert_eq!(mult.len(), dim * dim, "product table size");
        ModuleAlgebra {
            name: name.into(),
            basis,
            mult: mult.into_iter().map(|t| t.into_iter().collect()).collect(),
            unit,
            action: action.iter().map(SparseMatrix::from_dense).collect(),
        }
    }

    fn from_sparse(
        name: String,
        basis: Vec<String>,
        mult: Vec<SparseVec>,
        unit: Option<Vector>,
        action: Vec<SparseMatrix>,
    ) -> Self {
        ModuleAlgebra {
            name,
            basis,
            mult,
            unit,
            action,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Dimension of the acting quantum group.
    pub fn acting_dim(&self) -> usize {
        self.action.len()
    }

    pub fn mul_basis(&self, a: usize, b: usize) -> &SparseVec {
        &self.mult[a * self.dim() + b]
    }

    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (a, u) in x.iter() {
            for (b, v) in y.iter() {
                out.add_scaled(self.mul_basis(a, b), &(u * v));
            }
        }
        out
    }

    /// Matrix of `e_t ·`.
    pub fn act_basis(&self, t: usize) -> &SparseMatrix {
        &self.action[t]
    }

    /// `x · v` for `x` in the acting quantum group.
    pub fn act(&self, x: &[Scalar], v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (t, c) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            out.add_scaled(&self.action[t].apply(v), c);
        }
        out
    }

    pub fn mult_tensor(&self) -> SparseTensor {
        let d = self.dim();
        let mut entries = Vec::new();
        for a in 0..d {
            for b in 0..d {
                for (k, c) in self.mul_basis(a, b).iter() {
                    entries.push((vec![a, b, k], c.clone()));
                }
            }
        }
        SparseTensor::from_entries(&[d, d, d], entries).expect("product shape")
    }

    /// Axes `(t, a, t·a)`.
    pub fn action_tensor(&self) -> SparseTensor {
        let (n, d) = (self.acting_dim(), self.dim());
        let mut entries = Vec::new();
        for t in 0..n {
            for a in 0..d {
                for (k, c) in self.action[t].col(a).iter() {
                    entries.push((vec![t, a, k], c.clone()));
                }
            }
        }
        SparseTensor::from_entries(&[n, d, d], entries).expect("action shape")
    }

    /// The coaction `a ↦ a₍₀₎ ⊗ a₍₁₎ = Σ_i e_i·a ⊗ e^i` into the dual of the
    /// acting quantum group, so that `t·a = a₍₀₎ ⟨a₍₁₎, t⟩`.
    pub fn coaction_basis(&self, a: usize) -> Vec<(usize, usize, Scalar)> {
        let mut out = Vec::new();
        for (i, m) in self.action.iter().enumerate() {
            for (a0, c) in m.col(a).iter() {
                out.push((a0, i, c.clone()));
            }
        }
        out
    }

    /// Axes `(a, a₍₀₎, a₍₁₎)`.
    pub fn coaction_tensor(&self) -> SparseTensor {
        let (n, d) = (self.acting_dim(), self.dim());
        let mut entries = Vec::new();
        for a in 0..d {
            for (a0, f, c) in self.coaction_basis(a) {
                entries.push((vec![a, a0, f], c));
            }
        }
        SparseTensor::from_entries(&[d, d, n], entries).expect("coaction shape")
    }

    /// Checks the algebra and module axioms and `t·(ab) = (t₍₁₎·a)(t₍₂₎·b)`.
    pub fn validate(&self, h: &FiniteQuantumGroup) -> ValidationReport {
        let mut r = ValidationReport::default();
        let d = self.dim();
        let n = h.dim();
        let unit_vec = |i: usize| SparseVec::unit(i);
        let mut assoc = None;
        'outer: for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let l = self.mul(self.mul_basis(a, b), &unit_vec(c));
                    let rr = self.mul(&unit_vec(a), self.mul_basis(b, c));
                    if l != rr {
                        assoc = Some(Witness::new(&[a, b, c], "(ab)c ≠ a(bc)"));
                        break 'outer;
                    }
                }
            }
        }
        push(&mut r, "associativity", assoc);
        if self.acting_dim() != n {
            push(
                &mut r,
                "action matrices match the quantum group",
                Some(Witness::new(&[self.acting_dim(), n], "wrong number of action matrices")),
            );
            return r;
        }
        if let Some(u) = &self.unit {
            let u = SparseVec::from_dense(u);
            let w = (0..d).find(|&a| {
                self.mul(&u, &unit_vec(a)) != unit_vec(a) || self.mul(&unit_vec(a), &u) != unit_vec(a)
            });
            push(&mut r, "unit", w.map(|a| Witness::new(&[a], "1a ≠ a or a1 ≠ a")));
            let w = (0..n).find(|&t| self.act(&h.basis_vector(t), &u) != u.scaled(&h.counit[t]));
            push(&mut r, "action fixes the unit up to the counit", w.map(|t| Witness::new(&[t], "t·1 ≠ ε(t)1")));
        }
        let one = h.unit.clone();
        let w = (0..d).find(|&a| self.act(&one, &unit_vec(a)) != unit_vec(a));
        push(&mut r, "unit of the quantum group acts trivially", w.map(|a| Witness::new(&[a], "1·a ≠ a")));
        let mut module = None;
        'm: for s in 0..n {
            for t in 0..n {
                let st = h.mul(&h.basis_vector(s), &h.basis_vector(t));
                for a in 0..d {
                    let l = self.act_basis(s).apply(&self.act_basis(t).apply(&unit_vec(a)));
                    if l != self.act(&st, &unit_vec(a)) {
                        module = Some(Witness::new(&[s, t, a], "s·(t·a) ≠ (st)·a"));
                        break 'm;
                    }
                }
            }
        }
        push(&mut r, "module associativity", module);
        let mut compat = None;
        'c: for t in 0..n {
            for a in 0..d {
                for b in 0..d {
                    let l = self.act_basis(t).apply(self.mul_basis(a, b));
                    let mut rr = SparseVec::new();
                    for (t1, t2, c) in h.comul_basis(t) {
                        let x = self.act_basis(*t1).col(a);
                        let y = self.act_basis(*t2).col(b);
                        rr.add_scaled(&self.mul(x, y), c);
                    }
                    if l != rr {
                        compat = Some(Witness::new(&[t, a, b], "t·(ab) ≠ (t₍₁₎·a)(t₍₂₎·b)"));
                        break 'c;
                    }
                }
            }
        }
        push(&mut r, "module algebra compatibility", compat);
        r
    }

    /// The same algebra acted on by the one-dimensional quantum group.
    pub fn without_action(&self) -> ModuleAlgebra {
        ModuleAlgebra::from_sparse(
            self.name.clone(),
            self.basis.clone(),
            self.mult.clone(),
            self.unit.clone(),
            vec![SparseMatrix::identity(self.dim())],
        )
    }

    /// Adjoins a fresh unit (always, even when one exists); the quantum
    /// group acts on it through the counit. The new unit has index `dim`.
    pub fn unitarise(&self, h: &FiniteQuantumGroup) -> ModuleAlgebra {
        let d = self.dim();
        let dp = d + 1;
        let mut mult = vec![SparseVec::new(); dp * dp];
        for a in 0..d {
            for b in 0..d {
                mult[a * dp + b] = self.mul_basis(a, b).clone();
            }
        }
        for a in 0..dp {
            mult[a * dp + d] = SparseVec::unit(a);
            mult[d * dp + a] = SparseVec::unit(a);
        }
        let action = (0..h.dim())
            .map(|t| {
                let mut cols: Vec<SparseVec> = self.action[t].columns().to_vec();
                cols.push(SparseVec::unit(d).scaled(&h.counit[t]));
                SparseMatrix::from_cols(dp, cols)
            })
            .collect();
        let mut basis = self.basis.clone();
        basis.push(String::from("1⁺"));
        let mut unit = vec![Scalar::zero(); dp];
        unit[d] = Scalar::one();
        ModuleAlgebra::from_sparse(format!("{}⁺", self.name), basis, mult, Some(unit), action)
    }

    /// The crossed product `A ⋊ H` on the basis `e_a ⋊ e_r` (index `a * n + r`),
    /// `(a⋊r)(b⋊t) = a(r₍₁₎·b) ⋊ r₍₂₎t`, with the dual action
    /// `f·(a⋊r) = a ⋊ (f ⇀ r)` of `Ĥ`, where `f ⇀ r = r₍₁₎ f(r₍₂₎)`.
    pub fn crossed_product(&self, h: &FiniteQuantumGroup) -> ModuleAlgebra {
        let (d, n) = (self.dim(), h.dim());
        let idx = |a: usize, r: usize| a * n + r;
        let dn = d * n;
        let mut mult = vec![SparseVec::new(); dn * dn];
        for a in 0..d {
            for r in 0..n {
                for b in 0..d {
                    for t in 0..n {
                        let mut out = SparseVec::new();
                        for (r1, r2, c) in h.comul_basis(r) {
                            let r1b = self.act_basis(*r1).col(b);
                            if r1b.is_zero() {
                                continue;
                            }
                            let prod = self.mul(&SparseVec::unit(a), r1b);
                            let r2t = h.mul_basis(*r2, t);
                            for (k, x) in prod.iter() {
                                for (s, y) in r2t.iter() {
                                    out.add_at(idx(k, s), &(c * &(x * y)));
                                }
                            }
                        }
                        mult[idx(a, r) * dn + idx(b, t)] = out;
                    }
                }
            }
        }
        let unit = self.unit.as_ref().map(|u| {
            let mut v = vec![Scalar::zero(); dn];
            for a in 0..d {
                for r in 0..n {
                    v[idx(a, r)] = &u[a] * &h.unit[r];
                }
            }
            v
        });
        // Ĥ acts on the H factor: e^k ⇀ e_r = Σ e_{r1} [r2 = k]
        let action = (0..n)
            .map(|k| {
                SparseMatrix::from_fn(dn, dn, |col| {
                    let (a, r) = (col / n, col % n);
                    let mut v = SparseVec::new();
                    for (r1, r2, c) in h.comul_basis(r) {
                        if *r2 == k {
                            v.add_at(idx(a, *r1), c);
                        }
                    }
                    v
                })
            })
            .collect();
        let basis = self
            .basis
            .iter()
            .flat_map(|a| h.basis.iter().map(move |r| format!("{a}⋊{r}")))
            .collect();
        ModuleAlgebra::from_sparse(format!("{}⋊{}", self.name, h.name), basis, mult, unit, action)
    }
}

fn push(r: &mut ValidationReport, name: &'static str, w: Option<Witness>) {
    r.axioms.push(crate::hopf::AxiomResult {
        name,
        passed: w.is_none(),
        witness: w,
    });
}

/// Validates and returns the algebra, or the first failing axiom.
pub fn make_h_algebra(
    h: &FiniteQuantumGroup,
    alg: ModuleAlgebra,
) -> Result<ModuleAlgebra, HAlgebraError> {
    let r = alg.validate(h);
    match r.axioms.into_iter().find(|a| !a.passed) {
        None => Ok(alg),
        Some(a) => Err(HAlgebraError {
            axiom: a.name,
            witness: a.witness.unwrap_or_else(|| Witness::new(&[], "")),
        }),
    }
}

/// The kernel algebra `K_H = H ⊗ Ĥ ≅ End(H)` with `(r⊗f)(s⊗g) = f(s) r⊗g`
/// and the action `t·(r⊗g) = t₍₁₎r ⊗ g ↼ S(t₍₂₎)`. Basis index `r * n + f`.
pub fn kernel_algebra(h: &FiniteQuantumGroup) -> ModuleAlgebra {
    let n = h.dim();
    let nn = n * n;
    let mut mult = vec![SparseVec::new(); nn * nn];
    for r in 0..n {
        for f in 0..n {
            for g in 0..n {
                // (r⊗f)(f⊗g) = r⊗g; other products vanish
                mult[(r * n + f) * nn + (f * n + g)] = SparseVec::unit(r * n + g);
            }
        }
    }
    let mut unit = vec![Scalar::zero(); nn];
    for i in 0..n {
        unit[i * n + i] = Scalar::one();
    }
    let action = (0..n)
        .map(|t| {
            SparseMatrix::from_fn(nn, nn, |col| {
                let (r, g) = (col / n, col % n);
                let mut v = SparseVec::new();
                for (t1, t2, c) in h.comul_basis(t) {
                    let t1r = h.mul_basis(*t1, r);
                    let st2 = h.antipode.col(*t2);
                    let gs = h.hit_right(&h.basis_vector(g), &st2);
                    for (u, x) in t1r.iter() {
                        for (w, y) in gs.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                            v.add_at(u * n + w, &(c * &(x * y)));
                        }
                    }
                }
                v
            })
        })
        .collect();
    let basis = h
        .basis
        .iter()
        .flat_map(|r| h.basis.iter().map(move |f| format!("{r}⊗{f}*")))
        .collect();
    ModuleAlgebra::from_sparse(format!("K_{}", h.name), basis, mult, Some(unit), action)
}

/// `A ⊗ K_H` with the plain tensor product and the action
/// `t·(a ⊗ r ⊗ g) = t₍₂₎·a ⊗ t₍₁₎r ⊗ g ↼ S(t₍₃₎)`.
/// Basis index `a * n² + r * n + g`.
pub fn tensor_kernel(h: &FiniteQuantumGroup, a: &ModuleAlgebra) -> ModuleAlgebra {
    let k = kernel_algebra(h);
    let n = h.dim();
    let (da, dk) = (a.dim(), k.dim());
    let d = da * dk;
    let mut mult = vec![SparseVec::new(); d * d];
    for x in 0..da {
        for y in 0..dk {
            for u in 0..da {
                for v in 0..dk {
                    let mut out = SparseVec::new();
                    for (p, c) in a.mul_basis(x, u).iter() {
                        for (q, e) in k.mul_basis(y, v).iter() {
                            out.add_at(p * dk + q, &(c * e));
                        }
                    }
                    mult[(x * dk + y) * d + (u * dk + v)] = out;
                }
            }
        }
    }
    let unit = match (&a.unit, &k.unit) {
        (Some(ua), Some(uk)) => Some(ua.iter().flat_map(|x| uk.iter().map(move |y| x * y)).collect()),
        _ => None,
    };
    // g ↼ S(e_s) for every basis pair, as dense functionals
    let hits: Vec<Vec<Vector>> = (0..n)
        .map(|s| {
            let ss = h.antipode.col(s);
            (0..n).map(|g| h.hit_right(&h.basis_vector(g), &ss)).collect()
        })
        .collect();
    let action = (0..n)
        .map(|t| {
            let legs = h.iterated_comul_basis(t, 3);
            SparseMatrix::from_fn(d, d, |col| {
                let (x, y) = (col / dk, col % dk);
                let (r, g) = (y / n, y % n);
                let mut out = SparseVec::new();
                for (l, c) in &legs {
                    let ta = a.act_basis(l[1]).col(x);
                    if ta.is_zero() {
                        continue;
                    }
                    let tr = h.mul_basis(l[0], r);
                    let gs = &hits[l[2]][g];
                    for (p, e) in ta.iter() {
                        for (u, w) in tr.iter() {
                            for (v, z) in gs.iter().enumerate().filter(|(_, z)| !z.is_zero()) {
                                out.add_at(p * dk + u * n + v, &(c * &(e * &(w * z))));
                            }
                        }
                    }
                }
                out
            })
        })
        .collect();
    let basis = a
        .basis
        .iter()
        .flat_map(|x| k.basis.iter().map(move |y| format!("{x}⊗{y}")))
        .collect();
    ModuleAlgebra::from_sparse(format!("{}⊗{}", a.name, k.name), basis, mult, unit, action)
}

/// Pairing helper: `f(x)` for coordinate vectors.
pub fn pair(f: &[Scalar], x: &[Scalar]) -> Scalar {
    dot(f, x)
}

/// The evaluated Takesaki-Takai map `γ_A: A ⋊ H ⋊ Ĥ → A ⊗ K_H`,
/// `γ(a ⋊ r ⋊ f)(x) = (x₍₃₎ (δ ⇀ S(r₍₁₎)) σ)·a ⊗ x₍₂₎S(r₍₂₎) ⊗ S⁻¹(f)(x₍₁₎)`.
/// Rows follow [`tensor_kernel`], columns the index `(a * n + r) * n + f`.
pub fn takesaki_takai(
    h: &FiniteQuantumGroup,
    hhat: &FiniteQuantumGroup,
    a: &ModuleAlgebra,
    sigma: &[Scalar],
    delta: &[Scalar],
) -> Result<SparseMatrix, crate::dsl::DslError> {
    use crate::dsl::{compile, evaluate, parse, AlgebraSide, Env};
    let env = Env::new(h, hhat).with_pair(sigma, delta).with_algebra(a, AlgebraSide::H);
    let e = parse("Sinv(f)(x(1)) act(x(3) (delta .> S(r(1))) sigma, a) @ x(2) S(r(2))")?;
    let c = compile(&e, &env)?;
    let t = evaluate(&c)?;
    let pos = |name: &str| c.vars.iter().position(|(v, _)| v == name).expect("variable present");
    let [pa, pr, pf, px] = [pos("a"), pos("r"), pos("f"), pos("x")];
    let (n, d) = (h.dim(), a.dim());
    let mut cols = vec![SparseVec::new(); d * n * n];
    for (idx, v) in t.iter() {
        let (oa, oh) = (idx[4], idx[5]);
        let col = (idx[pa] * n + idx[pr]) * n + idx[pf];
        cols[col].add_at(oa * n * n + oh * n + idx[px], v);
    }
    Ok(SparseMatrix::from_cols(d * n * n, cols))
}

/// Whether `map: A → B` (columns in `B`) sends products to products.
pub fn is_multiplicative(map: &SparseMatrix, a: &ModuleAlgebra, b: &ModuleAlgebra) -> Option<(usize, usize)> {
    for x in 0..a.dim() {
        for y in 0..a.dim() {
            let l = map.apply(a.mul_basis(x, y));
            if l != b.mul(map.col(x), map.col(y)) {
                return Some((x, y));
            }
        }
    }
    None
}

/// Whether `map` intertwines the actions of the same quantum group.
pub fn is_equivariant(map: &SparseMatrix, a: &ModuleAlgebra, b: &ModuleAlgebra) -> Option<usize> {
    (0..a.acting_dim()).find(|&t| map.compose(a.act_basis(t)) != b.act_basis(t).compose(map))
}
