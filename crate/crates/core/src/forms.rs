//! Equivariant differential forms `Ω_K(A) = K ⊗ Ω(A)` and their
//! Yetter-Drinfeld reformulation `K̂ ⊗ Ω(A)`.
//!
//! `Ω⁰(A) = A` and `Ωⁿ(A) = A⁺ ⊗ A^{⊗n}`. A basis element of degree `n ≥ 1`
//! is a coefficient index together with a word `[a⁰, a¹, …, aⁿ]`, where
//! `a⁰ = dim A` stands for the adjoined unit. Operators are assembled as
//! sparse matrices, column by column.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::dsl::Verdict;
use crate::halg::ModuleAlgebra;
use crate::hopf::FiniteQuantumGroup;
use crate::linalg::{Matrix, SparseMatrix, SparseVec};
use crate::modular::ModularPair;
use crate::scalar::Scalar;
use crate::yd::BiModule;

pub type Word = Vec<usize>;

/// Index bookkeeping for `C ⊗ Ωⁿ(A)` with `C` of dimension `coef_dim`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FormBasis {
    pub coef_dim: usize,
    pub alg_dim: usize,
}

impl FormBasis {
    pub fn new(coef_dim: usize, alg_dim: usize) -> Self {
        FormBasis { coef_dim, alg_dim }
    }

    /// Index of the adjoined unit in the first slot.
    pub fn unit(&self) -> usize {
        self.alg_dim
    }

    pub fn words(&self, n: usize) -> usize {
        let d = self.alg_dim;
        if n == 0 {
            d
        } else {
            (d + 1) * d.pow(n as u32)
        }
    }

    pub fn dim(&self, n: usize) -> usize {
        self.coef_dim * self.words(n)
    }

    pub fn index(&self, c: usize, w: &[usize]) -> usize {
        let d = self.alg_dim;
        let base0 = if w.len() == 1 { d } else { d + 1 };
        w[1..].iter().fold(c * base0 + w[0], |acc, &x| acc * d + x)
    }

    pub fn decode(&self, n: usize, mut idx: usize) -> (usize, Word) {
        let d = self.alg_dim;
        let mut w = vec![0; n + 1];
        for k in (1..=n).rev() {
            w[k] = idx % d;
            idx /= d;
        }
        let base0 = if n == 0 { d } else { d + 1 };
        w[0] = idx % base0;
        (idx / base0, w)
    }

    /// Adds `scale · coef ⊗ p⁰ ⊗ p¹ ⊗ …` where the positions are vectors in
    /// `A⁺` coordinates.
    fn accumulate(&self, out: &mut SparseVec, coef: &SparseVec, positions: &[SparseVec], scale: &Scalar) {
        let d = self.alg_dim;
        let base0 = if positions.len() == 1 { d } else { d + 1 };
        let mut partial: Vec<(usize, Scalar)> = coef.iter().map(|(c, x)| (c, x * scale)).collect();
        for (k, p) in positions.iter().enumerate() {
            let base = if k == 0 { base0 } else { d };
            let mut next = Vec::with_capacity(partial.len() * p.nnz());
            for (acc, x) in &partial {
                for (i, y) in p.iter() {
                    debug_assert!(i < base, "unit outside the first slot");
                    next.push((acc * base + i, x * y));
                }
            }
            partial = next;
        }
        for (i, x) in partial {
            out.add_at(i, &x);
        }
    }
}

fn dense(v: &[Scalar]) -> SparseVec {
    SparseVec::from_dense(v)
}

fn sign(k: usize) -> Scalar {
    if k.is_multiple_of(2) {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

/// `A⁺` arithmetic shared by both pictures.
struct Plus<'a> {
    k: &'a FiniteQuantumGroup,
    alg: &'a ModuleAlgebra,
    d: usize,
    /// `legs[m-1][i]`: left-nested `Δ^(m)(e_i)`.
    legs: Vec<Vec<Vec<(Vec<usize>, Scalar)>>>,
}

impl<'a> Plus<'a> {
    fn new(k: &'a FiniteQuantumGroup, alg: &'a ModuleAlgebra, max_legs: usize) -> Self {
        let legs = (1..=max_legs)
            .map(|m| (0..k.dim()).map(|i| k.iterated_comul_basis(i, m)).collect())
            .collect();
        Plus {
            k,
            alg,
            d: alg.dim(),
            legs,
        }
    }

    fn legs(&self, i: usize, m: usize) -> &[(Vec<usize>, Scalar)] {
        &self.legs[m - 1][i]
    }

    fn u(&self, a: usize) -> SparseVec {
        SparseVec::unit(a)
    }

    fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let u = self.d;
        let mut out = SparseVec::new();
        for (a, p) in x.iter() {
            for (b, q) in y.iter() {
                let c = p * q;
                if a == u {
                    out.add_at(b, &c);
                } else if b == u {
                    out.add_at(a, &c);
                } else {
                    out.add_scaled(self.alg.mul_basis(a, b), &c);
                }
            }
        }
        out
    }

    fn act(&self, r: usize, x: &SparseVec) -> SparseVec {
        let u = self.d;
        let mut out = SparseVec::new();
        for (a, p) in x.iter() {
            if a == u {
                out.add_at(u, &(p * &self.k.counit[r]));
            } else {
                out.add_scaled(self.alg.act_basis(r).col(a), p);
            }
        }
        out
    }

    fn act_vec(&self, r: &[Scalar], x: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in r.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            out.add_scaled(&self.act(i, x), c);
        }
        out
    }

    /// `r·(w⁰ dw¹ ⋯)` for a basis element `r`, as weighted position lists.
    fn act_word(&self, r: usize, w: &[usize]) -> Vec<(Vec<SparseVec>, Scalar)> {
        self.legs(r, w.len())
            .iter()
            .map(|(ls, c)| {
                let pos = ls.iter().zip(w).map(|(&l, &a)| self.act(l, &self.u(a))).collect();
                (pos, c.clone())
            })
            .collect()
    }

    fn act_word_vec(&self, r: &[Scalar], w: &[usize]) -> Vec<(Vec<SparseVec>, Scalar)> {
        let mut out = Vec::new();
        for (i, c) in r.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (p, e) in self.act_word(i, w) {
                out.push((p, c * &e));
            }
        }
        out
    }

    fn positions(&self, w: &[usize]) -> Vec<SparseVec> {
        w.iter().map(|&a| self.u(a)).collect()
    }
}

fn build(rows: usize, cols: usize, f: impl FnMut(usize) -> SparseVec) -> SparseMatrix {
    SparseMatrix::from_fn(rows, cols, f)
}

/// `d(c ⊗ ω) = c ⊗ dω`, with `d(1 da¹ ⋯) = 0`. The same in both pictures.
fn exterior_d(basis: &FormBasis, n: usize) -> SparseMatrix {
    build(basis.dim(n + 1), basis.dim(n), |col| {
        let (c, w) = basis.decode(n, col);
        if n > 0 && w[0] == basis.unit() {
            return SparseVec::new();
        }
        let mut nw = vec![basis.unit()];
        nw.extend(&w);
        SparseVec::unit(basis.index(c, &nw))
    })
}

/// The faces `d^j` for `j < n`, which do not involve the coefficients.
fn inner_face(p: &Plus, basis: &FormBasis, n: usize, j: usize) -> SparseMatrix {
    build(basis.dim(n - 1), basis.dim(n), |col| {
        let (c, w) = basis.decode(n, col);
        let mut pos = p.positions(&w);
        let prod = p.mul(&pos[j], &pos[j + 1]);
        pos.splice(j..j + 2, [prod]);
        let mut out = SparseVec::new();
        basis.accumulate(&mut out, &SparseVec::unit(c), &pos, &sign(j));
        out
    })
}

/// Forms over `A` in the anti-Yetter-Drinfeld picture `K ⊗ Ω(A)`.
pub struct AydForms<'a> {
    p: Plus<'a>,
    pub basis: FormBasis,
    s: Matrix,
    sinv: Matrix,
}

impl<'a> AydForms<'a> {
    /// Operators up to degree `max_degree` become available; actions and
    /// `T` need one more leg than the degree.
    pub fn new(k: &'a FiniteQuantumGroup, alg: &'a ModuleAlgebra, max_degree: usize) -> Self {
        AydForms {
            p: Plus::new(k, alg, (max_degree + 2).max(3)),
            basis: FormBasis::new(k.dim(), alg.dim()),
            s: k.antipode.clone(),
            sinv: k.antipode_power(-1),
        }
    }

    fn k(&self) -> &FiniteQuantumGroup {
        self.p.k
    }

    /// `r·(t ⊗ ω) = r(3) t S(r(1)) ⊗ r(2)·ω`.
    pub fn h_action(&self, r: usize, n: usize) -> SparseMatrix {
        let k = self.k();
        let b = &self.basis;
        build(b.dim(n), b.dim(n), |col| {
            let (t, w) = b.decode(n, col);
            let mut out = SparseVec::new();
            for (ls, c) in self.p.legs(r, 3) {
                let coef = k.mul(&k.mul(&k.basis_vector(ls[2]), &k.basis_vector(t)), &self.s.col(ls[0]));
                let coef = dense(&coef);
                for (pos, e) in self.p.act_word(ls[1], &w) {
                    b.accumulate(&mut out, &coef, &pos, &(c * &e));
                }
            }
            out
        })
    }

    /// `f·(t ⊗ ω) = f(t(2)) t(1) ⊗ ω`.
    pub fn hhat_action(&self, f: usize, n: usize) -> SparseMatrix {
        let b = &self.basis;
        build(b.dim(n), b.dim(n), |col| {
            let (t, w) = b.decode(n, col);
            let mut out = SparseVec::new();
            for (x, y, c) in self.k().comul_basis(t) {
                if *y == f {
                    out.add_at(b.index(*x, &w), c);
                }
            }
            out
        })
    }

    pub fn module(&self, n: usize) -> BiModule {
        let m = self.k().dim();
        BiModule::new(
            format!("Omega^{n}"),
            self.basis.dim(n),
            (0..m).map(|r| self.h_action(r, n)).collect(),
            (0..m).map(|f| self.hhat_action(f, n)).collect(),
        )
    }

    pub fn d(&self, n: usize) -> SparseMatrix {
        exterior_d(&self.basis, n)
    }

    /// `d^j: Ωⁿ → Ωⁿ⁻¹`; the last face twists by the coefficient.
    pub fn face(&self, n: usize, j: usize) -> SparseMatrix {
        assert!(n >= 1 && j <= n);
        if j < n {
            return inner_face(&self.p, &self.basis, n, j);
        }
        let b = &self.basis;
        build(b.dim(n - 1), b.dim(n), |col| {
            let (t, w) = b.decode(n, col);
            let mut out = SparseVec::new();
            for (x, y, c) in self.k().comul_basis(t) {
                let moved = self.p.act_vec(&self.sinv.col(*x), &self.p.u(w[n]));
                let mut pos = vec![self.p.mul(&moved, &self.p.u(w[0]))];
                pos.extend(w[1..n].iter().map(|&a| self.p.u(a)));
                b.accumulate(&mut out, &SparseVec::unit(*y), &pos, &(c * &sign(n)));
            }
            out
        })
    }

    pub fn b(&self, n: usize) -> SparseMatrix {
        (0..=n).fold(SparseMatrix::zeros(self.basis.dim(n - 1), self.basis.dim(n)), |acc, j| {
            acc.add(&self.face(n, j))
        })
    }

    /// `B(t ⊗ a⁰da¹⋯daⁿ) = Σᵢ (−1)^{ni} t(2) ⊗ S⁻¹(t(1))·(daⁿ⁺¹⁻ⁱ⋯daⁿ) da⁰⋯daⁿ⁻ⁱ`.
    pub fn big_b(&self, n: usize) -> SparseMatrix {
        let b = &self.basis;
        build(b.dim(n + 1), b.dim(n), |col| {
            let (t, w) = b.decode(n, col);
            let mut out = SparseVec::new();
            if n > 0 && w[0] == b.unit() {
                return out;
            }
            for i in 0..=n {
                let moved = &w[n + 1 - i..];
                let rest = &w[..n + 1 - i];
                for (x, y, c) in self.k().comul_basis(t) {
                    let r = self.sinv.col(*x);
                    let coef = SparseVec::unit(*y);
                    let scale = c * &sign(n * i);
                    let mut tail: Vec<SparseVec> = rest.iter().map(|&a| self.p.u(a)).collect();
                    if i == 0 {
                        let mut pos = vec![self.p.u(b.unit())];
                        pos.append(&mut tail);
                        b.accumulate(&mut out, &coef, &pos, &(scale * self.k().counit_of(&r)));
                        continue;
                    }
                    for (acted, e) in self.p.act_word_vec(&r, moved) {
                        let mut pos = vec![self.p.u(b.unit())];
                        pos.extend(acted);
                        pos.extend(tail.iter().cloned());
                        b.accumulate(&mut out, &coef, &pos, &(&scale * &e));
                    }
                }
            }
            out
        })
    }

    /// `T(t ⊗ ω) = t(2) ⊗ S⁻¹(t(1))·ω`.
    pub fn t(&self, n: usize) -> SparseMatrix {
        let b = &self.basis;
        build(b.dim(n), b.dim(n), |col| {
            let (t, w) = b.decode(n, col);
            let mut out = SparseVec::new();
            for (x, y, c) in self.k().comul_basis(t) {
                for (pos, e) in self.p.act_word_vec(&self.sinv.col(*x), &w) {
                    b.accumulate(&mut out, &SparseVec::unit(*y), &pos, &(c * &e));
                }
            }
            out
        })
    }
}

/// Forms in the Yetter-Drinfeld picture `K̂ ⊗ Ω(A)`, which needs a pair.
pub struct YdForms<'a> {
    p: Plus<'a>,
    khat: &'a FiniteQuantumGroup,
    pub basis: FormBasis,
    pair: ModularPair,
    sinv: Matrix,
    hat_sinv: Matrix,
}

impl<'a> YdForms<'a> {
    pub fn new(
        k: &'a FiniteQuantumGroup,
        khat: &'a FiniteQuantumGroup,
        alg: &'a ModuleAlgebra,
        pair: &ModularPair,
        max_degree: usize,
    ) -> Self {
        YdForms {
            p: Plus::new(k, alg, (max_degree + 2).max(4)),
            khat,
            basis: FormBasis::new(khat.dim(), alg.dim()),
            pair: pair.clone(),
            sinv: k.antipode_power(-1),
            hat_sinv: khat.antipode_power(-1),
        }
    }

    fn k(&self) -> &FiniteQuantumGroup {
        self.p.k
    }

    /// `r•(g ⊗ ω) = r(1) ⇀ g ↼ S⁻¹(r(4)) ⊗ r(2) δ(r(3))·ω`.
    pub fn h_action(&self, r: usize, n: usize) -> SparseMatrix {
        let k = self.k();
        let b = &self.basis;
        build(b.dim(n), b.dim(n), |col| {
            let (g, w) = b.decode(n, col);
            let mut out = SparseVec::new();
            for (ls, c) in self.p.legs(r, 4) {
                let dl = &self.pair.delta[ls[2]];
                if dl.is_zero() {
                    continue;
                }
                let left = k.hit_left(&k.basis_vector(ls[0]), &self.khat.basis_vector(g));
                let coef = dense(&k.hit_right(&left, &self.sinv.col(ls[3])));
                for (pos, e) in self.p.act_word(ls[1], &w) {
                    b.accumulate(&mut out, &coef, &pos, &(c * dl * e));
                }
            }
            out
        })
    }

    /// `f•(g ⊗ ω) = fg ⊗ ω`.
    pub fn hhat_action(&self, f: usize, n: usize) -> SparseMatrix {
        let b = &self.basis;
        build(b.dim(n), b.dim(n), |col| {
            let (g, w) = b.decode(n, col);
            let mut out = SparseVec::new();
            for (h, c) in self.khat.mul_basis(f, g).iter() {
                out.add_at(b.index(h, &w), c);
            }
            out
        })
    }

    pub fn module(&self, n: usize) -> BiModule {
        BiModule::new(
            format!("Omega_yd^{n}"),
            self.basis.dim(n),
            (0..self.k().dim()).map(|r| self.h_action(r, n)).collect(),
            (0..self.khat.dim()).map(|f| self.hhat_action(f, n)).collect(),
        )
    }

    pub fn d(&self, n: usize) -> SparseMatrix {
        exterior_d(&self.basis, n)
    }

    /// `g ↦ g (S⁻¹(f) ↼ σ)` for `f` in `K̂`.
    fn twist_coef(&self, g: usize, f: &[Scalar]) -> SparseVec {
        let s = self.hat_sinv.apply(f);
        let h = self.k().hit_right(&s, &self.pair.sigma);
        dense(&self.khat.mul(&self.khat.basis_vector(g), &h))
    }

    /// The last face is `(−1)ⁿ g (S⁻¹(aⁿ(1)) ↼ σ) ⊗ aⁿ(0) a⁰ da¹ ⋯ daⁿ⁻¹`.
    pub fn face(&self, n: usize, j: usize) -> SparseMatrix {
        assert!(n >= 1 && j <= n);
        if j < n {
            return inner_face(&self.p, &self.basis, n, j);
        }
        let b = &self.basis;
        build(b.dim(n - 1), b.dim(n), |col| {
            let (g, w) = b.decode(n, col);
            let mut out = SparseVec::new();
            for (a0, f, c) in self.p.alg.coaction_basis(w[n]) {
                let coef = self.twist_coef(g, &self.khat.basis_vector(f));
                let mut pos = vec![self.p.mul(&self.p.u(a0), &self.p.u(w[0]))];
                pos.extend(w[1..n].iter().map(|&a| self.p.u(a)));
                b.accumulate(&mut out, &coef, &pos, &(c * sign(n)));
            }
            out
        })
    }

    pub fn b(&self, n: usize) -> SparseMatrix {
        (0..=n).fold(SparseMatrix::zeros(self.basis.dim(n - 1), self.basis.dim(n)), |acc, j| {
            acc.add(&self.face(n, j))
        })
    }

    /// `B(g ⊗ a⁰da¹⋯daⁿ) = Σᵢ (−1)^{ni} g S⁻¹(aⁿ⁺¹⁻ⁱ(1)⋯aⁿ(1)) ↼ σ ⊗ daⁿ⁺¹⁻ⁱ(0)⋯daⁿ(0) da⁰⋯daⁿ⁻ⁱ`.
    pub fn big_b(&self, n: usize) -> SparseMatrix {
        let b = &self.basis;
        let khat = self.khat;
        build(b.dim(n + 1), b.dim(n), |col| {
            let (g, w) = b.decode(n, col);
            let mut out = SparseVec::new();
            if n > 0 && w[0] == b.unit() {
                return out;
            }
            for i in 0..=n {
                let moved = &w[n + 1 - i..];
                let rest: Vec<SparseVec> = w[..n + 1 - i].iter().map(|&a| self.p.u(a)).collect();
                // expand the coactions of the moved letters
                let mut terms: Vec<(Vec<usize>, Vec<Scalar>, Scalar)> = vec![(Vec::new(), khat.unit.clone(), Scalar::one())];
                for &a in moved {
                    let mut next = Vec::new();
                    for (zs, f, c) in &terms {
                        for (a0, fi, e) in self.p.alg.coaction_basis(a) {
                            let mut z = zs.clone();
                            z.push(a0);
                            next.push((z, khat.mul(f, &khat.basis_vector(fi)), c * &e));
                        }
                    }
                    terms = next;
                }
                for (zs, f, c) in terms {
                    let coef = self.twist_coef(g, &f);
                    let mut pos = vec![self.p.u(b.unit())];
                    pos.extend(zs.iter().map(|&z| self.p.u(z)));
                    pos.extend(rest.iter().cloned());
                    b.accumulate(&mut out, &coef, &pos, &(c * sign(n * i)));
                }
            }
            out
        })
    }

    /// Coefficient part of `λ`: `f ↦ Ĝ_l(σ ⇀ f δ)`, columns in `K`.
    pub fn lambda_coef(&self) -> Matrix {
        let k = self.k();
        let gl = self.khat.fourier_gl().expect("dual integrals");
        let cols: Vec<Vec<Scalar>> = (0..self.khat.dim())
            .map(|f| {
                let x = self.khat.mul(&k.hit_left(&self.pair.sigma, &self.khat.basis_vector(f)), &self.pair.delta);
                gl.apply(&x)
            })
            .collect();
        Matrix::from_cols(k.dim(), &cols)
    }

    /// `λ: K̂ ⊗ Ωⁿ → K ⊗ Ωⁿ`, `λ(f ⊗ ω)(h) = ψ̂(h σ⇀f δ) ⊗ ω`.
    pub fn lambda(&self, n: usize) -> SparseMatrix {
        kron_coef(&self.lambda_coef(), &self.basis, n)
    }

    pub fn lambda_inv(&self, n: usize) -> SparseMatrix {
        let inv = self.lambda_coef().inverse().expect("twisted Fourier transform is invertible");
        kron_coef(&inv, &self.basis, n)
    }
}

/// `M ⊗ id` on `C ⊗ Ωⁿ` for a coefficient matrix `M`.
pub fn kron_coef(m: &Matrix, basis: &FormBasis, n: usize) -> SparseMatrix {
    let target = FormBasis::new(m.rows(), basis.alg_dim);
    let words = basis.words(n);
    build(target.dim(n), basis.dim(n), |col| {
        let (c, wi) = (col / words, col % words);
        let mut out = SparseVec::new();
        for r in 0..m.rows() {
            if !m[(r, c)].is_zero() {
                out.add_at(r * words + wi, &m[(r, c)]);
            }
        }
        out
    })
}

/// `Ω(γ)` for an algebra map `γ: A → A'` (columns in `A'`), extended to
/// the adjoined units.
pub fn forms_functor(src: &FormBasis, dst: &FormBasis, n: usize, gamma: &SparseMatrix) -> SparseMatrix {
    assert_eq!(src.coef_dim, dst.coef_dim);
    build(dst.dim(n), src.dim(n), |col| {
        let (c, w) = src.decode(n, col);
        let pos: Vec<SparseVec> = w
            .iter()
            .enumerate()
            .map(|(k, &a)| {
                if k == 0 && n > 0 && a == src.unit() {
                    SparseVec::unit(dst.unit())
                } else {
                    gamma.col(a).clone()
                }
            })
            .collect();
        let mut out = SparseVec::new();
        dst.accumulate(&mut out, &SparseVec::unit(c), &pos, &Scalar::one());
        out
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Picture {
    Ayd,
    Yd,
}

/// A truncated paramixed complex: spaces of degree `0..=max_degree`.
/// `b[n]: n → n−1` (with `b[0]` the zero map to a zero space),
/// `d[n]` and `big_b[n]: n → n+1` for `n < max_degree`.
#[derive(Clone, Debug)]
pub struct FormComplex {
    pub picture: Picture,
    pub basis: FormBasis,
    pub max_degree: usize,
    pub d: Vec<SparseMatrix>,
    pub b: Vec<SparseMatrix>,
    pub big_b: Vec<SparseMatrix>,
    pub t: Vec<SparseMatrix>,
    pub faces: Vec<Vec<SparseMatrix>>,
    pub modules: Vec<BiModule>,
}

impl FormComplex {
    pub fn dims(&self) -> Vec<usize> {
        (0..=self.max_degree).map(|n| self.basis.dim(n)).collect()
    }
}

/// The anti-Yetter-Drinfeld picture, which needs no modular pair.
pub fn build_ayd(k: &FiniteQuantumGroup, alg: &ModuleAlgebra, max_degree: usize) -> FormComplex {
    let f = AydForms::new(k, alg, max_degree);
    let top = max_degree;
    let mut faces = vec![Vec::new()];
    let mut b = vec![SparseMatrix::zeros(0, f.basis.dim(0))];
    for n in 1..=top {
        let fs: Vec<SparseMatrix> = (0..=n).map(|j| f.face(n, j)).collect();
        b.push(fs.iter().fold(SparseMatrix::zeros(f.basis.dim(n - 1), f.basis.dim(n)), |a, x| a.add(x)));
        faces.push(fs);
    }
    FormComplex {
        picture: Picture::Ayd,
        basis: f.basis,
        max_degree: top,
        d: (0..top).map(|n| f.d(n)).collect(),
        b,
        big_b: (0..top).map(|n| f.big_b(n)).collect(),
        t: (0..=top).map(|n| f.t(n)).collect(),
        faces,
        modules: (0..=top).map(|n| f.module(n)).collect(),
    }
}

/// The Yetter-Drinfeld picture. Its symmetry is `λ⁻¹ T λ`.
pub fn build_yd(
    k: &FiniteQuantumGroup,
    khat: &FiniteQuantumGroup,
    alg: &ModuleAlgebra,
    pair: &ModularPair,
    max_degree: usize,
) -> FormComplex {
    let f = YdForms::new(k, khat, alg, pair, max_degree);
    let ayd = AydForms::new(k, alg, max_degree);
    let top = max_degree;
    let mut faces = vec![Vec::new()];
    let mut b = vec![SparseMatrix::zeros(0, f.basis.dim(0))];
    for n in 1..=top {
        let fs: Vec<SparseMatrix> = (0..=n).map(|j| f.face(n, j)).collect();
        b.push(fs.iter().fold(SparseMatrix::zeros(f.basis.dim(n - 1), f.basis.dim(n)), |a, x| a.add(x)));
        faces.push(fs);
    }
    let t = (0..=top)
        .map(|n| f.lambda_inv(n).compose(&ayd.t(n)).compose(&f.lambda(n)))
        .collect();
    FormComplex {
        picture: Picture::Yd,
        basis: f.basis,
        max_degree: top,
        d: (0..top).map(|n| f.d(n)).collect(),
        b,
        big_b: (0..top).map(|n| f.big_b(n)).collect(),
        t,
        faces,
        modules: (0..=top).map(|n| f.module(n)).collect(),
    }
}

fn matrix_verdict(l: &SparseMatrix, r: &SparseMatrix, what: &str) -> Verdict {
    match l.first_difference(r) {
        None => Verdict::Equal,
        Some(col) => {
            let diff = l.col(col).sub(r.col(col));
            let row = diff.first().map(|(i, _)| i).unwrap_or(0);
            Verdict::NotEqual {
                witness: vec![(String::from(what), col)],
                outputs: vec![row],
                lhs: l.get(row, col),
                rhs: r.get(row, col),
            }
        }
    }
}

/// Exact comparison of two matrices with a column/row witness.
pub fn compare_matrices(l: &SparseMatrix, r: &SparseMatrix, what: &str) -> Verdict {
    matrix_verdict(l, r, what)
}

/// `b² = 0`, `B² = 0` and `Bb + bB = id − T`, wherever the truncation
/// allows.
pub fn paramixed_check(c: &FormComplex) -> Vec<(String, Verdict)> {
    let top = c.max_degree;
    let mut out = Vec::new();
    for n in 2..=top {
        let z = SparseMatrix::zeros(c.basis.dim(n - 2), c.basis.dim(n));
        out.push((format!("b^2 = 0 on degree {n}"), matrix_verdict(&c.b[n - 1].compose(&c.b[n]), &z, "column")));
    }
    for n in 0..top.saturating_sub(1) {
        let z = SparseMatrix::zeros(c.basis.dim(n + 2), c.basis.dim(n));
        out.push((
            format!("B^2 = 0 on degree {n}"),
            matrix_verdict(&c.big_b[n + 1].compose(&c.big_b[n]), &z, "column"),
        ));
    }
    for n in 0..top {
        let mut lhs = c.b[n + 1].compose(&c.big_b[n]);
        if n > 0 {
            lhs = lhs.add(&c.big_b[n - 1].compose(&c.b[n]));
        }
        let rhs = SparseMatrix::identity(c.basis.dim(n)).sub(&c.t[n]);
        out.push((format!("Bb + bB = id - T on degree {n}"), matrix_verdict(&lhs, &rhs, "column")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trip() {
        let b = FormBasis::new(3, 2);
        for n in 0..4 {
            for i in 0..b.dim(n) {
                let (c, w) = b.decode(n, i);
                assert_eq!(b.index(c, &w), i);
                assert_eq!(w.len(), n + 1);
            }
        }
        assert_eq!(b.dim(0), 6);
        assert_eq!(b.dim(2), 3 * 3 * 4);
    }
}
