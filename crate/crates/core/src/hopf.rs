//! Finite-dimensional Hopf algebras given by structure constants.
//!
//! Elements are dense coordinate vectors in the chosen basis. The dual
//! quantum group uses the dual basis, so pairing is the plain dot product and
//! every structure tensor of the dual is a transpose of one of the original.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::linalg::{Matrix, SparseVec};
use crate::scalar::Scalar;
use crate::tensor::SparseTensor;

/// A coordinate vector in some basis.
pub type Vector = Vec<Scalar>;

/// Errors raised while building or analysing a quantum group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HopfError {
    Shape(String),
    /// The invariance equations do not have a one-dimensional solution space.
    NoIntegral { solution_dim: usize },
    MissingIntegral,
    NotInvertible(&'static str),
    NoModularElement,
}

impl fmt::Display for HopfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HopfError::Shape(s) => write!(f, "malformed structure: {s}"),
            HopfError::NoIntegral { solution_dim } => {
                write!(f, "left integral space has dimension {solution_dim}, expected 1")
            }
            HopfError::MissingIntegral => write!(f, "left integral not set"),
            HopfError::NotInvertible(what) => write!(f, "{what} is not invertible"),
            HopfError::NoModularElement => write!(f, "no modular element solves the equations"),
        }
    }
}

/// Outcome of one axiom check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomResult {
    pub name: &'static str,
    pub passed: bool,
    /// Basis indices where the axiom fails, with a short explanation.
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub indices: Vec<usize>,
    pub detail: String,
}

impl Witness {
    pub fn new(indices: &[usize], detail: impl Into<String>) -> Self {
        Witness {
            indices: indices.to_vec(),
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at {:?}: {}", self.indices, self.detail)
    }
}

/// Every axiom checked by [`FiniteQuantumGroup::validate`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub axioms: Vec<AxiomResult>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.axioms.iter().all(|a| a.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomResult> {
        self.axioms.iter().filter(|a| !a.passed)
    }

    pub fn get(&self, name: &str) -> Option<&AxiomResult> {
        self.axioms.iter().find(|a| a.name == name)
    }

    fn push(&mut self, name: &'static str, witness: Option<Witness>) {
        self.axioms.push(AxiomResult {
            name,
            passed: witness.is_none(),
            witness,
        });
    }
}

/// A finite quantum group: a finite-dimensional Hopf algebra with invertible
/// antipode, optionally carrying its left and right integrals.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteQuantumGroup {
    pub name: String,
    pub basis: Vec<String>,
    pub unit: Vector,
    pub counit: Vector,
    /// Column `j` holds the coordinates of `S(e_j)`.
    pub antipode: Matrix,
    /// Left integral as a functional (coordinates against the basis).
    pub left_integral: Option<Vector>,
    /// Right integral as a functional.
    pub right_integral: Option<Vector>,
    pub grouplike_candidates: Vec<Vector>,
    pub character_candidates: Vec<Vector>,
    mult: SparseTensor,
    comult: SparseTensor,
    mult_table: Vec<SparseVec>,
    comult_terms: Vec<Vec<(usize, usize, Scalar)>>,
    antipode_inv: Option<Matrix>,
}

impl fmt::Debug for FiniteQuantumGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteQuantumGroup({}, dim {})", self.name, self.dim())
    }
}

impl FiniteQuantumGroup {
    /// Builds a quantum group from structure tensors.
    ///
    /// `mult[i,j,k]` is the coefficient of `e_k` in `e_i e_j`, and
    /// `comult[i,j,k]` the coefficient of `e_j ⊗ e_k` in `Δ(e_i)`.
    pub fn new(
        name: impl Into<String>,
        basis: Vec<String>,
        unit: Vector,
        mult: SparseTensor,
        comult: SparseTensor,
        counit: Vector,
        antipode: Matrix,
    ) -> Result<Self, HopfError> {
        let n = basis.len();
        let cube = [n, n, n];
        if mult.shape() != cube || comult.shape() != cube {
            return Err(HopfError::Shape(format!("structure tensors must have shape {cube:?}")));
        }
        if unit.len() != n || counit.len() != n {
            return Err(HopfError::Shape(format!("unit and counit must have length {n}")));
        }
        if antipode.rows() != n || antipode.cols() != n {
            return Err(HopfError::Shape(format!("antipode must be {n}x{n}")));
        }
        let mut mult_table = vec![SparseVec::new(); n * n];
        for (idx, x) in mult.iter() {
            mult_table[idx[0] * n + idx[1]].add_at(idx[2], x);
        }
        let mut comult_terms = vec![Vec::new(); n];
        for (idx, x) in comult.iter() {
            comult_terms[idx[0]].push((idx[1], idx[2], x.clone()));
        }
        let antipode_inv = antipode.inverse();
        Ok(FiniteQuantumGroup {
            name: name.into(),
            basis,
            unit,
            counit,
            antipode,
            left_integral: None,
            right_integral: None,
            grouplike_candidates: Vec::new(),
            character_candidates: Vec::new(),
            mult,
            comult,
            mult_table,
            comult_terms,
            antipode_inv,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn mult_tensor(&self) -> &SparseTensor {
        &self.mult
    }

    pub fn comult_tensor(&self) -> &SparseTensor {
        &self.comult
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        let mut v = vec![Scalar::zero(); self.dim()];
        v[i] = Scalar::one();
        v
    }

    pub fn zero(&self) -> Vector {
        vec![Scalar::zero(); self.dim()]
    }

    /// `e_i e_j`.
    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.mult_table[i * self.dim() + j]
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = self.zero();
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (k, c) in self.mul_basis(i, j).iter() {
                    out[k] += &(&ab * c);
                }
            }
        }
        out
    }

    /// Terms `(j, k, c)` of `Δ(e_i) = Σ c e_j ⊗ e_k`.
    pub fn comul_basis(&self, i: usize) -> &[(usize, usize, Scalar)] {
        &self.comult_terms[i]
    }

    /// `Δ(x)` as an `n × n` coefficient matrix.
    pub fn comul(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        let mut out = Matrix::zeros(n, n);
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, k, c) in self.comul_basis(i) {
                out[(*j, *k)] += &(a * c);
            }
        }
        out
    }

    /// Left-nested `Δ^(k)(e_i)`: `Δ^(1) = id`, `Δ^(k+1) = (Δ ⊗ id^{k-1}) Δ^(k)`.
    pub fn iterated_comul_basis(&self, i: usize, k: usize) -> Vec<(Vec<usize>, Scalar)> {
        assert!(k >= 1, "iterated coproduct needs at least one leg");
        let mut terms = vec![(vec![i], Scalar::one())];
        for _ in 1..k {
            let mut next = Vec::new();
            for (legs, c) in &terms {
                for (a, b, d) in self.comul_basis(legs[0]) {
                    let mut l = Vec::with_capacity(legs.len() + 1);
                    l.push(*a);
                    l.push(*b);
                    l.extend_from_slice(&legs[1..]);
                    next.push((l, c * d));
                }
            }
            terms = merge_terms(next);
        }
        terms
    }

    /// Right-nested `Δ^(k)(e_i)`, used to cross-check coassociativity.
    pub fn iterated_comul_basis_right(&self, i: usize, k: usize) -> Vec<(Vec<usize>, Scalar)> {
        assert!(k >= 1, "iterated coproduct needs at least one leg");
        let mut terms = vec![(vec![i], Scalar::one())];
        for _ in 1..k {
            let mut next = Vec::new();
            for (legs, c) in &terms {
                let last = *legs.last().unwrap();
                for (a, b, d) in self.comul_basis(last) {
                    let mut l = legs[..legs.len() - 1].to_vec();
                    l.push(*a);
                    l.push(*b);
                    next.push((l, c * d));
                }
            }
            terms = merge_terms(next);
        }
        terms
    }

    /// `Δ^(k)` as a tensor of shape `[n; k + 1]`, input axis first.
    pub fn iterated_comul_tensor(&self, k: usize, right_nested: bool) -> SparseTensor {
        let n = self.dim();
        let shape = vec![n; k + 1];
        let mut entries = Vec::new();
        for i in 0..n {
            let terms = if right_nested {
                self.iterated_comul_basis_right(i, k)
            } else {
                self.iterated_comul_basis(i, k)
            };
            for (legs, c) in terms {
                let mut idx = vec![i];
                idx.extend(legs);
                entries.push((idx, c));
            }
        }
        SparseTensor::from_entries(&shape, entries).expect("coproduct shape")
    }

    pub fn counit_of(&self, x: &[Scalar]) -> Scalar {
        dot(&self.counit, x)
    }

    pub fn antipode_of(&self, x: &[Scalar]) -> Vector {
        self.antipode.apply(x)
    }

    pub fn antipode_inverse(&self) -> Option<&Matrix> {
        self.antipode_inv.as_ref()
    }

    pub fn antipode_inv_of(&self, x: &[Scalar]) -> Vector {
        self.antipode_inv
            .as_ref()
            .expect("antipode must be invertible")
            .apply(x)
    }

    /// `S^k` for any integer `k`.
    pub fn antipode_power(&self, k: i32) -> Matrix {
        let base = if k < 0 {
            self.antipode_inv.clone().expect("antipode must be invertible")
        } else {
            self.antipode.clone()
        };
        let mut m = Matrix::identity(self.dim());
        for _ in 0..k.unsigned_abs() {
            m = base.mul(&m);
        }
        m
    }

    /// `x ⇀ f` for `x` here and `f` in the dual: `(x ⇀ f)(r) = f(r x)`.
    pub fn hit_left(&self, x: &[Scalar], f: &[Scalar]) -> Vector {
        let n = self.dim();
        (0..n)
            .map(|j| {
                let ejx = self.mul(&self.basis_vector(j), x);
                dot(&ejx, f)
            })
            .collect()
    }

    /// `f ↼ x` for `x` here and `f` in the dual: `(f ↼ x)(r) = f(x r)`.
    pub fn hit_right(&self, f: &[Scalar], x: &[Scalar]) -> Vector {
        let n = self.dim();
        (0..n)
            .map(|j| {
                let xej = self.mul(x, &self.basis_vector(j));
                dot(&xej, f)
            })
            .collect()
    }

    pub fn is_grouplike(&self, g: &[Scalar]) -> bool {
        let c = self.comul(g);
        let n = self.dim();
        let tensor_sq = (0..n).all(|i| (0..n).all(|j| c[(i, j)] == &g[i] * &g[j]));
        tensor_sq && self.counit_of(g).is_one()
    }

    /// Multiplicative functional with `f(1) = 1`.
    pub fn is_character(&self, f: &[Scalar]) -> bool {
        let n = self.dim();
        if !dot(f, &self.unit).is_one() {
            return false;
        }
        (0..n).all(|i| {
            (0..n).all(|j| {
                let prod: Scalar = self.mul_basis(i, j).iter().map(|(k, c)| c * &f[k]).sum();
                prod == &f[i] * &f[j]
            })
        })
    }

    /// The structure axioms plus, when present, integral invariance and the
    /// invertibility conditions that make this a finite quantum group.
    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::default();
        r.push("associativity", self.check_assoc());
        r.push("unit", self.check_unit());
        r.push("coassociativity", self.check_coassoc());
        r.push("counit", self.check_counit());
        r.push("comultiplication is an algebra map", self.check_comult_hom());
        r.push("counit is an algebra map", self.check_counit_hom());
        r.push("antipode is an algebra anti-homomorphism", self.check_antipode_anti_mult());
        r.push("antipode is a coalgebra anti-homomorphism", self.check_antipode_anti_comult());
        r.push(
            "antipode is invertible",
            self.antipode_inv
                .is_none()
                .then(|| Witness::new(&[], "antipode matrix is singular")),
        );
        r.push("antipode laws", self.check_antipode_laws());
        r.push("Galois maps are bijective", self.check_galois());
        match &self.left_integral {
            None => r.push("left integral present", Some(Witness::new(&[], "no left integral"))),
            Some(phi) => {
                r.push("left integral is left invariant", self.check_left_invariant(phi));
                r.push("left integral is faithful", self.check_faithful(phi));
                match &self.right_integral {
                    None => r.push(
                        "right integral present",
                        Some(Witness::new(&[], "no right integral")),
                    ),
                    Some(psi) => {
                        r.push("right integral is right invariant", self.check_right_invariant(psi));
                        let phi_s = self.antipode.apply_left(phi);
                        let w = first_diff(&phi_s, psi)
                            .map(|i| Witness::new(&[i], "right integral differs from φ∘S"));
                        r.push("right integral equals left integral composed with antipode", w);
                    }
                }
            }
        }
        r
    }

    fn check_assoc(&self) -> Option<Witness> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (a, b, c) = (self.basis_vector(i), self.basis_vector(j), self.basis_vector(k));
                    if self.mul(&self.mul(&a, &b), &c) != self.mul(&a, &self.mul(&b, &c)) {
                        return Some(Witness::new(&[i, j, k], "(e_i e_j) e_k ≠ e_i (e_j e_k)"));
                    }
                }
            }
        }
        None
    }

    fn check_unit(&self) -> Option<Witness> {
        for i in 0..self.dim() {
            let e = self.basis_vector(i);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Some(Witness::new(&[i], "unit does not act as identity"));
            }
        }
        None
    }

    fn check_coassoc(&self) -> Option<Witness> {
        for i in 0..self.dim() {
            if self.iterated_comul_basis(i, 3) != self.iterated_comul_basis_right(i, 3) {
                return Some(Witness::new(&[i], "(Δ⊗id)Δ ≠ (id⊗Δ)Δ"));
            }
        }
        None
    }

    fn check_counit(&self) -> Option<Witness> {
        let n = self.dim();
        for i in 0..n {
            let c = self.comul(&self.basis_vector(i));
            let left: Vector = (0..n)
                .map(|k| (0..n).map(|j| &self.counit[j] * &c[(j, k)]).sum())
                .collect();
            let right: Vector = (0..n)
                .map(|j| (0..n).map(|k| &c[(j, k)] * &self.counit[k]).sum())
                .collect();
            if left != self.basis_vector(i) || right != self.basis_vector(i) {
                return Some(Witness::new(&[i], "counit law fails"));
            }
        }
        None
    }

    fn check_comult_hom(&self) -> Option<Witness> {
        let n = self.dim();
        let unit_sq = self.comul(&self.unit);
        for a in 0..n {
            for b in 0..n {
                if unit_sq[(a, b)] != &self.unit[a] * &self.unit[b] {
                    return Some(Witness::new(&[a, b], "Δ(1) ≠ 1⊗1"));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let lhs = self.comul(&self.mul(&self.basis_vector(i), &self.basis_vector(j)));
                let mut rhs = Matrix::zeros(n, n);
                for (a, b, c) in self.comul_basis(i) {
                    for (p, q, d) in self.comul_basis(j) {
                        let cd = c * d;
                        for (u, x) in self.mul_basis(*a, *p).iter() {
                            for (v, y) in self.mul_basis(*b, *q).iter() {
                                rhs[(u, v)] += &(&cd * &(x * y));
                            }
                        }
                    }
                }
                if lhs != rhs {
                    return Some(Witness::new(&[i, j], "Δ(e_i e_j) ≠ Δ(e_i)Δ(e_j)"));
                }
            }
        }
        None
    }

    fn check_counit_hom(&self) -> Option<Witness> {
        if !self.counit_of(&self.unit).is_one() {
            return Some(Witness::new(&[], "ε(1) ≠ 1"));
        }
        (!self.is_character(&self.counit)).then(|| Witness::new(&[], "ε is not multiplicative"))
    }

    fn check_antipode_anti_mult(&self) -> Option<Witness> {
        let n = self.dim();
        if self.antipode_of(&self.unit) != self.unit {
            return Some(Witness::new(&[], "S(1) ≠ 1"));
        }
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (self.basis_vector(i), self.basis_vector(j));
                let lhs = self.antipode_of(&self.mul(&a, &b));
                let rhs = self.mul(&self.antipode_of(&b), &self.antipode_of(&a));
                if lhs != rhs {
                    return Some(Witness::new(&[i, j], "S(e_i e_j) ≠ S(e_j)S(e_i)"));
                }
            }
        }
        None
    }

    fn check_antipode_anti_comult(&self) -> Option<Witness> {
        let n = self.dim();
        if self.antipode.apply_left(&self.counit) != self.counit {
            return Some(Witness::new(&[], "ε∘S ≠ ε"));
        }
        for i in 0..n {
            let lhs = self.comul(&self.antipode_of(&self.basis_vector(i)));
            let mut rhs = Matrix::zeros(n, n);
            for (a, b, c) in self.comul_basis(i) {
                let sb = self.antipode.col(*b);
                let sa = self.antipode.col(*a);
                for u in 0..n {
                    for v in 0..n {
                        if !sb[u].is_zero() && !sa[v].is_zero() {
                            rhs[(u, v)] += &(c * &(&sb[u] * &sa[v]));
                        }
                    }
                }
            }
            if lhs != rhs {
                return Some(Witness::new(&[i], "Δ(S(e_i)) ≠ (S⊗S)Δ^op(e_i)"));
            }
        }
        None
    }

    fn check_antipode_laws(&self) -> Option<Witness> {
        for i in 0..self.dim() {
            let mut left = self.zero();
            let mut right = self.zero();
            for (a, b, c) in self.comul_basis(i) {
                let l = self.mul(&self.antipode.col(*a), &self.basis_vector(*b));
                let r = self.mul(&self.basis_vector(*a), &self.antipode.col(*b));
                axpy(&mut left, c, &l);
                axpy(&mut right, c, &r);
            }
            let expect: Vector = self.unit.iter().map(|u| u * &self.counit[i]).collect();
            if left != expect || right != expect {
                return Some(Witness::new(&[i], "S(e_(1))e_(2) or e_(1)S(e_(2)) ≠ ε(e)1"));
            }
        }
        None
    }

    /// The four Galois maps `Δ(s)(t⊗1)`, `Δ(s)(1⊗t)`, `(s⊗1)Δ(t)`, `(1⊗s)Δ(t)`
    /// as `n² × n²` matrices on the basis `e_s ⊗ e_t`.
    pub fn galois_matrices(&self) -> [Matrix; 4] {
        let n = self.dim();
        let mut ms: [Matrix; 4] = core::array::from_fn(|_| Matrix::zeros(n * n, n * n));
        for s in 0..n {
            for t in 0..n {
                let col = s * n + t;
                for (a, b, c) in self.comul_basis(s) {
                    for (u, x) in self.mul_basis(*a, t).iter() {
                        ms[0][(u * n + b, col)] += &(c * x);
                    }
                    for (v, y) in self.mul_basis(*b, t).iter() {
                        ms[1][(a * n + v, col)] += &(c * y);
                    }
                }
                for (a, b, c) in self.comul_basis(t) {
                    for (u, x) in self.mul_basis(s, *a).iter() {
                        ms[2][(u * n + b, col)] += &(c * x);
                    }
                    for (v, y) in self.mul_basis(s, *b).iter() {
                        ms[3][(a * n + v, col)] += &(c * y);
                    }
                }
            }
        }
        ms
    }

    fn check_galois(&self) -> Option<Witness> {
        let n = self.dim();
        for (k, m) in self.galois_matrices().iter().enumerate() {
            let r = m.rank();
            if r != n * n {
                return Some(Witness::new(&[k], format!("Galois map {k} has rank {r} < {}", n * n)));
            }
        }
        None
    }

    fn check_left_invariant(&self, phi: &[Scalar]) -> Option<Witness> {
        let n = self.dim();
        for t in 0..n {
            let mut lhs = self.zero();
            for (a, b, c) in self.comul_basis(t) {
                lhs[*a] += &(c * &phi[*b]);
            }
            let rhs: Vector = self.unit.iter().map(|u| u * &phi[t]).collect();
            if let Some(k) = first_diff(&lhs, &rhs) {
                return Some(Witness::new(&[t, k], "(id⊗φ)Δ(t) ≠ φ(t)1"));
            }
        }
        None
    }

    fn check_right_invariant(&self, psi: &[Scalar]) -> Option<Witness> {
        let n = self.dim();
        for t in 0..n {
            let mut lhs = self.zero();
            for (a, b, c) in self.comul_basis(t) {
                lhs[*b] += &(c * &psi[*a]);
            }
            let rhs: Vector = self.unit.iter().map(|u| u * &psi[t]).collect();
            if let Some(k) = first_diff(&lhs, &rhs) {
                return Some(Witness::new(&[t, k], "(ψ⊗id)Δ(t) ≠ ψ(t)1"));
            }
        }
        None
    }

    /// `P[i,j] = φ(e_i e_j)`.
    pub fn integral_gram(&self, phi: &[Scalar]) -> Matrix {
        let n = self.dim();
        let mut p = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                p[(i, j)] = self.mul_basis(i, j).iter().map(|(k, c)| c * &phi[k]).sum();
            }
        }
        p
    }

    fn check_faithful(&self, phi: &[Scalar]) -> Option<Witness> {
        let p = self.integral_gram(phi);
        let r = p.rank();
        (r < self.dim()).then(|| Witness::new(&[r], "φ(e_i e_j) is singular"))
    }

    /// Solves `(id⊗φ)Δ(t) = φ(t)1`, normalises the first nonzero coordinate
    /// to 1, and sets `ψ = φ∘S`.
    pub fn solve_integrals(&mut self) -> Result<(), HopfError> {
        let n = self.dim();
        let mut rows = Vec::new();
        for t in 0..n {
            for k in 0..n {
                let mut row = vec![Scalar::zero(); n];
                for (a, b, c) in self.comul_basis(t) {
                    if *a == k {
                        row[*b] += c;
                    }
                }
                row[t] -= &self.unit[k];
                rows.push(row);
            }
        }
        let ker = Matrix::from_rows(&rows).kernel();
        if ker.len() != 1 {
            return Err(HopfError::NoIntegral { solution_dim: ker.len() });
        }
        let phi = &ker[0];
        let lead = phi.iter().find(|x| !x.is_zero()).expect("kernel vector is nonzero");
        let inv = lead.inv().unwrap();
        let phi: Vector = phi.iter().map(|x| x * &inv).collect();
        self.right_integral = Some(self.antipode.apply_left(&phi));
        self.left_integral = Some(phi);
        Ok(())
    }

    fn phi(&self) -> Result<&Vector, HopfError> {
        self.left_integral.as_ref().ok_or(HopfError::MissingIntegral)
    }

    fn psi(&self) -> Result<&Vector, HopfError> {
        self.right_integral.as_ref().ok_or(HopfError::MissingIntegral)
    }

    /// Matrix of a map `H → Ĥ` given by `t ↦ (r ↦ w(r, t))`.
    fn fourier(&self, w: &[Scalar], t_on_right: bool) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for t in 0..n {
            for r in 0..n {
                let prod = if t_on_right {
                    self.mul_basis(r, t)
                } else {
                    self.mul_basis(t, r)
                };
                m[(r, t)] = prod.iter().map(|(k, c)| c * &w[k]).sum();
            }
        }
        m
    }

    /// `F_l(t) = φ(· t)`.
    pub fn fourier_fl(&self) -> Result<Matrix, HopfError> {
        Ok(self.fourier(self.phi()?, true))
    }

    /// `F_r(t) = φ(t ·)`.
    pub fn fourier_fr(&self) -> Result<Matrix, HopfError> {
        Ok(self.fourier(self.phi()?, false))
    }

    /// `G_l(t) = ψ(· t)`.
    pub fn fourier_gl(&self) -> Result<Matrix, HopfError> {
        Ok(self.fourier(self.psi()?, true))
    }

    /// `G_r(t) = ψ(t ·)`.
    pub fn fourier_gr(&self) -> Result<Matrix, HopfError> {
        Ok(self.fourier(self.psi()?, false))
    }

    /// The element `ν` with `(φ⊗id)Δ(t) = φ(t) ν`.
    pub fn modular_element(&self) -> Result<Vector, HopfError> {
        let phi = self.phi()?;
        let n = self.dim();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for t in 0..n {
            let mut lhs = self.zero();
            for (a, b, c) in self.comul_basis(t) {
                lhs[*b] += &(c * &phi[*a]);
            }
            for k in 0..n {
                let mut row = vec![Scalar::zero(); n];
                row[k] = phi[t].clone();
                rows.push(row);
                rhs.push(lhs[k].clone());
            }
        }
        crate::linalg::solve_linear(&Matrix::from_rows(&rows), &rhs)
            .map_err(|_| HopfError::NoModularElement)
    }

    /// The dual quantum group on the dual basis.
    ///
    /// Its integrals are fixed by `φ̂(G_r(t)) = ε(t)` and `ψ̂(F_l(t)) = ε(t)`,
    /// which makes the dual of the dual coincide with the original.
    pub fn dualize(&self) -> Result<FiniteQuantumGroup, HopfError> {
        let n = self.dim();
        let mult = self.comult.permute(&[1, 2, 0]).expect("permutation");
        let comult = self.mult.permute(&[2, 0, 1]).expect("permutation");
        let basis = self.basis.iter().map(|b| format!("{b}*")).collect();
        let mut dual = FiniteQuantumGroup::new(
            dual_name(&self.name),
            basis,
            self.counit.clone(),
            mult,
            comult,
            self.unit.clone(),
            self.antipode.transpose(),
        )?;
        if self.left_integral.is_some() {
            let gr = self.fourier_gr()?;
            let fl = self.fourier_fl()?;
            let gr_inv = gr.inverse().ok_or(HopfError::NotInvertible("G_r"))?;
            let fl_inv = fl.inverse().ok_or(HopfError::NotInvertible("F_l"))?;
            dual.left_integral = Some(gr_inv.apply_left(&self.counit));
            dual.right_integral = Some(fl_inv.apply_left(&self.counit));
        }
        dual.grouplike_candidates = self.character_candidates.clone();
        dual.character_candidates = self.grouplike_candidates.clone();
        debug_assert_eq!(dual.dim(), n);
        Ok(dual)
    }

    /// True when every structure tensor and integral agrees exactly.
    pub fn same_structure(&self, other: &FiniteQuantumGroup) -> bool {
        self.mult == other.mult
            && self.comult == other.comult
            && self.unit == other.unit
            && self.counit == other.counit
            && self.antipode == other.antipode
            && self.left_integral == other.left_integral
            && self.right_integral == other.right_integral
    }

    /// The tensor product quantum group `self ⊗ other` on the product basis.
    pub fn tensor_product(&self, other: &FiniteQuantumGroup) -> Result<FiniteQuantumGroup, HopfError> {
        let (n, m) = (self.dim(), other.dim());
        let idx = |i: usize, j: usize| i * m + j;
        let nm = n * m;
        let mut mult = Vec::new();
        for (a, x) in self.mult.iter() {
            for (b, y) in other.mult.iter() {
                mult.push((vec![idx(a[0], b[0]), idx(a[1], b[1]), idx(a[2], b[2])], x * y));
            }
        }
        let mut comult = Vec::new();
        for (a, x) in self.comult.iter() {
            for (b, y) in other.comult.iter() {
                comult.push((vec![idx(a[0], b[0]), idx(a[1], b[1]), idx(a[2], b[2])], x * y));
            }
        }
        let kron = |u: &[Scalar], v: &[Scalar]| -> Vector {
            u.iter().flat_map(|a| v.iter().map(move |b| a * b)).collect()
        };
        let mut s = Matrix::zeros(nm, nm);
        for i in 0..n {
            for j in 0..m {
                for k in 0..n {
                    for l in 0..m {
                        s[(idx(k, l), idx(i, j))] = &self.antipode[(k, i)] * &other.antipode[(l, j)];
                    }
                }
            }
        }
        let basis = self
            .basis
            .iter()
            .flat_map(|a| other.basis.iter().map(move |b| format!("{a}⊗{b}")))
            .collect();
        let mut t = FiniteQuantumGroup::new(
            format!("{}⊗{}", self.name, other.name),
            basis,
            kron(&self.unit, &other.unit),
            SparseTensor::from_entries(&[nm, nm, nm], mult).expect("shape"),
            SparseTensor::from_entries(&[nm, nm, nm], comult).expect("shape"),
            kron(&self.counit, &other.counit),
            s,
        )?;
        if let (Some(p1), Some(p2)) = (&self.left_integral, &other.left_integral) {
            t.left_integral = Some(kron(p1, p2));
        }
        if let (Some(p1), Some(p2)) = (&self.right_integral, &other.right_integral) {
            t.right_integral = Some(kron(p1, p2));
        }
        for g in &self.grouplike_candidates {
            for h in &other.grouplike_candidates {
                t.grouplike_candidates.push(kron(g, h));
            }
        }
        for f in &self.character_candidates {
            for h in &other.character_candidates {
                t.character_candidates.push(kron(f, h));
            }
        }
        Ok(t)
    }
}

fn dual_name(name: &str) -> String {
    match name.strip_suffix("^") {
        Some(base) => String::from(base),
        None => format!("{name}^"),
    }
}

fn merge_terms(terms: Vec<(Vec<usize>, Scalar)>) -> Vec<(Vec<usize>, Scalar)> {
    let mut map: alloc::collections::BTreeMap<Vec<usize>, Scalar> = Default::default();
    for (k, c) in terms {
        *map.entry(k).or_default() += &c;
    }
    map.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Dot product of coordinate vectors; also the pairing of `Ĥ` with `H`.
pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

/// `y += c x`.
pub fn axpy(y: &mut [Scalar], c: &Scalar, x: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, b) in y.iter_mut().zip(x) {
        if !b.is_zero() {
            *a += &(c * b);
        }
    }
}

fn first_diff(a: &[Scalar], b: &[Scalar]) -> Option<usize> {
    a.iter().zip(b).position(|(x, y)| x != y)
}
