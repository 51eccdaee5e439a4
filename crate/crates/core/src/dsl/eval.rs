use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::ast::{Constant, Expr, MapName};
use super::DslError;
use crate::halg::ModuleAlgebra;
use crate::hopf::{FiniteQuantumGroup, Vector};
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::tensor::SparseTensor;

/// Where a value lives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Space {
    H,
    Hhat,
    A,
}

impl Space {
    fn dual(self) -> Space {
        match self {
            Space::H => Space::Hhat,
            Space::Hhat => Space::H,
            Space::A => Space::A,
        }
    }
}

/// Which side of the environment acts on the bound algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebraSide {
    H,
    Hhat,
}

impl AlgebraSide {
    fn space(self) -> Space {
        match self {
            AlgebraSide::H => Space::H,
            AlgebraSide::Hhat => Space::Hhat,
        }
    }
}

/// Variable tags. Names not listed are tagged by their first letter:
/// `t r s x y k u v w z` in `H`, `f g h l p q` in `Ĥ`, `a b c d e` in `A`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    overrides: BTreeMap<String, Space>,
}

impl Signature {
    pub fn with(mut self, name: &str, space: Space) -> Self {
        self.overrides.insert(name.to_string(), space);
        self
    }

    pub fn space_of(&self, name: &str) -> Option<Space> {
        if let Some(s) = self.overrides.get(name) {
            return Some(*s);
        }
        match name.chars().next()? {
            't' | 'r' | 's' | 'x' | 'y' | 'k' | 'u' | 'v' | 'w' | 'z' => Some(Space::H),
            'f' | 'g' | 'h' | 'l' | 'p' | 'q' => Some(Space::Hhat),
            'a' | 'b' | 'c' | 'd' | 'e' => Some(Space::A),
            _ => None,
        }
    }
}

/// Bindings for compilation: the quantum group, its dual, optionally a
/// modular pair and an algebra.
#[derive(Clone)]
pub struct Env<'a> {
    h: &'a FiniteQuantumGroup,
    hhat: &'a FiniteQuantumGroup,
    sigma: Option<Vector>,
    delta: Option<Vector>,
    algebra: Option<(&'a ModuleAlgebra, AlgebraSide)>,
    pub signature: Signature,
    /// `F̂: Ĥ → H` and `F: H → Ĥ`.
    fourier: Option<(Matrix, Matrix)>,
}

impl<'a> Env<'a> {
    pub fn new(h: &'a FiniteQuantumGroup, hhat: &'a FiniteQuantumGroup) -> Self {
        Env {
            h,
            hhat,
            sigma: None,
            delta: None,
            algebra: None,
            signature: Signature::default(),
            fourier: None,
        }
    }

    /// Binds `sigma ∈ H` and `delta ∈ Ĥ`. The twisted Fourier transforms
    /// become available when both quantum groups carry integrals.
    pub fn with_pair(mut self, sigma: &[Scalar], delta: &[Scalar]) -> Self {
        self.sigma = Some(sigma.to_vec());
        self.delta = Some(delta.to_vec());
        let fhat = crate::duality::twisted_fourier(self.h, self.hhat, sigma, delta).ok();
        let f = crate::duality::twisted_fourier(self.hhat, self.h, delta, sigma).ok();
        self.fourier = fhat.zip(f);
        self
    }

    pub fn with_algebra(mut self, alg: &'a ModuleAlgebra, side: AlgebraSide) -> Self {
        self.algebra = Some((alg, side));
        self
    }

    pub fn with_signature(mut self, sig: Signature) -> Self {
        self.signature = sig;
        self
    }

    /// The same bindings seen from the dual: `H` and `Ĥ` trade places and
    /// the pair `(σ, δ)` becomes `(δ, σ)`.
    pub fn swapped(&self) -> Env<'a> {
        Env {
            h: self.hhat,
            hhat: self.h,
            sigma: self.delta.clone(),
            delta: self.sigma.clone(),
            algebra: self.algebra.map(|(a, s)| {
                (
                    a,
                    match s {
                        AlgebraSide::H => AlgebraSide::Hhat,
                        AlgebraSide::Hhat => AlgebraSide::H,
                    },
                )
            }),
            signature: self.signature.clone(),
            fourier: self.fourier.clone().map(|(a, b)| (b, a)),
        }
    }

    pub fn h(&self) -> &'a FiniteQuantumGroup {
        self.h
    }

    pub fn hhat(&self) -> &'a FiniteQuantumGroup {
        self.hhat
    }

    fn group(&self, s: Space) -> &'a FiniteQuantumGroup {
        match s {
            Space::H => self.h,
            Space::Hhat => self.hhat,
            Space::A => unreachable!("the algebra is not a quantum group"),
        }
    }

    fn dim(&self, s: Space) -> Result<usize, DslError> {
        Ok(match s {
            Space::H => self.h.dim(),
            Space::Hhat => self.hhat.dim(),
            Space::A => self.alg()?.0.dim(),
        })
    }

    fn alg(&self) -> Result<(&'a ModuleAlgebra, AlgebraSide), DslError> {
        self.algebra.ok_or_else(|| DslError::Unbound("no algebra bound".to_string()))
    }

    fn constant(&self, c: Constant, power: i32) -> Result<(Vector, Space), DslError> {
        let unbound = |s: &str| DslError::Unbound(s.to_string());
        let integral = |v: &Option<Vector>, s: &str| v.clone().ok_or_else(|| unbound(s));
        Ok(match c {
            Constant::Unit => (self.h.unit.clone(), Space::H),
            Constant::Epsilon => (self.h.counit.clone(), Space::Hhat),
            Constant::Phi => (integral(&self.h.left_integral, "phi")?, Space::Hhat),
            Constant::Psi => (integral(&self.h.right_integral, "psi")?, Space::Hhat),
            Constant::PhiHat => (integral(&self.hhat.left_integral, "phihat")?, Space::H),
            Constant::PsiHat => (integral(&self.hhat.right_integral, "psihat")?, Space::H),
            Constant::Sigma => {
                let s = self.sigma.as_ref().ok_or_else(|| unbound("sigma: no modular pair"))?;
                (group_power(self.h, s, power), Space::H)
            }
            Constant::Delta => {
                let d = self.delta.as_ref().ok_or_else(|| unbound("delta: no modular pair"))?;
                (group_power(self.hhat, d, power), Space::Hhat)
            }
        })
    }
}

fn group_power(g: &FiniteQuantumGroup, x: &[Scalar], p: i32) -> Vector {
    let base = if p < 0 { g.antipode_of(x) } else { x.to_vec() };
    let mut out = g.unit.clone();
    for _ in 0..p.unsigned_abs() {
        out = g.mul(&out, &base);
    }
    out
}

/// Axis of a plan node.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Axis {
    Internal(usize),
    External(usize),
}

#[derive(Clone, Debug)]
struct PlanNode {
    tensor: SparseTensor,
    axes: Vec<Axis>,
}

/// One monomial: a tensor network plus its elimination order.
#[derive(Clone, Debug)]
pub struct ContractionPlan {
    pub coeff: Scalar,
    nodes: Vec<PlanNode>,
    ext_dims: Vec<usize>,
    /// Pairs of node ids to merge; merged nodes get consecutive new ids.
    pub order: Vec<(usize, usize)>,
}

impl ContractionPlan {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }
}

/// A compiled expression: a sum of plans sharing variables and outputs.
#[derive(Clone, Debug)]
pub struct CompiledExpr {
    pub vars: Vec<(String, Space)>,
    pub outputs: Vec<Space>,
    pub terms: Vec<ContractionPlan>,
    shape: Vec<usize>,
}

impl CompiledExpr {
    pub fn shape(&self) -> &[usize] {
        &self.shape
    }
}

/// Outcome of [`check_identity`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Equal,
    /// Basis assignment to the variables (then output indices) where the
    /// two sides differ.
    NotEqual {
        witness: Vec<(String, usize)>,
        outputs: Vec<usize>,
        lhs: Scalar,
        rhs: Scalar,
    },
}

impl Verdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, Verdict::Equal)
    }
}

fn collect_vars(e: &Expr, out: &mut Vec<String>) {
    match e {
        Expr::Var { name, .. } => {
            if !out.contains(name) {
                out.push(name.clone());
            }
        }
        Expr::Num(_) | Expr::Const { .. } => {}
        Expr::Map { arg, .. } | Expr::Neg(arg) => collect_vars(arg, out),
        Expr::Act(a, b)
        | Expr::Mul(a, b)
        | Expr::HitLeft(a, b)
        | Expr::HitRight(a, b)
        | Expr::Pair(a, b)
        | Expr::Add(a, b)
        | Expr::Sub(a, b) => {
            collect_vars(a, out);
            collect_vars(b, out);
        }
        Expr::Tensor(ps) => ps.iter().for_each(|p| collect_vars(p, out)),
    }
}

fn cross2(a: Vec<(Scalar, Expr)>, b: Vec<(Scalar, Expr)>, f: impl Fn(Expr, Expr) -> Expr) -> Vec<(Scalar, Expr)> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for (ca, ea) in &a {
        for (cb, eb) in &b {
            out.push((ca * cb, f(ea.clone(), eb.clone())));
        }
    }
    out
}

/// Distributes every sum, returning signed monomials.
fn expand(e: &Expr) -> Vec<(Scalar, Expr)> {
    let b = |x: Expr| Box::new(x);
    match e {
        Expr::Num(_) | Expr::Var { .. } | Expr::Const { .. } => vec![(Scalar::one(), e.clone())],
        Expr::Add(x, y) => {
            let mut v = expand(x);
            v.extend(expand(y));
            v
        }
        Expr::Sub(x, y) => {
            let mut v = expand(x);
            v.extend(expand(y).into_iter().map(|(c, t)| (-c, t)));
            v
        }
        Expr::Neg(x) => expand(x).into_iter().map(|(c, t)| (-c, t)).collect(),
        Expr::Map { map, arg } => expand(arg)
            .into_iter()
            .map(|(c, t)| (c, Expr::Map { map: *map, arg: b(t) }))
            .collect(),
        Expr::Act(x, y) => cross2(expand(x), expand(y), |p, q| Expr::Act(b(p), b(q))),
        Expr::Mul(x, y) => cross2(expand(x), expand(y), |p, q| Expr::Mul(b(p), b(q))),
        Expr::HitLeft(x, y) => cross2(expand(x), expand(y), |p, q| Expr::HitLeft(b(p), b(q))),
        Expr::HitRight(x, y) => cross2(expand(x), expand(y), |p, q| Expr::HitRight(b(p), b(q))),
        Expr::Pair(x, y) => cross2(expand(x), expand(y), |p, q| Expr::Pair(b(p), b(q))),
        Expr::Tensor(parts) => {
            let mut acc: Vec<(Scalar, Vec<Expr>)> = vec![(Scalar::one(), Vec::new())];
            for p in parts {
                let ex = expand(p);
                let mut next = Vec::new();
                for (c, v) in &acc {
                    for (d, t) in &ex {
                        let mut w = v.clone();
                        w.push(t.clone());
                        next.push((c * d, w));
                    }
                }
                acc = next;
            }
            acc.into_iter().map(|(c, v)| (c, Expr::Tensor(v))).collect()
        }
    }
}

#[derive(Default)]
struct LegUse {
    /// Bare occurrences.
    bare: usize,
    /// Occurrence count per leg index.
    legs: BTreeMap<u32, usize>,
}

fn scan_legs(e: &Expr, vars: &mut BTreeMap<String, LegUse>, consts: &mut BTreeMap<(Constant, Option<u32>, i32), LegUse>) {
    match e {
        Expr::Var { name, leg } => {
            let u = vars.entry(name.clone()).or_default();
            match leg {
                None => u.bare += 1,
                Some(k) => *u.legs.entry(*k).or_default() += 1,
            }
        }
        Expr::Const { c, copy, power, leg: Some(k) } => {
            *consts.entry((*c, *copy, *power)).or_default().legs.entry(*k).or_default() += 1;
        }
        Expr::Num(_) | Expr::Const { .. } => {}
        Expr::Map { arg, .. } | Expr::Neg(arg) => scan_legs(arg, vars, consts),
        Expr::Act(a, b)
        | Expr::Mul(a, b)
        | Expr::HitLeft(a, b)
        | Expr::HitRight(a, b)
        | Expr::Pair(a, b)
        | Expr::Add(a, b)
        | Expr::Sub(a, b) => {
            scan_legs(a, vars, consts);
            scan_legs(b, vars, consts);
        }
        Expr::Tensor(ps) => ps.iter().for_each(|p| scan_legs(p, vars, consts)),
    }
}

struct Builder<'e, 'a> {
    env: &'e Env<'a>,
    nodes: Vec<(SparseTensor, Vec<usize>)>,
    parent: Vec<usize>,
    dims: Vec<usize>,
    var_edge: BTreeMap<String, usize>,
    var_space: BTreeMap<String, Space>,
    var_legs: BTreeMap<String, Vec<usize>>,
    var_maxleg: BTreeMap<String, u32>,
    const_legs: BTreeMap<(Constant, Option<u32>, i32), Vec<usize>>,
    const_maxleg: BTreeMap<(Constant, Option<u32>, i32), u32>,
    coeff: Scalar,
}

impl<'e, 'a> Builder<'e, 'a> {
    fn edge(&mut self, dim: usize) -> usize {
        self.parent.push(self.parent.len());
        self.dims.push(dim);
        self.parent.len() - 1
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        debug_assert_eq!(self.dims[ra], self.dims[rb], "joined edges differ in dimension");
        if ra != rb {
            self.parent[rb] = ra;
        }
    }

    fn node(&mut self, t: SparseTensor) -> Vec<usize> {
        let edges: Vec<usize> = t.shape().to_vec().into_iter().map(|d| self.edge(d)).collect();
        self.nodes.push((t, edges.clone()));
        edges
    }

    fn map_matrix(&self, map: MapName, s: Space) -> Result<(Matrix, Space), DslError> {
        let mismatch = || DslError::TagMismatch(format!("{} cannot take an argument in {s:?}", map.name()));
        let four = |i: usize| -> Result<Matrix, DslError> {
            let (fh, f) = self
                .env
                .fourier
                .clone()
                .ok_or_else(|| DslError::Unbound("twisted Fourier transform needs a modular pair".to_string()))?;
            Ok(if i == 0 { fh } else { f })
        };
        let hop = |r: Result<Matrix, crate::hopf::HopfError>| r.map_err(|e| DslError::Unbound(format!("{e}")));
        match (map, s) {
            (MapName::S, Space::H | Space::Hhat) => Ok((self.env.group(s).antipode.clone(), s)),
            (MapName::Sinv, Space::H | Space::Hhat) => Ok((
                self.env
                    .group(s)
                    .antipode_inverse()
                    .cloned()
                    .ok_or_else(|| DslError::Unbound("antipode is not invertible".to_string()))?,
                s,
            )),
            (MapName::S2, Space::H | Space::Hhat) => Ok((self.env.group(s).antipode_power(2), s)),
            (MapName::Fl, Space::H) => Ok((hop(self.env.h.fourier_fl())?, Space::Hhat)),
            (MapName::Fr, Space::H) => Ok((hop(self.env.h.fourier_fr())?, Space::Hhat)),
            (MapName::Gl, Space::H) => Ok((hop(self.env.h.fourier_gl())?, Space::Hhat)),
            (MapName::Gr, Space::H) => Ok((hop(self.env.h.fourier_gr())?, Space::Hhat)),
            (MapName::Glhat, Space::Hhat) => Ok((hop(self.env.hhat.fourier_gl())?, Space::H)),
            (MapName::Fhat, Space::Hhat) => Ok((four(0)?, Space::H)),
            (MapName::F, Space::H) => Ok((four(1)?, Space::Hhat)),
            _ => Err(mismatch()),
        }
    }

    fn leg_edge_var(&mut self, name: &str, leg: u32) -> Result<(usize, Space), DslError> {
        let space = self.var_space[name];
        if !self.var_legs.contains_key(name) {
            let k = self.var_maxleg[name];
            let ext = self.var_edge[name];
            let legs = match space {
                Space::A => {
                    let (alg, side) = self.env.alg()?;
                    let coalg = self.env.group(side.space().dual());
                    let t = iterated_coaction(alg, coalg, k as usize)?;
                    let e = self.node(t);
                    self.union(e[0], ext);
                    e[1..].to_vec()
                }
                _ if k == 1 => vec![ext],
                _ => {
                    let t = self.env.group(space).iterated_comul_tensor(k as usize, false);
                    let e = self.node(t);
                    self.union(e[0], ext);
                    e[1..].to_vec()
                }
            };
            self.var_legs.insert(name.to_string(), legs);
        }
        let legs = &self.var_legs[name];
        let (idx, sp) = match space {
            Space::A => (leg as usize, if leg == 0 { Space::A } else { self.env.alg()?.1.space().dual() }),
            _ => (leg as usize - 1, space),
        };
        Ok((legs[idx], sp))
    }

    fn compile(&mut self, e: &Expr) -> Result<Option<(usize, Space)>, DslError> {
        match e {
            Expr::Num(x) => {
                self.coeff = &self.coeff * x;
                Ok(None)
            }
            Expr::Var { name, leg } => {
                let space = self.var_space[name];
                match leg {
                    None => Ok(Some((self.var_edge[name], space))),
                    Some(k) => self.leg_edge_var(name, *k).map(Some),
                }
            }
            Expr::Const { c, copy, power, leg } => {
                let (v, space) = self.env.constant(*c, *power)?;
                let n = v.len();
                match leg {
                    None => {
                        let t = SparseTensor::from_entries(&[n], v.iter().enumerate().map(|(i, x)| (vec![i], x.clone())))?;
                        Ok(Some((self.node(t)[0], space)))
                    }
                    Some(k) => {
                        let key = (*c, *copy, *power);
                        if !self.const_legs.contains_key(&key) {
                            let m = self.const_maxleg[&key] as usize;
                            let g = self.env.group(space);
                            let mut entries = Vec::new();
                            for (i, x) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                                if m == 1 {
                                    entries.push((vec![i], x.clone()));
                                    continue;
                                }
                                for (legs, c) in g.iterated_comul_basis(i, m) {
                                    entries.push((legs, x * &c));
                                }
                            }
                            let t = SparseTensor::from_entries(&vec![n; m], entries)?;
                            let edges = self.node(t);
                            self.const_legs.insert(key, edges);
                        }
                        Ok(Some((self.const_legs[&key][*k as usize - 1], space)))
                    }
                }
            }
            Expr::Map { map, arg } => {
                let (x, s) = self
                    .compile(arg)?
                    .ok_or_else(|| DslError::TagMismatch(format!("{} applied to a scalar", map.name())))?;
                if *map == MapName::Counit {
                    if s == Space::A {
                        return Err(DslError::TagMismatch("counit of an algebra element".to_string()));
                    }
                    let g = self.env.group(s);
                    let t = SparseTensor::from_entries(&[g.dim()], g.counit.iter().enumerate().map(|(i, c)| (vec![i], c.clone())))?;
                    let e = self.node(t);
                    self.union(e[0], x);
                    return Ok(None);
                }
                let (m, out) = self.map_matrix(*map, s)?;
                let mut entries = Vec::new();
                for j in 0..m.cols() {
                    for i in 0..m.rows() {
                        if !m[(i, j)].is_zero() {
                            entries.push((vec![j, i], m[(i, j)].clone()));
                        }
                    }
                }
                let t = SparseTensor::from_entries(&[m.cols(), m.rows()], entries)?;
                let e = self.node(t);
                self.union(e[0], x);
                Ok(Some((e[1], out)))
            }
            Expr::Act(x, a) => {
                let (alg, side) = self.env.alg()?;
                let xs = self.compile(x)?;
                let av = self.compile(a)?;
                match (xs, av) {
                    (Some((xe, s)), Some((ae, Space::A))) if s == side.space() => {
                        let e = self.node(alg.action_tensor());
                        self.union(e[0], xe);
                        self.union(e[1], ae);
                        Ok(Some((e[2], Space::A)))
                    }
                    _ => Err(DslError::TagMismatch(format!("act({x}, {a})"))),
                }
            }
            Expr::Mul(x, y) => {
                let p = self.compile(x)?;
                let q = self.compile(y)?;
                match (p, q) {
                    (None, r) | (r, None) => Ok(r),
                    (Some((pe, ps)), Some((qe, qs))) => {
                        if ps != qs {
                            return Err(DslError::TagMismatch(format!("product of {ps:?} and {qs:?} in {e}")));
                        }
                        let t = match ps {
                            Space::A => self.env.alg()?.0.mult_tensor(),
                            s => self.env.group(s).mult_tensor().clone(),
                        };
                        let n = self.node(t);
                        self.union(n[0], pe);
                        self.union(n[1], qe);
                        Ok(Some((n[2], ps)))
                    }
                }
            }
            Expr::HitLeft(x, y) | Expr::HitRight(y, x) => {
                let left = matches!(e, Expr::HitLeft(..));
                let p = self.compile(x)?;
                let q = self.compile(y)?;
                match (p, q) {
                    (Some((xe, xs)), Some((ye, ys))) if xs != Space::A && ys == xs.dual() => {
                        let t = self.env.group(ys).comult_tensor().clone();
                        let n = self.node(t);
                        self.union(n[0], ye);
                        if left {
                            self.union(n[2], xe);
                            Ok(Some((n[1], ys)))
                        } else {
                            self.union(n[1], xe);
                            Ok(Some((n[2], ys)))
                        }
                    }
                    _ => Err(DslError::TagMismatch(format!("hit action in {e}"))),
                }
            }
            Expr::Pair(f, x) => {
                let p = self.compile(f)?;
                let q = self.compile(x)?;
                match (p, q) {
                    (Some((fe, fs)), Some((xe, xs))) if fs != Space::A && xs == fs.dual() => {
                        self.union(fe, xe);
                        Ok(None)
                    }
                    _ => Err(DslError::TagMismatch(format!("pairing {e} needs one side in H and one in Ĥ"))),
                }
            }
            Expr::Add(..) | Expr::Sub(..) | Expr::Neg(..) => unreachable!("sums are expanded before compiling"),
            Expr::Tensor(_) => Err(DslError::TagMismatch("'@' is only allowed at the top level".to_string())),
        }
    }
}

fn iterated_coaction(alg: &ModuleAlgebra, coalg: &FiniteQuantumGroup, k: usize) -> Result<SparseTensor, DslError> {
    let (d, n) = (alg.dim(), coalg.dim());
    let mut shape = vec![d, d];
    shape.extend(core::iter::repeat_n(n, k));
    let mut entries = Vec::new();
    for a in 0..d {
        for (a0, f, c) in alg.coaction_basis(a) {
            if k == 1 {
                entries.push((vec![a, a0, f], c));
                continue;
            }
            for (legs, e) in coalg.iterated_comul_basis(f, k) {
                let mut idx = vec![a, a0];
                idx.extend(legs);
                entries.push((idx, &c * &e));
            }
        }
    }
    Ok(SparseTensor::from_entries(&shape, entries)?)
}

/// Compiles with the variables in first-appearance order.
pub fn compile(e: &Expr, env: &Env) -> Result<CompiledExpr, DslError> {
    let mut order = Vec::new();
    collect_vars(e, &mut order);
    compile_ordered(e, env, &order)
}

fn compile_ordered(e: &Expr, env: &Env, order: &[String]) -> Result<CompiledExpr, DslError> {
    let mut vars = Vec::new();
    for name in order {
        let s = env
            .signature
            .space_of(name)
            .ok_or_else(|| DslError::Unbound(format!("cannot infer the space of '{name}'")))?;
        if s == Space::A {
            env.alg()?;
        }
        vars.push((name.clone(), s));
    }
    let mut outputs: Option<Vec<Space>> = None;
    let mut terms = Vec::new();
    for (sign, mono) in expand(e) {
        let positions: Vec<Expr> = match mono {
            Expr::Tensor(ps) => ps,
            m => vec![m],
        };
        let (plan, outs) = build_plan(env, &vars, &positions, sign)?;
        match &outputs {
            None => outputs = Some(outs),
            Some(o) if *o == outs => {}
            Some(o) => {
                return Err(DslError::SignatureMismatch(format!("terms have outputs {o:?} and {outs:?}")));
            }
        }
        terms.push(plan);
    }
    let outputs = outputs.unwrap_or_default();
    let mut shape = Vec::new();
    for (_, s) in &vars {
        shape.push(env.dim(*s)?);
    }
    for s in &outputs {
        shape.push(env.dim(*s)?);
    }
    Ok(CompiledExpr {
        vars,
        outputs,
        terms,
        shape,
    })
}

fn build_plan(
    env: &Env,
    vars: &[(String, Space)],
    positions: &[Expr],
    sign: Scalar,
) -> Result<(ContractionPlan, Vec<Space>), DslError> {
    let mut vu = BTreeMap::new();
    let mut cu = BTreeMap::new();
    for p in positions {
        scan_legs(p, &mut vu, &mut cu);
    }
    let mut b = Builder {
        env,
        nodes: Vec::new(),
        parent: Vec::new(),
        dims: Vec::new(),
        var_edge: BTreeMap::new(),
        var_space: BTreeMap::new(),
        var_legs: BTreeMap::new(),
        var_maxleg: BTreeMap::new(),
        const_legs: BTreeMap::new(),
        const_maxleg: BTreeMap::new(),
        coeff: sign,
    };
    for (name, s) in vars {
        let u = vu
            .get(name)
            .ok_or_else(|| DslError::SignatureMismatch(format!("a term does not involve '{name}'")))?;
        let first = if *s == Space::A { 0 } else { 1 };
        if u.bare > 0 && !u.legs.is_empty() {
            return Err(DslError::Legs(format!("'{name}' used both with and without legs")));
        }
        if u.bare > 1 {
            return Err(DslError::Legs(format!("'{name}' used {} times", u.bare)));
        }
        if !u.legs.is_empty() {
            let max = *u.legs.keys().last().unwrap();
            for k in first..=max {
                match u.legs.get(&k) {
                    Some(1) => {}
                    Some(c) => return Err(DslError::Legs(format!("leg {k} of '{name}' used {c} times"))),
                    None => return Err(DslError::Legs(format!("leg {k} of '{name}' missing"))),
                }
            }
            if u.legs.keys().any(|&k| k < first) || (*s == Space::A && max == 0) {
                return Err(DslError::Legs(format!("bad leg indices for '{name}'")));
            }
            b.var_maxleg.insert(name.clone(), max);
        }
        let d = env.dim(*s)?;
        let e = b.edge(d);
        b.var_edge.insert(name.clone(), e);
        b.var_space.insert(name.clone(), *s);
    }
    if vu.keys().any(|k| !b.var_edge.contains_key(k)) {
        return Err(DslError::SignatureMismatch("variable outside the signature".to_string()));
    }
    for (key, u) in &cu {
        let max = *u.legs.keys().last().unwrap();
        for k in 1..=max {
            if u.legs.get(&k) != Some(&1) {
                return Err(DslError::Legs(format!("leg {k} of {} used {:?} times", key.0.name(), u.legs.get(&k))));
            }
        }
        b.const_maxleg.insert(*key, max);
    }
    let mut outs = Vec::new();
    let mut out_edges = Vec::new();
    for p in positions {
        match b.compile(p)? {
            Some((e, s)) => {
                outs.push(s);
                out_edges.push(e);
            }
            None if positions.len() == 1 => {}
            None => return Err(DslError::TagMismatch(format!("tensor position '{p}' is scalar-valued"))),
        }
    }
    // resolve edge classes into internal edges and external slots
    let mut externals: Vec<usize> = vars.iter().map(|(n, _)| b.var_edge[n]).collect();
    externals.extend(out_edges);
    let mut class_axes: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for i in 0..b.nodes.len() {
        for ax in 0..b.nodes[i].1.len() {
            let e = b.nodes[i].1[ax];
            let r = b.find(e);
            class_axes.entry(r).or_default().push((i, ax));
        }
    }
    let mut class_ext: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (slot, &e) in externals.iter().enumerate() {
        let r = b.find(e);
        class_ext.entry(r).or_default().push(slot);
    }
    let mut nodes: Vec<PlanNode> = b
        .nodes
        .iter()
        .map(|(t, e)| PlanNode {
            tensor: t.clone(),
            axes: vec![Axis::Internal(usize::MAX); e.len()],
        })
        .collect();
    let mut classes: Vec<usize> = class_axes.keys().copied().collect();
    classes.extend(class_ext.keys().copied());
    classes.sort_unstable();
    classes.dedup();
    let ext_dims: Vec<usize> = externals.iter().map(|&e| b.dims[e]).collect();
    for (cid, r) in classes.iter().enumerate() {
        let axes = class_axes.get(r).cloned().unwrap_or_default();
        let exts = class_ext.get(r).cloned().unwrap_or_default();
        match (axes.len(), exts.len()) {
            (2, 0) => {
                if axes[0].0 == axes[1].0 {
                    return Err(DslError::Legs("a pairing joins two legs of one node".to_string()));
                }
                for (i, ax) in axes {
                    nodes[i].axes[ax] = Axis::Internal(cid);
                }
            }
            (1, 1) => nodes[axes[0].0].axes[axes[0].1] = Axis::External(exts[0]),
            (0, 2) => {
                let d = b.dims[*r];
                nodes.push(PlanNode {
                    tensor: SparseTensor::identity(d),
                    axes: vec![Axis::External(exts[0]), Axis::External(exts[1])],
                });
            }
            (a, x) => {
                return Err(DslError::Legs(format!("an index is shared by {a} factors and {x} free slots")));
            }
        }
    }
    let order = elimination_order(&nodes, false);
    Ok((
        ContractionPlan {
            coeff: b.coeff,
            nodes,
            ext_dims,
            order,
        },
        outs,
    ))
}

fn axis_dim(nodes_dims: &BTreeMap<Axis, usize>, a: &Axis) -> usize {
    nodes_dims[a]
}

impl PartialOrd for Axis {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Axis {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        let key = |a: &Axis| match a {
            Axis::Internal(i) => (0, *i),
            Axis::External(i) => (1, *i),
        };
        key(self).cmp(&key(other))
    }
}

/// Greedy order: always merge the pair sharing an index whose result has
/// the fewest dense cells, ties to the lexicographically smallest ids.
/// With `reversed`, ties and choices go to the largest ids instead and
/// size is ignored.
fn elimination_order(nodes: &[PlanNode], reversed: bool) -> Vec<(usize, usize)> {
    let mut dims: BTreeMap<Axis, usize> = BTreeMap::new();
    for n in nodes {
        for (a, d) in n.axes.iter().zip(n.tensor.shape()) {
            dims.insert(*a, *d);
        }
    }
    let mut live: Vec<(usize, Vec<Axis>)> = nodes.iter().enumerate().map(|(i, n)| (i, n.axes.clone())).collect();
    let mut next = nodes.len();
    let mut order = Vec::new();
    while live.len() > 1 {
        let mut best: Option<(u128, usize, usize, usize, usize)> = None;
        for p in 0..live.len() {
            for q in p + 1..live.len() {
                let (a, b) = (&live[p].1, &live[q].1);
                let shared = a.iter().any(|x| matches!(x, Axis::Internal(_)) && b.contains(x));
                if !shared {
                    continue;
                }
                let size: u128 = a
                    .iter()
                    .chain(b.iter())
                    .filter(|x| !(matches!(x, Axis::Internal(_)) && a.contains(x) && b.contains(x)))
                    .map(|x| axis_dim(&dims, x) as u128)
                    .fold(1u128, |acc, d| acc.saturating_mul(d));
                let (i, j) = (live[p].0, live[q].0);
                let better = match best {
                    None => true,
                    Some((s, bi, bj, _, _)) => {
                        if reversed {
                            (i, j) > (bi, bj)
                        } else {
                            size < s || (size == s && (i, j) < (bi, bj))
                        }
                    }
                };
                if better {
                    best = Some((size, i, j, p, q));
                }
            }
        }
        let (p, q) = match best {
            Some((_, _, _, p, q)) => (p, q),
            None if reversed => (live.len() - 2, live.len() - 1),
            None => (0, 1),
        };
        let (i, ai) = live[p].clone();
        let (j, aj) = live[q].clone();
        let mut axes: Vec<Axis> = ai.iter().filter(|x| !aj.contains(x)).copied().collect();
        axes.extend(aj.iter().filter(|x| !ai.contains(x)).copied());
        order.push((i, j));
        live.remove(q);
        live.remove(p);
        live.push((next, axes));
        next += 1;
    }
    order
}

fn run_plan(plan: &ContractionPlan, order: &[(usize, usize)]) -> Result<SparseTensor, DslError> {
    let mut pool: BTreeMap<usize, (SparseTensor, Vec<Axis>)> = plan
        .nodes
        .iter()
        .enumerate()
        .map(|(i, n)| (i, (n.tensor.clone(), n.axes.clone())))
        .collect();
    let mut next = plan.nodes.len();
    for &(i, j) in order {
        let (ti, ai) = pool.remove(&i).expect("node in plan");
        let (tj, aj) = pool.remove(&j).expect("node in plan");
        let mut pairs = Vec::new();
        for (x, a) in ai.iter().enumerate() {
            if let Axis::Internal(_) = a {
                if let Some(y) = aj.iter().position(|b| b == a) {
                    pairs.push((x, y));
                }
            }
        }
        let t = ti.contract(&tj, &pairs)?;
        let mut axes: Vec<Axis> = ai.iter().filter(|x| !aj.contains(x) || matches!(x, Axis::External(_))).copied().collect();
        axes.extend(aj.iter().filter(|x| !ai.contains(x) || matches!(x, Axis::External(_))).copied());
        pool.insert(next, (t, axes));
        next += 1;
    }
    let n_ext = plan.ext_dims.len();
    let (t, axes) = match pool.into_iter().next() {
        Some((_, v)) => v,
        None => (SparseTensor::scalar(Scalar::one()), Vec::new()),
    };
    let t = t.scaled(&plan.coeff);
    if axes.len() != n_ext {
        return Err(DslError::Legs("contraction left dangling indices".to_string()));
    }
    let perm: Vec<usize> = (0..n_ext)
        .map(|s| axes.iter().position(|a| *a == Axis::External(s)).expect("every slot is present"))
        .collect();
    Ok(t.permute(&perm)?)
}

fn sum_terms(c: &CompiledExpr, reversed: bool) -> Result<SparseTensor, DslError> {
    let mut acc = SparseTensor::zeros(&c.shape)?;
    for plan in &c.terms {
        let t = if reversed {
            run_plan(plan, &elimination_order(&plan.nodes, true))?
        } else {
            run_plan(plan, &plan.order)?
        };
        acc = acc.add(&t)?;
    }
    Ok(acc)
}

/// The multilinear map as a tensor: variable axes first, then outputs.
pub fn evaluate(c: &CompiledExpr) -> Result<SparseTensor, DslError> {
    sum_terms(c, false)
}

/// Same value through the opposite elimination order.
pub fn evaluate_reversed(c: &CompiledExpr) -> Result<SparseTensor, DslError> {
    sum_terms(c, true)
}

/// Decides `lhs == rhs` by exact evaluation.
pub fn check_identity(lhs: &Expr, rhs: &Expr, env: &Env) -> Result<Verdict, DslError> {
    let mut order = Vec::new();
    collect_vars(lhs, &mut order);
    let mut rorder = Vec::new();
    collect_vars(rhs, &mut rorder);
    let mut ls = order.clone();
    ls.sort();
    let mut rs = rorder.clone();
    rs.sort();
    if ls != rs {
        return Err(DslError::SignatureMismatch(format!("variables {ls:?} vs {rs:?}")));
    }
    let l = compile_ordered(lhs, env, &order)?;
    let r = compile_ordered(rhs, env, &order)?;
    if l.outputs != r.outputs {
        return Err(DslError::SignatureMismatch(format!("outputs {:?} vs {:?}", l.outputs, r.outputs)));
    }
    let (lt, rt) = (evaluate(&l)?, evaluate(&r)?);
    Ok(match lt.first_difference(&rt) {
        None => Verdict::Equal,
        Some(idx) => {
            let nv = l.vars.len();
            Verdict::NotEqual {
                witness: l.vars.iter().zip(&idx).map(|((n, _), i)| (n.clone(), *i)).collect(),
                outputs: idx[nv..].to_vec(),
                lhs: lt.get(&idx),
                rhs: rt.get(&idx),
            }
        }
    })
}
