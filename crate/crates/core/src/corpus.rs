//! Built-in quantum groups and module algebras.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::halg::ModuleAlgebra;
use crate::hopf::{FiniteQuantumGroup, Vector};
use crate::linalg::Matrix;
use crate::scalar::{q, Scalar};
use crate::tensor::SparseTensor;

/// A finite group by its multiplication table.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    pub names: Vec<String>,
    /// `table[g][h]` is the index of `gh`.
    pub table: Vec<Vec<usize>>,
}

impl FiniteGroup {
    pub fn cyclic(n: usize) -> Self {
        let names = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "g".to_string(),
                k => format!("g^{k}"),
            })
            .collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup { names, table }
    }

    /// The symmetric group on three letters, elements as permutation images.
    pub fn symmetric3() -> Self {
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [1, 0, 2],
            [2, 1, 0],
            [0, 2, 1],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let names = ["e", "(12)", "(13)", "(23)", "(123)", "(132)"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        // (pq)(x) = p(q(x))
        let compose = |p: &[usize; 3], r: &[usize; 3]| [p[r[0]], p[r[1]], p[r[2]]];
        let table = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|r| {
                        let c = compose(p, r);
                        perms.iter().position(|x| *x == c).unwrap()
                    })
                    .collect()
            })
            .collect();
        FiniteGroup { names, table }
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> usize {
        (0..self.order())
            .find(|&e| (0..self.order()).all(|g| self.table[e][g] == g))
            .expect("group has an identity")
    }

    pub fn inverse(&self, g: usize) -> usize {
        let e = self.identity();
        (0..self.order()).find(|&h| self.table[g][h] == e).unwrap()
    }

    /// All homomorphisms to `{±1}`, as value tables.
    pub fn sign_characters(&self) -> Vec<Vec<i64>> {
        let n = self.order();
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            let f: Vec<i64> = (0..n).map(|g| if mask >> g & 1 == 1 { -1 } else { 1 }).collect();
            let hom = (0..n).all(|a| (0..n).all(|b| f[self.table[a][b]] == f[a] * f[b]));
            if hom {
                out.push(f);
            }
        }
        out
    }
}

fn unit_vec(n: usize, i: usize) -> Vector {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

/// The group algebra `C[G]` with `Δg = g⊗g`, `S(g) = g⁻¹`.
pub fn group_algebra(name: &str, g: &FiniteGroup) -> FiniteQuantumGroup {
    let n = g.order();
    let mult = (0..n).flat_map(|a| (0..n).map(move |b| (a, b)));
    let mult = SparseTensor::from_entries(
        &[n, n, n],
        mult.map(|(a, b)| (vec![a, b, g.table[a][b]], Scalar::one())),
    )
    .unwrap();
    let comult =
        SparseTensor::from_entries(&[n, n, n], (0..n).map(|a| (vec![a, a, a], Scalar::one())))
            .unwrap();
    let mut s = Matrix::zeros(n, n);
    for a in 0..n {
        s[(g.inverse(a), a)] = Scalar::one();
    }
    let mut h = FiniteQuantumGroup::new(
        name,
        g.names.clone(),
        unit_vec(n, g.identity()),
        mult,
        comult,
        vec![Scalar::one(); n],
        s,
    )
    .expect("group algebra is well formed");
    h.solve_integrals().expect("group algebras have integrals");
    h.grouplike_candidates = (0..n).map(|a| unit_vec(n, a)).collect();
    h.character_candidates = g
        .sign_characters()
        .into_iter()
        .map(|f| f.into_iter().map(q).collect())
        .collect();
    h
}

/// The function algebra `C^G` on the basis of point masses `δ_g`.
pub fn function_algebra(name: &str, g: &FiniteGroup) -> FiniteQuantumGroup {
    let n = g.order();
    let mult = SparseTensor::from_entries(&[n, n, n], (0..n).map(|a| (vec![a, a, a], Scalar::one())))
        .unwrap();
    let mut comult = Vec::new();
    for a in 0..n {
        for b in 0..n {
            comult.push((vec![g.table[a][b], a, b], Scalar::one()));
        }
    }
    let comult = SparseTensor::from_entries(&[n, n, n], comult).unwrap();
    let mut s = Matrix::zeros(n, n);
    for a in 0..n {
        s[(g.inverse(a), a)] = Scalar::one();
    }
    let basis = g.names.iter().map(|x| format!("δ_{x}")).collect();
    let mut h = FiniteQuantumGroup::new(
        name,
        basis,
        vec![Scalar::one(); n],
        mult,
        comult,
        unit_vec(n, g.identity()),
        s,
    )
    .expect("function algebra is well formed");
    h.solve_integrals().expect("function algebras have integrals");
    h.grouplike_candidates = g
        .sign_characters()
        .into_iter()
        .map(|f| f.into_iter().map(q).collect())
        .collect();
    h.character_candidates = (0..n).map(|a| unit_vec(n, a)).collect();
    h
}

/// Sweedler's four-dimensional Hopf algebra on the basis `1, g, x, gx`.
///
/// `g² = 1`, `x² = 0`, `xg = -gx`, `Δg = g⊗g`, `Δx = x⊗1 + g⊗x`,
/// `S(g) = g`, `S(x) = -gx`.
pub fn sweedler() -> FiniteQuantumGroup {
    // basis index from (power of g, power of x)
    let idx = |a: usize, b: usize| a + 2 * b;
    let mut mult = Vec::new();
    for a1 in 0..2 {
        for b1 in 0..2 {
            for a2 in 0..2 {
                for b2 in 0..2 {
                    if b1 + b2 >= 2 {
                        continue;
                    }
                    // g^a1 x^b1 g^a2 x^b2 = (-1)^(b1 a2) g^(a1+a2) x^(b1+b2)
                    let sign = if b1 * a2 == 1 { -1 } else { 1 };
                    mult.push((
                        vec![idx(a1, b1), idx(a2, b2), idx((a1 + a2) % 2, b1 + b2)],
                        q(sign),
                    ));
                }
            }
        }
    }
    let (one, g, x, gx) = (0, 1, 2, 3);
    let comult = [
        (one, one, one),
        (g, g, g),
        (x, x, one),
        (x, g, x),
        (gx, gx, g),
        (gx, one, gx),
    ];
    let comult = SparseTensor::from_entries(
        &[4, 4, 4],
        comult.iter().map(|&(a, b, c)| (vec![a, b, c], Scalar::one())),
    )
    .unwrap();
    let mut s = Matrix::zeros(4, 4);
    s[(one, one)] = q(1);
    s[(g, g)] = q(1);
    s[(gx, x)] = q(-1);
    s[(x, gx)] = q(1);
    let basis = ["1", "g", "x", "gx"].iter().map(|b| b.to_string()).collect();
    let mut h = FiniteQuantumGroup::new(
        "H4",
        basis,
        unit_vec(4, one),
        SparseTensor::from_entries(&[4, 4, 4], mult).unwrap(),
        comult,
        vec![q(1), q(1), q(0), q(0)],
        s,
    )
    .expect("Sweedler algebra is well formed");
    h.solve_integrals().expect("Sweedler algebra has integrals");
    h.grouplike_candidates = vec![unit_vec(4, one), unit_vec(4, g)];
    h.character_candidates = vec![vec![q(1), q(1), q(0), q(0)], vec![q(1), q(-1), q(0), q(0)]];
    h
}

/// `C[Z_2]` restricted to the trivial character among its character
/// candidates, matching the published list of its modular pairs.
pub fn c_z2() -> FiniteQuantumGroup {
    let mut h = group_algebra("C[Z2]", &FiniteGroup::cyclic(2));
    h.character_candidates.truncate(1);
    h
}

/// Every quantum group of the built-in corpus, in a fixed order.
pub fn all_groups() -> Vec<FiniteQuantumGroup> {
    vec![
        c_z2(),
        group_algebra("C[Z3]", &FiniteGroup::cyclic(3)),
        group_algebra("C[Z4]", &FiniteGroup::cyclic(4)),
        group_algebra("C[S3]", &FiniteGroup::symmetric3()),
        function_algebra("C^Z2", &FiniteGroup::cyclic(2)),
        function_algebra("C^S3", &FiniteGroup::symmetric3()),
        sweedler(),
    ]
}

pub fn group_by_name(name: &str) -> Option<FiniteQuantumGroup> {
    all_groups().into_iter().find(|h| h.name == name)
}

/// The one-dimensional quantum group; forms over it are nonequivariant.
pub fn trivial_group() -> FiniteQuantumGroup {
    group_algebra("1", &FiniteGroup::cyclic(1))
}

/// The one-dimensional algebra with `H` acting through the counit.
pub fn trivial_algebra(h: &FiniteQuantumGroup) -> ModuleAlgebra {
    let d = 1;
    let mult = vec![vec![(0, Scalar::one())]];
    let action = (0..h.dim())
        .map(|t| Matrix::from_rows(&[vec![h.counit[t].clone()]]))
        .collect();
    ModuleAlgebra::from_parts("C", vec!["1".to_string()], d, mult, Some(vec![q(1)]), action)
}

/// A two-dimensional commutative algebra `Q ⊕ Q` with an action that swaps
/// or grades the two summands, depending on which structure `H` supports.
///
/// For algebras spanned by group-likes the action factors through a sign
/// character `χ`: `e_t` swaps the idempotents when `χ(t) = -1`. For the
/// remaining corpus members the action is the grading of `Q[Z_2]` induced by
/// restricting functions to a subgroup of order two. Sweedler's algebra acts
/// through its quotient `g ↦ swap`, `x ↦ 0`.
pub fn z2_algebra(h: &FiniteQuantumGroup) -> Option<ModuleAlgebra> {
    let swap = Matrix::from_rows(&[vec![q(0), q(1)], vec![q(1), q(0)]]);
    let id = Matrix::identity(2);
    let zero = Matrix::zeros(2, 2);
    let idempotents = || vec![vec![(0, q(1))], vec![], vec![], vec![(1, q(1))]];
    let n = h.dim();
    let grouplike_basis = (0..n).all(|t| h.is_grouplike(&h.basis_vector(t)));
    if h.name == "H4" {
        let action = vec![id.clone(), swap.clone(), zero.clone(), zero];
        return Some(ModuleAlgebra::from_parts(
            "C^Z2",
            vec!["p0".into(), "p1".into()],
            2,
            idempotents(),
            Some(vec![q(1), q(1)]),
            action,
        ));
    }
    if grouplike_basis {
        // pick a nontrivial sign character when one exists
        let chi = h
            .character_candidates
            .iter()
            .chain(h_sign_characters(h).iter())
            .find(|c| c.iter().any(|x| x.is_negative()))
            .cloned()?;
        let action = (0..n)
            .map(|t| if chi[t].is_negative() { swap.clone() } else { id.clone() })
            .collect();
        return Some(ModuleAlgebra::from_parts(
            "C^Z2",
            vec!["p0".into(), "p1".into()],
            2,
            idempotents(),
            Some(vec![q(1), q(1)]),
            action,
        ));
    }
    // Function algebra C^G: grade Q[Z_2] = span{u_0, u_1} by an element s of order 2,
    // δ_h · u_k = [h = s^k] u_k.
    let e = (0..n).find(|&t| h.counit[t].is_one())?;
    let s = (0..n).find(|&t| t != e && function_square_is_identity(h, t, e))?;
    let action = (0..n)
        .map(|t| {
            let mut m = Matrix::zeros(2, 2);
            if t == e {
                m[(0, 0)] = q(1);
            }
            if t == s {
                m[(1, 1)] = q(1);
            }
            m
        })
        .collect();
    let mult = vec![vec![(0, q(1))], vec![(1, q(1))], vec![(1, q(1))], vec![(0, q(1))]];
    Some(ModuleAlgebra::from_parts(
        "Q[Z2]",
        vec!["u0".into(), "u1".into()],
        2,
        mult,
        Some(vec![q(1), q(0)]),
        action,
    ))
}

fn h_sign_characters(h: &FiniteQuantumGroup) -> Vec<Vector> {
    let n = h.dim();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let f: Vector = (0..n).map(|t| if mask >> t & 1 == 1 { q(-1) } else { q(1) }).collect();
        if h.is_character(&f) {
            out.push(f);
        }
    }
    out
}

// In C^G, Δ(δ_e) contains δ_s ⊗ δ_s exactly when s² = e.
fn function_square_is_identity(h: &FiniteQuantumGroup, s: usize, e: usize) -> bool {
    h.comul_basis(e).iter().any(|(a, b, _)| *a == s && *b == s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_validates() {
        for h in all_groups() {
            let r = h.validate();
            assert!(r.passed(), "{}: {:?}", h.name, r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn symmetric_group_is_nonabelian() {
        let g = FiniteGroup::symmetric3();
        assert_ne!(g.table[1][4], g.table[4][1]);
        assert_eq!(g.sign_characters().len(), 2);
    }
}
