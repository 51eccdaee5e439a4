//! Modular pairs: a group-like `σ ∈ H` and a character `δ` of `H` tying the
//! square of the antipode to the modular data of `H` and its dual.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::dsl::{check_identity, parse_identity, DslError, Env, Verdict};
use crate::hopf::{FiniteQuantumGroup, HopfError, Vector};
use crate::scalar::Scalar;

/// The four defining conditions, as DSL identities in `t, r ∈ H`.
pub const PAIR_AXIOMS: [(&str, &str); 4] = [
    ("invariance", "phi(t(1)) t(2) == phi(t) sigma^-2"),
    ("weak KMS", "phi(r t) == phi(t * (delta .> (sigma r sigma^-1) <. delta))"),
    ("involutivity", "S2(t) == delta^-1 .> (sigma t sigma^-1) <. delta"),
    ("normalisation", "delta(sigma) == 1"),
];

/// Consequences of the axioms for the antipodes and integrals on both sides.
pub const DERIVED_IDENTITIES: [(&str, &str); 11] = [
    ("S^2 on H", "S2(t) == sigma (delta^-1 .> t <. delta) sigma^-1"),
    ("S^-2 on H", "Sinv(Sinv(t)) == sigma^-1 (delta .> t <. delta^-1) sigma"),
    ("S on H", "S(t) == sigma (delta^-1 .> Sinv(t) <. delta) sigma^-1"),
    ("S^-1 on H", "Sinv(t) == sigma^-1 (delta .> S(t) <. delta^-1) sigma"),
    ("S^2 on dual", "S2(f) == delta (sigma^-1 .> f <. sigma) delta^-1"),
    ("S^-2 on dual", "Sinv(Sinv(f)) == delta^-1 (sigma .> f <. sigma^-1) delta"),
    ("S on dual", "S(f) == delta (sigma^-1 .> Sinv(f) <. sigma) delta^-1"),
    ("S^-1 on dual", "Sinv(f) == delta^-1 (sigma .> S(f) <. sigma^-1) delta"),
    ("right integral KMS", "psi(t r) == psi(r * (delta .> (sigma^-1 t sigma) <. delta))"),
    ("dual invariance", "phihat(f(1)) f(2) == phihat(f) delta^-2"),
    ("dual weak KMS", "phihat(f g) == phihat(g * (sigma .> (delta f delta^-1) <. sigma))"),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularPair {
    pub sigma: Vector,
    pub delta: Vector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairError {
    NotGroupLike,
    NotCharacter,
    /// Names of the failing axioms.
    NotAPair(Vec<&'static str>),
    Hopf(HopfError),
    Dsl(DslError),
}

impl From<HopfError> for PairError {
    fn from(e: HopfError) -> Self {
        PairError::Hopf(e)
    }
}

impl From<DslError> for PairError {
    fn from(e: DslError) -> Self {
        PairError::Dsl(e)
    }
}

impl fmt::Display for PairError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairError::NotGroupLike => write!(f, "sigma is not group-like"),
            PairError::NotCharacter => write!(f, "delta is not a character"),
            PairError::NotAPair(v) => write!(f, "not a modular pair, failing: {}", v.join(", ")),
            PairError::Hopf(e) => write!(f, "{e}"),
            PairError::Dsl(e) => write!(f, "{e}"),
        }
    }
}

/// Named verdicts, one per checked identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairReport {
    pub checks: Vec<(&'static str, Verdict)>,
}

impl PairReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, v)| v.is_equal())
    }

    pub fn failures(&self) -> impl Iterator<Item = &(&'static str, Verdict)> {
        self.checks.iter().filter(|(_, v)| !v.is_equal())
    }
}

fn check_grouplike(h: &FiniteQuantumGroup, sigma: &[Scalar]) -> bool {
    sigma.len() == h.dim() && h.is_grouplike(sigma) && h.mul(&h.antipode_of(sigma), sigma) == h.unit
}

fn run(table: &[(&'static str, &str)], env: &Env) -> Result<PairReport, PairError> {
    let mut checks = Vec::new();
    for (name, src) in table {
        let (l, r) = parse_identity(src)?;
        checks.push((*name, check_identity(&l, &r, env)?));
    }
    Ok(PairReport { checks })
}

fn pair_env<'a>(
    h: &'a FiniteQuantumGroup,
    hhat: &'a FiniteQuantumGroup,
    sigma: &[Scalar],
    delta: &[Scalar],
) -> Result<Env<'a>, PairError> {
    if !check_grouplike(h, sigma) {
        return Err(PairError::NotGroupLike);
    }
    if delta.len() != h.dim() || !h.is_character(delta) {
        return Err(PairError::NotCharacter);
    }
    Ok(Env::new(h, hhat).with_pair(sigma, delta))
}

/// Checks the four axioms with an already computed dual.
pub fn verify_pair_with(
    h: &FiniteQuantumGroup,
    hhat: &FiniteQuantumGroup,
    sigma: &[Scalar],
    delta: &[Scalar],
) -> Result<PairReport, PairError> {
    let env = pair_env(h, hhat, sigma, delta)?;
    run(&PAIR_AXIOMS, &env)
}

pub fn verify_pair(h: &FiniteQuantumGroup, sigma: &[Scalar], delta: &[Scalar]) -> Result<PairReport, PairError> {
    let hhat = h.dualize()?;
    verify_pair_with(h, &hhat, sigma, delta)
}

/// Candidates passing [`verify_pair`], group-like major. Invalid candidates
/// are skipped.
pub fn enumerate_pairs(
    h: &FiniteQuantumGroup,
    grouplikes: &[Vector],
    characters: &[Vector],
) -> Result<Vec<ModularPair>, PairError> {
    let hhat = h.dualize()?;
    let mut out = Vec::new();
    for s in grouplikes {
        for d in characters {
            match verify_pair_with(h, &hhat, s, d) {
                Ok(r) if r.passed() => out.push(ModularPair {
                    sigma: s.clone(),
                    delta: d.clone(),
                }),
                Ok(_) | Err(PairError::NotGroupLike | PairError::NotCharacter) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(out)
}

/// Enumerates over the candidate lists stored on `h`.
pub fn corpus_pairs(h: &FiniteQuantumGroup) -> Result<Vec<ModularPair>, PairError> {
    enumerate_pairs(h, &h.grouplike_candidates, &h.character_candidates)
}

/// `(δ, σ)` as a pair for the dual: `δ` is a group-like of `Ĥ` and `σ` the
/// character `f ↦ f(σ)`. Coordinates carry over unchanged in the dual basis.
pub fn dualize_pair(pair: &ModularPair) -> ModularPair {
    ModularPair {
        sigma: pair.delta.clone(),
        delta: pair.sigma.clone(),
    }
}

/// `(σ₁⊗σ₂, δ₁⊗δ₂)` on the product basis of [`FiniteQuantumGroup::tensor_product`].
pub fn tensor_pair(p1: &ModularPair, p2: &ModularPair) -> ModularPair {
    let kron = |u: &[Scalar], v: &[Scalar]| -> Vector { u.iter().flat_map(|a| v.iter().map(move |b| a * b)).collect() };
    ModularPair {
        sigma: kron(&p1.sigma, &p2.sigma),
        delta: kron(&p1.delta, &p2.delta),
    }
}

/// Checks [`DERIVED_IDENTITIES`]. The pair is only required to consist of a
/// group-like and a character, so unverified pairs serve as controls.
pub fn derived_identity_suite(h: &FiniteQuantumGroup, pair: &ModularPair) -> Result<PairReport, PairError> {
    let hhat = h.dualize()?;
    let env = pair_env(h, &hhat, &pair.sigma, &pair.delta)?;
    run(&DERIVED_IDENTITIES, &env)
}

/// Basis vectors that are group-like. Complete for group algebras and a
/// starting point elsewhere.
pub fn basis_grouplikes(h: &FiniteQuantumGroup) -> Vec<Vector> {
    (0..h.dim())
        .map(|i| h.basis_vector(i))
        .filter(|v| check_grouplike(h, v))
        .collect()
}

/// Human-readable name of a vector: a basis label, or coordinates.
pub fn describe(basis: &[String], v: &[Scalar]) -> String {
    let nz: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
    if nz.len() == 1 && v[nz[0]].is_one() {
        return basis[nz[0]].clone();
    }
    let parts: Vec<String> = v.iter().map(|x| alloc::format!("{x}")).collect();
    alloc::format!("({})", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn z2_pairs_from_the_text() {
        let h = corpus::c_z2();
        let eps = h.counit.clone();
        for s in [h.basis_vector(0), h.basis_vector(1)] {
            let r = verify_pair(&h, &s, &eps).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn sweedler_trivial_pair_fails_invariance() {
        let h = corpus::sweedler();
        let r = verify_pair(&h, &h.unit, &h.counit).unwrap();
        let failed: Vec<_> = r.failures().map(|(n, _)| *n).collect();
        assert!(failed.contains(&"invariance"), "{failed:?}");
    }

    #[test]
    fn rejects_non_grouplike() {
        let h = corpus::c_z2();
        let v = alloc::vec![Scalar::one(), Scalar::one()];
        assert_eq!(verify_pair(&h, &v, &h.counit).unwrap_err(), PairError::NotGroupLike);
        let w = alloc::vec![Scalar::one(), Scalar::zero()];
        assert_eq!(verify_pair(&h, &h.unit, &w).unwrap_err(), PairError::NotCharacter);
    }
}
