//! JSON files for quantum groups and module algebras.
//!
//! Scalars are strings `"num/den"` (or `"num"`), structure tensors are lists
//! of nonzero entries `[i, j, k, "q"]`. The antipode is written row by row,
//! so column `j` holds `S(e_j)`.

use std::fmt;
use std::path::Path;

use qgdual_core::hopf::ValidationReport;
use qgdual_core::{FiniteQuantumGroup, Matrix, ModuleAlgebra, Scalar, SparseTensor, Vector};
use serde::{Deserialize, Serialize};

pub type Entry = (usize, usize, usize, String);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub name: String,
    pub dim: usize,
    pub basis: Vec<String>,
    pub unit: Vec<String>,
    pub mult: Vec<Entry>,
    pub comult: Vec<Entry>,
    pub counit: Vec<String>,
    pub antipode: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left_integral: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grouplike_candidates: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub character_candidates: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraTable {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    pub mult: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<String>>,
}

/// `action` entries `[t, a, b, "q"]`: the coefficient of `e_b` in `e_t · e_a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    /// Name of the quantum group acting.
    pub host: String,
    pub algebra: AlgebraTable,
    pub action: Vec<Entry>,
}

/// Where a file went wrong. `pointer` is a JSON pointer into the document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InputError {
    Io(String),
    Schema { pointer: String, message: String },
    Invalid { what: String, failures: Vec<String> },
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputError::Io(e) => write!(f, "{e}"),
            InputError::Schema { pointer, message } => write!(f, "schema error at {pointer}: {message}"),
            InputError::Invalid { what, failures } => write!(f, "{what} fails validation: {}", failures.join("; ")),
        }
    }
}

impl std::error::Error for InputError {}

fn schema(pointer: impl Into<String>, message: impl Into<String>) -> InputError {
    InputError::Schema {
        pointer: pointer.into(),
        message: message.into(),
    }
}

fn scalar(s: &str, at: &str) -> Result<Scalar, InputError> {
    s.parse().map_err(|e: qgdual_core::scalar::ParseScalarError| schema(at, e.to_string()))
}

fn vector(v: &[String], n: usize, at: &str) -> Result<Vector, InputError> {
    if v.len() != n {
        return Err(schema(at, format!("expected {n} entries, found {}", v.len())));
    }
    v.iter().enumerate().map(|(i, s)| scalar(s, &format!("{at}/{i}"))).collect()
}

fn tensor(entries: &[Entry], shape: [usize; 3], at: &str) -> Result<SparseTensor, InputError> {
    let mut out = SparseTensor::zeros(&shape).map_err(|e| schema(at, e.to_string()))?;
    for (e, (i, j, k, q)) in entries.iter().enumerate() {
        let here = format!("{at}/{e}");
        for (slot, (x, bound)) in [(i, shape[0]), (j, shape[1]), (k, shape[2])].into_iter().enumerate() {
            if *x >= bound {
                return Err(schema(format!("{here}/{slot}"), format!("index {x} out of range 0..{bound}")));
            }
        }
        out.add_at(&[*i, *j, *k], &scalar(q, &format!("{here}/3"))?);
    }
    Ok(out)
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, InputError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let pointer = if path == "." {
            String::new()
        } else {
            // `a.b[2]` → `/a/b/2`
            path.replace('[', ".").replace(']', "").split('.').filter(|s| !s.is_empty()).map(|s| format!("/{s}")).collect()
        };
        schema(if pointer.is_empty() { String::from("/") } else { pointer }, e.into_inner().to_string())
    })
}

fn failures(r: &ValidationReport) -> Vec<String> {
    r.failures()
        .map(|a| match &a.witness {
            Some(w) => format!("{} {w}", a.name),
            None => a.name.to_string(),
        })
        .collect()
}

impl GroupFile {
    pub fn parse(text: &str) -> Result<Self, InputError> {
        parse_json(text)
    }

    pub fn from_group(h: &FiniteQuantumGroup) -> Self {
        let n = h.dim();
        let text = |v: &[Scalar]| v.iter().map(Scalar::to_text).collect::<Vec<_>>();
        let entries = |t: &SparseTensor| t.iter().map(|(i, q)| (i[0], i[1], i[2], q.to_text())).collect();
        let optional = |vs: &[Vector]| (!vs.is_empty()).then(|| vs.iter().map(|v| text(v)).collect());
        GroupFile {
            name: h.name.clone(),
            dim: n,
            basis: h.basis.clone(),
            unit: text(&h.unit),
            mult: entries(h.mult_tensor()),
            comult: entries(h.comult_tensor()),
            counit: text(&h.counit),
            antipode: (0..n).map(|i| text(h.antipode.row(i))).collect(),
            left_integral: h.left_integral.as_deref().map(text),
            grouplike_candidates: optional(&h.grouplike_candidates),
            character_candidates: optional(&h.character_candidates),
        }
    }

    /// Builds the quantum group without validating it. Integrals are set
    /// from the file (with `ψ = φ∘S`) or left unset.
    pub fn to_group(&self) -> Result<FiniteQuantumGroup, InputError> {
        let n = self.dim;
        if self.basis.len() != n {
            return Err(schema("/basis", format!("expected {n} labels, found {}", self.basis.len())));
        }
        let unit = vector(&self.unit, n, "/unit")?;
        let counit = vector(&self.counit, n, "/counit")?;
        let mult = tensor(&self.mult, [n; 3], "/mult")?;
        let comult = tensor(&self.comult, [n; 3], "/comult")?;
        if self.antipode.len() != n {
            return Err(schema("/antipode", format!("expected {n} rows")));
        }
        let rows = self
            .antipode
            .iter()
            .enumerate()
            .map(|(i, r)| vector(r, n, &format!("/antipode/{i}")))
            .collect::<Result<Vec<_>, _>>()?;
        let mut h = FiniteQuantumGroup::new(&self.name, self.basis.clone(), unit, mult, comult, counit, Matrix::from_rows(&rows))
            .map_err(|e| schema("/", e.to_string()))?;
        if let Some(phi) = &self.left_integral {
            let phi = vector(phi, n, "/left_integral")?;
            h.right_integral = Some(h.antipode.apply_left(&phi));
            h.left_integral = Some(phi);
        }
        let list = |vs: &Option<Vec<Vec<String>>>, at: &str| -> Result<Vec<Vector>, InputError> {
            vs.iter()
                .flatten()
                .enumerate()
                .map(|(i, v)| vector(v, n, &format!("{at}/{i}")))
                .collect()
        };
        h.grouplike_candidates = list(&self.grouplike_candidates, "/grouplike_candidates")?;
        h.character_candidates = list(&self.character_candidates, "/character_candidates")?;
        Ok(h)
    }
}

/// Parses, solves the integrals if absent, and validates.
pub fn group_from_str(text: &str) -> Result<FiniteQuantumGroup, InputError> {
    let mut h = GroupFile::parse(text)?.to_group()?;
    if h.left_integral.is_none() {
        // failures of the Hopf axioms are reported below in full
        let _ = h.solve_integrals();
    }
    let r = h.validate();
    if !r.passed() {
        return Err(InputError::Invalid {
            what: h.name.clone(),
            failures: failures(&r),
        });
    }
    Ok(h)
}

pub fn load_group(path: impl AsRef<Path>) -> Result<FiniteQuantumGroup, InputError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| InputError::Io(format!("{}: {e}", path.display())))?;
    group_from_str(&text)
}

impl AlgebraFile {
    pub fn parse(text: &str) -> Result<Self, InputError> {
        parse_json(text)
    }

    pub fn from_algebra(a: &ModuleAlgebra, host: &FiniteQuantumGroup) -> Self {
        let d = a.dim();
        let mut mult = Vec::new();
        for x in 0..d {
            for y in 0..d {
                mult.extend(a.mul_basis(x, y).iter().map(|(k, q)| (x, y, k, q.to_text())));
            }
        }
        let action = a.action_tensor().iter().map(|(i, q)| (i[0], i[1], i[2], q.to_text())).collect();
        AlgebraFile {
            name: a.name.clone(),
            host: host.name.clone(),
            algebra: AlgebraTable {
                dim: d,
                basis: Some(a.basis.clone()),
                mult,
                unit: a.unit.as_ref().map(|u| u.iter().map(Scalar::to_text).collect()),
            },
            action,
        }
    }

    pub fn to_algebra(&self, h: &FiniteQuantumGroup) -> Result<ModuleAlgebra, InputError> {
        let d = self.algebra.dim;
        let n = h.dim();
        let mt = tensor(&self.algebra.mult, [d; 3], "/algebra/mult")?;
        let at = tensor(&self.action, [n, d, d], "/action")?;
        if self.host != h.name {
            return Err(schema("/host", format!("algebra is for {}, not {}", self.host, h.name)));
        }
        let mut mult = vec![Vec::new(); d * d];
        for (i, q) in mt.iter() {
            mult[i[0] * d + i[1]].push((i[2], q.clone()));
        }
        let mut action = vec![Matrix::zeros(d, d); n];
        for (i, q) in at.iter() {
            action[i[0]][(i[2], i[1])] = q.clone();
        }
        let unit = self.algebra.unit.as_ref().map(|u| vector(u, d, "/algebra/unit")).transpose()?;
        let basis = match &self.algebra.basis {
            Some(b) if b.len() != d => return Err(schema("/algebra/basis", format!("expected {d} labels"))),
            Some(b) => b.clone(),
            None => (0..d).map(|i| format!("a{i}")).collect(),
        };
        Ok(ModuleAlgebra::from_parts(&self.name, basis, d, mult, unit, action))
    }
}

/// Parses and validates against the acting quantum group.
pub fn algebra_from_str(text: &str, h: &FiniteQuantumGroup) -> Result<ModuleAlgebra, InputError> {
    let a = AlgebraFile::parse(text)?.to_algebra(h)?;
    let r = a.validate(h);
    if !r.passed() {
        return Err(InputError::Invalid {
            what: a.name.clone(),
            failures: failures(&r),
        });
    }
    Ok(a)
}

pub fn load_algebra(path: impl AsRef<Path>, h: &FiniteQuantumGroup) -> Result<ModuleAlgebra, InputError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| InputError::Io(format!("{}: {e}", path.display())))?;
    algebra_from_str(&text, h)
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serializes");
    s.push('\n');
    s
}
