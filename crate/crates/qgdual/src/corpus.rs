//! The shipped JSON corpus, embedded at compile time.
//!
//! `expected.json` records oracle outcomes (the modular pairs found by
//! brute-force enumeration over the candidate lists); it is written by the
//! `gen_corpus` example and regressed against by the suite.

use std::collections::BTreeMap;

use qgdual_core::{FiniteQuantumGroup, ModuleAlgebra};
use serde::{Deserialize, Serialize};

use crate::schema::{algebra_from_str, group_from_str, InputError};

/// `(file stem, group JSON, algebra JSONs)`.
pub const FILES: [(&str, &str, &[&str]); 7] = [
    ("cz2", include_str!("../corpus/cz2.qg.json"), &[include_str!("../corpus/cz2.trivial.alg.json"), include_str!("../corpus/cz2.z2.alg.json")]),
    ("cz3", include_str!("../corpus/cz3.qg.json"), &[include_str!("../corpus/cz3.trivial.alg.json")]),
    ("cz4", include_str!("../corpus/cz4.qg.json"), &[include_str!("../corpus/cz4.trivial.alg.json"), include_str!("../corpus/cz4.z2.alg.json")]),
    ("cs3", include_str!("../corpus/cs3.qg.json"), &[include_str!("../corpus/cs3.trivial.alg.json"), include_str!("../corpus/cs3.z2.alg.json")]),
    ("fz2", include_str!("../corpus/fz2.qg.json"), &[include_str!("../corpus/fz2.trivial.alg.json"), include_str!("../corpus/fz2.z2.alg.json")]),
    ("fs3", include_str!("../corpus/fs3.qg.json"), &[include_str!("../corpus/fs3.trivial.alg.json"), include_str!("../corpus/fs3.z2.alg.json")]),
    ("h4", include_str!("../corpus/h4.qg.json"), &[include_str!("../corpus/h4.trivial.alg.json"), include_str!("../corpus/h4.z2.alg.json")]),
];

pub const EXPECTED: &str = include_str!("../corpus/expected.json");

/// Recorded pairs as `(group-like index, character index)` into the
/// candidate lists of the group file.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub pairs: Vec<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub stem: &'static str,
    pub group: FiniteQuantumGroup,
    pub algebras: Vec<ModuleAlgebra>,
    pub expected: Expected,
}

impl CorpusEntry {
    /// The algebra named `name`, if shipped.
    pub fn algebra(&self, name: &str) -> Option<&ModuleAlgebra> {
        self.algebras.iter().find(|a| a.name == name)
    }
}

/// Loads and validates every entry.
pub fn load() -> Result<Vec<CorpusEntry>, InputError> {
    let expected: BTreeMap<String, Expected> = serde_json::from_str(EXPECTED).map_err(|e| InputError::Schema {
        pointer: String::from("/"),
        message: format!("expected.json: {e}"),
    })?;
    FILES
        .iter()
        .map(|(stem, g, algs)| {
            let group = group_from_str(g)?;
            let algebras = algs.iter().map(|a| algebra_from_str(a, &group)).collect::<Result<_, _>>()?;
            Ok(CorpusEntry {
                stem,
                expected: expected.get(*stem).cloned().unwrap_or_default(),
                group,
                algebras,
            })
        })
        .collect()
}

/// Resolves a `--group` argument: a corpus stem, a group name, or a path.
pub fn resolve_group(arg: &str) -> Result<FiniteQuantumGroup, InputError> {
    if let Some((_, g, _)) = FILES.iter().find(|(s, _, _)| *s == arg) {
        return group_from_str(g);
    }
    if let Some(h) = qgdual_core::corpus::group_by_name(arg) {
        if let Some((_, g, _)) = FILES.iter().find(|(_, g, _)| group_from_str(g).map(|x| x.name == h.name).unwrap_or(false)) {
            return group_from_str(g);
        }
    }
    crate::schema::load_group(arg)
}
