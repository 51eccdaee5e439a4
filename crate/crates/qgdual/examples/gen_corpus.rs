//! Writes the JSON corpus and the recorded pair enumerations.
//!
//! cargo run -p qgdual --example gen_corpus

use std::collections::BTreeMap;
use std::path::PathBuf;

use qgdual::corpus::Expected;
use qgdual::schema::{to_json, AlgebraFile, GroupFile};
use qgdual_core::corpus::{all_groups, trivial_algebra, z2_algebra};
use qgdual_core::modular::corpus_pairs;

const STEMS: [(&str, &str); 7] = [
    ("C[Z2]", "cz2"),
    ("C[Z3]", "cz3"),
    ("C[Z4]", "cz4"),
    ("C[S3]", "cs3"),
    ("C^Z2", "fz2"),
    ("C^S3", "fs3"),
    ("H4", "h4"),
];

fn main() -> anyhow::Result<()> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let mut expected = BTreeMap::new();
    for h in all_groups() {
        let stem = STEMS.iter().find(|(n, _)| *n == h.name).map(|(_, s)| *s).expect("known group");
        std::fs::write(dir.join(format!("{stem}.qg.json")), to_json(&GroupFile::from_group(&h)))?;
        let mut algs = vec![("trivial", trivial_algebra(&h))];
        algs.extend(z2_algebra(&h).map(|a| ("z2", a)));
        for (tag, a) in algs {
            std::fs::write(dir.join(format!("{stem}.{tag}.alg.json")), to_json(&AlgebraFile::from_algebra(&a, &h)))?;
        }
        // brute force over the candidate lists
        let pairs = corpus_pairs(&h)?
            .iter()
            .map(|p| {
                let s = h.grouplike_candidates.iter().position(|g| *g == p.sigma).expect("candidate");
                let d = h.character_candidates.iter().position(|c| *c == p.delta).expect("candidate");
                (s, d)
            })
            .collect();
        println!("{}: {} pairs", h.name, corpus_pairs(&h)?.len());
        expected.insert(stem, Expected { pairs });
    }
    std::fs::write(dir.join("expected.json"), to_json(&expected))?;
    Ok(())
}
