//! Benchmark inputs shared by the criterion targets.

use scaffolds::catalog;
use scaffolds::{Diagram, TranslationScheme};

/// `(label, diagram, scheme)` triples covering small and medium workloads.
pub fn workloads() -> Vec<(String, Diagram, TranslationScheme)> {
    let mut out = Vec::new();
    for scheme in ["h22", "z6-cycle"] {
        let ts = catalog::scheme(scheme).expect("catalog scheme");
        for name in ["triangle", "fig1", "loops-nested"] {
            let d = catalog::diagram(name, None, Some(ts.classes())).expect("catalog diagram");
            out.push((format!("{name}/{scheme}"), d, ts.clone()));
        }
    }
    out
}
