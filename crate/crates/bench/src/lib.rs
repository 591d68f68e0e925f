//! Shared benchmark fixtures: the demo workflow model and a large synthetic
//! instance (61 nodes, 97 edges, 3 loops).

use pathgen_core::{generate_corpus, CorpusSpec, SutModel};

pub fn demo() -> SutModel {
    SutModel::from_json(include_str!("../../core/tests/fixtures/demo_workflow.json")).unwrap()
}

pub fn large_spec() -> CorpusSpec {
    CorpusSpec {
        instances: 1,
        nodes: (61, 61),
        edges: (97, 97),
        loops: (3, 3),
        degree: (2.10, 3.58),
        high_fraction: 21.0 / 97.0,
        medium_fraction: 10.0 / 97.0,
        seed: 51,
    }
}

pub fn large() -> SutModel {
    generate_corpus(&large_spec()).unwrap().remove(0).1
}
