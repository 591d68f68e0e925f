//! Generation of prioritized path-based test suites from workflow models.
//!
//! A system under test is described as a weighted directed multigraph
//! ([`SutModel`]): nodes are states or activities, edges are transitions, and
//! each edge carries a priority (`high`, `medium`, or `low`). From such a
//! model this crate derives executable test cases — start-to-end paths — under
//! two intensity dials:
//!
//! * **TDL** (test depth level): `tdl = 1` asks for every edge to be covered,
//!   `tdl = n` asks for every reachable `n`-edge sequence to be covered.
//! * **PTL** (prioritized test level): `high` restricts the goal to
//!   high-priority edges, `medium` to high- and medium-priority edges.
//!
//! The flagship generator is [`ppt::generate_ppt`], which enumerates candidate
//! end-to-end paths and greedily packs priority targets into as few, short
//! test cases as possible. Five alternative generators in [`baselines`] cover
//! the same requirement families by other means (whole-graph coverage, filter
//! reduction, per-requirement stitching, set covering, and matching-based path
//! chaining) so that suites can be compared on equal footing.
//!
//! Supporting modules: [`requirements`] turns models into target paths and
//! requirement sets, [`metrics`] measures suites and runs consistency checks,
//! [`corpus`] generates seeded synthetic workflow models, and [`experiment`]
//! drives whole-corpus comparison runs and emits CSV reports.
//!
//! All operations are deterministic: ids are ordered naturally (numeric-aware)
//! and every tie-break is specified, so equal inputs produce byte-identical
//! outputs.

pub mod baselines;
pub mod corpus;
pub mod experiment;
pub mod metrics;
pub mod model;
pub mod natural;
pub mod ppt;
pub mod requirements;

pub use baselines::{generate_bf, generate_pct, generate_pg, generate_sc, reduce_dct, BaselineConfig};
pub use corpus::{generate_corpus, CorpusSpec};
pub use experiment::{generate_for, run_experiment, ExperimentReport, RunConfig};
pub use metrics::{efficiency_metrics, test_set_metrics, verify_consistency, CheckReport, EfficiencyRecord, MetricsRecord};
pub use model::{
    translate_paths, Algorithm, Conversion, EdgeIdx, ModelError, NodeIdx, Path, Priority,
    Provenance, Ptl, SplitMap, SutModel, TestSet, ValidationReport,
};
pub use ppt::generate_ppt;
pub use requirements::{
    convert_atomic, convert_sequence, edge_pair_requirements, enumerate_tdl_paths,
    select_relevant, RequirementSet, TargetPathSet,
};
