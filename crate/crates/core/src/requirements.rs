//! Coverage targets: TDL path enumeration, priority filtering, and the
//! conversion of models into requirement sets.
//!
//! The depth-driven generators (whole-graph and prioritized) work on *target
//! paths*: every walk of exactly `tdl` edges ([`enumerate_tdl_paths`]),
//! optionally narrowed to the prioritized ones ([`select_relevant`]). The
//! requirement-based generators instead consume a [`RequirementSet`] derived
//! from a simple graph by one of three conversions: one requirement per
//! priority edge ([`convert_atomic`]), maximal priority-only paths
//! ([`convert_sequence`]), or all adjacent edge pairs
//! ([`edge_pair_requirements`]).

use crate::model::{EdgeIdx, ModelError, Path, Ptl, SutModel};

/// An ordered pool of target paths for one depth level. Paths are kept in
/// shortlex order (ascending length, then canonical edge order) with
/// duplicates removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetPathSet {
    pub paths: Vec<Path>,
    pub tdl: usize,
    pub ptl: Option<Ptl>,
}

impl TargetPathSet {
    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }
}

fn sort_dedup(paths: &mut Vec<Path>) {
    paths.sort_by(|a, b| a.shortlex(b));
    paths.dedup();
}

/// Enumerates every walk of exactly `tdl` consecutive edges in the model, in
/// shortlex order. Edges may repeat within a walk when cycles permit; with
/// `tdl = 1` this is simply the edge list.
///
/// # Panics
///
/// Panics if `tdl` is zero.
pub fn enumerate_tdl_paths(model: &SutModel, tdl: usize) -> TargetPathSet {
    assert!(tdl >= 1, "test depth level must be at least 1");
    let mut paths = Vec::new();
    let mut stack = Vec::with_capacity(tdl);
    for node in model.nodes() {
        walk_from(model, node, tdl, &mut stack, &mut paths);
    }
    sort_dedup(&mut paths);
    TargetPathSet {
        paths,
        tdl,
        ptl: None,
    }
}

fn walk_from(
    model: &SutModel,
    node: crate::model::NodeIdx,
    remaining: usize,
    stack: &mut Vec<EdgeIdx>,
    out: &mut Vec<Path>,
) {
    if remaining == 0 {
        out.push(Path::new(stack.clone()));
        return;
    }
    for &e in model.out_edges(node) {
        stack.push(e);
        walk_from(model, model.edge(e).target, remaining - 1, stack, out);
        stack.pop();
    }
}

/// Narrows a full TDL pool to the prioritized targets: walks whose *first*
/// edge belongs to the level's priority class. For depth greater than one,
/// any class edge that ended up contained in no kept walk is added back as a
/// length-1 target so the class is always fully represented.
pub fn select_relevant(model: &SutModel, all: &TargetPathSet, ptl: Ptl) -> TargetPathSet {
    let mut kept: Vec<Path> = all
        .paths
        .iter()
        .filter(|p| {
            p.first_edge()
                .is_some_and(|e| ptl.includes(model.edge(e).priority))
        })
        .cloned()
        .collect();

    if all.tdl > 1 {
        for e in model.class_edges(ptl) {
            let singleton = Path::new(vec![e]);
            if !kept.iter().any(|p| p.contains_subpath(&singleton)) {
                kept.push(singleton);
            }
        }
    }

    sort_dedup(&mut kept);
    TargetPathSet {
        paths: kept,
        tdl: all.tdl,
        ptl: Some(ptl),
    }
}

/// A set of paths that each generated test case pool must contain as
/// subpaths. Requirements live in a simple graph; files store them as node
/// sequences, which are unambiguous there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RequirementSet {
    pub requirements: Vec<Path>,
}

#[derive(serde::Serialize, serde::Deserialize)]
struct RequirementFile {
    requirements: Vec<Vec<String>>,
}

impl RequirementSet {
    pub fn is_empty(&self) -> bool {
        self.requirements.is_empty()
    }

    pub fn len(&self) -> usize {
        self.requirements.len()
    }

    /// Serializes requirements as node id sequences.
    pub fn to_json(&self, model: &SutModel) -> String {
        let file = RequirementFile {
            requirements: self
                .requirements
                .iter()
                .map(|r| {
                    r.nodes(model)
                        .into_iter()
                        .map(|n| model.node_id(n).to_string())
                        .collect()
                })
                .collect(),
        };
        let mut out = serde_json::to_string_pretty(&file).expect("requirement serialization");
        out.push('\n');
        out
    }

    /// Loads requirements from node id sequences, resolving each consecutive
    /// node pair to the edge connecting it (the canonically first edge when
    /// several exist, which cannot happen in a simple graph).
    pub fn from_json(model: &SutModel, text: &str) -> Result<Self, ModelError> {
        let file: RequirementFile = serde_json::from_str(text)?;
        let mut requirements = Vec::with_capacity(file.requirements.len());
        for nodes in &file.requirements {
            if nodes.len() < 2 {
                return Err(ModelError::RequirementTooShort(nodes.len()));
            }
            let mut edges = Vec::with_capacity(nodes.len() - 1);
            for pair in nodes.windows(2) {
                edges.push(edge_between(model, &pair[0], &pair[1])?);
            }
            requirements.push(Path::new(edges));
        }
        sort_dedup(&mut requirements);
        Ok(RequirementSet { requirements })
    }
}

fn edge_between(model: &SutModel, source: &str, target: &str) -> Result<EdgeIdx, ModelError> {
    let s = model.node_idx(source)?;
    let t = model.node_idx(target)?;
    model
        .out_edges(s)
        .iter()
        .copied()
        .find(|&e| model.edge(e).target == t)
        .ok_or_else(|| ModelError::NoSuchEdge {
            from: source.to_string(),
            to: target.to_string(),
        })
}

fn assert_simple(model: &SutModel) {
    assert!(
        model.is_simple(),
        "requirement conversions need a simple graph; split parallel edges first"
    );
}

/// One requirement per edge of the level's priority class: the edge itself
/// (a node pair). The model must be simple.
pub fn convert_atomic(model: &SutModel, ptl: Ptl) -> RequirementSet {
    assert_simple(model);
    let mut requirements: Vec<Path> = model
        .class_edges(ptl)
        .into_iter()
        .map(|e| Path::new(vec![e]))
        .collect();
    sort_dedup(&mut requirements);
    RequirementSet { requirements }
}

/// Maximal paths consisting solely of the level's priority-class edges. A
/// path qualifies when it cannot be extended by another class edge and is
/// not contained in a longer qualifying path; the result is an antichain
/// under the subpath relation. Within a cyclic class subgraph each edge is
/// used at most once per path, which bounds the walk. The model must be
/// simple.
pub fn convert_sequence(model: &SutModel, ptl: Ptl) -> RequirementSet {
    assert_simple(model);
    let class: Vec<EdgeIdx> = model.class_edges(ptl);
    let in_class = |e: EdgeIdx| ptl.includes(model.edge(e).priority);

    // All maximal edge-simple forward walks, started from every class edge.
    // Walks that merely start mid-way (e.g. the tail of a longer walk) are
    // removed by the antichain filter below.
    let mut walks = Vec::new();
    for &e in &class {
        let mut stack = vec![e];
        let mut used: Vec<bool> = vec![false; model.edge_count()];
        used[e.as_usize()] = true;
        extend_maximal(model, &in_class, &mut stack, &mut used, &mut walks);
    }
    sort_dedup(&mut walks);

    let requirements: Vec<Path> = walks
        .iter()
        .filter(|p| {
            !walks
                .iter()
                .any(|q| q.len() > p.len() && q.contains_subpath(p))
        })
        .cloned()
        .collect();
    RequirementSet { requirements }
}

fn extend_maximal(
    model: &SutModel,
    in_class: &impl Fn(EdgeIdx) -> bool,
    stack: &mut Vec<EdgeIdx>,
    used: &mut Vec<bool>,
    out: &mut Vec<Path>,
) {
    let tail = model.edge(*stack.last().expect("walk is never empty")).target;
    let mut extended = false;
    for &e in model.out_edges(tail) {
        if in_class(e) && !used[e.as_usize()] {
            extended = true;
            used[e.as_usize()] = true;
            stack.push(e);
            extend_maximal(model, in_class, stack, used, out);
            stack.pop();
            used[e.as_usize()] = false;
        }
    }
    if !extended {
        out.push(Path::new(stack.clone()));
    }
}

/// All adjacent edge pairs of the model: one requirement for every pair of
/// edges where the second leaves the node the first enters. The model must
/// be simple.
pub fn edge_pair_requirements(model: &SutModel) -> RequirementSet {
    assert_simple(model);
    let mut requirements = Vec::new();
    for e in model.edges() {
        let mid = model.edge(e).target;
        for &f in model.out_edges(mid) {
            requirements.push(Path::new(vec![e, f]));
        }
    }
    sort_dedup(&mut requirements);
    RequirementSet { requirements }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::SutModel;

    fn demo() -> SutModel {
        SutModel::from_json(include_str!("../tests/fixtures/demo_workflow.json")).unwrap()
    }

    fn ids(model: &SutModel, paths: &[Path]) -> Vec<Vec<String>> {
        paths.iter().map(|p| p.to_ids(model)).collect()
    }

    fn id_paths(rows: &[&[&str]]) -> Vec<Vec<String>> {
        rows.iter()
            .map(|r| r.iter().map(|s| s.to_string()).collect())
            .collect()
    }

    #[test]
    fn depth_one_enumerates_every_edge() {
        let m = demo();
        let all = enumerate_tdl_paths(&m, 1);
        assert_eq!(all.len(), 21);
        let expected: Vec<Vec<String>> = m.edges().map(|e| vec![m.edge_id(e).to_string()]).collect();
        assert_eq!(ids(&m, &all.paths), expected);
    }

    #[test]
    fn depth_two_enumerates_all_adjacent_pairs() {
        let m = demo();
        let all = enumerate_tdl_paths(&m, 2);
        let expected = id_paths(&[
            &["1", "2"],
            &["2", "3"],
            &["2", "4"],
            &["3", "5"],
            &["3", "6"],
            &["4", "9"],
            &["4", "11"],
            &["5", "7"],
            &["6", "8"],
            &["7", "8"],
            &["8", "9"],
            &["8", "11"],
            &["9", "10"],
            &["10", "12"],
            &["11", "13"],
            &["11", "14"],
            &["11", "15"],
            &["12", "13"],
            &["12", "14"],
            &["12", "15"],
            &["13", "16"],
            &["14", "19"],
            &["15", "17"],
            &["16", "18"],
            &["17", "20"],
            &["18", "20"],
            &["19", "20"],
            &["20", "21"],
        ]);
        assert_eq!(ids(&m, &all.paths), expected);
    }

    #[test]
    fn cycles_allow_repeated_edges_in_walks() {
        let m = SutModel::from_json(
            r#"{
              "nodes": [{"id":"s","start":true},{"id":"a"},{"id":"e","end":true}],
              "edges": [
                {"id":"1","source":"s","target":"a"},
                {"id":"2","source":"a","target":"a","priority":"high"},
                {"id":"3","source":"a","target":"e"}
              ]
            }"#,
        )
        .unwrap();
        let all = enumerate_tdl_paths(&m, 2);
        assert_eq!(
            ids(&m, &all.paths),
            id_paths(&[&["1", "2"], &["1", "3"], &["2", "2"], &["2", "3"]])
        );
    }

    #[test]
    fn relevant_targets_depth_one() {
        let m = demo();
        let all = enumerate_tdl_paths(&m, 1);
        let high = select_relevant(&m, &all, Ptl::High);
        assert_eq!(ids(&m, &high.paths), id_paths(&[&["11"], &["13"], &["14"], &["16"]]));
        let medium = select_relevant(&m, &all, Ptl::Medium);
        assert_eq!(
            ids(&m, &medium.paths),
            id_paths(&[&["3"], &["6"], &["11"], &["13"], &["14"], &["16"]])
        );
    }

    #[test]
    fn relevant_targets_depth_two() {
        let m = demo();
        let all = enumerate_tdl_paths(&m, 2);
        let high = select_relevant(&m, &all, Ptl::High);
        assert_eq!(
            ids(&m, &high.paths),
            id_paths(&[
                &["11", "13"],
                &["11", "14"],
                &["11", "15"],
                &["13", "16"],
                &["14", "19"],
                &["16", "18"],
            ])
        );
        let medium = select_relevant(&m, &all, Ptl::Medium);
        assert_eq!(
            ids(&m, &medium.paths),
            id_paths(&[
                &["3", "5"],
                &["3", "6"],
                &["6", "8"],
                &["11", "13"],
                &["11", "14"],
                &["11", "15"],
                &["13", "16"],
                &["14", "19"],
                &["16", "18"],
            ])
        );
    }

    #[test]
    fn uncovered_class_edges_fall_back_to_singleton_targets() {
        // The only high edge feeds straight into the end node, so no depth-2
        // walk starts with it; it must come back as a singleton target.
        let m = SutModel::from_json(
            r#"{
              "nodes": [{"id":"s","start":true},{"id":"a"},{"id":"e","end":true}],
              "edges": [
                {"id":"1","source":"s","target":"a"},
                {"id":"2","source":"a","target":"e","priority":"high"}
              ]
            }"#,
        )
        .unwrap();
        let all = enumerate_tdl_paths(&m, 2);
        assert_eq!(ids(&m, &all.paths), id_paths(&[&["1", "2"]]));
        let high = select_relevant(&m, &all, Ptl::High);
        assert_eq!(ids(&m, &high.paths), id_paths(&[&["2"]]));
    }

    #[test]
    fn atomic_conversion_yields_one_requirement_per_class_edge() {
        let m = demo();
        let high = convert_atomic(&m, Ptl::High);
        assert_eq!(
            ids(&m, &high.requirements),
            id_paths(&[&["11"], &["13"], &["14"], &["16"]])
        );
        let text = high.to_json(&m);
        let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(
            parsed["requirements"],
            serde_json::json!([["F", "I"], ["I", "J"], ["I", "L"], ["J", "M"]])
        );
    }

    #[test]
    fn sequence_conversion_finds_maximal_priority_paths() {
        let m = demo();
        let high = convert_sequence(&m, Ptl::High);
        assert_eq!(
            ids(&m, &high.requirements),
            id_paths(&[&["11", "14"], &["11", "13", "16"]])
        );
        let medium = convert_sequence(&m, Ptl::Medium);
        assert_eq!(
            ids(&m, &medium.requirements),
            id_paths(&[&["3", "6"], &["11", "14"], &["11", "13", "16"]])
        );
    }

    #[test]
    fn sequence_conversion_covers_cyclic_class_subgraphs() {
        // Three high edges forming a cycle: no entry edge exists, yet every
        // class edge must appear in some requirement and no requirement may
        // contain another.
        let m = SutModel::from_json(
            r#"{
              "nodes": [
                {"id":"s","start":true},{"id":"a"},{"id":"b"},{"id":"c"},{"id":"e","end":true}
              ],
              "edges": [
                {"id":"1","source":"s","target":"a"},
                {"id":"2","source":"a","target":"b","priority":"high"},
                {"id":"3","source":"b","target":"c","priority":"high"},
                {"id":"4","source":"c","target":"a","priority":"high"},
                {"id":"5","source":"a","target":"e"}
              ]
            }"#,
        )
        .unwrap();
        let reqs = convert_sequence(&m, Ptl::High);
        assert_eq!(
            ids(&m, &reqs.requirements),
            id_paths(&[&["2", "3", "4"], &["3", "4", "2"], &["4", "2", "3"]])
        );
        for (i, p) in reqs.requirements.iter().enumerate() {
            for (j, q) in reqs.requirements.iter().enumerate() {
                assert!(i == j || !q.contains_subpath(p), "antichain violated");
            }
        }
    }

    #[test]
    fn edge_pairs_match_depth_two_enumeration_on_simple_graphs() {
        let m = demo();
        let pairs = edge_pair_requirements(&m);
        let all = enumerate_tdl_paths(&m, 2);
        assert_eq!(pairs.requirements, all.paths);
        assert_eq!(pairs.len(), 28);
    }

    #[test]
    fn requirement_json_round_trip() {
        let m = demo();
        let reqs = convert_sequence(&m, Ptl::Medium);
        let text = reqs.to_json(&m);
        let again = RequirementSet::from_json(&m, &text).unwrap();
        assert_eq!(reqs, again);
    }

    #[test]
    fn requirement_parsing_rejects_bad_input() {
        let m = demo();
        assert!(matches!(
            RequirementSet::from_json(&m, r#"{"requirements":[["F"]]}"#),
            Err(ModelError::RequirementTooShort(1))
        ));
        assert!(matches!(
            RequirementSet::from_json(&m, r#"{"requirements":[["F","A"]]}"#),
            Err(ModelError::NoSuchEdge { .. })
        ));
        assert!(matches!(
            RequirementSet::from_json(&m, r#"{"requirements":[["F","nope"]]}"#),
            Err(ModelError::UnknownNodeId(_))
        ));
    }
}
