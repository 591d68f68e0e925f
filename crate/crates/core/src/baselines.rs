//! The five comparison generators.
//!
//! Two are depth-driven like the prioritized generator: [`generate_pct`]
//! stitches a test case for every uncovered depth-level target until the
//! whole graph is covered, and [`reduce_dct`] filters such a suite down to
//! the cases that touch prioritized edges. The other three consume a
//! [`RequirementSet`] on a simple graph: [`generate_bf`] stitches one
//! candidate per requirement and keeps them all, [`generate_sc`] runs
//! a greedy set cover over the same candidate pool, and [`generate_pg`]
//! chains requirements via a maximum bipartite matching (a minimum path
//! cover of the requirement adjacency graph) before stitching.
//!
//! All stitching uses breadth-first shortest connectors, exploring edges in
//! canonical order, so connector ties resolve to the lexicographically
//! smallest path and runs are reproducible.

use std::collections::VecDeque;

use crate::model::{
    Algorithm, Conversion, EdgeIdx, NodeIdx, Path, Provenance, Ptl, SutModel, TestSet,
};
use crate::requirements::{enumerate_tdl_paths, RequirementSet};

/// Configuration of one generation run, as used by the experiment harness
/// and the command line: which algorithm with which dials. Fields that do
/// not apply to the chosen algorithm stay `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaselineConfig {
    pub algorithm: Algorithm,
    pub tdl: Option<usize>,
    pub ptl: Option<Ptl>,
    pub conversion: Option<Conversion>,
    pub max_edge_repeats: Option<usize>,
}

impl BaselineConfig {
    pub fn provenance(&self) -> Provenance {
        Provenance {
            algorithm: self.algorithm,
            tdl: self.tdl,
            ptl: self.ptl,
            conversion: self.conversion,
            requirements: None,
        }
    }
}

/// Errors raised by the stitching generators. `path` names the offending
/// target or requirement (edge ids for depth targets, node ids for
/// requirements).
#[derive(Debug, thiserror::Error)]
pub enum BaselineError {
    #[error("target {} is unreachable from the start node", .path.join("-"))]
    TargetUnreachable { path: Vec<String> },
    #[error("no end node is reachable after target {}", .path.join("-"))]
    TargetDeadEnd { path: Vec<String> },
}

/// Lexicographically smallest shortest edge path from `from` to `to`, or
/// `None` if unreachable. `from == to` yields the empty path.
fn bfs_path(model: &SutModel, from: NodeIdx, to: NodeIdx) -> Option<Vec<EdgeIdx>> {
    bfs(model, from, |n| n == to)
}

/// Lexicographically smallest shortest edge path from `from` to any end
/// node.
fn bfs_to_end(model: &SutModel, from: NodeIdx) -> Option<Vec<EdgeIdx>> {
    bfs(model, from, |n| model.is_end(n))
}

fn bfs(model: &SutModel, from: NodeIdx, is_goal: impl Fn(NodeIdx) -> bool) -> Option<Vec<EdgeIdx>> {
    if is_goal(from) {
        return Some(Vec::new());
    }
    let mut parent: Vec<Option<EdgeIdx>> = vec![None; model.node_count()];
    let mut seen = vec![false; model.node_count()];
    seen[from.as_usize()] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(n) = queue.pop_front() {
        for &e in model.out_edges(n) {
            let t = model.edge(e).target;
            if seen[t.as_usize()] {
                continue;
            }
            seen[t.as_usize()] = true;
            parent[t.as_usize()] = Some(e);
            if is_goal(t) {
                let mut edges = Vec::new();
                let mut cur = t;
                while let Some(pe) = parent[cur.as_usize()] {
                    edges.push(pe);
                    cur = model.edge(pe).source;
                }
                edges.reverse();
                return Some(edges);
            }
            queue.push_back(t);
        }
    }
    None
}

/// Embeds a target path into a start-to-end test case with shortest
/// connectors on both sides.
fn stitch(model: &SutModel, target: &Path, name: impl Fn() -> Vec<String>) -> Result<Path, BaselineError> {
    let first = target.first_edge().expect("stitched targets are nonempty");
    let last = *target.edges().last().expect("stitched targets are nonempty");
    let head = model.edge(first).source;
    let tail = model.edge(last).target;
    let prefix = bfs_path(model, model.start(), head)
        .ok_or_else(|| BaselineError::TargetUnreachable { path: name() })?;
    let suffix =
        bfs_to_end(model, tail).ok_or_else(|| BaselineError::TargetDeadEnd { path: name() })?;
    let mut edges = prefix;
    edges.extend_from_slice(target.edges());
    edges.extend_from_slice(&suffix);
    Ok(Path::new(edges))
}

/// Covers every walk of exactly `tdl` edges: repeatedly takes the first
/// uncovered depth-level target in canonical order, stitches it into a test
/// case, and marks everything that case covers. The model must validate
/// cleanly for stitching to succeed.
pub fn generate_pct(model: &SutModel, tdl: usize) -> Result<TestSet, BaselineError> {
    let targets = enumerate_tdl_paths(model, tdl);
    let mut covered = vec![false; targets.len()];
    let mut cases = Vec::new();
    for i in 0..targets.len() {
        if covered[i] {
            continue;
        }
        let target = &targets.paths[i];
        let case = stitch(model, target, || target.to_ids(model))?;
        for (flag, t) in covered.iter_mut().zip(&targets.paths) {
            if !*flag && case.contains_subpath(t) {
                *flag = true;
            }
        }
        cases.push(case);
    }
    Ok(TestSet::new(
        cases,
        Provenance {
            algorithm: Algorithm::Pct,
            tdl: Some(tdl),
            ptl: None,
            conversion: None,
            requirements: None,
        },
    ))
}

/// Keeps only the cases of a whole-graph suite that contain at least one
/// edge of the level's priority class, preserving order. The usual input is
/// a [`generate_pct`] suite.
pub fn reduce_dct(whole: &TestSet, model: &SutModel, ptl: Ptl) -> TestSet {
    let cases: Vec<Path> = whole
        .cases
        .iter()
        .filter(|c| {
            c.edges()
                .iter()
                .any(|&e| ptl.includes(model.edge(e).priority))
        })
        .cloned()
        .collect();
    TestSet::new(
        cases,
        Provenance {
            algorithm: Algorithm::Dct,
            tdl: whole.provenance.tdl,
            ptl: Some(ptl),
            conversion: None,
            requirements: None,
        },
    )
}

/// Stitched candidate pool shared by the requirement-based generators: one
/// candidate per requirement, deduplicated, in shortlex order. Returns for
/// each candidate the indices of *all* requirements it contains.
fn stitch_candidates(
    model: &SutModel,
    reqs: &RequirementSet,
) -> Result<(Vec<Path>, Vec<Vec<usize>>), BaselineError> {
    let mut pool: Vec<Path> = Vec::with_capacity(reqs.len());
    for r in &reqs.requirements {
        let case = stitch(model, r, || {
            r.nodes(model)
                .into_iter()
                .map(|n| model.node_id(n).to_string())
                .collect()
        })?;
        if !pool.contains(&case) {
            pool.push(case);
        }
    }
    pool.sort_by(|a, b| a.shortlex(b));
    let contained = pool
        .iter()
        .map(|c| {
            reqs.requirements
                .iter()
                .enumerate()
                .filter(|(_, r)| c.contains_subpath(r))
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    Ok((pool, contained))
}

/// One stitched case per requirement, duplicates merged, no optimization
/// beyond that. Keeping the whole pool is what makes this the baseline the
/// cover-based generators are measured against: they select from the same
/// pool and therefore can never come out larger. The model must be simple
/// and validate cleanly.
pub fn generate_bf(model: &SutModel, reqs: &RequirementSet) -> Result<TestSet, BaselineError> {
    let (pool, _) = stitch_candidates(model, reqs)?;
    Ok(TestSet::new(pool, requirement_provenance(Algorithm::Bf)))
}

/// Greedy set cover over the stitched candidate pool: repeatedly keeps the
/// candidate covering the most still-uncovered requirements (ties go to the
/// earlier pool candidate) until every requirement is covered. The model
/// must be simple and validate cleanly.
pub fn generate_sc(model: &SutModel, reqs: &RequirementSet) -> Result<TestSet, BaselineError> {
    let (pool, contained) = stitch_candidates(model, reqs)?;
    let mut uncovered: Vec<bool> = vec![true; reqs.len()];
    let mut remaining = reqs.len();
    let mut picked = vec![false; pool.len()];
    let mut cases = Vec::new();
    while remaining > 0 {
        let mut best: Option<(usize, usize)> = None;
        for (i, cover) in contained.iter().enumerate() {
            if picked[i] {
                continue;
            }
            let gain = cover.iter().filter(|&&r| uncovered[r]).count();
            if gain > best.map_or(0, |(_, g)| g) {
                best = Some((i, gain));
            }
        }
        let (i, _) = best.expect("every uncovered requirement has an unpicked candidate");
        picked[i] = true;
        for &r in &contained[i] {
            if uncovered[r] {
                uncovered[r] = false;
                remaining -= 1;
            }
        }
        cases.push(pool[i].clone());
    }
    Ok(TestSet::new(cases, requirement_provenance(Algorithm::Sc)))
}

fn requirement_provenance(algorithm: Algorithm) -> Provenance {
    Provenance {
        algorithm,
        tdl: None,
        ptl: None,
        conversion: None,
        requirements: None,
    }
}

/// How one requirement may directly follow another inside a single test
/// case.
enum Splice {
    /// The last `overlap` nodes of the predecessor equal the first `overlap`
    /// nodes of the successor.
    Overlap(usize),
    /// Shortest connector path between predecessor tail and successor head.
    Connector(Vec<EdgeIdx>),
}

/// Chains requirements into few test cases: builds the requirement adjacency
/// graph (arcs where one requirement can follow another by overlap or
/// connector), derives a minimum path cover from a maximum bipartite
/// matching, and stitches each chain once. The model must be simple and
/// validate cleanly.
pub fn generate_pg(model: &SutModel, reqs: &RequirementSet) -> Result<TestSet, BaselineError> {
    let k = reqs.len();
    let node_seqs: Vec<Vec<NodeIdx>> = reqs.requirements.iter().map(|r| r.nodes(model)).collect();

    // Arc i -> j with its cheapest splice. Maximal node overlap wins over a
    // connector; requirement sets are antichains, so overlaps never swallow
    // a whole requirement.
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut splices: Vec<Vec<Option<Splice>>> = (0..k).map(|_| (0..k).map(|_| None).collect()).collect();
    for i in 0..k {
        let tail = *node_seqs[i].last().expect("requirements are nonempty");
        for j in 0..k {
            if i == j {
                continue;
            }
            let splice = best_overlap(&node_seqs[i], &node_seqs[j])
                .map(Splice::Overlap)
                .or_else(|| {
                    bfs_path(model, tail, node_seqs[j][0]).map(Splice::Connector)
                });
            if let Some(s) = splice {
                adj[i].push(j);
                splices[i][j] = Some(s);
            }
        }
    }

    let succ = max_bipartite_matching(k, &adj);
    let mut pred: Vec<Option<usize>> = vec![None; k];
    for (i, &s) in succ.iter().enumerate() {
        if let Some(j) = s {
            pred[j] = Some(i);
        }
    }

    // Chains start at unmatched predecessors; whatever remains sits on
    // matched cycles, each broken at its canonically smallest member.
    let mut visited = vec![false; k];
    let mut chains: Vec<Vec<usize>> = Vec::new();
    for (head, p) in pred.iter().enumerate() {
        if p.is_none() {
            chains.push(follow_chain(head, &succ, &mut visited));
        }
    }
    for head in 0..k {
        if !visited[head] {
            chains.push(follow_chain(head, &succ, &mut visited));
        }
    }

    let mut cases = Vec::with_capacity(chains.len());
    for chain in &chains {
        let first = chain[0];
        let name = |idx: usize| -> Vec<String> {
            node_seqs[idx]
                .iter()
                .map(|&n| model.node_id(n).to_string())
                .collect()
        };
        let mut edges = bfs_path(model, model.start(), node_seqs[first][0])
            .ok_or_else(|| BaselineError::TargetUnreachable { path: name(first) })?;
        edges.extend_from_slice(reqs.requirements[first].edges());
        for w in chain.windows(2) {
            let (i, j) = (w[0], w[1]);
            match splices[i][j].as_ref().expect("chained arcs have splices") {
                Splice::Overlap(overlap) => {
                    // `overlap` shared nodes means `overlap - 1` shared edges.
                    edges.extend_from_slice(&reqs.requirements[j].edges()[overlap - 1..]);
                }
                Splice::Connector(conn) => {
                    edges.extend_from_slice(conn);
                    edges.extend_from_slice(reqs.requirements[j].edges());
                }
            }
        }
        let last = *chain.last().expect("chains are nonempty");
        let tail = *node_seqs[last].last().expect("requirements are nonempty");
        let suffix =
            bfs_to_end(model, tail).ok_or_else(|| BaselineError::TargetDeadEnd { path: name(last) })?;
        edges.extend_from_slice(&suffix);
        cases.push(Path::new(edges));
    }
    Ok(TestSet::new(cases, requirement_provenance(Algorithm::Pg)))
}

/// Largest `L >= 1` such that the last `L` nodes of `a` equal the first `L`
/// nodes of `b`, staying strictly below either length so neither requirement
/// swallows the other.
fn best_overlap(a: &[NodeIdx], b: &[NodeIdx]) -> Option<usize> {
    let max = a.len().min(b.len()) - 1;
    (1..=max).rev().find(|&l| a[a.len() - l..] == b[..l])
}

fn follow_chain(head: usize, succ: &[Option<usize>], visited: &mut [bool]) -> Vec<usize> {
    let mut chain = vec![head];
    visited[head] = true;
    let mut cur = head;
    while let Some(next) = succ[cur] {
        if visited[next] {
            break; // closed a cycle; the arc back to the head is dropped
        }
        visited[next] = true;
        chain.push(next);
        cur = next;
    }
    chain
}

/// Kuhn's augmenting-path maximum matching. Left vertices are requirements
/// in the role of predecessor, right vertices in the role of successor;
/// returns the matched successor per left vertex. Deterministic: vertices
/// and adjacency are visited in canonical order.
fn max_bipartite_matching(n: usize, adj: &[Vec<usize>]) -> Vec<Option<usize>> {
    let mut match_left: Vec<Option<usize>> = vec![None; n];
    let mut match_right: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let mut visited = vec![false; n];
        augment(i, adj, &mut visited, &mut match_left, &mut match_right);
    }
    match_left
}

fn augment(
    i: usize,
    adj: &[Vec<usize>],
    visited: &mut [bool],
    match_left: &mut [Option<usize>],
    match_right: &mut [Option<usize>],
) -> bool {
    for &j in &adj[i] {
        if visited[j] {
            continue;
        }
        visited[j] = true;
        let free = match match_right[j] {
            None => true,
            Some(owner) => augment(owner, adj, visited, match_left, match_right),
        };
        if free {
            match_right[j] = Some(i);
            match_left[i] = Some(j);
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::SutModel;
    use crate::requirements::{convert_atomic, convert_sequence, edge_pair_requirements};

    fn demo() -> SutModel {
        SutModel::from_json(include_str!("../tests/fixtures/demo_workflow.json")).unwrap()
    }

    fn case_ids(model: &SutModel, set: &TestSet) -> Vec<Vec<String>> {
        set.cases.iter().map(|c| c.to_ids(model)).collect()
    }

    fn id_paths(rows: &[&[&str]]) -> Vec<Vec<String>> {
        rows.iter()
            .map(|r| r.iter().map(|s| s.to_string()).collect())
            .collect()
    }

    #[test]
    fn pct_depth_one_covers_all_edges_with_stitched_cases() {
        let m = demo();
        let set = generate_pct(&m, 1).unwrap();
        assert_eq!(
            case_ids(&m, &set),
            id_paths(&[
                &["1", "2", "4", "11", "14", "19", "20", "21"],
                &["1", "2", "3", "6", "8", "11", "14", "19", "20", "21"],
                &["1", "2", "3", "5", "7", "8", "11", "14", "19", "20", "21"],
                &["1", "2", "4", "9", "10", "12", "14", "19", "20", "21"],
                &["1", "2", "4", "11", "13", "16", "18", "20", "21"],
                &["1", "2", "4", "11", "15", "17", "20", "21"],
            ])
        );
        let mut seen = vec![false; m.edge_count()];
        for c in &set.cases {
            for &e in c.edges() {
                seen[e.as_usize()] = true;
            }
        }
        assert!(seen.iter().all(|&s| s), "every edge must be covered");
    }

    #[test]
    fn pct_depth_two_covers_every_adjacent_pair() {
        let m = demo();
        let set = generate_pct(&m, 2).unwrap();
        let pairs = enumerate_tdl_paths(&m, 2);
        for t in &pairs.paths {
            assert!(
                set.cases.iter().any(|c| c.contains_subpath(t)),
                "pair {:?} uncovered",
                t.to_ids(&m)
            );
        }
        for c in &set.cases {
            assert!(c.is_test_case(&m));
        }
    }

    #[test]
    fn dct_filters_cases_without_priority_edges() {
        let m = SutModel::from_json(
            r#"{
              "nodes": [{"id":"s","start":true},{"id":"a"},{"id":"b"},{"id":"e","end":true}],
              "edges": [
                {"id":"1","source":"s","target":"a","priority":"high"},
                {"id":"2","source":"s","target":"b"},
                {"id":"3","source":"a","target":"e"},
                {"id":"4","source":"b","target":"e"}
              ]
            }"#,
        )
        .unwrap();
        let whole = generate_pct(&m, 1).unwrap();
        assert_eq!(case_ids(&m, &whole), id_paths(&[&["1", "3"], &["2", "4"]]));
        let reduced = reduce_dct(&whole, &m, Ptl::High);
        assert_eq!(case_ids(&m, &reduced), id_paths(&[&["1", "3"]]));
        assert_eq!(reduced.provenance.algorithm, Algorithm::Dct);
        assert_eq!(reduced.provenance.tdl, Some(1));
    }

    #[test]
    fn dct_on_a_hand_written_whole_graph_suite() {
        // Reduction is independent of how the whole-graph suite was built:
        // of these three covering cases only the last lacks high edges, and
        // none lacks medium-or-high edges.
        let m = demo();
        let whole = TestSet::new(
            vec![
                Path::from_edge_ids(&m, &["1", "2", "3", "5", "7", "8", "9", "10", "12", "13", "16", "18", "20", "21"]).unwrap(),
                Path::from_edge_ids(&m, &["1", "2", "4", "11", "14", "19", "20", "21"]).unwrap(),
                Path::from_edge_ids(&m, &["1", "2", "3", "6", "8", "9", "10", "12", "15", "17", "20", "21"]).unwrap(),
            ],
            Provenance {
                algorithm: Algorithm::Pct,
                tdl: Some(1),
                ptl: None,
                conversion: None,
                requirements: None,
            },
        );
        let high = reduce_dct(&whole, &m, Ptl::High);
        assert_eq!(high.cases, whole.cases[..2].to_vec());
        let medium = reduce_dct(&whole, &m, Ptl::Medium);
        assert_eq!(medium.cases, whole.cases);
    }

    #[test]
    fn bf_keeps_non_redundant_stitched_candidates() {
        let m = demo();
        let set = generate_bf(&m, &convert_sequence(&m, Ptl::High)).unwrap();
        assert_eq!(
            case_ids(&m, &set),
            id_paths(&[
                &["1", "2", "4", "11", "14", "19", "20", "21"],
                &["1", "2", "4", "11", "13", "16", "18", "20", "21"],
            ])
        );
    }

    #[test]
    fn bf_merges_candidates_that_stitch_identically() {
        let m = demo();
        let set = generate_bf(&m, &convert_atomic(&m, Ptl::High)).unwrap();
        // Four atomic requirements stitch into just two distinct candidates.
        assert_eq!(
            case_ids(&m, &set),
            id_paths(&[
                &["1", "2", "4", "11", "14", "19", "20", "21"],
                &["1", "2", "4", "11", "13", "16", "18", "20", "21"],
            ])
        );
    }

    #[test]
    fn bf_keeps_the_whole_pool_while_sc_covers_from_it() {
        // One candidate ([1,2,3]) happens to contain all three requirements;
        // brute force still emits every distinct stitched candidate, while
        // set cover selects from the same pool and stops at one case. The
        // cover can therefore never be the larger suite.
        let m = SutModel::from_json(
            r#"{
              "nodes": [
                {"id":"s","start":true},{"id":"u"},{"id":"v"},{"id":"t","end":true}
              ],
              "edges": [
                {"id":"1","source":"s","target":"u"},
                {"id":"2","source":"u","target":"v"},
                {"id":"3","source":"v","target":"t"},
                {"id":"4","source":"s","target":"v"},
                {"id":"5","source":"u","target":"t"}
              ]
            }"#,
        )
        .unwrap();
        let reqs = RequirementSet::from_json(
            &m,
            r#"{"requirements":[["s","u"],["u","v"],["v","t"]]}"#,
        )
        .unwrap();
        let bf = generate_bf(&m, &reqs).unwrap();
        assert_eq!(
            case_ids(&m, &bf),
            id_paths(&[&["1", "5"], &["4", "3"], &["1", "2", "3"]])
        );
        let sc = generate_sc(&m, &reqs).unwrap();
        assert_eq!(case_ids(&m, &sc), id_paths(&[&["1", "2", "3"]]));
    }

    #[test]
    fn sc_greedy_prefers_high_gain_candidates() {
        let m = demo();
        let set = generate_sc(&m, &convert_atomic(&m, Ptl::High)).unwrap();
        assert_eq!(
            case_ids(&m, &set),
            id_paths(&[
                &["1", "2", "4", "11", "13", "16", "18", "20", "21"],
                &["1", "2", "4", "11", "14", "19", "20", "21"],
            ])
        );
    }

    #[test]
    fn pg_chains_overlapping_requirements() {
        let m = demo();
        let set = generate_pg(&m, &convert_atomic(&m, Ptl::High)).unwrap();
        assert_eq!(
            case_ids(&m, &set),
            id_paths(&[
                &["1", "2", "4", "11", "13", "16", "18", "20", "21"],
                &["1", "2", "4", "11", "14", "19", "20", "21"],
            ])
        );
    }

    #[test]
    fn pg_leaves_unchainable_requirements_in_separate_cases() {
        let m = demo();
        let set = generate_pg(&m, &convert_sequence(&m, Ptl::High)).unwrap();
        assert_eq!(set.cases.len(), 2);
        let reqs = convert_sequence(&m, Ptl::High);
        for r in &reqs.requirements {
            assert!(set.cases.iter().any(|c| c.contains_subpath(r)));
        }
    }

    #[test]
    fn pg_covers_all_edge_pairs() {
        let m = demo();
        let reqs = edge_pair_requirements(&m);
        let set = generate_pg(&m, &reqs).unwrap();
        for r in &reqs.requirements {
            assert!(
                set.cases.iter().any(|c| c.contains_subpath(r)),
                "pair {:?} uncovered",
                r.to_ids(&m)
            );
        }
        for c in &set.cases {
            assert!(c.is_test_case(&m));
        }
        assert!(set.cases.len() < reqs.len());
    }

    #[test]
    fn requirement_generators_cover_their_requirements() {
        let m = demo();
        for conversion in [Conversion::Atomic, Conversion::Sequence] {
            for ptl in [Ptl::High, Ptl::Medium] {
                let reqs = match conversion {
                    Conversion::Atomic => convert_atomic(&m, ptl),
                    Conversion::Sequence => convert_sequence(&m, ptl),
                    Conversion::EdgePair => unreachable!(),
                };
                for set in [
                    generate_bf(&m, &reqs).unwrap(),
                    generate_sc(&m, &reqs).unwrap(),
                    generate_pg(&m, &reqs).unwrap(),
                ] {
                    for r in &reqs.requirements {
                        assert!(
                            set.cases.iter().any(|c| c.contains_subpath(r)),
                            "{conversion} {ptl}: requirement {:?} uncovered",
                            r.to_ids(&m)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn unreachable_requirements_are_reported_by_name() {
        // Node x is disconnected from the start node; node y cannot reach
        // the end node.
        let m = SutModel::from_json(
            r#"{
              "nodes": [
                {"id":"s","start":true},{"id":"x"},{"id":"y"},{"id":"z"},{"id":"e","end":true}
              ],
              "edges": [
                {"id":"1","source":"s","target":"e"},
                {"id":"2","source":"x","target":"z","priority":"high"},
                {"id":"3","source":"z","target":"e"},
                {"id":"4","source":"s","target":"y"},
                {"id":"5","source":"y","target":"y","priority":"high"}
              ]
            }"#,
        )
        .unwrap();
        let unreachable = RequirementSet::from_json(&m, r#"{"requirements":[["x","z"]]}"#).unwrap();
        assert!(matches!(
            generate_bf(&m, &unreachable),
            Err(BaselineError::TargetUnreachable { path }) if path == vec!["x", "z"]
        ));
        let dead_end = RequirementSet::from_json(&m, r#"{"requirements":[["y","y"]]}"#).unwrap();
        assert!(matches!(
            generate_sc(&m, &dead_end),
            Err(BaselineError::TargetDeadEnd { path }) if path == vec!["y", "y"]
        ));
    }

    #[test]
    fn empty_requirement_sets_yield_empty_suites() {
        let m = demo();
        let empty = RequirementSet { requirements: vec![] };
        assert!(generate_bf(&m, &empty).unwrap().cases.is_empty());
        assert!(generate_sc(&m, &empty).unwrap().cases.is_empty());
        assert!(generate_pg(&m, &empty).unwrap().cases.is_empty());
    }
}
