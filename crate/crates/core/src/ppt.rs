//! The prioritized suite generator.
//!
//! Given the prioritized targets of a model (see
//! [`select_relevant`](crate::requirements::select_relevant)), the generator
//! works in two phases:
//!
//! 1. [`enumerate_e2e_candidates`] collects every start-to-end walk that
//!    contains at least one target, bounding how often a single edge may
//!    repeat so cyclic models stay finite.
//! 2. [`create_test_cases`] greedily drains an [`IndexedTargetTable`]: each
//!    round keeps the candidate covering the most remaining targets
//!    ([`select_best_e2e`]), strikes the targets it covers
//!    ([`remove_used_targets`]), and drops candidates that no longer cover
//!    anything ([`prune_candidates`]).
//!
//! Candidate pools are kept in shortlex order, so score ties always resolve
//! to the shortest, canonically smallest candidate — which is also what makes
//! repeated runs byte-identical. [`generate_ppt`] wires the phases together.

use std::collections::{BTreeMap, HashMap};

use crate::model::{Algorithm, EdgeIdx, NodeIdx, Path, Provenance, Ptl, SutModel, TestSet};
use crate::requirements::{enumerate_tdl_paths, select_relevant, TargetPathSet};

/// Errors raised by the prioritized generator.
#[derive(Debug, thiserror::Error)]
pub enum PptError {
    /// Some target cannot be embedded in any start-to-end walk under the
    /// edge repeat bound. Lists every such target as an edge id sequence.
    #[error(
        "no end-to-end candidate covers {} target path(s) under edge repeat bound {bound}: {}",
        .targets.len(),
        .targets.iter().map(|t| t.join("-")).collect::<Vec<_>>().join(", ")
    )]
    InfeasibleTargets {
        targets: Vec<Vec<String>>,
        bound: usize,
    },
    /// Every pooled candidate scored zero against the remaining targets.
    /// Pruning keeps this from happening; seeing it means a caller bypassed
    /// the documented pipeline.
    #[error("no pooled candidate covers any remaining target")]
    NoCoveringCandidate,
}

/// Start-to-end candidate paths in shortlex order. Every member contained at
/// least one target when it was pooled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidatePool {
    paths: Vec<Path>,
}

impl CandidatePool {
    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }
}

/// Remaining targets, bucketed by their second node (the node the first edge
/// enters). The bucket structure mirrors how targets are struck out: whole
/// buckets tend to empty together as covering candidates are selected.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IndexedTargetTable {
    buckets: BTreeMap<NodeIdx, Vec<Path>>,
}

impl IndexedTargetTable {
    pub fn is_empty(&self) -> bool {
        self.buckets.is_empty()
    }

    /// Total number of targets across buckets.
    pub fn len(&self) -> usize {
        self.buckets.values().map(Vec::len).sum()
    }

    pub fn buckets(&self) -> &BTreeMap<NodeIdx, Vec<Path>> {
        &self.buckets
    }

    fn targets(&self) -> impl Iterator<Item = &Path> {
        self.buckets.values().flatten()
    }
}

/// Enumerates every start-to-end walk that contains at least one target,
/// where no edge occurs more than `max_edge_repeats` times per walk. Walks
/// are returned in shortlex order. Fails if some target fits in no walk
/// under the bound — raising the bound is the usual fix for loop-heavy
/// models.
///
/// # Panics
///
/// Panics if `targets` is empty, contains an empty path, or the bound is
/// zero.
pub fn enumerate_e2e_candidates(
    model: &SutModel,
    targets: &TargetPathSet,
    max_edge_repeats: usize,
) -> Result<CandidatePool, PptError> {
    assert!(!targets.is_empty(), "candidate enumeration needs targets");
    assert!(max_edge_repeats >= 1, "edge repeat bound must be at least 1");
    assert!(
        targets.paths.iter().all(|t| !t.is_empty()),
        "targets must be nonempty paths"
    );

    // Group targets by final edge so that walk extension can count, in O(1)
    // amortized, how many target occurrences end at the new position.
    let mut by_last_edge: HashMap<EdgeIdx, Vec<&Path>> = HashMap::new();
    for t in &targets.paths {
        by_last_edge
            .entry(*t.edges().last().expect("nonempty target"))
            .or_default()
            .push(t);
    }

    let mut walker = Walker {
        model,
        bound: max_edge_repeats,
        by_last_edge: &by_last_edge,
        edge_stack: Vec::new(),
        match_stack: Vec::new(),
        matches_total: 0,
        usage: vec![0usize; model.edge_count()],
        found: Vec::new(),
    };
    walker.visit(model.start());

    let mut paths = walker.found;
    paths.sort_by(|a, b| a.shortlex(b));

    let uncovered: Vec<Vec<String>> = targets
        .paths
        .iter()
        .filter(|t| !paths.iter().any(|c| c.contains_subpath(t)))
        .map(|t| t.to_ids(model))
        .collect();
    if !uncovered.is_empty() {
        return Err(PptError::InfeasibleTargets {
            targets: uncovered,
            bound: max_edge_repeats,
        });
    }
    Ok(CandidatePool { paths })
}

struct Walker<'a> {
    model: &'a SutModel,
    bound: usize,
    by_last_edge: &'a HashMap<EdgeIdx, Vec<&'a Path>>,
    edge_stack: Vec<EdgeIdx>,
    /// For each walk position, how many target occurrences end there; kept
    /// so backtracking can undo `matches_total` exactly.
    match_stack: Vec<u32>,
    matches_total: u64,
    usage: Vec<usize>,
    found: Vec<Path>,
}

impl Walker<'_> {
    fn visit(&mut self, node: NodeIdx) {
        if self.model.is_end(node) && !self.edge_stack.is_empty() && self.matches_total > 0 {
            self.found.push(Path::new(self.edge_stack.clone()));
        }
        for &e in self.model.out_edges(node) {
            if self.usage[e.as_usize()] >= self.bound {
                continue;
            }
            self.usage[e.as_usize()] += 1;
            self.edge_stack.push(e);
            let ended_here = self.matches_ending_at_top(e);
            self.match_stack.push(ended_here);
            self.matches_total += u64::from(ended_here);

            self.visit(self.model.edge(e).target);

            let undone = self.match_stack.pop().expect("match stack in sync");
            self.matches_total -= u64::from(undone);
            self.edge_stack.pop();
            self.usage[e.as_usize()] -= 1;
        }
    }

    fn matches_ending_at_top(&self, last_edge: EdgeIdx) -> u32 {
        let Some(candidates) = self.by_last_edge.get(&last_edge) else {
            return 0;
        };
        let len = self.edge_stack.len();
        candidates
            .iter()
            .filter(|t| {
                t.len() <= len && self.edge_stack[len - t.len()..] == *t.edges()
            })
            .count() as u32
    }
}

/// Buckets targets by second node. Targets keep their shortlex order within
/// each bucket.
pub fn build_ptab(model: &SutModel, targets: &TargetPathSet) -> IndexedTargetTable {
    let mut buckets: BTreeMap<NodeIdx, Vec<Path>> = BTreeMap::new();
    for t in &targets.paths {
        let first = t.first_edge().expect("targets are nonempty");
        buckets
            .entry(model.edge(first).target)
            .or_default()
            .push(t.clone());
    }
    IndexedTargetTable { buckets }
}

fn score(candidate: &Path, table: &IndexedTargetTable) -> usize {
    table
        .targets()
        .filter(|t| candidate.contains_subpath(t))
        .count()
}

/// Picks the pooled candidate covering the most remaining targets. Ties go
/// to the earlier candidate in the pool's shortlex order. Fails if nothing
/// scores above zero.
pub fn select_best_e2e(
    table: &IndexedTargetTable,
    pool: &CandidatePool,
) -> Result<Path, PptError> {
    let mut best: Option<(&Path, usize)> = None;
    for candidate in &pool.paths {
        let s = score(candidate, table);
        if s > best.map_or(0, |(_, bs)| bs) {
            best = Some((candidate, s));
        }
    }
    match best {
        Some((p, _)) => Ok(p.clone()),
        None => Err(PptError::NoCoveringCandidate),
    }
}

/// Strikes every target contained in the chosen path; buckets that empty out
/// disappear.
pub fn remove_used_targets(table: &IndexedTargetTable, chosen: &Path) -> IndexedTargetTable {
    let mut buckets = BTreeMap::new();
    for (&node, targets) in &table.buckets {
        let remaining: Vec<Path> = targets
            .iter()
            .filter(|t| !chosen.contains_subpath(t))
            .cloned()
            .collect();
        if !remaining.is_empty() {
            buckets.insert(node, remaining);
        }
    }
    IndexedTargetTable { buckets }
}

/// Drops pooled candidates that cover none of the remaining targets. With an
/// empty table everything scores zero, so the pool empties too.
pub fn prune_candidates(table: &IndexedTargetTable, pool: &CandidatePool) -> CandidatePool {
    CandidatePool {
        paths: pool
            .paths
            .iter()
            .filter(|c| score(c, table) > 0)
            .cloned()
            .collect(),
    }
}

/// Greedy cover loop: selects the best candidate, strikes covered targets,
/// prunes the pool, and repeats until no targets remain. Test cases come out
/// in selection order.
pub fn create_test_cases(
    mut table: IndexedTargetTable,
    mut pool: CandidatePool,
) -> Result<Vec<Path>, PptError> {
    let mut cases = Vec::new();
    while !table.is_empty() {
        let best = select_best_e2e(&table, &pool)?;
        table = remove_used_targets(&table, &best);
        pool = prune_candidates(&table, &pool);
        cases.push(best);
    }
    Ok(cases)
}

/// Generates a prioritized suite: every target of the given depth and
/// priority level ends up covered by some test case, using as few and as
/// short cases as the greedy cover finds. `max_edge_repeats` bounds edge
/// repetition in candidate walks and defaults to `tdl`.
///
/// The model must validate cleanly. A model with no edges in the level's
/// priority class yields an empty suite; callers that consider that
/// surprising should warn their users.
pub fn generate_ppt(
    model: &SutModel,
    tdl: usize,
    ptl: Ptl,
    max_edge_repeats: Option<usize>,
) -> Result<TestSet, PptError> {
    let provenance = Provenance {
        algorithm: Algorithm::Ppt,
        tdl: Some(tdl),
        ptl: Some(ptl),
        conversion: None,
        requirements: None,
    };
    let all = enumerate_tdl_paths(model, tdl);
    let targets = select_relevant(model, &all, ptl);
    if targets.is_empty() {
        return Ok(TestSet::new(Vec::new(), provenance));
    }
    let bound = max_edge_repeats.unwrap_or(tdl);
    let pool = enumerate_e2e_candidates(model, &targets, bound)?;
    let table = build_ptab(model, &targets);
    let cases = create_test_cases(table, pool)?;
    Ok(TestSet::new(cases, provenance))
}
