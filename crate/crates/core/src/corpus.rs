//! Seeded synthetic workflow models for benchmarking.
//!
//! Each instance is grown in layers: a chain-biased random arborescence
//! rooted at the start node (reachability by construction), a forward edge
//! for every would-be dead end (co-reachability by construction), extra
//! forward edges within a small positional window, and finally back edges
//! to depth-first tree ancestors. Back edges are the only source of cycles,
//! so the instance's loop count — the number of back edges seen by a
//! depth-first traversal from the start node in canonical edge order —
//! equals the number added, exactly.
//!
//! Extra forward edges are admitted only while the total number of distinct
//! start-to-end paths stays under a budget that shrinks with the loop
//! count. This keeps exhaustive candidate enumeration cheap on every
//! instance without restricting node or edge counts.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::model::{EdgeDef, NodeDef, Priority, SutModel};

/// Ranges are inclusive `[min, max]` pairs. `degree` bounds the average
/// degree `2·|edges| / |nodes|`; the edge count of an instance is drawn from
/// the intersection of `edges` and the range the degree bounds imply for its
/// node count. Priority class sizes are `fraction · |edges|`, rounded, and
/// at least 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusSpec {
    pub instances: usize,
    pub nodes: (usize, usize),
    pub edges: (usize, usize),
    pub loops: (usize, usize),
    pub degree: (f64, f64),
    pub high_fraction: f64,
    pub medium_fraction: f64,
    pub seed: u64,
}

impl CorpusSpec {
    /// The 59-instance benchmark corpus used by the experiment harness.
    pub fn benchmark_default() -> Self {
        CorpusSpec {
            instances: 59,
            nodes: (6, 61),
            edges: (9, 97),
            loops: (0, 10),
            degree: (2.10, 3.58),
            high_fraction: 0.21,
            medium_fraction: 0.15,
            seed: 23,
        }
    }

    fn check(&self) -> Result<(), CorpusError> {
        let err = |msg: &str| Err(CorpusError::InvalidSpec(msg.to_string()));
        if self.nodes.0 < 3 {
            return err("instances need at least 3 nodes");
        }
        if self.nodes.0 > self.nodes.1 || self.edges.0 > self.edges.1 || self.loops.0 > self.loops.1
        {
            return err("range minimum exceeds maximum");
        }
        if !(self.degree.0 > 0.0 && self.degree.0 <= self.degree.1) {
            return err("degree range must be positive and ordered");
        }
        if !(0.0..=1.0).contains(&self.high_fraction)
            || !(0.0..=1.0).contains(&self.medium_fraction)
            || self.high_fraction + self.medium_fraction > 1.0
        {
            return err("priority fractions must lie in [0, 1] and sum to at most 1");
        }
        Ok(())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("corpus spec invalid: {0}")]
    InvalidSpec(String),
    #[error("constraints infeasible for instance {instance}: {reason}")]
    Infeasible { instance: String, reason: String },
}

const MAX_ATTEMPTS: usize = 100;
/// Extra forward edges and dead-end fixes jump at most this many positions.
const FORWARD_WINDOW: usize = 5;
/// Probability that a node's tree parent is its immediate predecessor.
const CHAIN_BIAS: f64 = 0.75;
/// Bound on `paths · 3^loops`, an optimistic estimate of the bounded-walk
/// space candidate enumeration explores at depth 2, used to pre-filter
/// extra-edge placements.
const PATH_BUDGET_BASE: u128 = 100_000;
/// Hard bound on the instance's actual bounded-walk space: the number of
/// traversal steps a depth-first enumeration of all walks from the start
/// node takes when every edge may repeat twice. Instances beyond the cap
/// are rejected and rebuilt.
const WALK_STEP_CAP: usize = 300_000;

/// Generates `spec.instances` models, deterministically from `spec.seed`,
/// paired with their zero-padded instance ids (`m01`, `m02`, ...).
pub fn generate_corpus(spec: &CorpusSpec) -> Result<Vec<(String, SutModel)>, CorpusError> {
    spec.check()?;
    let mut master = ChaCha8Rng::seed_from_u64(spec.seed);
    let width = spec.instances.to_string().len();
    let mut out = Vec::with_capacity(spec.instances);
    for i in 0..spec.instances {
        let child_seed: u64 = master.random();
        let id = format!("m{:0width$}", i + 1);
        let mut rng = ChaCha8Rng::seed_from_u64(child_seed);
        let mut last_reason = String::new();
        let mut model = None;
        for _ in 0..MAX_ATTEMPTS {
            match try_build(spec, &mut rng) {
                Ok(m) => {
                    model = Some(m);
                    break;
                }
                Err(reason) => last_reason = reason,
            }
        }
        match model {
            Some(m) => out.push((id, m)),
            None => {
                return Err(CorpusError::Infeasible {
                    instance: id,
                    reason: last_reason,
                })
            }
        }
    }
    Ok(out)
}

fn try_build(spec: &CorpusSpec, rng: &mut ChaCha8Rng) -> Result<SutModel, String> {
    let n = rng.random_range(spec.nodes.0..=spec.nodes.1);

    // Edge count satisfying both the edge range and the degree range.
    let lo = ((spec.degree.0 * n as f64) / 2.0).ceil() as usize;
    let hi = ((spec.degree.1 * n as f64) / 2.0).floor() as usize;
    let (lo, hi) = (lo.max(spec.edges.0), hi.min(spec.edges.1));
    if lo > hi {
        return Err(format!(
            "no edge count satisfies both the edge range and the degree range for {n} nodes"
        ));
    }
    let a = rng.random_range(lo..=hi);

    // Arborescence over positions 0 (start) .. n-1 (end); every tree edge
    // points forward. The end node's parent is never the start node, so no
    // instance contains a direct start-to-end edge.
    let mut fwd: BTreeSet<(usize, usize)> = BTreeSet::new();
    for p in 1..n {
        let parent = if p == 1 {
            0
        } else {
            let min_parent = if p == n - 1 { 1 } else { 0 };
            if rng.random_bool(CHAIN_BIAS) {
                p - 1
            } else {
                rng.random_range(min_parent..p)
            }
        };
        fwd.insert((parent, p));
    }

    // Every non-end node needs a way forward; the start node always has a
    // tree child, so a fix never creates a start-to-end edge.
    let mut outdeg = vec![0usize; n];
    for &(u, _) in &fwd {
        outdeg[u] += 1;
    }
    let stuck: Vec<usize> = (1..n - 1).filter(|&u| outdeg[u] == 0).collect();
    for u in stuck {
        let v = rng.random_range(u + 1..=(u + FORWARD_WINDOW).min(n - 1));
        fwd.insert((u, v));
    }

    let used = fwd.len();
    if used + spec.loops.0 > a {
        return Err(format!(
            "{n} nodes need {used} structural edges plus {} loops but only {a} edges are available",
            spec.loops.0
        ));
    }
    let loops = rng.random_range(spec.loops.0..=spec.loops.1.min(a - used));
    let extras = a - used - loops;

    // Place the remaining forward edges while the walk-space estimate stays
    // within budget.
    let path_budget = (PATH_BUDGET_BASE / 3u128.saturating_pow(loops as u32)).max(1);
    let mut total = path_count(&fwd, n);
    if total > path_budget {
        return Err(format!(
            "tree skeleton already has {total} start-to-end paths, over the {path_budget} budget"
        ));
    }
    let mut placed = 0;
    let mut stalls = 0;
    while placed < extras {
        if stalls > 400 {
            return Err("could not place extra forward edges within the walk budget".to_string());
        }
        let u = rng.random_range(0..n - 1);
        let v = rng.random_range(u + 1..=(u + FORWARD_WINDOW).min(n - 1));
        if (u == 0 && v == n - 1) || fwd.contains(&(u, v)) {
            stalls += 1;
            continue;
        }
        fwd.insert((u, v));
        let candidate_total = path_count(&fwd, n);
        if candidate_total > path_budget {
            fwd.remove(&(u, v));
            stalls += 1;
            continue;
        }
        total = candidate_total;
        placed += 1;
        stalls = 0;
    }
    debug_assert!(total <= path_budget);

    // Back edges to proper depth-first tree ancestors. Forward edges always
    // increase position, so they can never be back edges themselves, and an
    // edge into a tree ancestor never changes the tree a canonical
    // depth-first traversal discovers: each such target is already on the
    // stack when its source is explored. The traversal therefore counts
    // exactly these edges as loops.
    //
    // Only ancestors with a unique forward return path qualify: each such
    // loop multiplies the bounded-walk space by at most 3 (taken zero, one,
    // or two times), which the path budget above accounts for.
    let parent = dfs_tree(&fwd, n);
    let mut slots: Vec<(usize, usize)> = Vec::new();
    for u in 1..n {
        let mut anc = parent[u];
        loop {
            if forward_paths_between(&fwd, n, anc, u) == 1 {
                slots.push((u, anc));
            }
            if anc == 0 {
                break;
            }
            anc = parent[anc];
        }
    }
    if slots.len() < loops {
        return Err(format!(
            "tree too shallow for {loops} back edges ({} ancestor slots)",
            slots.len()
        ));
    }
    let mut back: Vec<(usize, usize)> = rand::seq::index::sample(rng, slots.len(), loops)
        .into_iter()
        .map(|i| slots[i])
        .collect();
    back.sort_unstable();

    // Estimates aside, enforce the walk-space cap on the real graph.
    let mut adjacency = vec![Vec::new(); n];
    for (i, &(u, v)) in fwd.iter().chain(back.iter()).enumerate() {
        adjacency[u].push((i, v));
    }
    if bounded_walk_steps(&adjacency, fwd.len() + back.len(), 2, WALK_STEP_CAP).is_none() {
        return Err("bounded-walk space exceeds the enumeration cap".to_string());
    }

    // Canonical ids: forward edges by position, then back edges.
    let node_id = |p: usize| format!("n{}", p + 1);
    let mut edge_defs: Vec<EdgeDef> = Vec::with_capacity(a);
    for &(u, v) in fwd.iter().chain(back.iter()) {
        edge_defs.push(EdgeDef {
            id: format!("e{}", edge_defs.len() + 1),
            source: node_id(u),
            target: node_id(v),
            priority: Priority::Low,
        });
    }

    // Priority classes: sizes from the fractions, at least one edge each,
    // drawn without replacement.
    let n_high = ((spec.high_fraction * a as f64).round() as usize).clamp(1, a);
    let n_medium = ((spec.medium_fraction * a as f64).round() as usize).clamp(1, a - n_high);
    for i in rand::seq::index::sample(rng, a, n_high) {
        edge_defs[i].priority = Priority::High;
    }
    let low_indices: Vec<usize> = (0..a)
        .filter(|&i| edge_defs[i].priority == Priority::Low)
        .collect();
    for i in rand::seq::index::sample(rng, low_indices.len(), n_medium) {
        edge_defs[low_indices[i]].priority = Priority::Medium;
    }

    let node_defs: Vec<NodeDef> = (0..n)
        .map(|p| NodeDef {
            id: node_id(p),
            start: p == 0,
            end: p == n - 1,
        })
        .collect();
    let model = SutModel::from_parts(node_defs, edge_defs)
        .map_err(|e| format!("construction produced an invalid model: {e}"))?;
    if !model.validate().is_empty() {
        return Err("construction produced an unreachable node".to_string());
    }
    Ok(model)
}

/// Number of distinct start-to-end paths in the forward (acyclic) graph,
/// saturating.
fn path_count(fwd: &BTreeSet<(usize, usize)>, n: usize) -> u128 {
    forward_paths_between(fwd, n, 0, n - 1)
}

/// Number of distinct forward paths from position `from` to position `to`,
/// saturating.
fn forward_paths_between(fwd: &BTreeSet<(usize, usize)>, n: usize, from: usize, to: usize) -> u128 {
    let mut count = vec![0u128; n];
    count[from] = 1;
    // BTreeSet iteration is ordered by source position, so every edge is
    // relaxed after its source's count is final.
    for &(u, v) in fwd.range((from, 0)..) {
        count[v] = count[v].saturating_add(count[u]);
    }
    count[to]
}

/// Counts the steps a depth-first enumeration of all walks from position 0
/// takes when every edge may be used at most `bound` times, stopping at
/// `cap`. Returns `None` when the cap is exceeded. This mirrors the
/// traversal done by exhaustive candidate enumeration, so it bounds that
/// enumeration's cost directly.
fn bounded_walk_steps(
    adjacency: &[Vec<(usize, usize)>],
    edge_count: usize,
    bound: u8,
    cap: usize,
) -> Option<usize> {
    fn rec(
        adjacency: &[Vec<(usize, usize)>],
        u: usize,
        usage: &mut [u8],
        bound: u8,
        steps: &mut usize,
        cap: usize,
    ) -> bool {
        for &(e, v) in &adjacency[u] {
            if usage[e] == bound {
                continue;
            }
            *steps += 1;
            if *steps > cap {
                return false;
            }
            usage[e] += 1;
            if !rec(adjacency, v, usage, bound, steps, cap) {
                return false;
            }
            usage[e] -= 1;
        }
        true
    }
    let mut usage = vec![0u8; edge_count];
    let mut steps = 0;
    rec(adjacency, 0, &mut usage, bound, &mut steps, cap).then_some(steps)
}

/// Parent of each position in the depth-first tree of the forward graph,
/// exploring neighbors in ascending position (canonical) order. Position 0
/// is the root and its parent entry is unused.
fn dfs_tree(fwd: &BTreeSet<(usize, usize)>, n: usize) -> Vec<usize> {
    let mut out = vec![Vec::new(); n];
    for &(u, v) in fwd {
        out[u].push(v);
    }
    let mut parent = vec![0usize; n];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![(0usize, 0usize)];
    while let Some(top) = stack.last_mut() {
        let u = top.0;
        if top.1 < out[u].len() {
            let v = out[u][top.1];
            top.1 += 1;
            if !seen[v] {
                seen[v] = true;
                parent[v] = u;
                stack.push((v, 0));
            }
        } else {
            stack.pop();
        }
    }
    parent
}

/// Loop count of a model: back edges with respect to a depth-first
/// traversal from the start node in canonical edge order, i.e. edges whose
/// target is still on the traversal stack when the edge is examined.
pub fn count_back_edges(model: &SutModel) -> usize {
    let n = model.node_count();
    let mut state = vec![0u8; n]; // 0 = white, 1 = gray, 2 = black
    let start = model.start();
    state[start.as_usize()] = 1;
    let mut stack = vec![(start, 0usize)];
    let mut back = 0;
    while let Some(top) = stack.last_mut() {
        let u = top.0;
        let edges = model.out_edges(u);
        if top.1 < edges.len() {
            let e = edges[top.1];
            top.1 += 1;
            let v = model.edge(e).target;
            match state[v.as_usize()] {
                0 => {
                    state[v.as_usize()] = 1;
                    stack.push((v, 0));
                }
                1 => back += 1,
                _ => {}
            }
        } else {
            state[u.as_usize()] = 2;
            stack.pop();
        }
    }
    back
}
