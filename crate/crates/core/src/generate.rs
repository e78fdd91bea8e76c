//! Seeded instance generators and a small-graph enumerator.
//!
//! All randomness comes from `ChaCha8Rng::seed_from_u64`, and every random
//! decision consumes exactly one `next_u64` in a documented order, so a
//! (spec, seed) pair pins the output graph byte for byte across runs and
//! platforms.
//!
//! Two families are provided. `barrus` builds a complete core `B` plus two
//! kinds of satellites: group `A` vertices hook onto one random core vertex
//! (with optional Bernoulli extras into the core) and group `C` vertices are
//! adjacent to the whole core (with Bernoulli edges among themselves). The
//! core is always a dominating clique. `precondition_instance` targets one
//! of the two labellers directly: it sprinkles random edges over a
//! clique-plus-anchors skeleton and then deterministically repairs the graph
//! until the targeted labeller's preconditions hold.

use std::collections::{BTreeMap, BTreeSet};

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::clique::{check_preconditions, CliqueError, DominatingClique};
use crate::graph::{edge, Edge, Graph, GraphError};

/// Cap on repair rounds; generously above the edge count of any instance
/// the repair loops can face.
const REPAIR_ROUNDS: usize = 1000;

#[derive(Debug, Error)]
pub enum GenerateError {
    #[error("group B must be non-empty")]
    EmptyCore,
    #[error("need 1 <= k <= n, got k = {k}, n = {n}")]
    BadShape { n: usize, k: usize },
    #[error("target {target} needs a clique of order at least {needed}, got {k}")]
    CliqueTooSmall { target: &'static str, needed: usize, k: usize },
    #[error("repair did not converge within {0} rounds")]
    RepairFailed(usize),
    #[error("refusing to enumerate graphs on {n} vertices; the subset space is too large")]
    EnumerationTooLarge { n: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Clique(#[from] CliqueError),
}

/// A generated graph together with the dominating clique it was built
/// around.
#[derive(Debug, Clone)]
pub struct GeneratedInstance {
    pub graph: Graph,
    pub clique: Vec<usize>,
}

/// One uniform index below `n`. The modulo bias is irrelevant here; what
/// matters is that exactly one `next_u64` is consumed.
pub(crate) fn draw_index(rng: &mut ChaCha8Rng, n: usize) -> usize {
    debug_assert!(n > 0);
    (rng.next_u64() % n as u64) as usize
}

/// One Bernoulli(`p`) decision, consuming exactly one `next_u64` whatever
/// `p` is. `p <= 0` never fires and `p >= 1` always does.
pub(crate) fn draw_bool(rng: &mut ChaCha8Rng, p: f64) -> bool {
    let x = rng.next_u64();
    if p >= 1.0 {
        return true;
    }
    (x as f64) / (u64::MAX as f64 + 1.0) < p
}

/// Shape of a `barrus` instance. Vertices are numbered group B first
/// (`0..b_size`), then A, then C.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BarrusSpec {
    /// Order of the complete core; must be positive.
    pub b_size: usize,
    /// Vertices attached to one random core vertex each.
    pub a_size: usize,
    /// Vertices attached to every core vertex.
    pub c_size: usize,
    /// Chance of each non-anchor A-to-B edge.
    pub a_edge_prob: f64,
    /// Chance of each C-to-C edge.
    pub c_edge_prob: f64,
}

/// Builds a `barrus` instance. Draw order: for each A vertex in index order,
/// first its anchor (one index draw over B), then one Bernoulli per
/// remaining core vertex in index order; then one Bernoulli per C pair in
/// lexicographic order. The core `0..b_size` is returned as the clique.
pub fn barrus(spec: &BarrusSpec, seed: u64) -> Result<GeneratedInstance, GenerateError> {
    let b = spec.b_size;
    if b == 0 {
        return Err(GenerateError::EmptyCore);
    }
    let n = b + spec.a_size + spec.c_size;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: BTreeSet<Edge> = BTreeSet::new();
    for u in 0..b {
        for v in (u + 1)..b {
            edges.insert((u, v));
        }
    }
    for v in b..(b + spec.a_size) {
        let anchor = draw_index(&mut rng, b);
        edges.insert(edge(anchor, v));
        for u in 0..b {
            if u == anchor {
                continue;
            }
            if draw_bool(&mut rng, spec.a_edge_prob) {
                edges.insert(edge(u, v));
            }
        }
    }
    for v in (b + spec.a_size)..n {
        for u in 0..b {
            edges.insert(edge(u, v));
        }
    }
    for v1 in (b + spec.a_size)..n {
        for v2 in (v1 + 1)..n {
            if draw_bool(&mut rng, spec.c_edge_prob) {
                edges.insert((v1, v2));
            }
        }
    }
    let graph = Graph::new(n, edges)?;
    let clique = (0..b).collect();
    Ok(GeneratedInstance { graph, clique })
}

/// Which labeller a `precondition_instance` must end up satisfying.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    T4,
    T5,
}

impl Target {
    fn name(self) -> &'static str {
        match self {
            Target::T4 => "t4",
            Target::T5 => "t5",
        }
    }
}

/// Shape of a `precondition_instance`: `n` vertices, the clique `0..k`,
/// and a single probability for all optional edges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecondSpec {
    pub n: usize,
    pub k: usize,
    /// Chance of each optional clique-to-outside and outside-to-outside
    /// edge.
    pub extra_edge_prob: f64,
    pub target: Target,
}

/// Builds a graph guaranteed to satisfy the targeted labeller's
/// preconditions, with the clique on `0..k`.
///
/// Draw order: one anchor index per outside vertex in index order; then one
/// Bernoulli per non-anchor clique-to-outside pair (outside vertex major,
/// clique vertex minor); then one Bernoulli per outside pair in
/// lexicographic order. Repair is fully deterministic: a `t5` shortfall
/// adds the first absent clique-to-outside edge (same pair order), then
/// the first absent outside pair, one per round; a `t4` violation removes
/// one edge per round from the highest-degree offending outside vertex,
/// preferring its highest-indexed outside neighbour and never dropping its
/// last clique neighbour.
pub fn precondition_instance(spec: &PrecondSpec, seed: u64) -> Result<GeneratedInstance, GenerateError> {
    let (n, k) = (spec.n, spec.k);
    if k == 0 || n < k {
        return Err(GenerateError::BadShape { n, k });
    }
    let needed = match spec.target {
        Target::T4 => 4,
        Target::T5 => 3,
    };
    if k < needed {
        return Err(GenerateError::CliqueTooSmall { target: spec.target.name(), needed, k });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: BTreeSet<Edge> = BTreeSet::new();
    for u in 0..k {
        for v in (u + 1)..k {
            edges.insert((u, v));
        }
    }
    let mut anchor_of = BTreeMap::new();
    for v in k..n {
        let u = draw_index(&mut rng, k);
        anchor_of.insert(v, u);
        edges.insert(edge(u, v));
    }
    for v in k..n {
        for u in 0..k {
            if u == anchor_of[&v] {
                continue;
            }
            if draw_bool(&mut rng, spec.extra_edge_prob) {
                edges.insert(edge(u, v));
            }
        }
    }
    for v1 in k..n {
        for v2 in (v1 + 1)..n {
            if draw_bool(&mut rng, spec.extra_edge_prob) {
                edges.insert((v1, v2));
            }
        }
    }

    match spec.target {
        Target::T5 => repair_to_edge_bound(&mut edges, n, k)?,
        Target::T4 => repair_to_degree_bound(&mut edges, n, k)?,
    }

    let graph = Graph::new(n, edges)?;
    let kq = DominatingClique::new(&graph, 0..k)?;
    let report = check_preconditions(&graph, &kq)?;
    let ok = match spec.target {
        Target::T4 => report.t4_ok,
        Target::T5 => report.t5_ok,
    };
    if !ok {
        return Err(GenerateError::RepairFailed(REPAIR_ROUNDS));
    }
    Ok(GeneratedInstance { graph, clique: kq.members().to_vec() })
}

/// Adds edges until `m >= 3(n-k) - 2 + k(k-1)/2`. The complete graph always
/// satisfies the bound, so the loop runs out of work before running out of
/// absent edges.
fn repair_to_edge_bound(edges: &mut BTreeSet<Edge>, n: usize, k: usize) -> Result<(), GenerateError> {
    let bound = 3 * (n as i64 - k as i64) - 2 + (k * (k - 1) / 2) as i64;
    let mut rounds = 0;
    while (edges.len() as i64) < bound {
        rounds += 1;
        if rounds > REPAIR_ROUNDS {
            return Err(GenerateError::RepairFailed(REPAIR_ROUNDS));
        }
        let absent = (k..n)
            .flat_map(|v| (0..k).map(move |u| edge(u, v)))
            .chain((k..n).flat_map(|v1| ((v1 + 1)..n).map(move |v2| (v1, v2))))
            .find(|e| !edges.contains(e));
        match absent {
            Some(e) => {
                edges.insert(e);
            }
            None => return Err(GenerateError::RepairFailed(rounds)),
        }
    }
    Ok(())
}

/// Removes edges until every outside degree is at most the minimum clique
/// degree.
fn repair_to_degree_bound(edges: &mut BTreeSet<Edge>, n: usize, k: usize) -> Result<(), GenerateError> {
    let mut rounds = 0;
    loop {
        rounds += 1;
        if rounds > REPAIR_ROUNDS {
            return Err(GenerateError::RepairFailed(REPAIR_ROUNDS));
        }
        let mut deg = vec![0usize; n];
        for &(u, v) in edges.iter() {
            deg[u] += 1;
            deg[v] += 1;
        }
        let alpha = (0..k).map(|u| deg[u]).min().expect("k >= 1");
        let mut worst: Option<usize> = None;
        for v in k..n {
            if deg[v] > alpha && worst.is_none_or(|w| deg[v] > deg[w]) {
                worst = Some(v);
            }
        }
        let Some(v) = worst else { return Ok(()) };
        let outside_neighbour = (k..n)
            .rev()
            .find(|&w| w != v && edges.contains(&edge(v, w)));
        if let Some(w) = outside_neighbour {
            edges.remove(&edge(v, w));
            continue;
        }
        let clique_neighbours: Vec<usize> = (0..k).filter(|&u| edges.contains(&edge(u, v))).collect();
        if clique_neighbours.len() < 2 {
            // d(v) = 1 <= k - 1 <= alpha, so v could not have violated.
            return Err(GenerateError::RepairFailed(rounds));
        }
        edges.remove(&edge(*clique_neighbours.last().expect("non-empty"), v));
    }
}

/// Every connected simple graph on `n` labelled vertices with at most
/// `max_edges` edges, in ascending edge-subset order. Exponential in
/// `n(n-1)/2`, so `n` is capped at 7.
pub fn enumerate_connected(n: usize, max_edges: usize) -> Result<Vec<Graph>, GenerateError> {
    if n == 0 || n > 7 {
        return Err(GenerateError::EnumerationTooLarge { n });
    }
    let pairs: Vec<Edge> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        if (mask.count_ones() as usize) > max_edges {
            continue;
        }
        let edges: Vec<Edge> = pairs
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let g = Graph::new(n, edges)?;
        if g.is_connected() {
            out.push(g);
        }
    }
    Ok(out)
}
