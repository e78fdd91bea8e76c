//! The alternating-path labeller (CLI method `t4`).
//!
//! Input is a graph with a dominating clique K of order k >= 4 in which no
//! outside vertex has degree above `alpha`, the minimum degree inside K.
//! Under those preconditions the labelling below is a bijection onto `1..=m`
//! with pairwise distinct vertex sums, and every clique sum strictly exceeds
//! every outside sum; the gap is reported as a certificate.
//!
//! Edges are split four ways and labelled in stages:
//!
//! 1. `outer` edges (both endpoints outside K) take `1..=|outer|` in
//!    ascending edge order, keeping outside sums small.
//! 2. `link` edges (K to outside, minus one reserved edge per outside
//!    vertex) are labelled along maximal paths that alternate between the
//!    two sides. Leaving K the edge takes the largest unused label of the
//!    link range, returning it takes the smallest. An outside vertex interior
//!    to a path therefore receives two labels summing to a constant, so link
//!    labels load the clique side much more heavily than the outside.
//! 3. `anchor` edges, one per outside vertex (to its lowest-indexed K
//!    neighbour), take the next labels in ascending order of the outside
//!    vertices' partial sums. This separates all outside sums.
//! 4. `clique` edges take the top labels in lexicographic position order
//!    after sorting K by partial sums, which separates the clique sums.
//!
//! Every choice the original procedure leaves open is pinned to the lowest
//! eligible vertex index, so the output is deterministic.

use std::collections::{BTreeMap, HashSet};

use thiserror::Error;

use crate::clique::{anchors, check_preconditions, CliqueError, DominatingClique, PreconditionReport};
use crate::graph::{edge, Edge, Graph};
use crate::labelling::{conflicts, vertex_sums, EdgeLabelling, LabellingError, VertexSums};

#[derive(Debug, Error)]
pub enum AlternatingError {
    #[error("preconditions not met: {}", .0.reasons.join("; "))]
    PreconditionsNotMet(PreconditionReport),
    #[error("labelling is not antimagic: {} conflicting pair(s)", .conflicts.len())]
    NotAntimagic {
        output: Box<AlternatingLabelling>,
        conflicts: Vec<(usize, usize)>,
    },
    #[error(transparent)]
    Clique(#[from] CliqueError),
    #[error(transparent)]
    Labelling(#[from] LabellingError),
    #[error("internal invariant broken: {0}")]
    Internal(String),
}

/// The four-way edge split driving the stages above.
///
/// `outer`: both endpoints outside K. `links`: K-to-outside edges except the
/// anchors. `anchors`: one edge per outside vertex, to its lowest-indexed K
/// neighbour. `clique`: edges inside K. Each list is in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternatingPartition {
    outer: Vec<Edge>,
    links: Vec<Edge>,
    anchors: Vec<Edge>,
    clique: Vec<Edge>,
    anchor_of: BTreeMap<usize, usize>,
}

impl AlternatingPartition {
    pub fn outer(&self) -> &[Edge] {
        &self.outer
    }

    pub fn links(&self) -> &[Edge] {
        &self.links
    }

    pub fn anchors(&self) -> &[Edge] {
        &self.anchors
    }

    pub fn clique(&self) -> &[Edge] {
        &self.clique
    }

    /// The clique endpoint of the reserved edge of outside vertex `v`.
    pub fn anchor_of(&self, v: usize) -> Option<usize> {
        self.anchor_of.get(&v).copied()
    }
}

/// Splits the edges of `g` four ways with respect to `kq`.
pub fn partition_edges(g: &Graph, kq: &DominatingClique) -> Result<AlternatingPartition, AlternatingError> {
    let anchor_pairs = anchors(g, kq)?;
    let anchor_of: BTreeMap<usize, usize> = anchor_pairs.iter().copied().collect();
    let anchor_set: HashSet<Edge> = anchor_pairs.iter().map(|&(v, u)| edge(v, u)).collect();
    let mut part = AlternatingPartition {
        outer: Vec::new(),
        links: Vec::new(),
        anchors: anchor_set.iter().copied().collect(),
        clique: Vec::new(),
        anchor_of,
    };
    part.anchors.sort_unstable();
    for &(u, v) in g.edges() {
        match (kq.contains(u), kq.contains(v)) {
            (false, false) => part.outer.push((u, v)),
            (true, true) => part.clique.push((u, v)),
            _ => {
                if !anchor_set.contains(&(u, v)) {
                    part.links.push((u, v));
                }
            }
        }
    }
    Ok(part)
}

/// Stepping state of the link stage. After `labelled` edges the used labels
/// are exactly the `small_used` smallest and `large_used` largest of the link
/// range, and the next label is `base + small_used + 1` (outside side) or
/// `base + q - large_used` (clique side).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AlternationState {
    pub small_used: u64,
    pub large_used: u64,
    pub labelled: u64,
    pub current: Option<usize>,
}

impl AlternationState {
    pub fn next_small(&self, base: u64) -> u64 {
        base + self.small_used + 1
    }

    pub fn next_large(&self, base: u64, q: u64) -> u64 {
        base + q - self.large_used
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum AlternationKind {
    /// First edge of the whole stage.
    Start,
    /// The path continued from its current endpoint.
    Extend,
    /// The path died; a new one starts on the same side.
    Restart,
}

/// One labelled link edge: the path stood at `from`, labelled `edge` and
/// moved to `to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct AlternationEvent {
    pub kind: AlternationKind,
    pub from: usize,
    pub to: usize,
    pub edge: Edge,
    pub label: u64,
}

/// The labelled links plus the move-by-move trace.
#[derive(Debug, Clone)]
pub struct LinkLabelling {
    pub labels: BTreeMap<Edge, u64>,
    pub trace: Vec<AlternationEvent>,
}

/// Labels the link edges along alternating maximal paths.
///
/// `labels_used` is the number of labels already consumed by earlier stages,
/// so the link range is `labels_used+1 ..= labels_used+|links|`. On the
/// clique side the path takes the largest unused label of the range, on the
/// outside side the smallest; a dead path restarts at the lowest-indexed
/// vertex of the same side that still has an unlabelled link.
pub fn label_links(
    g: &Graph,
    kq: &DominatingClique,
    part: &AlternatingPartition,
    labels_used: u64,
) -> Result<LinkLabelling, AlternatingError> {
    let q = part.links.len() as u64;
    let mut labels = BTreeMap::new();
    let mut trace = Vec::new();
    let mut pending: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for &(u, v) in &part.links {
        pending[u].push(v);
        pending[v].push(u);
    }
    for list in &mut pending {
        list.sort_unstable();
    }
    let outside = kq.outside(g);
    let first_eligible = |labels: &BTreeMap<Edge, u64>, x: usize| {
        pending[x]
            .iter()
            .copied()
            .find(|&y| !labels.contains_key(&edge(x, y)))
    };

    let mut state = AlternationState::default();
    while state.labelled < q {
        let clique_side = state.labelled % 2 == 0;
        let (from, kind) = match state.current {
            Some(x) if first_eligible(&labels, x).is_some() => (x, AlternationKind::Extend),
            _ => {
                let side: &[usize] = if clique_side { kq.members() } else { &outside };
                let x = side
                    .iter()
                    .copied()
                    .find(|&x| first_eligible(&labels, x).is_some())
                    .ok_or_else(|| {
                        AlternatingError::Internal("no eligible vertex but links remain".into())
                    })?;
                let kind = if state.labelled == 0 {
                    AlternationKind::Start
                } else {
                    AlternationKind::Restart
                };
                (x, kind)
            }
        };
        let to = first_eligible(&labels, from).expect("from was chosen eligible");
        let label = if clique_side {
            let label = state.next_large(labels_used, q);
            state.large_used += 1;
            label
        } else {
            let label = state.next_small(labels_used);
            state.small_used += 1;
            label
        };
        labels.insert(edge(from, to), label);
        trace.push(AlternationEvent { kind, from, to, edge: edge(from, to), label });
        state.labelled += 1;
        state.current = Some(to);
    }
    if state.small_used != q / 2 || state.large_used != q - q / 2 {
        return Err(AlternatingError::Internal(format!(
            "link stage used {} small and {} large labels for q = {q}",
            state.small_used, state.large_used
        )));
    }
    Ok(LinkLabelling { labels, trace })
}

/// Witness that every clique sum strictly exceeds every outside sum.
///
/// With no outside vertices `max_outside_sum` is 0; with an empty graph both
/// fields are 0. `gamma = min_clique_sum - max_outside_sum` is positive
/// whenever the preconditions held.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct SeparationCertificate {
    pub min_clique_sum: u64,
    pub max_outside_sum: u64,
    pub gamma: i64,
}

/// A finished run of the alternating labeller.
#[derive(Debug, Clone)]
pub struct AlternatingLabelling {
    pub labelling: EdgeLabelling,
    pub sums: VertexSums,
    pub certificate: SeparationCertificate,
    pub partition: AlternatingPartition,
    pub trace: Vec<AlternationEvent>,
    /// Outside vertices in the order their anchors were labelled.
    pub outside_order: Vec<usize>,
    /// Clique members in the order used for the final stage.
    pub clique_order: Vec<usize>,
}

/// Runs the full alternating labeller.
///
/// With `strict` set the preconditions must hold, and the result is then
/// guaranteed antimagic with a positive certificate gap. Without `strict`
/// the stages run on any dominating-clique instance; a result that fails
/// verification is returned as [`AlternatingError::NotAntimagic`] carrying
/// the attempted labelling, never as a silent success.
pub fn label(
    g: &Graph,
    kq: &DominatingClique,
    strict: bool,
) -> Result<AlternatingLabelling, AlternatingError> {
    let report = check_preconditions(g, kq)?;
    if strict && !report.t4_ok {
        return Err(AlternatingError::PreconditionsNotMet(report));
    }
    let part = partition_edges(g, kq)?;
    let mut labels: BTreeMap<Edge, u64> = BTreeMap::new();
    let mut sums = vec![0u64; g.n()];
    let mut next = 1u64;

    // Stage 1: outer edges ascending.
    for &(u, v) in &part.outer {
        labels.insert((u, v), next);
        sums[u] += next;
        sums[v] += next;
        next += 1;
    }

    // Stage 2: alternating paths over the links.
    let link_run = label_links(g, kq, &part, labels.len() as u64)?;
    for (&e, &label) in &link_run.labels {
        labels.insert(e, label);
        sums[e.0] += label;
        sums[e.1] += label;
    }
    next += part.links.len() as u64;

    // Stage 3: anchors in ascending order of outside partial sums.
    let mut outside_order = kq.outside(g);
    outside_order.sort_by_key(|&v| (sums[v], v));
    for &v in &outside_order {
        let u = part.anchor_of(v).expect("every outside vertex has an anchor");
        labels.insert(edge(u, v), next);
        sums[u] += next;
        sums[v] += next;
        next += 1;
    }

    // Stage 4: clique edges in lexicographic position order.
    let mut clique_order = kq.members().to_vec();
    clique_order.sort_by_key(|&u| (sums[u], u));
    for a in 0..clique_order.len() {
        for b in (a + 1)..clique_order.len() {
            let e = edge(clique_order[a], clique_order[b]);
            labels.insert(e, next);
            sums[e.0] += next;
            sums[e.1] += next;
            next += 1;
        }
    }

    if next != g.m() as u64 + 1 {
        return Err(AlternatingError::Internal(format!(
            "assigned {} labels for m = {}",
            next - 1,
            g.m()
        )));
    }

    let labelling = EdgeLabelling::from_pairs(g, labels, true)?;
    if !labelling.is_bijection_on(g) {
        return Err(AlternatingError::Internal("labels are not a bijection onto 1..=m".into()));
    }
    let sums = vertex_sums(g, &labelling, false)?;

    let min_clique_sum = kq.members().iter().map(|&u| sums.get(u)).min().unwrap_or(0);
    let max_outside_sum = outside_order.iter().map(|&v| sums.get(v)).max().unwrap_or(0);
    let certificate = SeparationCertificate {
        min_clique_sum,
        max_outside_sum,
        gamma: min_clique_sum as i64 - max_outside_sum as i64,
    };

    let output = AlternatingLabelling {
        labelling,
        sums,
        certificate,
        partition: part,
        trace: link_run.trace,
        outside_order,
        clique_order,
    };
    let clashes = conflicts(g, &output.labelling)?;
    if clashes.is_empty() {
        if report.t4_ok && certificate.gamma <= 0 {
            return Err(AlternatingError::Internal(format!(
                "preconditions held but the separation gap is {}",
                certificate.gamma
            )));
        }
        Ok(output)
    } else if report.t4_ok {
        Err(AlternatingError::Internal(format!(
            "preconditions held but {} vertex pair(s) collide",
            clashes.len()
        )))
    } else {
        Err(AlternatingError::NotAntimagic { output: Box::new(output), conflicts: clashes })
    }
}
