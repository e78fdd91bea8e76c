//! The spaced-pool labeller (CLI method `t5`).
//!
//! Input is a graph with a dominating clique K of order k >= 3 and enough
//! edges: `m >= 3(n-k) - 2 + k(k-1)/2`. The labeller may spend up to three
//! labels above `m` (slack `C <= 3`), at most one of which is actually used,
//! and always produces pairwise distinct vertex sums.
//!
//! Labels are drawn from three pools carved out of `1..=m`:
//!
//! * `anchor`: the arithmetic run 1, 4, 7, ... with one label per outside
//!   vertex. Consecutive anchor labels differ by 3, which keeps the outside
//!   sums at least 3 apart once they are dealt in ascending sum order.
//! * `clique`: the top `k(k-1)/2` labels, one per clique edge. The edge-count
//!   bound makes this pool sit strictly above the anchor pool.
//! * `bulk`: everything else, spent on the remaining edges in ascending
//!   order.
//!
//! After the three dealing stages the only possible collisions pit a clique
//! vertex against an outside vertex. A first pass walks the clique in sum
//! order and repairs each collision at the k-2 smallest positions by swapping
//! one pair of consecutively labelled clique edges, nudging the colliding sum
//! up by 1 and two later clique sums down by 1. A second pass repairs the two
//! largest positions, if still needed, by relabelling the last clique edge
//! with the smallest working label among `m+1, m+2, m+3`. For k = 3 the first
//! pass is replaced by a bump of the two heaviest clique edges. Outside sums
//! are never touched by either pass.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::clique::{anchors, check_preconditions, CliqueError, DominatingClique, PreconditionReport};
use crate::graph::{edge, Edge, Graph};
use crate::labelling::{conflicts, vertex_sums, EdgeLabelling, LabellingError, VertexSums};

#[derive(Debug, Error)]
pub enum SpacedError {
    #[error("preconditions not met: {}", .0.reasons.join("; "))]
    PreconditionsNotMet(PreconditionReport),
    #[error("label pools need k >= 3, n >= k and m >= 3(n-k) - 2 + k(k-1)/2, got n = {n}, k = {k}, m = {m}")]
    PoolsInfeasible { n: usize, k: usize, m: usize },
    #[error("pass needs a clique of order at least {needed}, got {got}")]
    CliqueTooSmall { needed: usize, got: usize },
    #[error(transparent)]
    Clique(#[from] CliqueError),
    #[error(transparent)]
    Labelling(#[from] LabellingError),
    #[error("internal invariant broken: {0}")]
    Internal(String),
}

/// The three-way edge split: `clique` edges inside K, one `anchor` edge per
/// outside vertex (to its lowest-indexed K neighbour), and the `bulk`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpacedPartition {
    bulk: Vec<Edge>,
    anchors: Vec<Edge>,
    clique: Vec<Edge>,
    anchor_of: BTreeMap<usize, usize>,
}

impl SpacedPartition {
    pub fn bulk(&self) -> &[Edge] {
        &self.bulk
    }

    pub fn anchors(&self) -> &[Edge] {
        &self.anchors
    }

    pub fn clique(&self) -> &[Edge] {
        &self.clique
    }

    pub fn anchor_of(&self, v: usize) -> Option<usize> {
        self.anchor_of.get(&v).copied()
    }
}

/// Splits the edges of `g` three ways with respect to `kq`.
pub fn partition_edges(g: &Graph, kq: &DominatingClique) -> Result<SpacedPartition, SpacedError> {
    let anchor_pairs = anchors(g, kq)?;
    let anchor_of: BTreeMap<usize, usize> = anchor_pairs.iter().copied().collect();
    let anchor_set: std::collections::HashSet<Edge> =
        anchor_pairs.iter().map(|&(v, u)| edge(v, u)).collect();
    let mut part = SpacedPartition {
        bulk: Vec::new(),
        anchors: anchor_set.iter().copied().collect(),
        clique: Vec::new(),
        anchor_of,
    };
    part.anchors.sort_unstable();
    for &(u, v) in g.edges() {
        if kq.contains(u) && kq.contains(v) {
            part.clique.push((u, v));
        } else if !anchor_set.contains(&(u, v)) {
            part.bulk.push((u, v));
        }
    }
    Ok(part)
}

/// The three label pools, each in ascending order.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct LabelPools {
    pub bulk: Vec<u64>,
    pub anchor: Vec<u64>,
    pub clique: Vec<u64>,
}

/// Carves `1..=m` into the three pools for a graph with `n` vertices and a
/// clique of order `k`. Fails if the pools would collide, i.e. exactly when
/// the edge-count bound is violated.
pub fn build_label_pools(n: usize, k: usize, m: usize) -> Result<LabelPools, SpacedError> {
    let infeasible = SpacedError::PoolsInfeasible { n, k, m };
    if k < 3 || n < k {
        return Err(infeasible);
    }
    let clique_count = k * (k - 1) / 2;
    let needed = 3 * (n as i64 - k as i64) - 2 + clique_count as i64;
    if (m as i64) < needed || m < clique_count {
        return Err(infeasible);
    }
    let anchor: Vec<u64> = (0..n - k).map(|i| 1 + 3 * i as u64).collect();
    let clique: Vec<u64> = ((m - clique_count + 1)..=m).map(|l| l as u64).collect();
    let mut taken = vec![false; m + 1];
    for &l in anchor.iter().chain(&clique) {
        taken[l as usize] = true;
    }
    let bulk: Vec<u64> = (1..=m as u64).filter(|&l| !taken[l as usize]).collect();
    Ok(LabelPools { bulk, anchor, clique })
}

/// State after the three dealing stages, before any post-processing.
#[derive(Debug, Clone)]
pub struct SpacedSteps {
    pub labels: BTreeMap<Edge, u64>,
    /// Vertex sums at this point; post-processing starts from these.
    pub sums: VertexSums,
    /// Outside vertices in the order their anchors were labelled.
    pub outside_order: Vec<usize>,
    /// Clique members sorted by partial sum; the position order drives both
    /// the clique-edge labels and the post-processing passes.
    pub clique_order: Vec<usize>,
    pub pools: LabelPools,
    pub partition: SpacedPartition,
}

/// Runs the three dealing stages: bulk edges ascending onto the bulk pool,
/// anchors onto the spaced pool in ascending order of outside partial sums,
/// clique edges onto the top pool in lexicographic position order.
pub fn label_steps(g: &Graph, kq: &DominatingClique) -> Result<SpacedSteps, SpacedError> {
    let report = check_preconditions(g, kq)?;
    if !report.t5_ok {
        return Err(SpacedError::PreconditionsNotMet(report));
    }
    let part = partition_edges(g, kq)?;
    let pools = build_label_pools(g.n(), kq.k(), g.m())?;
    if part.bulk.len() != pools.bulk.len() {
        return Err(SpacedError::Internal(format!(
            "bulk sizes disagree: {} edges, {} labels",
            part.bulk.len(),
            pools.bulk.len()
        )));
    }

    let mut labels: BTreeMap<Edge, u64> = BTreeMap::new();
    let mut sums = vec![0u64; g.n()];
    let deal = |labels: &mut BTreeMap<Edge, u64>, sums: &mut Vec<u64>, e: Edge, l: u64| {
        labels.insert(e, l);
        sums[e.0] += l;
        sums[e.1] += l;
    };

    for (&e, &l) in part.bulk.iter().zip(&pools.bulk) {
        deal(&mut labels, &mut sums, e, l);
    }

    let mut outside_order = kq.outside(g);
    outside_order.sort_by_key(|&v| (sums[v], v));
    for (&v, &l) in outside_order.iter().zip(&pools.anchor) {
        let u = part.anchor_of(v).expect("every outside vertex has an anchor");
        deal(&mut labels, &mut sums, edge(u, v), l);
    }

    let mut clique_order = kq.members().to_vec();
    clique_order.sort_by_key(|&u| (sums[u], u));
    let mut next = pools.clique.iter();
    for a in 0..clique_order.len() {
        for b in (a + 1)..clique_order.len() {
            let l = *next.next().expect("clique pool matches clique edge count");
            deal(&mut labels, &mut sums, edge(clique_order[a], clique_order[b]), l);
        }
    }

    Ok(SpacedSteps {
        labels,
        sums: VertexSums(sums),
        outside_order,
        clique_order,
        pools,
        partition: part,
    })
}

/// One repair swap: the clique edges at positions `(pos, k-1)` and
/// `(pos+1, pos+2)` of the sorted clique order exchanged their labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct SwapRecord {
    /// 0-based position of the colliding clique vertex in the sorted order.
    pub position: usize,
    /// The edge whose label went up by 1 (position pair `(pos, k-1)`).
    pub up_edge: Edge,
    /// The edge whose label went down by 1 (position pair `(pos+1, pos+2)`).
    pub down_edge: Edge,
}

/// Everything the two repair passes did, plus the sums they started from.
#[derive(Debug, Clone, serde::Serialize)]
pub struct PostProcessTrace {
    pub swaps: Vec<SwapRecord>,
    /// Label put on the last clique edge by the overflow pass; `None` when
    /// the pass left the labelling alone.
    pub chosen_overflow: Option<u64>,
    /// Sums of the two heaviest clique vertices probed with label `m+1`,
    /// recorded whenever the overflow pass ran.
    pub probe_sums: Option<(u64, u64)>,
    /// Vertex sums before any post-processing.
    pub pre_sums: VertexSums,
    /// Whether the k = 3 shift (both heaviest clique edges moved up one
    /// label) fired before the overflow pass.
    pub k3_shifted: bool,
}

impl PostProcessTrace {
    /// Final label of the last clique edge; `m` when nothing relabelled it.
    pub fn final_top_label(&self, m: u64) -> u64 {
        self.chosen_overflow.unwrap_or(m)
    }
}

/// Walks clique positions `0..k-2` in order; wherever the position's sum
/// collides with an outside sum, swaps the consecutive label pair described
/// in [`SwapRecord`]. Each swap raises the colliding sum by 1 and never
/// pushes any label past `m`. Requires k >= 4.
pub fn swap_pass(
    g: &Graph,
    kq: &DominatingClique,
    labels: &mut BTreeMap<Edge, u64>,
    sums: &mut [u64],
    clique_order: &[usize],
) -> Result<Vec<SwapRecord>, SpacedError> {
    let k = clique_order.len();
    if k < 4 {
        return Err(SpacedError::CliqueTooSmall { needed: 4, got: k });
    }
    let outside = kq.outside(g);
    let mut swaps = Vec::new();
    for pos in 0..=(k - 3) {
        let u = clique_order[pos];
        if !outside.iter().any(|&v| sums[v] == sums[u]) {
            continue;
        }
        let up = edge(clique_order[pos], clique_order[k - 1]);
        let down = edge(clique_order[pos + 1], clique_order[pos + 2]);
        let up_label = labels[&up];
        let down_label = labels[&down];
        if down_label != up_label + 1 {
            return Err(SpacedError::Internal(format!(
                "swap pair at position {pos} is not consecutive: {up_label} vs {down_label}"
            )));
        }
        labels.insert(up, down_label);
        labels.insert(down, up_label);
        for x in [up.0, up.1] {
            sums[x] += 1;
        }
        for x in [down.0, down.1] {
            sums[x] -= 1;
        }
        swaps.push(SwapRecord { position: pos, up_edge: up, down_edge: down });
    }
    Ok(swaps)
}

/// What the overflow pass did to the labelling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OverflowOutcome {
    /// Label put on the last clique edge; `None` when nothing was touched.
    pub chosen: Option<u64>,
    /// Sums of the two heaviest clique vertices probed with label `m+1`.
    pub probe_sums: Option<(u64, u64)>,
}

/// Repairs collisions involving the two heaviest clique vertices by
/// relabelling their shared edge with the smallest label in `m+1..=m+3`
/// that clears every conflict. Leaves the labelling alone when those two
/// vertices are already conflict-free.
pub fn overflow_pass(
    g: &Graph,
    labels: &mut BTreeMap<Edge, u64>,
    sums: &mut [u64],
    clique_order: &[usize],
) -> Result<OverflowOutcome, SpacedError> {
    let k = clique_order.len();
    if k < 3 {
        return Err(SpacedError::CliqueTooSmall { needed: 3, got: k });
    }
    let m = g.m() as u64;
    let (a, b) = (clique_order[k - 2], clique_order[k - 1]);
    let clear = |sums: &[u64]| {
        sums[a] != sums[b]
            && (0..g.n())
                .filter(|&x| x != a && x != b)
                .all(|x| sums[x] != sums[a] && sums[x] != sums[b])
    };
    if clear(sums) {
        return Ok(OverflowOutcome { chosen: None, probe_sums: None });
    }
    let e = edge(a, b);
    let current = labels[&e];
    let probe = (sums[a] - current + m + 1, sums[b] - current + m + 1);
    for candidate in (m + 1)..=(m + 3) {
        let mut trial = sums.to_vec();
        trial[a] = trial[a] - current + candidate;
        trial[b] = trial[b] - current + candidate;
        if clear(&trial) {
            labels.insert(e, candidate);
            sums.copy_from_slice(&trial);
            return Ok(OverflowOutcome { chosen: Some(candidate), probe_sums: Some(probe) });
        }
    }
    Err(SpacedError::Internal(
        "no label in m+1..=m+3 clears the last two clique vertices".into(),
    ))
}

/// A finished run of the spaced labeller.
#[derive(Debug, Clone)]
pub struct SpacedLabelling {
    pub labelling: EdgeLabelling,
    pub sums: VertexSums,
    /// Slack actually spent: 0 when all labels stayed within `1..=m`.
    pub c_used: u64,
    pub trace: PostProcessTrace,
    pub steps: SpacedSteps,
}

/// Runs the dealing stages and both repair passes, then verifies the result:
/// labels injective within `1..=m+3` with at most one above `m`, sums
/// pairwise distinct. The preconditions are mandatory.
pub fn label(g: &Graph, kq: &DominatingClique) -> Result<SpacedLabelling, SpacedError> {
    let steps = label_steps(g, kq)?;
    let m = g.m() as u64;
    let k = kq.k();
    let mut labels = steps.labels.clone();
    let mut sums = steps.sums.0.clone();
    let pre_sums = steps.sums.clone();
    let clique_order = steps.clique_order.clone();

    let mut swaps = Vec::new();
    let mut k3_shifted = false;
    if k >= 4 {
        swaps = swap_pass(g, kq, &mut labels, &mut sums, &clique_order)?;
    } else {
        // k = 3: if the lightest clique vertex collides with an outside sum,
        // shift the two heaviest clique edges up one label each. That raises
        // the colliding sum by 1 and frees label m-1; the heaviest edge then
        // provisionally sits at m+1 for the overflow pass to settle.
        let (u1, u2, u3) = (clique_order[0], clique_order[1], clique_order[2]);
        let collides = steps
            .outside_order
            .iter()
            .any(|&v| sums[v] == sums[u1]);
        if collides {
            let mid = edge(u1, u3);
            let top = edge(u2, u3);
            if labels[&mid] != m - 1 || labels[&top] != m {
                return Err(SpacedError::Internal(
                    "heaviest clique edges do not carry m-1 and m before the shift".into(),
                ));
            }
            labels.insert(mid, m);
            labels.insert(top, m + 1);
            sums[u1] += 1;
            sums[u2] += 1;
            sums[u3] += 2;
            k3_shifted = true;
        }
    }

    let outcome = overflow_pass(g, &mut labels, &mut sums, &clique_order)?;
    let probe_sums = outcome.probe_sums;
    let chosen_overflow = outcome.chosen.or(if k3_shifted { Some(m + 1) } else { None });

    let labelling = EdgeLabelling::from_pairs(g, labels, true)?;
    let c_used = labelling.slack();
    let over: Vec<u64> = labelling.iter().map(|(_, l)| l).filter(|&l| l > m).collect();
    if c_used > 3 || over.len() > 1 {
        return Err(SpacedError::Internal(format!(
            "slack {c_used} with {} label(s) above m",
            over.len()
        )));
    }
    let final_sums = vertex_sums(g, &labelling, false)?;
    if final_sums.0 != sums {
        return Err(SpacedError::Internal("incremental sums drifted from the labelling".into()));
    }
    let clashes = conflicts(g, &labelling)?;
    if !clashes.is_empty() {
        return Err(SpacedError::Internal(format!(
            "{} vertex pair(s) still collide after post-processing",
            clashes.len()
        )));
    }

    Ok(SpacedLabelling {
        labelling,
        sums: final_sums,
        c_used,
        trace: PostProcessTrace {
            swaps,
            chosen_overflow,
            probe_sums,
            pre_sums,
            k3_shifted,
        },
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn paw() -> (Graph, DominatingClique) {
        let g = Graph::parse("4 4\n0 1\n0 2\n1 2\n0 3").unwrap();
        let kq = DominatingClique::new(&g, [0, 1, 2]).unwrap();
        (g, kq)
    }

    #[test]
    fn pools_for_a_mid_size_instance() {
        let pools = build_label_pools(10, 4, 22).unwrap();
        assert_eq!(pools.anchor, vec![1, 4, 7, 10, 13, 16]);
        assert_eq!(pools.clique, vec![17, 18, 19, 20, 21, 22]);
        assert_eq!(pools.bulk, vec![2, 3, 5, 6, 8, 9, 11, 12, 14, 15]);
    }

    #[test]
    fn pools_for_the_paw() {
        let pools = build_label_pools(4, 3, 4).unwrap();
        assert_eq!(pools.anchor, vec![1]);
        assert_eq!(pools.clique, vec![2, 3, 4]);
        assert!(pools.bulk.is_empty());
    }

    #[test]
    fn pools_with_no_outside_vertices() {
        let pools = build_label_pools(4, 4, 6).unwrap();
        assert!(pools.anchor.is_empty());
        assert_eq!(pools.clique, vec![1, 2, 3, 4, 5, 6]);
        assert!(pools.bulk.is_empty());
    }

    #[test]
    fn pools_reject_too_few_edges() {
        // n = 10, k = 4 needs m >= 22.
        assert!(matches!(
            build_label_pools(10, 4, 21),
            Err(SpacedError::PoolsInfeasible { .. })
        ));
        assert!(matches!(build_label_pools(5, 2, 10), Err(SpacedError::PoolsInfeasible { .. })));
    }

    #[test]
    fn anchor_and_clique_pools_never_meet() {
        for n in 3usize..12 {
            for k in 3..=n {
                let clique_count = k * (k - 1) / 2;
                let lo = clique_count.max((3 * (n - k)).saturating_sub(2) + clique_count);
                for m in lo..(lo + 4) {
                    let pools = build_label_pools(n, k, m).unwrap();
                    if let (Some(&hi_anchor), Some(&lo_clique)) =
                        (pools.anchor.last(), pools.clique.first())
                    {
                        assert!(hi_anchor < lo_clique, "n={n} k={k} m={m}");
                    }
                    assert_eq!(
                        pools.bulk.len() + pools.anchor.len() + pools.clique.len(),
                        m
                    );
                }
            }
        }
    }

    #[test]
    fn deals_the_paw_exactly() {
        let (g, kq) = paw();
        let steps = label_steps(&g, &kq).unwrap();
        assert_eq!(steps.labels[&(0, 3)], 1);
        assert_eq!(steps.clique_order, vec![1, 2, 0]);
        assert_eq!(steps.labels[&(1, 2)], 2);
        assert_eq!(steps.labels[&(0, 1)], 3);
        assert_eq!(steps.labels[&(0, 2)], 4);
        assert_eq!(steps.sums.as_slice(), &[8, 5, 6, 1]);
    }

    #[test]
    fn labels_the_paw_without_slack() {
        let (g, kq) = paw();
        let out = label(&g, &kq).unwrap();
        assert_eq!(out.c_used, 0);
        assert!(out.trace.swaps.is_empty());
        assert!(!out.trace.k3_shifted);
        assert_eq!(out.trace.chosen_overflow, None);
        assert_eq!(out.trace.final_top_label(g.m() as u64), 4);
        assert_eq!(out.sums.as_slice(), &[8, 5, 6, 1]);
        assert!(out.labelling.is_bijection_on(&g));
    }

    #[test]
    fn last_clique_edge_carries_m_after_dealing() {
        for (text, members) in [
            ("4 4\n0 1\n0 2\n1 2\n0 3", vec![0, 1, 2]),
            ("5 7\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n0 4", vec![0, 1, 2, 3]),
            ("6 10\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n0 4\n1 4\n0 5\n4 5", vec![0, 1, 2, 3]),
        ] {
            let g = Graph::parse(text).unwrap();
            let kq = DominatingClique::new(&g, members).unwrap();
            let steps = label_steps(&g, &kq).unwrap();
            let k = kq.k();
            let top = edge(steps.clique_order[k - 2], steps.clique_order[k - 1]);
            assert_eq!(steps.labels[&top], g.m() as u64);
        }
    }

    #[test]
    fn preconditions_are_mandatory() {
        // A star has no clique of order 3.
        let g = Graph::parse("4 3\n0 1\n0 2\n0 3").unwrap();
        let kq = DominatingClique::new(&g, [0, 1]).unwrap();
        assert!(matches!(
            label_steps(&g, &kq),
            Err(SpacedError::PreconditionsNotMet(_))
        ));
    }

    #[test]
    fn outside_sums_spaced_by_three_after_dealing() {
        let g = Graph::parse(
            "8 17\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n0 4\n1 4\n0 5\n2 5\n0 6\n3 6\n0 7\n4 5\n5 6\n6 7\n4 7",
        )
        .unwrap();
        let kq = DominatingClique::new(&g, [0, 1, 2, 3]).unwrap();
        let steps = label_steps(&g, &kq).unwrap();
        let order = &steps.outside_order;
        for (i, &v) in order.iter().enumerate() {
            for &w in &order[i + 1..] {
                let (a, b) = (steps.sums.get(v), steps.sums.get(w));
                assert!(a.abs_diff(b) >= 3, "outside sums {a} and {b} too close");
            }
        }
    }

    #[test]
    fn swap_pass_requires_order_four() {
        let (g, kq) = paw();
        let steps = label_steps(&g, &kq).unwrap();
        let mut labels = steps.labels.clone();
        let mut sums = steps.sums.0.clone();
        assert!(matches!(
            swap_pass(&g, &kq, &mut labels, &mut sums, &steps.clique_order),
            Err(SpacedError::CliqueTooSmall { needed: 4, .. })
        ));
    }

    #[test]
    fn swap_pass_leaves_a_clean_instance_alone() {
        let g = Graph::parse("5 7\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n0 4").unwrap();
        let kq = DominatingClique::new(&g, [0, 1, 2, 3]).unwrap();
        let steps = label_steps(&g, &kq).unwrap();
        let mut labels = steps.labels.clone();
        let mut sums = steps.sums.0.clone();
        let swaps = swap_pass(&g, &kq, &mut labels, &mut sums, &steps.clique_order).unwrap();
        assert!(swaps.is_empty());
        assert_eq!(labels, steps.labels);
    }

    #[test]
    fn overflow_pass_leaves_a_clean_instance_alone() {
        let (g, kq) = paw();
        let steps = label_steps(&g, &kq).unwrap();
        let mut labels = steps.labels.clone();
        let mut sums = steps.sums.0.clone();
        let outcome = overflow_pass(&g, &mut labels, &mut sums, &steps.clique_order).unwrap();
        assert_eq!(outcome, OverflowOutcome { chosen: None, probe_sums: None });
        assert_eq!(labels, steps.labels);
    }
}
