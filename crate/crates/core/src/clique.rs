//! Dominating cliques and the eligibility checks for the two labellers.
//!
//! A dominating clique is a set of pairwise adjacent vertices such that every
//! vertex outside the set has at least one neighbour inside it. Throughout,
//! `alpha` is the smallest degree among clique members and
//! `beta = alpha - (k - 1)` counts the edges a minimum-degree member sends
//! outside the clique.

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliqueError {
    #[error("clique vertex {v} out of range (n = {n})")]
    OutOfRange { v: usize, n: usize },
    #[error("vertex {v} listed twice")]
    Duplicate { v: usize },
    #[error("clique is empty")]
    Empty,
    #[error("vertices {u} and {v} are not adjacent")]
    NotAClique { u: usize, v: usize },
    #[error("vertex {v} has no neighbour in the clique")]
    NotDominating { v: usize },
    #[error("invalid size range [{k_min}, {k_max}] for n = {n}")]
    BadRange { k_min: usize, k_max: usize, n: usize },
    #[error("subset budget of {budget} candidates exhausted")]
    BudgetExceeded { budget: u64 },
}

/// Default number of candidate subsets `find_dominating_cliques` will visit.
pub const DEFAULT_SUBSET_BUDGET: u64 = 10_000_000;

/// A verified dominating clique. Members are stored in ascending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominatingClique {
    members: Vec<usize>,
}

impl DominatingClique {
    /// Checks membership bounds, pairwise adjacency and domination against `g`.
    pub fn new(g: &Graph, members: impl IntoIterator<Item = usize>) -> Result<Self, CliqueError> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        check_members(g, &members)?;
        if let Some(witness) = clique_defect(g, &members) {
            return Err(CliqueError::NotAClique { u: witness.0, v: witness.1 });
        }
        if let Some(v) = domination_defect(g, &members) {
            return Err(CliqueError::NotDominating { v });
        }
        Ok(DominatingClique { members })
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn k(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    /// Vertices outside the clique, ascending.
    pub fn outside(&self, g: &Graph) -> Vec<usize> {
        (0..g.n()).filter(|&v| !self.contains(v)).collect()
    }
}

fn check_members(g: &Graph, sorted: &[usize]) -> Result<(), CliqueError> {
    if sorted.is_empty() {
        return Err(CliqueError::Empty);
    }
    for &v in sorted {
        if v >= g.n() {
            return Err(CliqueError::OutOfRange { v, n: g.n() });
        }
    }
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(CliqueError::Duplicate { v: w[0] });
        }
    }
    Ok(())
}

fn clique_defect(g: &Graph, members: &[usize]) -> Option<(usize, usize)> {
    for (i, &u) in members.iter().enumerate() {
        for &v in &members[i + 1..] {
            if !g.has_edge(u, v) {
                return Some((u, v));
            }
        }
    }
    None
}

fn domination_defect(g: &Graph, members: &[usize]) -> Option<usize> {
    (0..g.n())
        .filter(|v| members.binary_search(v).is_err())
        .find(|&v| !g.neighbours(v).iter().any(|u| members.binary_search(u).is_ok()))
}

/// Decides whether `members` induce a dominating clique of `g`.
///
/// Out-of-range or repeated vertices are errors, not a `false` verdict.
pub fn verify_dominating_clique(g: &Graph, members: &[usize]) -> Result<bool, CliqueError> {
    let mut sorted = members.to_vec();
    sorted.sort_unstable();
    check_members(g, &sorted)?;
    Ok(clique_defect(g, &sorted).is_none() && domination_defect(g, &sorted).is_none())
}

/// Exhaustively lists every dominating clique with size in `[k_min, k_max]`,
/// in lexicographic order of the sorted member lists.
///
/// The search walks sorted vertex subsets depth-first, extending only
/// prefixes that are still cliques. Each candidate visited counts against
/// `budget` (default [`DEFAULT_SUBSET_BUDGET`]); exceeding it is an error
/// rather than a truncated answer.
pub fn find_dominating_cliques(
    g: &Graph,
    k_min: usize,
    k_max: usize,
    budget: u64,
) -> Result<Vec<DominatingClique>, CliqueError> {
    if k_min < 1 || k_min > k_max || k_max > g.n() {
        return Err(CliqueError::BadRange { k_min, k_max, n: g.n() });
    }
    let mut found = Vec::new();
    let mut prefix = Vec::new();
    let mut visited = 0u64;
    search(g, k_min, k_max, budget, 0, &mut prefix, &mut visited, &mut found)?;
    Ok(found)
}

#[allow(clippy::too_many_arguments)]
fn search(
    g: &Graph,
    k_min: usize,
    k_max: usize,
    budget: u64,
    start: usize,
    prefix: &mut Vec<usize>,
    visited: &mut u64,
    found: &mut Vec<DominatingClique>,
) -> Result<(), CliqueError> {
    for v in start..g.n() {
        *visited += 1;
        if *visited > budget {
            return Err(CliqueError::BudgetExceeded { budget });
        }
        if !prefix.iter().all(|&u| g.has_edge(u, v)) {
            continue;
        }
        prefix.push(v);
        if prefix.len() >= k_min && prefix.len() <= k_max && domination_defect(g, prefix).is_none() {
            found.push(DominatingClique { members: prefix.clone() });
        }
        if prefix.len() < k_max {
            search(g, k_min, k_max, budget, v + 1, prefix, visited, found)?;
        }
        prefix.pop();
    }
    Ok(())
}

/// Eligibility report for the two labellers on a given `(graph, clique)` pair.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct PreconditionReport {
    /// Clique order at least 4 and no outside vertex of degree above `alpha`:
    /// the alternating labeller (`--method t4`) is guaranteed to succeed.
    pub t4_ok: bool,
    /// Clique order at least 3 and `m >= 3(n-k) - 2 + k(k-1)/2`: the spaced
    /// labeller (`--method t5`) is guaranteed to succeed with slack at most 3.
    pub t5_ok: bool,
    /// Minimum degree over the clique members.
    pub alpha: usize,
    /// `alpha - (k - 1)`: outside edges at a minimum-degree member.
    pub beta: usize,
    /// Human-readable explanations for every failed condition.
    pub reasons: Vec<String>,
}

/// Evaluates both labellers' preconditions. `kq` is re-verified against `g`
/// first, so a clique built for a different graph is an error.
pub fn check_preconditions(g: &Graph, kq: &DominatingClique) -> Result<PreconditionReport, CliqueError> {
    if !verify_dominating_clique(g, kq.members())? {
        let defect = clique_defect(g, kq.members());
        return Err(match defect {
            Some((u, v)) => CliqueError::NotAClique { u, v },
            None => CliqueError::NotDominating {
                v: domination_defect(g, kq.members()).unwrap_or(0),
            },
        });
    }
    let k = kq.k();
    let alpha = kq
        .members()
        .iter()
        .map(|&u| g.neighbours(u).len())
        .min()
        .expect("clique is nonempty");
    // Every member is adjacent to the other k-1, so alpha >= k-1.
    let beta = alpha - (k - 1);

    let mut reasons = Vec::new();
    let mut t4_ok = true;
    if k < 4 {
        t4_ok = false;
        reasons.push(format!("clique order {k} is below 4"));
    }
    for v in kq.outside(g) {
        let d = g.neighbours(v).len();
        if d > alpha {
            t4_ok = false;
            reasons.push(format!("outside vertex {v} has degree {d} above alpha = {alpha}"));
        }
    }

    let mut t5_ok = true;
    if k < 3 {
        t5_ok = false;
        reasons.push(format!("clique order {k} is below 3"));
    }
    let needed = 3 * (g.n() as i64 - k as i64) - 2 + (k as i64 * (k as i64 - 1)) / 2;
    if (g.m() as i64) < needed {
        t5_ok = false;
        reasons.push(format!("m = {} is below the required {needed}", g.m()));
    }

    Ok(PreconditionReport { t4_ok, t5_ok, alpha, beta, reasons })
}

/// For each outside vertex in ascending order, its lowest-indexed clique
/// neighbour. Both labellers route exactly one edge per outside vertex into
/// the clique through this choice.
pub(crate) fn anchors(g: &Graph, kq: &DominatingClique) -> Result<Vec<(usize, usize)>, CliqueError> {
    let mut out = Vec::new();
    for v in kq.outside(g) {
        let u = g
            .neighbours(v)
            .iter()
            .copied()
            .find(|&u| kq.contains(u))
            .ok_or(CliqueError::NotDominating { v })?;
        out.push((v, u));
    }
    Ok(out)
}
