//! Exhaustive search for C-antimagic labellings on small graphs.
//!
//! The search tries every injective assignment of labels from `1..=m+c` to
//! the edges in their canonical order, pruning a branch as soon as some
//! vertex with all labels decided duplicates another decided vertex sum.
//! Labels are tried in ascending order, so the witness returned is the
//! lexicographically first one (by label sequence along the edge order).
//! That makes results reproducible and usable as ground truth when testing
//! the constructive labellers, which this module deliberately shares no
//! code with.

use thiserror::Error;

use crate::graph::Graph;
use crate::labelling::{EdgeLabelling, LabellingError, VertexSums};

/// Edge-count ceiling applied by default; factorial growth makes larger
/// inputs impractical.
pub const DEFAULT_EDGE_CAP: usize = 10;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("graph has {m} edges, above the exhaustive-search cap of {cap}")]
    EdgeCapExceeded { m: usize, cap: usize },
    #[error(transparent)]
    Labelling(#[from] LabellingError),
}

/// Outcome of an exhaustive search.
#[derive(Debug, Clone)]
pub struct OracleResult {
    /// Whether any C-antimagic labelling exists.
    pub found: bool,
    /// The lexicographically first witness, when one exists.
    pub witness: Option<EdgeLabelling>,
    /// For [`min_c`]: the smallest slack at which a witness appeared.
    pub c_used: Option<u64>,
    /// Number of injective label assignments in the space searched,
    /// `(m+c)!/c!`; accumulated over all tried slacks for [`min_c`].
    pub search_space_size: u128,
}

fn falling_factorial(m: usize, c: u64) -> u128 {
    // (m+c)(m+c-1)...(c+1), the number of injective maps from m edges
    // into m+c labels.
    let top = m as u128 + c as u128;
    let bottom = c as u128;
    ((bottom + 1)..=top).product()
}

struct Search<'g> {
    g: &'g Graph,
    /// Edges in canonical order, as index pairs.
    edges: Vec<(usize, usize)>,
    /// For each vertex, how many incident edges come strictly after the
    /// given edge position; zero means the sum is final.
    remaining: Vec<usize>,
    used: Vec<bool>,
    sums: Vec<u64>,
    labels: Vec<u64>,
}

impl<'g> Search<'g> {
    fn new(g: &'g Graph, c: u64) -> Self {
        Search {
            g,
            edges: g.edges().to_vec(),
            remaining: (0..g.n()).map(|v| g.neighbours(v).len()).collect(),
            used: vec![false; g.m() + c as usize + 1],
            sums: vec![0; g.n()],
            labels: vec![0; g.m()],
        }
    }

    /// True when the sum of `v` is final and matches the final sum of some
    /// other vertex.
    fn finished_sum_clashes(&self, v: usize) -> bool {
        (0..self.g.n()).any(|w| w != v && self.remaining[w] == 0 && self.sums[w] == self.sums[v])
    }

    fn dfs(&mut self, pos: usize) -> bool {
        if pos == self.edges.len() {
            // Every vertex with an edge was final-checked as its last label
            // went down, and isolated vertices were ruled out up front.
            return true;
        }
        let (u, v) = self.edges[pos];
        for label in 1..self.used.len() as u64 {
            if self.used[label as usize] {
                continue;
            }
            self.used[label as usize] = true;
            self.sums[u] += label;
            self.sums[v] += label;
            self.remaining[u] -= 1;
            self.remaining[v] -= 1;
            self.labels[pos] = label;

            let clash = (self.remaining[u] == 0 && self.finished_sum_clashes(u))
                || (self.remaining[v] == 0 && self.finished_sum_clashes(v));
            if !clash && self.dfs(pos + 1) {
                return true;
            }

            self.remaining[u] += 1;
            self.remaining[v] += 1;
            self.sums[u] -= label;
            self.sums[v] -= label;
            self.used[label as usize] = false;
        }
        false
    }
}

/// Exhaustively searches for a C-antimagic labelling of `g` with slack `c`.
/// `edge_cap` bounds the edge count accepted (use [`DEFAULT_EDGE_CAP`]
/// unless you know the runtime is acceptable).
pub fn brute_force_antimagic(g: &Graph, c: u64, edge_cap: usize) -> Result<OracleResult, OracleError> {
    if g.m() > edge_cap {
        return Err(OracleError::EdgeCapExceeded { m: g.m(), cap: edge_cap });
    }
    let space = falling_factorial(g.m(), c);
    // Two isolated vertices force two zero sums whatever the labels are.
    let isolated = (0..g.n()).filter(|&v| g.neighbours(v).is_empty()).count();
    if isolated > 1 {
        return Ok(OracleResult { found: false, witness: None, c_used: None, search_space_size: space });
    }
    let mut search = Search::new(g, c);
    if search.dfs(0) {
        let pairs: Vec<_> = search
            .edges
            .iter()
            .zip(&search.labels)
            .map(|(&(u, v), &l)| ((u, v), l))
            .collect();
        let witness = EdgeLabelling::from_pairs(g, pairs, true)?;
        Ok(OracleResult {
            found: true,
            witness: Some(witness),
            c_used: Some(c),
            search_space_size: space,
        })
    } else {
        Ok(OracleResult { found: false, witness: None, c_used: None, search_space_size: space })
    }
}

/// Scans slacks `0..=c_max` in order and returns the first hit, with
/// `search_space_size` accumulated over every slack tried. `found: false`
/// means no slack up to `c_max` admits a labelling.
pub fn min_c(g: &Graph, c_max: u64, edge_cap: usize) -> Result<OracleResult, OracleError> {
    let mut total: u128 = 0;
    for c in 0..=c_max {
        let mut result = brute_force_antimagic(g, c, edge_cap)?;
        total += result.search_space_size;
        if result.found {
            result.search_space_size = total;
            return Ok(result);
        }
    }
    Ok(OracleResult { found: false, witness: None, c_used: None, search_space_size: total })
}

/// Convenience access to the witness sums, mostly for tests and reporting.
pub fn witness_sums(g: &Graph, r: &OracleResult) -> Option<VertexSums> {
    let w = r.witness.as_ref()?;
    crate::labelling::vertex_sums(g, w, false).ok()
}
