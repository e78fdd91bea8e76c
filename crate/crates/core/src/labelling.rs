//! Edge labellings and the antimagic predicates.
//!
//! A labelling assigns a positive integer label to each edge, injectively.
//! With slack `C` the labels may come from `1..=m+C` instead of `1..=m`;
//! a graph is `C`-antimagic when such a labelling exists whose vertex sums
//! (sum of labels on incident edges) are pairwise distinct. Slack 0 is the
//! plain antimagic case, where an injection into `1..=m` is a bijection.
//!
//! The labelling text format is one line `u v label` per edge. The companion
//! report format is one line `v sum` per vertex followed by `antimagic: yes`
//! or `antimagic: no` and `C: <value>`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::{edge, Edge, Graph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabellingError {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("label on a non-edge {u} {v}")]
    NonEdge { u: usize, v: usize },
    #[error("edge {u} {v} labelled twice")]
    DuplicateEdge { u: usize, v: usize },
    #[error("label {label} used more than once")]
    DuplicateLabel { label: u64 },
    #[error("edge {u} {v} has label 0; labels start at 1")]
    ZeroLabel { u: usize, v: usize },
    #[error("labelling is not total: {missing} edge(s) unlabelled")]
    NotTotal { missing: usize },
}

/// An injective assignment of positive labels to a subset of a graph's edges.
///
/// The stored slack is `max(0, max_label - m)` against the graph the labelling
/// was built for, so every label lies in `1..=m+slack` by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeLabelling {
    labels: BTreeMap<Edge, u64>,
    slack: u64,
}

impl EdgeLabelling {
    /// Validates raw `(edge, label)` pairs against `g`. With `total` set,
    /// every edge of `g` must be covered.
    pub fn from_pairs(
        g: &Graph,
        pairs: impl IntoIterator<Item = ((usize, usize), u64)>,
        total: bool,
    ) -> Result<Self, LabellingError> {
        let mut labels = BTreeMap::new();
        let mut seen = std::collections::HashSet::new();
        for ((u, v), label) in pairs {
            if !g.has_edge(u, v) {
                return Err(LabellingError::NonEdge { u, v });
            }
            let e = edge(u, v);
            if label == 0 {
                return Err(LabellingError::ZeroLabel { u: e.0, v: e.1 });
            }
            if labels.insert(e, label).is_some() {
                return Err(LabellingError::DuplicateEdge { u: e.0, v: e.1 });
            }
            if !seen.insert(label) {
                return Err(LabellingError::DuplicateLabel { label });
            }
        }
        if total && labels.len() != g.m() {
            return Err(LabellingError::NotTotal {
                missing: g.m() - labels.len(),
            });
        }
        let max = labels.values().copied().max().unwrap_or(0);
        let slack = max.saturating_sub(g.m() as u64);
        Ok(EdgeLabelling { labels, slack })
    }

    /// Labelled edges with their labels, in canonical edge order.
    pub fn iter(&self) -> impl Iterator<Item = (Edge, u64)> + '_ {
        self.labels.iter().map(|(&e, &l)| (e, l))
    }

    pub fn get(&self, u: usize, v: usize) -> Option<u64> {
        self.labels.get(&edge(u, v)).copied()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// How far the largest label overshoots `m` (0 for a bijection).
    pub fn slack(&self) -> u64 {
        self.slack
    }

    pub fn max_label(&self) -> u64 {
        self.labels.values().copied().max().unwrap_or(0)
    }

    pub fn is_total_on(&self, g: &Graph) -> bool {
        self.labels.len() == g.m() && self.labels.keys().all(|&(u, v)| g.has_edge(u, v))
    }

    /// True when the labels are exactly `1..=m` for a graph with `m` edges.
    pub fn is_bijection_on(&self, g: &Graph) -> bool {
        if !self.is_total_on(g) {
            return false;
        }
        let mut labels: Vec<u64> = self.labels.values().copied().collect();
        labels.sort_unstable();
        labels.iter().copied().eq(1..=g.m() as u64)
    }

    /// Serializes to the labelling text format, one `u v label` line per edge.
    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        for (&(u, v), &label) in &self.labels {
            out.push_str(&format!("{u} {v} {label}\n"));
        }
        out
    }
}

/// Extracts `u v label` entries from labelling text.
///
/// Comment lines and report lines (vertex sums, `antimagic:`, trace lines)
/// are skipped, so the output of the `label` subcommand can be fed back in
/// unchanged. Returns raw pairs; validate with [`EdgeLabelling::from_pairs`].
pub fn parse_labelling(text: &str) -> Result<Vec<(Edge, u64)>, LabellingError> {
    let mut pairs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') || line.contains(':') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            continue;
        }
        let mut nums = [0u64; 3];
        let mut ok = true;
        for (slot, field) in nums.iter_mut().zip(&fields) {
            match field.parse() {
                Ok(x) => *slot = x,
                Err(_) => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            return Err(LabellingError::Malformed {
                line: idx + 1,
                reason: format!("expected `u v label`, got `{line}`"),
            });
        }
        pairs.push(((nums[0] as usize, nums[1] as usize), nums[2]));
    }
    if pairs.is_empty() {
        return Err(LabellingError::Malformed {
            line: 1,
            reason: "no labelling lines found".to_string(),
        });
    }
    Ok(pairs)
}

/// Per-vertex sums of incident edge labels, indexed by vertex id.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct VertexSums(pub Vec<u64>);

impl VertexSums {
    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn get(&self, v: usize) -> u64 {
        self.0[v]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Sums incident labels per vertex. Unless `partial` is set, the labelling
/// must cover every edge of `g`.
pub fn vertex_sums(g: &Graph, f: &EdgeLabelling, partial: bool) -> Result<VertexSums, LabellingError> {
    if !partial && f.len() != g.m() {
        return Err(LabellingError::NotTotal {
            missing: g.m() - f.len().min(g.m()),
        });
    }
    let mut sums = vec![0u64; g.n()];
    for ((u, v), label) in f.iter() {
        if !g.has_edge(u, v) {
            return Err(LabellingError::NonEdge { u, v });
        }
        sums[u] += label;
        sums[v] += label;
    }
    Ok(VertexSums(sums))
}

/// The `C`-antimagic predicate: `f` is total on `g`, injective into
/// `1..=m+c`, and all vertex sums are pairwise distinct.
pub fn is_c_antimagic_labelling(g: &Graph, f: &EdgeLabelling, c: u64) -> Result<bool, LabellingError> {
    let sums = vertex_sums(g, f, false)?;
    if f.max_label() > g.m() as u64 + c {
        return Ok(false);
    }
    let mut sorted = sums.0.clone();
    sorted.sort_unstable();
    Ok(sorted.windows(2).all(|w| w[0] != w[1]))
}

/// All vertex pairs `(x, y)` with `x < y` and equal sums, in ascending order.
pub fn conflicts(g: &Graph, f: &EdgeLabelling) -> Result<Vec<(usize, usize)>, LabellingError> {
    let sums = vertex_sums(g, f, false)?;
    let mut out = Vec::new();
    for x in 0..g.n() {
        for y in (x + 1)..g.n() {
            if sums.get(x) == sums.get(y) {
                out.push((x, y));
            }
        }
    }
    Ok(out)
}

/// Renders the report format: `v sum` per vertex, the verdict, and the slack.
pub fn format_report(sums: &VertexSums, antimagic: bool, c: u64) -> String {
    let mut out = String::new();
    for (v, s) in sums.0.iter().enumerate() {
        out.push_str(&format!("{v} {s}\n"));
    }
    out.push_str(if antimagic { "antimagic: yes\n" } else { "antimagic: no\n" });
    out.push_str(&format!("C: {c}\n"));
    out
}
