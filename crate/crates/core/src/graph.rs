//! Simple undirected graphs on vertex ids `0..n`.
//!
//! The text format is line oriented. The first non-comment line is a header
//! `n m`, followed by exactly `m` edge lines `u v` with 0-based endpoints.
//! Lines starting with `#` are comments and may appear anywhere; a trailing
//! newline is optional. Self-loops and parallel edges are rejected.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// An unordered vertex pair, stored as `(min, max)`.
pub type Edge = (usize, usize);

/// Canonical form of an undirected edge.
pub fn edge(u: usize, v: usize) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: endpoint {v} out of range (n = {n})")]
    EndpointOutOfRange { line: usize, v: usize, n: usize },
    #[error("line {line}: self-loop at vertex {v}")]
    SelfLoop { line: usize, v: usize },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("vertex {v} out of range (n = {n})")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("graph has no vertices")]
    NoVertices,
}

/// An undirected graph with a fixed vertex set `0..n`.
///
/// Edges are kept in canonical sorted order, so iteration is deterministic.
/// Adjacency queries go through a hash set and are O(1) on average.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
    edge_set: HashSet<Edge>,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut g = Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
            edge_set: HashSet::new(),
        };
        for (u, v) in edges {
            g.insert(u, v)?;
        }
        g.finish();
        Ok(g)
    }

    fn insert(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::VertexOutOfRange { v: w, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop { line: 0, v: u });
        }
        let e = edge(u, v);
        if !self.edge_set.insert(e) {
            return Err(GraphError::DuplicateEdge { line: 0, u: e.0, v: e.1 });
        }
        self.edges.push(e);
        self.adj[e.0].push(e.1);
        self.adj[e.1].push(e.0);
        Ok(())
    }

    fn finish(&mut self) {
        self.edges.sort_unstable();
        for list in &mut self.adj {
            list.sort_unstable();
        }
    }

    /// Parses the edge-list text format, reporting the offending line on error.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut header: Option<(usize, usize)> = None;
        let mut g: Option<Graph> = None;
        let mut seen_edges = 0usize;
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.trim_end();
            if line.starts_with('#') {
                continue;
            }
            let malformed = |reason: &str| GraphError::Malformed {
                line: lineno,
                reason: reason.to_string(),
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            match header {
                None => {
                    if fields.len() != 2 {
                        return Err(malformed("expected header `n m`"));
                    }
                    let n: usize = fields[0].parse().map_err(|_| malformed("invalid vertex count"))?;
                    let m: usize = fields[1].parse().map_err(|_| malformed("invalid edge count"))?;
                    header = Some((n, m));
                    g = Some(Graph {
                        n,
                        edges: Vec::with_capacity(m),
                        adj: vec![Vec::new(); n],
                        edge_set: HashSet::with_capacity(m),
                    });
                }
                Some((n, m)) => {
                    if seen_edges == m {
                        return Err(malformed("unexpected content after the last edge"));
                    }
                    if fields.len() != 2 {
                        return Err(malformed("expected edge `u v`"));
                    }
                    let u: usize = fields[0].parse().map_err(|_| malformed("invalid endpoint"))?;
                    let v: usize = fields[1].parse().map_err(|_| malformed("invalid endpoint"))?;
                    let g = g.as_mut().expect("graph allocated with header");
                    g.insert(u, v).map_err(|e| match e {
                        GraphError::VertexOutOfRange { v, .. } => {
                            GraphError::EndpointOutOfRange { line: lineno, v, n }
                        }
                        GraphError::SelfLoop { v, .. } => GraphError::SelfLoop { line: lineno, v },
                        GraphError::DuplicateEdge { u, v, .. } => {
                            GraphError::DuplicateEdge { line: lineno, u, v }
                        }
                        other => other,
                    })?;
                    seen_edges += 1;
                }
            }
        }
        match header {
            None => Err(GraphError::Malformed {
                line: text.lines().count() + 1,
                reason: "missing header `n m`".to_string(),
            }),
            Some((_, m)) if seen_edges != m => Err(GraphError::Malformed {
                line: text.lines().count() + 1,
                reason: format!("header promised {m} edges, found {seen_edges}"),
            }),
            Some(_) => {
                let mut g = g.expect("graph allocated with header");
                g.finish();
                Ok(g)
            }
        }
    }

    /// Serializes back to the edge-list format with edges in canonical order.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical sorted order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_set.contains(&edge(u, v))
    }

    /// Neighbours of `v` in ascending order. Panics if `v` is out of range.
    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> Result<usize, GraphError> {
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange { v, n: self.n });
        }
        Ok(self.adj[v].len())
    }

    pub fn max_degree(&self) -> Result<usize, GraphError> {
        if self.n == 0 {
            return Err(GraphError::NoVertices);
        }
        Ok(self.adj.iter().map(Vec::len).max().unwrap_or(0))
    }

    /// True when every vertex can reach vertex 0 (and trivially for `n <= 1`).
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &y in &self.adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == self.n
    }
}

impl FromStr for Graph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Graph::parse(s)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_edge_list())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_a_path() {
        let g = Graph::parse("3 2\n0 1\n1 2").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn rejects_self_loop_with_line_number() {
        let err = Graph::parse("2 1\n0 0").unwrap_err();
        assert_eq!(err, GraphError::SelfLoop { line: 2, v: 0 });
    }

    #[test]
    fn parses_k4_with_comments() {
        let text = "# complete graph on four vertices\n4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";
        let g = Graph::parse(text).unwrap();
        assert_eq!(g.m(), 6);
        for u in 0..4 {
            for v in (u + 1)..4 {
                assert!(g.has_edge(u, v));
            }
        }
    }

    #[test]
    fn rejects_duplicate_even_when_reversed() {
        let err = Graph::parse("3 2\n0 1\n1 0").unwrap_err();
        assert_eq!(err, GraphError::DuplicateEdge { line: 3, u: 0, v: 1 });
    }

    #[test]
    fn rejects_out_of_range_endpoint() {
        let err = Graph::parse("2 1\n0 5").unwrap_err();
        assert_eq!(err, GraphError::EndpointOutOfRange { line: 2, v: 5, n: 2 });
    }

    #[test]
    fn rejects_edge_count_mismatch() {
        assert!(matches!(
            Graph::parse("3 2\n0 1"),
            Err(GraphError::Malformed { .. })
        ));
        assert!(matches!(
            Graph::parse("3 1\n0 1\n1 2"),
            Err(GraphError::Malformed { .. })
        ));
    }

    #[test]
    fn degree_and_max_degree() {
        let g = Graph::parse("4 3\n0 1\n0 2\n0 3").unwrap();
        assert_eq!(g.degree(0).unwrap(), 3);
        assert_eq!(g.degree(3).unwrap(), 1);
        assert_eq!(g.max_degree().unwrap(), 3);
        assert!(matches!(g.degree(9), Err(GraphError::VertexOutOfRange { .. })));
    }

    #[test]
    fn trailing_newline_is_optional() {
        let a = Graph::parse("3 2\n0 1\n1 2").unwrap();
        let b = Graph::parse("3 2\n0 1\n1 2\n").unwrap();
        assert_eq!(a, b);
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..9).prop_flat_map(|n| {
            let all: Vec<Edge> = (0..n)
                .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
                .collect();
            proptest::sample::subsequence(all.clone(), 0..=all.len())
                .prop_map(move |es| Graph::new(n, es).unwrap())
        })
    }

    proptest! {
        #[test]
        fn round_trips_through_text(g in arb_graph()) {
            let back = Graph::parse(&g.to_edge_list()).unwrap();
            prop_assert_eq!(&back, &g);
        }

        #[test]
        fn degree_sum_is_twice_edge_count(g in arb_graph()) {
            let total: usize = (0..g.n()).map(|v| g.degree(v).unwrap()).sum();
            prop_assert_eq!(total, 2 * g.m());
        }

        #[test]
        fn adjacency_is_symmetric(g in arb_graph()) {
            for &(u, v) in g.edges() {
                prop_assert!(g.has_edge(u, v));
                prop_assert!(g.has_edge(v, u));
                prop_assert!(g.neighbours(u).contains(&v));
                prop_assert!(g.neighbours(v).contains(&u));
            }
        }
    }
}
