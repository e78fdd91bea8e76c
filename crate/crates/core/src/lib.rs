#![forbid(unsafe_code)]

//! Constructive antimagic edge labellers for graphs with a dominating clique.
//!
//! An edge labelling is *antimagic* when it assigns the labels `1..=m`
//! bijectively to the `m` edges so that every vertex gets a different sum of
//! incident labels. The relaxed *C-antimagic* variant allows an injective
//! labelling into `1..=m+C`. This crate labels graphs that carry a
//! *dominating clique*: a set of pairwise adjacent vertices such that every
//! other vertex has a neighbour in the set.
//!
//! Two labellers are provided, each with its own preconditions:
//!
//! * [`alternating`] needs a dominating clique of order at least 4 whose
//!   members' degrees all reach the outside maximum. It produces a genuine
//!   antimagic labelling together with a [`alternating::SeparationCertificate`]
//!   showing the clique sums sit strictly above the outside sums.
//! * [`spaced`] needs only order 3 plus an edge-count bound, and produces an
//!   injective labelling with slack at most 3 (at most one label above `m`).
//!
//! Around them sit [`clique`] (finding and verifying dominating cliques and
//! the labellers' preconditions), [`labelling`] (the labelling container,
//! sum computation and the C-antimagic predicate), [`oracle`] (an exhaustive
//! search usable as ground truth on small graphs) and [`generate`] (seeded
//! instance generators and a small-graph enumerator).

pub mod alternating;
pub mod clique;
pub mod generate;
pub mod graph;
pub mod labelling;
pub mod oracle;
pub mod spaced;

pub use clique::{find_dominating_cliques, verify_dominating_clique, DominatingClique};
pub use graph::Graph;
pub use labelling::{is_c_antimagic_labelling, vertex_sums, EdgeLabelling};
