//! Temporal analysis of author collaboration networks.
//!
//! The pipeline turns a timestamped citation/authorship corpus into
//! epoch-centered triad citation networks, projects septa-partitioned
//! collaboration networks from them, computes exact per-vertex graphlet
//! frequency descriptors over the five-pattern dictionary (singleton, edge,
//! bi-fork, 2-path, triangle), and quantifies topological discrepancy and
//! agreement between networks at node, cohort, and network granularity.
//!
//! Module map:
//! - [`graph_core`]: compressed sparse graph structures (citation, bipartite,
//!   collaboration) with deterministic construction.
//! - [`ingest`]: corpus parsing, binary caching, synthetic corpus generation.
//! - [`temporal`]: epoch-centered triad extraction and the septa-partition of
//!   involved authors.
//! - [`graphlet`]: exact graphlet transform and spectrogram assembly.
//! - [`discrepancy`]: node/cohort/network discrepancy (eta) and agreement.
//! - [`report`]: histograms, scatter data, rank-size curves, cohort tables,
//!   orderings, and SVG rendering.

pub mod discrepancy;
pub mod graph_core;
pub mod graphlet;
pub mod ingest;
pub mod report;
pub mod temporal;

pub use discrepancy::{DiscrepancyConfig, DiscrepancyReport};
pub use graph_core::{ArticleId, AuthorId, Bipartite, CitationGraph, CollabGraph, Timestamp};
pub use graphlet::{GraphletVector, Spectrogram};
pub use ingest::LiteratureGraph;
pub use temporal::{CollabNetwork, Epoch, SeptaPartition, TriadNetwork};
