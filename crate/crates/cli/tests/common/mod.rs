//! Shared helpers for the acceptance suite: seeded generators for small
//! random graphs and cohort-partitioned networks.

pub mod oracle;

use glepoch_core::graph_core::{AuthorId, CollabGraph};
use glepoch_core::temporal::{CollabNetwork, Epoch};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdős–Rényi graph over vertices `0..n`, unit weights.
pub fn er_graph(n: u32, p: f64, rng: &mut ChaCha8Rng) -> CollabGraph {
    let ids: Vec<AuthorId> = (0..n).map(AuthorId).collect();
    er_graph_over(ids, p, rng)
}

/// Erdős–Rényi graph over an explicit vertex list (order preserved),
/// weights drawn from 1..=3.
pub fn er_graph_over(ids: Vec<AuthorId>, p: f64, rng: &mut ChaCha8Rng) -> CollabGraph {
    let mut edges = Vec::new();
    for i in 0..ids.len() {
        for j in (i + 1)..ids.len() {
            if rng.gen_bool(p) {
                edges.push((ids[i], ids[j], rng.gen_range(1..=3u32)));
            }
        }
    }
    CollabGraph::from_weighted_edges(ids, &edges)
}

/// Random cohort-partitioned network over `n` vertices sampled from an
/// id universe of size `universe` (so two networks share some authors).
/// Cohorts are contiguous chunks split at six random cut points.
pub fn random_network(
    label: &str,
    universe: u32,
    n: usize,
    p: f64,
    rng: &mut ChaCha8Rng,
) -> CollabNetwork {
    let mut picked: Vec<u32> = sample(rng, universe as usize, n)
        .into_iter()
        .map(|i| i as u32)
        .collect();
    picked.sort_unstable();
    let ids: Vec<AuthorId> = picked.into_iter().map(AuthorId).collect();

    let mut boundaries: Vec<usize> = (0..6).map(|_| rng.gen_range(0..=n)).collect();
    boundaries.sort_unstable();
    boundaries.push(n);
    let mut cohort_of_vertex = vec![0u8; n];
    let mut start = 0;
    for (k, &end) in boundaries.iter().enumerate() {
        for c in &mut cohort_of_vertex[start..end] {
            *c = (k + 1) as u8;
        }
        start = end;
    }

    CollabNetwork {
        epoch: Epoch::from_years(label, 2000, 2002).expect("static window"),
        graph: er_graph_over(ids, p, rng),
        cohort_of_vertex,
        boundaries,
    }
}
