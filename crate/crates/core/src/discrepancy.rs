//! Topological discrepancy between collaboration networks.
//!
//! Two networks are compared through their common subgraph `Gz = Gx ∩ Gy`.
//! Per vertex, the relative difference of graphlet frequency vectors
//! (`rdiff`, elementwise `|a−b|/(a+b)` with `0/0 → 0`) is condensed by a
//! weighted order-`p` Hölder mean into a node score in `[0,1]`; a vertex
//! absent from the other graph compares against the zero vector. Node
//! scores average per cohort, cohort scores combine with weights
//! `|X_i|/|Vx|` into a side score, and the symmetric discrepancy is the
//! half-sum of the two side scores. Agreement is `1 − η`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph_core::graph_intersection;
use crate::graphlet::{transform, GraphletVector};
use crate::temporal::CollabNetwork;

/// Knobs of the node-level mean: Hölder order, per-graphlet weights, and
/// whether the singleton slot participates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiscrepancyConfig {
    /// Order of the Hölder mean: 1 = arithmetic, 0 = geometric, −1 =
    /// harmonic, etc. Non-positive orders send the score to 0 whenever any
    /// weighted slot is 0.
    pub holder_p: f64,
    /// Relative weights of the five graphlet slots; normalized over the
    /// included slots before use.
    pub weights: [f64; 5],
    /// Include the singleton slot (it reacts to vertex-set churn: a vertex
    /// missing from the other graph differs even when isolated).
    pub include_sigma0: bool,
}

impl Default for DiscrepancyConfig {
    fn default() -> Self {
        DiscrepancyConfig {
            holder_p: 1.0,
            weights: [0.2; 5],
            include_sigma0: true,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiscrepancyConfigError {
    #[error("Hölder order must be finite")]
    BadOrder,
    #[error("graphlet weights must be finite, non-negative, and not all zero over included slots")]
    BadWeights,
}

impl DiscrepancyConfig {
    pub fn new(
        holder_p: f64,
        weights: [f64; 5],
        include_sigma0: bool,
    ) -> Result<Self, DiscrepancyConfigError> {
        let cfg = DiscrepancyConfig {
            holder_p,
            weights,
            include_sigma0,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), DiscrepancyConfigError> {
        if !self.holder_p.is_finite() {
            return Err(DiscrepancyConfigError::BadOrder);
        }
        if self.weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(DiscrepancyConfigError::BadWeights);
        }
        let included: f64 = self.effective_raw().iter().sum();
        if !(included > 0.0) {
            return Err(DiscrepancyConfigError::BadWeights);
        }
        Ok(())
    }

    fn effective_raw(&self) -> [f64; 5] {
        let mut w = self.weights;
        if !self.include_sigma0 {
            w[0] = 0.0;
        }
        w
    }

    /// Weights normalized to unit sum over the included slots.
    pub fn effective_weights(&self) -> [f64; 5] {
        let w = self.effective_raw();
        let total: f64 = w.iter().sum();
        w.map(|x| x / total)
    }
}

/// Elementwise relative difference `|a−b|/(a+b)`, with `0/0 → 0`. Every
/// element lies in `[0,1]` and equals 1 exactly when one side alone is
/// nonzero.
pub fn rdiff(a: &[u64; 5], b: &[u64; 5]) -> [f64; 5] {
    std::array::from_fn(|k| {
        let sum = a[k] + b[k];
        if sum == 0 {
            0.0
        } else {
            (a[k].abs_diff(b[k])) as f64 / sum as f64
        }
    })
}

/// Weighted order-`p` Hölder mean of `r` under unit-sum weights `w`.
fn holder_mean(r: &[f64; 5], w: &[f64; 5], p: f64) -> f64 {
    let value = if p == 1.0 {
        (0..5).map(|k| w[k] * r[k]).sum()
    } else if p == 0.0 {
        // weighted geometric mean; any weighted zero annihilates it
        if (0..5).any(|k| w[k] > 0.0 && r[k] == 0.0) {
            0.0
        } else {
            (0..5)
                .filter(|&k| w[k] > 0.0)
                .map(|k| w[k] * r[k].ln())
                .sum::<f64>()
                .exp()
        }
    } else if p < 0.0 && (0..5).any(|k| w[k] > 0.0 && r[k] == 0.0) {
        0.0
    } else {
        (0..5)
            .map(|k| if w[k] > 0.0 { w[k] * r[k].powf(p) } else { 0.0 })
            .sum::<f64>()
            .powf(1.0 / p)
    };
    value.clamp(0.0, 1.0)
}

/// Node-level discrepancy of a vertex present in `Gx`: the Hölder mean of
/// `rdiff` between its frequency vector there and in the common subgraph.
/// `None` stands for a vertex absent from the common subgraph, whose
/// frequency vector is zero by convention.
pub fn node_eta(fx: &[u64; 5], fz: Option<&[u64; 5]>, cfg: &DiscrepancyConfig) -> f64 {
    static ZERO: [u64; 5] = [0; 5];
    let r = rdiff(fx, fz.unwrap_or(&ZERO));
    holder_mean(&r, &cfg.effective_weights(), cfg.holder_p)
}

/// Arithmetic mean with compensated summation; empty input yields 0.
pub fn cohort_eta(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let mut sum = 0.0f64;
    let mut carry = 0.0f64;
    for &v in values {
        let adjusted = v - carry;
        let next = sum + adjusted;
        carry = (next - sum) - adjusted;
        sum = next;
    }
    sum / values.len() as f64
}

/// Cohort weights `|X_i| / |Vx|`; all zero for an empty vertex set.
pub fn cohort_weights(sizes: &[usize; 7]) -> [f64; 7] {
    let total: usize = sizes.iter().sum();
    if total == 0 {
        return [0.0; 7];
    }
    sizes.map(|s| s as f64 / total as f64)
}

/// Combines per-cohort scores into one side score with proportional
/// weights. Empty cohorts carry weight 0 and contribute nothing.
pub fn side_eta(cohort_etas: &[f64; 7], sizes: &[usize; 7]) -> (f64, [f64; 7]) {
    let weights = cohort_weights(sizes);
    let eta = (0..7).map(|k| weights[k] * cohort_etas[k]).sum();
    (eta, weights)
}

/// Everything measured in one network comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscrepancyReport {
    pub label_x: String,
    pub label_y: String,
    pub config: DiscrepancyConfig,
    /// Node scores indexed by the vertex order of each side's graph.
    pub node_eta_x: Vec<f64>,
    pub node_eta_y: Vec<f64>,
    pub cohort_eta_x: [f64; 7],
    pub cohort_eta_y: [f64; 7],
    pub weights_x: [f64; 7],
    pub weights_y: [f64; 7],
    pub eta_x: f64,
    pub eta_y: f64,
    /// Symmetric discrepancy `eta_x/2 + eta_y/2`.
    pub eta: f64,
    /// `1 − eta`.
    pub agreement: f64,
    /// `|Vx ∩ Vy|`.
    pub intersection_size: usize,
}

fn side_scores(
    net: &CollabNetwork,
    field: &[GraphletVector],
    gz: &crate::graph_core::CollabGraph,
    field_z: &[GraphletVector],
    cfg: &DiscrepancyConfig,
) -> (Vec<f64>, [f64; 7], [f64; 7], f64) {
    let node_etas: Vec<f64> = (0..net.graph.n_vertices())
        .map(|v| {
            let fx = field[v].counts();
            let fz = gz
                .local_index(net.graph.vertex_key(v))
                .map(|zi| field_z[zi].counts());
            node_eta(&fx, fz.as_ref(), cfg)
        })
        .collect();

    let mut cohort_etas = [0.0f64; 7];
    let mut start = 0usize;
    for k in 0..7 {
        let end = net.boundaries[k];
        cohort_etas[k] = cohort_eta(&node_etas[start..end]);
        start = end;
    }
    let (eta_side, weights) = side_eta(&cohort_etas, &net.cohort_sizes());
    (node_etas, cohort_etas, weights, eta_side)
}

/// Full symmetric comparison of two cohort-partitioned networks, reusing
/// already computed graphlet fields (each indexed by its graph's vertex
/// order).
pub fn network_eta_with_fields(
    nx: &CollabNetwork,
    field_x: &[GraphletVector],
    ny: &CollabNetwork,
    field_y: &[GraphletVector],
    cfg: &DiscrepancyConfig,
) -> DiscrepancyReport {
    assert_eq!(field_x.len(), nx.graph.n_vertices());
    assert_eq!(field_y.len(), ny.graph.n_vertices());
    let gz = graph_intersection(&nx.graph, &ny.graph);
    let field_z = transform(&gz);

    let (node_eta_x, cohort_eta_x, weights_x, eta_x) =
        side_scores(nx, field_x, &gz, &field_z, cfg);
    let (node_eta_y, cohort_eta_y, weights_y, eta_y) =
        side_scores(ny, field_y, &gz, &field_z, cfg);

    let eta = eta_x / 2.0 + eta_y / 2.0;
    DiscrepancyReport {
        label_x: nx.epoch.label.clone(),
        label_y: ny.epoch.label.clone(),
        config: *cfg,
        node_eta_x,
        node_eta_y,
        cohort_eta_x,
        cohort_eta_y,
        weights_x,
        weights_y,
        eta_x,
        eta_y,
        eta,
        agreement: 1.0 - eta,
        intersection_size: gz.n_vertices(),
    }
}

/// As [`network_eta_with_fields`], computing both graphlet fields here.
pub fn network_eta(
    nx: &CollabNetwork,
    ny: &CollabNetwork,
    cfg: &DiscrepancyConfig,
) -> DiscrepancyReport {
    let field_x = transform(&nx.graph);
    let field_y = transform(&ny.graph);
    network_eta_with_fields(nx, &field_x, ny, &field_y, cfg)
}

/// Pairwise comparison matrices over a list of networks. Diagonals hold the
/// self-comparison values (agreement 1, intersection `|Vi|`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairwiseTable {
    pub labels: Vec<String>,
    pub eta: Vec<Vec<f64>>,
    pub agreement: Vec<Vec<f64>>,
    pub intersection_sizes: Vec<Vec<usize>>,
}

impl PairwiseTable {
    /// CSV rendering: agreement (6 decimals) in the upper triangle,
    /// intersection sizes in the lower triangle, `-` on the diagonal.
    pub fn write_csv<W: std::io::Write>(&self, mut out: W) -> std::io::Result<()> {
        let n = self.labels.len();
        writeln!(out, ",{}", self.labels.join(","))?;
        for i in 0..n {
            write!(out, "{}", self.labels[i])?;
            for j in 0..n {
                if i == j {
                    write!(out, ",-")?;
                } else if i < j {
                    write!(out, ",{:.6}", self.agreement[i][j])?;
                } else {
                    write!(out, ",{}", self.intersection_sizes[i][j])?;
                }
            }
            writeln!(out)?;
        }
        Ok(())
    }
}

/// Assembles the matrices from reports computed elsewhere, expected in
/// row-major upper-triangle order: (0,1), (0,2), …, (n−2,n−1).
pub fn pairwise_from_reports(
    labels: Vec<String>,
    vertex_counts: &[usize],
    reports: &[DiscrepancyReport],
) -> PairwiseTable {
    let n = labels.len();
    assert_eq!(vertex_counts.len(), n);
    assert_eq!(reports.len(), n * n.saturating_sub(1) / 2, "one report per unordered pair");
    let mut eta = vec![vec![0.0; n]; n];
    let mut agreement = vec![vec![1.0; n]; n];
    let mut intersection = vec![vec![0usize; n]; n];
    for i in 0..n {
        intersection[i][i] = vertex_counts[i];
    }
    let mut it = reports.iter();
    for i in 0..n {
        for j in (i + 1)..n {
            let r = it.next().expect("length checked");
            eta[i][j] = r.eta;
            eta[j][i] = r.eta;
            agreement[i][j] = r.agreement;
            agreement[j][i] = r.agreement;
            intersection[i][j] = r.intersection_size;
            intersection[j][i] = r.intersection_size;
        }
    }
    PairwiseTable {
        labels,
        eta,
        agreement,
        intersection_sizes: intersection,
    }
}

/// Compares every unordered pair sequentially and assembles the table.
/// Returns the per-pair reports in row-major upper-triangle order.
pub fn pairwise_table(
    networks: &[CollabNetwork],
    cfg: &DiscrepancyConfig,
) -> (PairwiseTable, Vec<DiscrepancyReport>) {
    let fields: Vec<Vec<GraphletVector>> =
        networks.iter().map(|n| transform(&n.graph)).collect();
    let mut reports = Vec::new();
    for i in 0..networks.len() {
        for j in (i + 1)..networks.len() {
            reports.push(network_eta_with_fields(
                &networks[i],
                &fields[i],
                &networks[j],
                &fields[j],
                cfg,
            ));
        }
    }
    let labels = networks.iter().map(|n| n.epoch.label.clone()).collect();
    let counts: Vec<usize> = networks.iter().map(|n| n.graph.n_vertices()).collect();
    let table = pairwise_from_reports(labels, &counts, &reports);
    (table, reports)
}
