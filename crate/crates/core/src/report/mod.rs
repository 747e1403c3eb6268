//! Analysis artifacts derived from collaboration networks and graphlet
//! fields: degree histograms, rank-size curves, persistent-cohort scatter
//! data, cohort-size tables, and display orderings. SVG rendering lives in
//! [`svg`].

pub mod svg;

use std::collections::VecDeque;
use std::io::{self, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph_core::AuthorId;
use crate::graphlet::GraphletVector;
use crate::temporal::CollabNetwork;

/// Degree-histogram binning: fixed-width bins up to `tail_cutoff`, then one
/// open-ended bin absorbing everything above.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistogramSpec {
    pub bin_width: u64,
    pub tail_cutoff: u64,
    /// Render counts on a logarithmic axis.
    pub log_counts: bool,
}

impl Default for HistogramSpec {
    fn default() -> Self {
        HistogramSpec {
            bin_width: 4,
            tail_cutoff: 800,
            log_counts: true,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HistogramSpecError {
    #[error("bin width must be at least 1")]
    ZeroWidth,
    #[error("tail cutoff {cutoff} must be a positive multiple of bin width {width}")]
    MisalignedTail { cutoff: u64, width: u64 },
}

impl HistogramSpec {
    pub fn new(bin_width: u64, tail_cutoff: u64, log_counts: bool) -> Result<Self, HistogramSpecError> {
        if bin_width == 0 {
            return Err(HistogramSpecError::ZeroWidth);
        }
        if tail_cutoff == 0 || tail_cutoff % bin_width != 0 {
            return Err(HistogramSpecError::MisalignedTail {
                cutoff: tail_cutoff,
                width: bin_width,
            });
        }
        Ok(HistogramSpec {
            bin_width,
            tail_cutoff,
            log_counts,
        })
    }

    fn n_bins(&self) -> usize {
        (self.tail_cutoff / self.bin_width) as usize + 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeHistogram {
    pub spec: HistogramSpec,
    /// One count per bin; the final bin is the open tail.
    pub counts: Vec<u64>,
}

impl DegreeHistogram {
    /// Inclusive degree range of bin `i`, `None` end for the tail bin.
    pub fn bin_range(&self, i: usize) -> (u64, Option<u64>) {
        let lo = i as u64 * self.spec.bin_width;
        if i + 1 == self.counts.len() {
            (lo, None)
        } else {
            (lo, Some(lo + self.spec.bin_width - 1))
        }
    }

    /// Midpoint degree of bin `i` (tail bin uses its lower edge).
    pub fn bin_center(&self, i: usize) -> f64 {
        match self.bin_range(i) {
            (lo, Some(hi)) => (lo + hi) as f64 / 2.0,
            (lo, None) => lo as f64,
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Writes `bin,count` rows; bins print as `lo-hi` or `lo+` for the tail.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "bin,count")?;
        for (i, &c) in self.counts.iter().enumerate() {
            match self.bin_range(i) {
                (lo, Some(hi)) => writeln!(out, "{lo}-{hi},{c}")?,
                (lo, None) => writeln!(out, "{lo}+,{c}")?,
            }
        }
        Ok(())
    }
}

/// Bins vertex degrees (`d1`) of a graphlet field.
pub fn degree_histogram(field: &[GraphletVector], spec: HistogramSpec) -> DegreeHistogram {
    let mut counts = vec![0u64; spec.n_bins()];
    for f in field {
        let bin = if f.d1 >= spec.tail_cutoff {
            counts.len() - 1
        } else {
            (f.d1 / spec.bin_width) as usize
        };
        counts[bin] += 1;
    }
    DegreeHistogram { spec, counts }
}

/// Least-squares slope of `ln(count)` against `ln(bin center)` over the bin
/// index range `bins` (half-open), skipping empty bins. `None` when fewer
/// than two usable points remain.
pub fn log_log_slope(hist: &DegreeHistogram, bins: std::ops::Range<usize>) -> Option<f64> {
    let points: Vec<(f64, f64)> = bins
        .filter(|&i| i < hist.counts.len() && hist.counts[i] > 0 && hist.bin_center(i) > 0.0)
        .map(|i| (hist.bin_center(i).ln(), (hist.counts[i] as f64).ln()))
        .collect();
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    if denom.abs() < 1e-12 {
        return None;
    }
    Some((n * sxy - sx * sy) / denom)
}

/// Vertices sorted by descending degree (ties by ascending author id) with
/// their bi-fork counts carried along.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankSizeCurve {
    pub vertices: Vec<AuthorId>,
    pub d1: Vec<u64>,
    pub d2: Vec<u64>,
}

pub fn rank_size_curves(field: &[GraphletVector]) -> RankSizeCurve {
    let mut idx: Vec<usize> = (0..field.len()).collect();
    idx.sort_by_key(|&i| (std::cmp::Reverse(field[i].d1), field[i].vertex));
    RankSizeCurve {
        vertices: idx.iter().map(|&i| field[i].vertex).collect(),
        d1: idx.iter().map(|&i| field[i].d1).collect(),
        d2: idx.iter().map(|&i| field[i].d2).collect(),
    }
}

impl RankSizeCurve {
    pub fn write_csv<W: Write>(
        &self,
        mut out: W,
        mut key_of: impl FnMut(AuthorId) -> String,
    ) -> io::Result<()> {
        writeln!(out, "rank,vertex_key,d1,d2")?;
        for (i, &v) in self.vertices.iter().enumerate() {
            writeln!(out, "{},{},{},{}", i + 1, key_of(v), self.d1[i], self.d2[i])?;
        }
        Ok(())
    }
}

/// Bi-fork vs triangle counts over the persistent cohort of each network,
/// plus the authors persistent in *every* network that has any.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PersistentScatter {
    pub sets: Vec<ScatterSet>,
    /// Intersection of the persistent cohorts of all contributing sets,
    /// ascending by author id.
    pub common_authors: Vec<AuthorId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScatterSet {
    pub label: String,
    /// Persistent-cohort authors in vertex order (ascending author id).
    pub authors: Vec<AuthorId>,
    /// `(d2, d4)` of each author, parallel to `authors`.
    pub points: Vec<(u64, u64)>,
}

/// Collects `(d2, d4)` pairs over cohort 4 of each network. Networks whose
/// persistent cohort is empty are skipped entirely (they contribute no set
/// and do not force the common intersection empty).
pub fn persistent_scatter(items: &[(&CollabNetwork, &[GraphletVector])]) -> PersistentScatter {
    let mut sets = Vec::new();
    for (net, field) in items {
        assert_eq!(field.len(), net.graph.n_vertices());
        let start = net.boundaries[2]; // cohorts 1..3 precede cohort 4
        let end = net.boundaries[3];
        if start == end {
            continue;
        }
        let authors: Vec<AuthorId> = (start..end).map(|v| net.graph.vertex_key(v)).collect();
        let points: Vec<(u64, u64)> = (start..end).map(|v| (field[v].d2, field[v].d4)).collect();
        sets.push(ScatterSet {
            label: net.epoch.label.clone(),
            authors,
            points,
        });
    }

    let common_authors = match sets.split_first() {
        None => Vec::new(),
        Some((first, rest)) => {
            let mut common = first.authors.clone();
            for set in rest {
                common.retain(|a| set.authors.binary_search(a).is_ok());
            }
            common
        }
    };
    PersistentScatter {
        sets,
        common_authors,
    }
}

impl PersistentScatter {
    pub fn write_csv<W: Write>(
        &self,
        mut out: W,
        mut key_of: impl FnMut(AuthorId) -> String,
    ) -> io::Result<()> {
        writeln!(out, "network,vertex_key,d2,d4,common")?;
        for set in &self.sets {
            for (a, &(d2, d4)) in set.authors.iter().zip(&set.points) {
                let common = self.common_authors.binary_search(a).is_ok();
                writeln!(out, "{},{},{},{},{}", set.label, key_of(*a), d2, d4, common)?;
            }
        }
        Ok(())
    }
}

/// Per-epoch cohort sizes with vertex totals and largest-component sizes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohortTable {
    pub labels: Vec<String>,
    pub sizes: Vec<[usize; 7]>,
    pub totals: Vec<usize>,
    pub lcc: Vec<usize>,
}

pub fn cohort_table(networks: &[&CollabNetwork]) -> CohortTable {
    CohortTable {
        labels: networks.iter().map(|n| n.epoch.label.clone()).collect(),
        sizes: networks.iter().map(|n| n.cohort_sizes()).collect(),
        totals: networks.iter().map(|n| n.graph.n_vertices()).collect(),
        lcc: networks.iter().map(|n| n.graph.largest_component()).collect(),
    }
}

impl CohortTable {
    /// Rows: the seven cohorts, then the vertex total, then the largest
    /// connected component; one column per network.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "cohort,{}", self.labels.join(","))?;
        for k in 0..7 {
            write!(out, "{}", k + 1)?;
            for sizes in &self.sizes {
                write!(out, ",{}", sizes[k])?;
            }
            writeln!(out)?;
        }
        write!(out, "|V|")?;
        for t in &self.totals {
            write!(out, ",{t}")?;
        }
        writeln!(out)?;
        write!(out, "LCC")?;
        for l in &self.lcc {
            write!(out, ",{l}")?;
        }
        writeln!(out)
    }
}

/// Bandwidth-reducing display permutation: cohorts stay contiguous in order
/// 1..7; within each cohort, reverse Cuthill–McKee over the cohort-induced
/// subgraph (BFS from a minimum-degree vertex, neighbors by ascending
/// degree, order reversed). `order[c]` is the vertex shown at position `c`.
pub fn display_order(net: &CollabNetwork) -> Vec<usize> {
    let mut order = Vec::with_capacity(net.graph.n_vertices());
    let mut start = 0usize;
    for k in 0..7 {
        let end = net.boundaries[k];
        rcm_range(net, start, end, &mut order);
        start = end;
    }
    order
}

fn rcm_range(net: &CollabNetwork, start: usize, end: usize, out: &mut Vec<usize>) {
    let size = end - start;
    if size == 0 {
        return;
    }
    let g = &net.graph;
    let in_range = |u: usize| u >= start && u < end;
    let ideg: Vec<usize> = (start..end)
        .map(|v| g.neighbors(v).iter().filter(|&&u| in_range(u as usize)).count())
        .collect();

    let mut seeds: Vec<usize> = (0..size).collect();
    seeds.sort_by_key(|&i| (ideg[i], i));
    let mut visited = vec![false; size];
    let mut block = Vec::with_capacity(size);
    let mut cursor = 0usize;
    let mut queue = VecDeque::new();
    while block.len() < size {
        while visited[seeds[cursor]] {
            cursor += 1;
        }
        let seed = seeds[cursor];
        visited[seed] = true;
        queue.push_back(seed);
        while let Some(i) = queue.pop_front() {
            block.push(start + i);
            let mut next: Vec<usize> = g
                .neighbors(start + i)
                .iter()
                .map(|&u| u as usize)
                .filter(|&u| in_range(u) && !visited[u - start])
                .map(|u| u - start)
                .collect();
            next.sort_by_key(|&j| (ideg[j], j));
            for j in next {
                visited[j] = true;
                queue.push_back(j);
            }
        }
    }
    block.reverse();
    out.extend_from_slice(&block);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_core::CollabGraph;
    use crate::graphlet::transform;
    use crate::temporal::Epoch;

    fn field_with_degrees(degrees: &[u64]) -> Vec<GraphletVector> {
        degrees
            .iter()
            .enumerate()
            .map(|(i, &d1)| GraphletVector {
                vertex: AuthorId(i as u32),
                d0: 1,
                d1,
                d2: 0,
                d3: 0,
                d4: 0,
            })
            .collect()
    }

    #[test]
    fn histogram_uniform_degrees_fill_one_bin() {
        let field = field_with_degrees(&[1; 12]);
        let h = degree_histogram(&field, HistogramSpec::default());
        assert_eq!(h.counts[0], 12);
        assert_eq!(h.total(), 12);
        assert_eq!(h.counts.iter().filter(|&&c| c > 0).count(), 1);
    }

    #[test]
    fn histogram_binning_rule() {
        let field = field_with_degrees(&[1, 5, 900]);
        let h = degree_histogram(&field, HistogramSpec::default());
        assert_eq!(h.counts[0], 1);
        assert_eq!(h.counts[1], 1);
        assert_eq!(*h.counts.last().unwrap(), 1);
        assert_eq!(h.total(), 3);
        assert_eq!(h.bin_range(0), (0, Some(3)));
        assert_eq!(h.bin_range(1), (4, Some(7)));
        assert_eq!(h.bin_range(h.counts.len() - 1), (800, None));
    }

    #[test]
    fn histogram_spec_validation() {
        assert!(HistogramSpec::new(0, 800, true).is_err());
        assert!(HistogramSpec::new(4, 801, true).is_err());
        assert!(HistogramSpec::new(4, 800, true).is_ok());
    }

    #[test]
    fn histogram_csv_labels_tail() {
        let field = field_with_degrees(&[0, 9]);
        let h = degree_histogram(&field, HistogramSpec::new(4, 8, false).unwrap());
        let mut buf = Vec::new();
        h.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "bin,count\n0-3,1\n4-7,0\n8+,1\n");
    }

    #[test]
    fn slope_of_exact_power_law() {
        // counts ∝ center^-2 exactly in log space
        let spec = HistogramSpec::new(1, 100, true).unwrap();
        let mut counts = vec![0u64; spec.n_bins()];
        for (i, c) in counts.iter_mut().enumerate().skip(1).take(50) {
            *c = (1_000_000.0 / (i as f64 * i as f64)).round() as u64;
        }
        let h = DegreeHistogram { spec, counts };
        let slope = log_log_slope(&h, 10..40).unwrap();
        assert!((slope + 2.0).abs() < 0.05, "slope {slope}");
    }

    #[test]
    fn slope_needs_two_points() {
        let field = field_with_degrees(&[1, 1, 1]);
        let h = degree_histogram(&field, HistogramSpec::default());
        assert_eq!(log_log_slope(&h, 0..201), None);
    }

    fn graph(n: u32, edges: &[(u32, u32)]) -> CollabGraph {
        let vs = (0..n).map(AuthorId).collect();
        let es: Vec<_> = edges
            .iter()
            .map(|&(a, b)| (AuthorId(a), AuthorId(b), 1))
            .collect();
        CollabGraph::from_weighted_edges(vs, &es)
    }

    #[test]
    fn rank_size_on_triangle_is_flat() {
        let field = transform(&graph(3, &[(0, 1), (1, 2), (0, 2)]));
        let curve = rank_size_curves(&field);
        assert_eq!(curve.d1, vec![2, 2, 2]);
        assert_eq!(curve.d2, vec![0, 0, 0]);
        assert!(curve.d1.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn rank_size_on_star() {
        let edges: Vec<(u32, u32)> = (1..10).map(|l| (0, l)).collect();
        let field = transform(&graph(10, &edges));
        let curve = rank_size_curves(&field);
        assert_eq!(curve.d1[0], 9);
        assert_eq!(curve.d2[0], 36);
        assert_eq!(&curve.d1[1..], &[1; 9]);
        assert_eq!(&curve.d2[1..], &[0; 9]);
        // ties broken by ascending author id
        assert_eq!(curve.vertices[1], AuthorId(1));
        assert_eq!(curve.vertices[9], AuthorId(9));
    }

    fn synthetic_net(label: &str, n_articles: usize, seed: u64) -> CollabNetwork {
        let lg = crate::ingest::generate_synthetic(&crate::ingest::SyntheticConfig {
            n_articles,
            seed,
            ..Default::default()
        })
        .unwrap();
        let epoch = Epoch::from_years(label, 2003, 2005).unwrap();
        let triad = crate::temporal::extract_triad(&lg, &epoch);
        let part = crate::temporal::septa_partition(&lg, &triad);
        crate::temporal::build_epoch_collab(&lg, &triad, &part)
    }

    #[test]
    fn scatter_single_network_common_is_cohort_four() {
        let net = synthetic_net("one", 300, 3);
        let field = transform(&net.graph);
        let scatter = persistent_scatter(&[(&net, &field)]);
        assert_eq!(scatter.sets.len(), 1);
        assert!(!scatter.sets[0].authors.is_empty(), "fixture needs cohort 4");
        assert_eq!(scatter.common_authors, scatter.sets[0].authors);
        for (i, &(d2, d4)) in scatter.sets[0].points.iter().enumerate() {
            let v = net
                .graph
                .local_index(scatter.sets[0].authors[i])
                .unwrap();
            assert_eq!((field[v].d2, field[v].d4), (d2, d4));
        }
    }

    #[test]
    fn scatter_disjoint_cohorts_share_nothing() {
        let a = synthetic_net("a", 250, 1);
        let b = synthetic_net("b", 250, 99);
        let fa = transform(&a.graph);
        let fb = transform(&b.graph);
        let scatter = persistent_scatter(&[(&a, &fa), (&b, &fb)]);
        if scatter.sets.len() == 2 {
            // different corpora never share authors with identical ids' roles;
            // the intersection is whatever binary search finds — verify it is
            // consistent with membership in both sets
            for c in &scatter.common_authors {
                assert!(scatter.sets.iter().all(|s| s.authors.binary_search(c).is_ok()));
            }
        }
    }

    #[test]
    fn scatter_skips_networks_without_persistent_cohort() {
        let mut net = synthetic_net("late", 300, 3);
        // force cohort 4 empty by collapsing its boundary range
        let field = transform(&net.graph);
        net.boundaries[3] = net.boundaries[2];
        let scatter = persistent_scatter(&[(&net, &field)]);
        assert!(scatter.sets.is_empty());
        assert!(scatter.common_authors.is_empty());
    }

    #[test]
    fn cohort_table_matches_hand_count() {
        let net = {
            // reuse the temporal toy: cohorts 1, 5, 7 with a 3-vertex path
            let lg = crate::ingest::LiteratureGraph {
                citations: crate::graph_core::CitationGraph::from_edges(
                    vec![
                        crate::graph_core::Timestamp::from_year(2001),
                        crate::graph_core::Timestamp::from_year(2003),
                        crate::graph_core::Timestamp::from_year(2005),
                    ],
                    vec![(1, 0), (2, 0), (2, 1)],
                )
                .0,
                authorship: crate::graph_core::Bipartite::from_pairs(
                    3,
                    3,
                    vec![(0, 0), (0, 1), (1, 1), (1, 2), (2, 2)],
                ),
                article_keys: vec!["A".into(), "B".into(), "C".into()],
                author_keys: vec!["u".into(), "v".into(), "w".into()],
            };
            let epoch = Epoch::from_years("mid", 2003, 2003).unwrap();
            let triad = crate::temporal::extract_triad(&lg, &epoch);
            let part = crate::temporal::septa_partition(&lg, &triad);
            crate::temporal::build_epoch_collab(&lg, &triad, &part)
        };
        let table = cohort_table(&[&net]);
        assert_eq!(table.sizes[0], [1, 0, 0, 0, 1, 0, 1]);
        assert_eq!(table.totals[0], 3);
        assert_eq!(table.lcc[0], 3);
        let mut buf = Vec::new();
        table.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "cohort,mid\n1,1\n2,0\n3,0\n4,0\n5,1\n6,0\n7,1\n|V|,3\nLCC,3\n"
        );
    }

    fn single_cohort_net(edges: &[(u32, u32)], n: u32) -> CollabNetwork {
        CollabNetwork {
            epoch: Epoch::from_years("t", 2000, 2001).unwrap(),
            graph: graph(n, edges),
            cohort_of_vertex: vec![2; n as usize],
            boundaries: vec![0, n as usize, n as usize, n as usize, n as usize, n as usize, n as usize],
        }
    }

    #[test]
    fn display_order_puts_path_endpoints_at_extremes() {
        let net = single_cohort_net(&[(0, 1), (1, 2), (2, 3), (3, 4)], 5);
        let order = display_order(&net);
        assert_eq!(order.len(), 5);
        let first = order[0];
        let last = order[4];
        assert!(net.graph.degree(first) == 1 && net.graph.degree(last) == 1);
        assert_ne!(first, last);
    }

    #[test]
    fn display_order_is_permutation() {
        let net = single_cohort_net(&[(0, 2), (2, 4), (1, 3)], 6);
        let mut order = display_order(&net);
        order.sort_unstable();
        assert_eq!(order, vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn display_order_respects_cohort_blocks() {
        let net = synthetic_net("blocks", 300, 3);
        let order = display_order(&net);
        assert_eq!(order.len(), net.graph.n_vertices());
        // position of every vertex stays inside its cohort's range
        let mut start = 0usize;
        for k in 0..7 {
            let end = net.boundaries[k];
            for &v in &order[start..end] {
                assert_eq!(net.cohort_of_vertex[v], (k + 1) as u8, "vertex left its cohort block");
            }
            start = end;
        }
    }
}
