//! Directed citation graph in CSR form, with the transpose kept alongside so
//! both citing and cited neighborhoods can be walked.

use std::collections::BTreeMap;

use super::{csr_from_pairs, ArticleId, GraphError, Timestamp};

/// Directed citation graph (citing -> cited) over dense article ids.
///
/// Self-citations and duplicate edges are removed at build time. Edges whose
/// cited article is *later* than the citing article are kept but counted as
/// chronology violations (bibliographic data is only nearly well ordered).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CitationGraph {
    n_articles: usize,
    pub_time: Vec<Timestamp>,
    out_offsets: Vec<usize>,
    out_targets: Vec<u32>,
    in_offsets: Vec<usize>,
    in_sources: Vec<u32>,
}

/// Diagnostics reported by citation graph construction.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CitationBuildStats {
    pub self_loops_dropped: usize,
    pub duplicates_dropped: usize,
    pub chronology_violations: usize,
}

impl CitationGraph {
    /// Builds from id-level edges. Every id must be `< pub_time.len()`.
    pub fn from_edges(
        pub_time: Vec<Timestamp>,
        edges: Vec<(u32, u32)>,
    ) -> (CitationGraph, CitationBuildStats) {
        let n = pub_time.len();
        let mut stats = CitationBuildStats::default();
        let mut kept: Vec<(u32, u32)> = Vec::with_capacity(edges.len());
        for (citing, cited) in edges {
            debug_assert!((citing as usize) < n && (cited as usize) < n);
            if citing == cited {
                stats.self_loops_dropped += 1;
                continue;
            }
            kept.push((citing, cited));
        }
        let before = kept.len();
        let (out_offsets, out_targets) = csr_from_pairs(n, kept);
        stats.duplicates_dropped = before - out_targets.len();

        let mut transpose: Vec<(u32, u32)> = Vec::with_capacity(out_targets.len());
        for citing in 0..n {
            for &cited in &out_targets[out_offsets[citing]..out_offsets[citing + 1]] {
                if pub_time[cited as usize] > pub_time[citing] {
                    stats.chronology_violations += 1;
                }
                transpose.push((cited, citing as u32));
            }
        }
        let (in_offsets, in_sources) = csr_from_pairs(n, transpose);

        (
            CitationGraph {
                n_articles: n,
                pub_time,
                out_offsets,
                out_targets,
                in_offsets,
                in_sources,
            },
            stats,
        )
    }

    pub fn n_articles(&self) -> usize {
        self.n_articles
    }

    pub fn n_edges(&self) -> usize {
        self.out_targets.len()
    }

    pub fn pub_time(&self, a: ArticleId) -> Timestamp {
        self.pub_time[a.index()]
    }

    pub fn pub_times(&self) -> &[Timestamp] {
        &self.pub_time
    }

    /// Articles cited by `a`, ascending by id.
    pub fn cited_by(&self, a: ArticleId) -> impl Iterator<Item = ArticleId> + '_ {
        self.out_targets[self.out_offsets[a.index()]..self.out_offsets[a.index() + 1]]
            .iter()
            .map(|&t| ArticleId(t))
    }

    /// Articles citing `a`, ascending by id.
    pub fn citing(&self, a: ArticleId) -> impl Iterator<Item = ArticleId> + '_ {
        self.in_sources[self.in_offsets[a.index()]..self.in_offsets[a.index() + 1]]
            .iter()
            .map(|&s| ArticleId(s))
    }

    /// All (citing, cited) edges in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (ArticleId, ArticleId)> + '_ {
        (0..self.n_articles).flat_map(move |citing| {
            self.cited_by(ArticleId(citing as u32))
                .map(move |cited| (ArticleId(citing as u32), cited))
        })
    }

    pub(crate) fn csr_parts(&self) -> (&[usize], &[u32]) {
        (&self.out_offsets, &self.out_targets)
    }

    pub(crate) fn from_csr_parts(
        pub_time: Vec<Timestamp>,
        out_offsets: Vec<usize>,
        out_targets: Vec<u32>,
    ) -> CitationGraph {
        let n = pub_time.len();
        let mut transpose: Vec<(u32, u32)> = Vec::with_capacity(out_targets.len());
        for citing in 0..n {
            for &cited in &out_targets[out_offsets[citing]..out_offsets[citing + 1]] {
                transpose.push((cited, citing as u32));
            }
        }
        let (in_offsets, in_sources) = csr_from_pairs(n, transpose);
        CitationGraph {
            n_articles: n,
            pub_time,
            out_offsets,
            out_targets,
            in_offsets,
            in_sources,
        }
    }
}

/// Builds a citation graph from keyed edges. Internal ids are assigned by the
/// lexicographic rank of the external key, so the result is independent of
/// edge order. Returns the key table (indexed by id) alongside the graph.
pub fn build_citation_graph(
    edges: &[(String, String)],
    times: &BTreeMap<String, Timestamp>,
) -> Result<(CitationGraph, Vec<String>, CitationBuildStats), GraphError> {
    let keys: Vec<String> = times.keys().cloned().collect(); // BTreeMap: already sorted
    let index: BTreeMap<&str, u32> = keys
        .iter()
        .enumerate()
        .map(|(i, k)| (k.as_str(), i as u32))
        .collect();
    let mut id_edges = Vec::with_capacity(edges.len());
    for (citing, cited) in edges {
        let c = *index
            .get(citing.as_str())
            .ok_or_else(|| GraphError::UnknownKey(citing.clone()))?;
        let d = *index
            .get(cited.as_str())
            .ok_or_else(|| GraphError::UnknownKey(cited.clone()))?;
        id_edges.push((c, d));
    }
    let pub_time = keys.iter().map(|k| times[k.as_str()]).collect();
    let (graph, stats) = CitationGraph::from_edges(pub_time, id_edges);
    Ok((graph, keys, stats))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn times(entries: &[(&str, i32)]) -> BTreeMap<String, Timestamp> {
        entries
            .iter()
            .map(|&(k, y)| (k.to_string(), Timestamp::from_year(y)))
            .collect()
    }

    fn edges(list: &[(&str, &str)]) -> Vec<(String, String)> {
        list.iter()
            .map(|&(a, b)| (a.to_string(), b.to_string()))
            .collect()
    }

    #[test]
    fn backward_citation_has_no_violation() {
        let (g, keys, stats) =
            build_citation_graph(&edges(&[("B", "A")]), &times(&[("A", 2001), ("B", 2003)]))
                .unwrap();
        assert_eq!(keys, vec!["A", "B"]);
        assert_eq!(g.n_edges(), 1);
        assert_eq!(stats.chronology_violations, 0);
        let cited: Vec<_> = g.cited_by(ArticleId(1)).collect();
        assert_eq!(cited, vec![ArticleId(0)]);
    }

    #[test]
    fn self_loop_dropped_and_counted() {
        let (g, _, stats) =
            build_citation_graph(&edges(&[("A", "A")]), &times(&[("A", 2001)])).unwrap();
        assert_eq!(g.n_edges(), 0);
        assert_eq!(stats.self_loops_dropped, 1);
    }

    #[test]
    fn forward_citation_stored_and_reported() {
        let (g, _, stats) =
            build_citation_graph(&edges(&[("A", "B")]), &times(&[("A", 2001), ("B", 2003)]))
                .unwrap();
        assert_eq!(g.n_edges(), 1);
        assert_eq!(stats.chronology_violations, 1);
    }

    #[test]
    fn duplicate_edges_collapse() {
        let (g, _, stats) = build_citation_graph(
            &edges(&[("B", "A"), ("B", "A")]),
            &times(&[("A", 2001), ("B", 2003)]),
        )
        .unwrap();
        assert_eq!(g.n_edges(), 1);
        assert_eq!(stats.duplicates_dropped, 1);
    }

    #[test]
    fn unknown_key_rejected_with_offender() {
        let err = build_citation_graph(&edges(&[("B", "Z")]), &times(&[("B", 2003)])).unwrap_err();
        assert_eq!(err, GraphError::UnknownKey("Z".to_string()));
    }

    #[test]
    fn transpose_is_consistent() {
        let (g, _, _) = build_citation_graph(
            &edges(&[("C", "A"), ("C", "B"), ("B", "A")]),
            &times(&[("A", 2001), ("B", 2003), ("C", 2005)]),
        )
        .unwrap();
        let citing_a: Vec<_> = g.citing(ArticleId(0)).collect();
        assert_eq!(citing_a, vec![ArticleId(1), ArticleId(2)]);
        assert_eq!(g.edges().count(), 3);
    }
}
