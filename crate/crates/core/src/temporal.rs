//! Epoch-centered triad extraction and the septa-partition of involved
//! authors.
//!
//! An epoch `[t_start, t_end]` selects the *core* articles published inside
//! the window. One hop out along citations lie the *precursors* (`cout`,
//! articles cited by core) and one hop in the *followers* (`cin`, articles
//! citing core). The retained citation subgraph is open: only core→core,
//! core→cout, and cin→core links survive; links internal to `cout`/`cin` or
//! between them are discarded.
//!
//! Authors incident to the triad fall into seven cohorts by which of the
//! three article blocks they authored:
//!
//! | cohort | blocks            | | cohort | blocks        |
//! |--------|-------------------|-|--------|---------------|
//! | 1      | cout only         | | 5      | core ∩ cin    |
//! | 2      | core only         | | 6      | cout ∩ cin    |
//! | 3      | cin only          | | 7      | cout ∩ core   |
//! | 4      | all three (persistent cohort) |
//!
//! Cohorts whose block sets are disjoint can never share a collaboration
//! edge (a shared article would put both endpoints in that article's
//! block); see [`DISJOINT_COHORT_PAIRS`].

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph_core::{
    collaboration_pairs, ArticleId, AuthorId, CollabGraph, Timestamp, TimestampError,
};
use crate::ingest::LiteratureGraph;

/// A labeled inclusive time window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Epoch {
    pub label: String,
    pub t_start: Timestamp,
    pub t_end: Timestamp,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EpochError {
    #[error("epoch spec {0:?} must look like label=YYYY[-MM]:YYYY[-MM]")]
    BadSyntax(String),
    #[error("epoch {label:?}: {source}")]
    BadTimestamp {
        label: String,
        #[source]
        source: TimestampError,
    },
    #[error("epoch {label:?}: start {start} is after end {end}")]
    Reversed {
        label: String,
        start: Timestamp,
        end: Timestamp,
    },
}

impl Epoch {
    pub fn new(
        label: impl Into<String>,
        t_start: Timestamp,
        t_end: Timestamp,
    ) -> Result<Epoch, EpochError> {
        let label = label.into();
        if t_start > t_end {
            return Err(EpochError::Reversed {
                label,
                start: t_start,
                end: t_end,
            });
        }
        Ok(Epoch {
            label,
            t_start,
            t_end,
        })
    }

    /// Year-bounded epoch: January of `start` through December of `end`.
    pub fn from_years(label: impl Into<String>, start: i32, end: i32) -> Result<Epoch, EpochError> {
        Epoch::new(label, Timestamp::from_year(start), Timestamp::year_end(end))
    }

    /// Parses `label=YYYY[-MM]:YYYY[-MM]`. A year-only start bound means
    /// January; a year-only end bound means December (inclusive window).
    pub fn parse(spec: &str) -> Result<Epoch, EpochError> {
        let bad = || EpochError::BadSyntax(spec.to_owned());
        let (label, range) = spec.split_once('=').ok_or_else(bad)?;
        if label.is_empty() {
            return Err(bad());
        }
        let (start_str, end_str) = range.split_once(':').ok_or_else(bad)?;
        let stamp = |s: &str, year_to_december: bool| -> Result<Timestamp, EpochError> {
            if s.is_empty() {
                return Err(bad());
            }
            let parsed = Timestamp::parse(s).map_err(|source| EpochError::BadTimestamp {
                label: label.to_owned(),
                source,
            })?;
            if year_to_december && !s.contains('-') {
                Ok(Timestamp::year_end(parsed.year()))
            } else {
                Ok(parsed)
            }
        };
        Epoch::new(label, stamp(start_str, false)?, stamp(end_str, true)?)
    }

    pub fn contains(&self, t: Timestamp) -> bool {
        self.t_start <= t && t <= self.t_end
    }

    /// Label with every non-alphanumeric character replaced by `_`, safe for
    /// use in file names.
    pub fn file_label(&self) -> String {
        self.label
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
            .collect()
    }
}

/// The six epidemic outbreak windows used as built-in defaults.
pub fn canonical_epochs() -> Vec<Epoch> {
    let year = |label: &str, a: i32, b: i32| Epoch::from_years(label, a, b).expect("static");
    vec![
        year("SARS", 2002, 2004),
        year("Swine flu", 2009, 2011),
        year("MERS", 2012, 2014),
        year("Ebola", 2014, 2016),
        year("Avian flu", 2017, 2019),
        Epoch::new(
            "COVID-19",
            Timestamp::from_year_month(2020, 1).expect("static"),
            Timestamp::from_year_month(2020, 6).expect("static"),
        )
        .expect("static"),
    ]
}

/// Epoch-centered open citation triad. Article sets are ascending and
/// pairwise disjoint; the retained edges follow the open pattern only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriadNetwork {
    pub epoch: Epoch,
    pub core: Vec<ArticleId>,
    pub cout: Vec<ArticleId>,
    pub cin: Vec<ArticleId>,
    /// (citing core, cited core)
    pub core_core: Vec<(ArticleId, ArticleId)>,
    /// (citing core, cited precursor)
    pub core_cout: Vec<(ArticleId, ArticleId)>,
    /// (citing follower, cited core)
    pub cin_core: Vec<(ArticleId, ArticleId)>,
}

impl TriadNetwork {
    /// All triad articles, ascending.
    pub fn articles(&self) -> Vec<ArticleId> {
        let mut all: Vec<ArticleId> = self
            .core
            .iter()
            .chain(&self.cout)
            .chain(&self.cin)
            .copied()
            .collect();
        all.sort_unstable();
        all
    }

    pub fn n_edges(&self) -> usize {
        self.core_core.len() + self.core_cout.len() + self.cin_core.len()
    }
}

/// Extracts the triad for `epoch`. Block membership takes precedence
/// core > cout > cin, so an article cited by core *and* citing core lands in
/// `cout` and its citing link is dropped (the open pattern admits no
/// cout→core edge). An epoch matching no articles yields an empty triad.
pub fn extract_triad(lg: &LiteratureGraph, epoch: &Epoch) -> TriadNetwork {
    let n = lg.n_articles();
    let mut in_core = vec![false; n];
    let mut core = Vec::new();
    for i in 0..n {
        let a = ArticleId(i as u32);
        if epoch.contains(lg.citations.pub_time(a)) {
            in_core[i] = true;
            core.push(a);
        }
    }

    let mut in_cout = vec![false; n];
    let mut core_core = Vec::new();
    let mut core_cout = Vec::new();
    for &a in &core {
        for cited in lg.citations.cited_by(a) {
            if in_core[cited.index()] {
                core_core.push((a, cited));
            } else {
                in_cout[cited.index()] = true;
                core_cout.push((a, cited));
            }
        }
    }

    let mut in_cin = vec![false; n];
    let mut cin_core = Vec::new();
    for &a in &core {
        for citing in lg.citations.citing(a) {
            if !in_core[citing.index()] && !in_cout[citing.index()] {
                in_cin[citing.index()] = true;
                cin_core.push((citing, a));
            }
        }
    }

    let collect = |mask: &[bool]| -> Vec<ArticleId> {
        mask.iter()
            .enumerate()
            .filter(|&(_, &m)| m)
            .map(|(i, _)| ArticleId(i as u32))
            .collect()
    };
    core_core.sort_unstable();
    core_cout.sort_unstable();
    cin_core.sort_unstable();
    TriadNetwork {
        epoch: epoch.clone(),
        core,
        cout: collect(&in_cout),
        cin: collect(&in_cin),
        core_core,
        core_cout,
        cin_core,
    }
}

const AUTHORS_COUT: u8 = 0b001;
const AUTHORS_CORE: u8 = 0b010;
const AUTHORS_CIN: u8 = 0b100;

/// cohort number for each block-membership bit triple (index = bits)
const COHORT_OF_BLOCKS: [u8; 8] = [0, 1, 2, 7, 3, 6, 5, 4];

/// Unordered cohort pairs whose defining block sets are disjoint; no
/// collaboration edge can ever join them (the six structurally empty
/// off-diagonal blocks of the cohort-ordered adjacency matrix).
pub const DISJOINT_COHORT_PAIRS: [(u8, u8); 6] =
    [(1, 2), (1, 3), (1, 5), (2, 3), (2, 6), (3, 7)];

/// Partition of the authors incident to a triad into the seven cohorts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeptaPartition {
    /// Per-author cohort in `1..=7`, `0` for authors outside the triad.
    /// Indexed by global author id over the full corpus universe.
    pub cohort_of: Vec<u8>,
    /// `members[k]` lists cohort `k+1` ascending by author id.
    pub members: [Vec<AuthorId>; 7],
}

impl SeptaPartition {
    pub fn sizes(&self) -> [usize; 7] {
        std::array::from_fn(|k| self.members[k].len())
    }

    pub fn n_involved(&self) -> usize {
        self.members.iter().map(Vec::len).sum()
    }

    pub fn cohort(&self, u: AuthorId) -> Option<u8> {
        match self.cohort_of[u.index()] {
            0 => None,
            c => Some(c),
        }
    }

    /// Renames cohorts through a permutation of `1..=7` (`perm[k]` is the
    /// new number of cohort `k+1`), for aligning with an externally
    /// published numbering.
    pub fn relabeled(&self, perm: &[u8; 7]) -> SeptaPartition {
        let mut seen = [false; 7];
        for &p in perm {
            assert!((1..=7).contains(&p), "cohort numbers must lie in 1..=7");
            assert!(!std::mem::replace(&mut seen[p as usize - 1], true), "duplicate cohort number");
        }
        let cohort_of = self
            .cohort_of
            .iter()
            .map(|&c| if c == 0 { 0 } else { perm[c as usize - 1] })
            .collect();
        let mut members: [Vec<AuthorId>; 7] = Default::default();
        for (k, m) in self.members.iter().enumerate() {
            members[perm[k] as usize - 1] = m.clone();
        }
        SeptaPartition { cohort_of, members }
    }
}

/// Assigns every author incident to the triad the cohort determined by
/// which blocks they authored articles in.
pub fn septa_partition(lg: &LiteratureGraph, triad: &TriadNetwork) -> SeptaPartition {
    let mut blocks = vec![0u8; lg.n_authors()];
    let mut mark = |articles: &[ArticleId], bit: u8| {
        for &a in articles {
            for u in lg.authorship.authors_of(a) {
                blocks[u.index()] |= bit;
            }
        }
    };
    mark(&triad.cout, AUTHORS_COUT);
    mark(&triad.core, AUTHORS_CORE);
    mark(&triad.cin, AUTHORS_CIN);

    let cohort_of: Vec<u8> = blocks.iter().map(|&b| COHORT_OF_BLOCKS[b as usize]).collect();
    let mut members: [Vec<AuthorId>; 7] = Default::default();
    for (i, &c) in cohort_of.iter().enumerate() {
        if c != 0 {
            members[c as usize - 1].push(AuthorId(i as u32));
        }
    }
    SeptaPartition { cohort_of, members }
}

/// A collaboration network over one epoch's triad: the projected graph with
/// vertices grouped contiguously by cohort 1..7 (ascending author id within
/// a cohort), the per-vertex cohort labels, and the cumulative cohort
/// boundaries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollabNetwork {
    pub epoch: Epoch,
    pub graph: CollabGraph,
    /// Cohort of each graph vertex (parallel to vertex indices), in `1..=7`.
    pub cohort_of_vertex: Vec<u8>,
    /// Cumulative cohort sizes; `boundaries[6]` equals the vertex count.
    pub boundaries: Vec<usize>,
}

impl CollabNetwork {
    pub fn cohort_sizes(&self) -> [usize; 7] {
        let mut sizes = [0usize; 7];
        let mut prev = 0;
        for (k, &b) in self.boundaries.iter().enumerate() {
            sizes[k] = b - prev;
            prev = b;
        }
        sizes
    }
}

/// Projects the collaboration network of a triad with cohort-grouped vertex
/// order. Every author of a triad article appears, isolated or not.
pub fn build_epoch_collab(
    lg: &LiteratureGraph,
    triad: &TriadNetwork,
    part: &SeptaPartition,
) -> CollabNetwork {
    let articles = triad.articles();
    let (involved, edges) = collaboration_pairs(&lg.authorship, &articles);
    debug_assert!(
        involved.iter().all(|u| part.cohort_of[u.index()] != 0),
        "projection produced an author outside the partition"
    );
    debug_assert_eq!(involved.len(), part.n_involved());

    let mut order: Vec<AuthorId> = Vec::with_capacity(involved.len());
    let mut boundaries = Vec::with_capacity(7);
    let mut cohort_of_vertex = Vec::with_capacity(involved.len());
    for k in 0..7 {
        order.extend_from_slice(&part.members[k]);
        cohort_of_vertex.resize(order.len(), (k + 1) as u8);
        boundaries.push(order.len());
    }
    let graph = CollabGraph::from_weighted_edges(order, &edges);
    CollabNetwork {
        epoch: triad.epoch.clone(),
        graph,
        cohort_of_vertex,
        boundaries,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_core::Bipartite;
    use crate::graph_core::CitationGraph;

    fn corpus(
        years: &[i32],
        citations: &[(u32, u32)],
        authorship: &[(u32, u32)],
        n_authors: usize,
    ) -> LiteratureGraph {
        let pub_time = years.iter().map(|&y| Timestamp::from_year(y)).collect();
        let (citations, _) = CitationGraph::from_edges(pub_time, citations.to_vec());
        let authorship = Bipartite::from_pairs(years.len(), n_authors, authorship.to_vec());
        LiteratureGraph {
            citations,
            authorship,
            article_keys: (0..years.len()).map(|i| format!("a{i:02}")).collect(),
            author_keys: (0..n_authors).map(|u| format!("u{u:02}")).collect(),
        }
    }

    fn ids(v: &[u32]) -> Vec<ArticleId> {
        v.iter().map(|&i| ArticleId(i)).collect()
    }

    #[test]
    fn epoch_parse_year_and_month_bounds() {
        let e = Epoch::parse("MERS=2012:2014").unwrap();
        assert_eq!(e.label, "MERS");
        assert_eq!(e.t_start, Timestamp::from_year(2012));
        assert_eq!(e.t_end, Timestamp::from_year_month(2014, 12).unwrap());

        let c = Epoch::parse("COVID-19=2020-01:2020-06").unwrap();
        assert_eq!(c.t_start, Timestamp::from_year_month(2020, 1).unwrap());
        assert_eq!(c.t_end, Timestamp::from_year_month(2020, 6).unwrap());
        assert_eq!(c.file_label(), "COVID_19");
    }

    #[test]
    fn epoch_parse_rejects_malformed_specs() {
        assert!(matches!(Epoch::parse("MERS"), Err(EpochError::BadSyntax(_))));
        assert!(matches!(Epoch::parse("=2012:2014"), Err(EpochError::BadSyntax(_))));
        assert!(matches!(Epoch::parse("M=2012"), Err(EpochError::BadSyntax(_))));
        assert!(matches!(
            Epoch::parse("M=20x2:2014"),
            Err(EpochError::BadTimestamp { .. })
        ));
        assert!(matches!(
            Epoch::parse("M=2015:2014"),
            Err(EpochError::Reversed { .. })
        ));
    }

    #[test]
    fn canonical_epoch_table() {
        let all = canonical_epochs();
        assert_eq!(all.len(), 6);
        let labels: Vec<&str> = all.iter().map(|e| e.label.as_str()).collect();
        assert_eq!(
            labels,
            ["SARS", "Swine flu", "MERS", "Ebola", "Avian flu", "COVID-19"]
        );
        assert!(all[2].contains(Timestamp::from_year(2013)));
        assert!(!all[5].contains(Timestamp::from_year_month(2020, 7).unwrap()));
    }

    #[test]
    fn toy_triad_blocks() {
        // A(2001) ← B(2003) ← C(2005), C also cites A
        let lg = corpus(
            &[2001, 2003, 2005],
            &[(1, 0), (2, 0), (2, 1)],
            &[(0, 0), (0, 1), (1, 1), (1, 2), (2, 2)],
            3,
        );
        let epoch = Epoch::from_years("mid", 2003, 2003).unwrap();
        let triad = extract_triad(&lg, &epoch);
        assert_eq!(triad.core, ids(&[1]));
        assert_eq!(triad.cout, ids(&[0]));
        assert_eq!(triad.cin, ids(&[2]));
        assert_eq!(triad.core_cout, vec![(ArticleId(1), ArticleId(0))]);
        assert_eq!(triad.cin_core, vec![(ArticleId(2), ArticleId(1))]);
        assert!(triad.core_core.is_empty());
    }

    #[test]
    fn epoch_covering_everything_is_closed() {
        let lg = corpus(&[2001, 2003, 2005], &[(1, 0), (2, 1)], &[(0, 0)], 1);
        let triad = extract_triad(&lg, &Epoch::from_years("all", 2000, 2010).unwrap());
        assert_eq!(triad.core.len(), 3);
        assert!(triad.cout.is_empty());
        assert!(triad.cin.is_empty());
        assert_eq!(triad.core_core.len(), 2);
    }

    #[test]
    fn chain_keeps_one_hop_only() {
        // P1←P2←P3←P4←P5 (each cites its predecessor), epoch = P3's year
        let lg = corpus(
            &[2001, 2002, 2003, 2004, 2005],
            &[(1, 0), (2, 1), (3, 2), (4, 3)],
            &[],
            0,
        );
        let triad = extract_triad(&lg, &Epoch::from_years("mid", 2003, 2003).unwrap());
        assert_eq!(triad.core, ids(&[2]));
        assert_eq!(triad.cout, ids(&[1]));
        assert_eq!(triad.cin, ids(&[3]));
    }

    #[test]
    fn empty_core_yields_empty_triad() {
        let lg = corpus(&[2001], &[], &[], 0);
        let triad = extract_triad(&lg, &Epoch::from_years("none", 1990, 1995).unwrap());
        assert!(triad.core.is_empty() && triad.cout.is_empty() && triad.cin.is_empty());
        assert_eq!(triad.n_edges(), 0);
    }

    #[test]
    fn membership_precedence_drops_back_edges() {
        // D(2002) is cited by core B(2003) and also cites B: D must be cout,
        // and its citing link disappears from the open pattern.
        let lg = corpus(&[2002, 2003], &[(1, 0), (0, 1)], &[], 0);
        let triad = extract_triad(&lg, &Epoch::from_years("w", 2003, 2003).unwrap());
        assert_eq!(triad.core, ids(&[1]));
        assert_eq!(triad.cout, ids(&[0]));
        assert!(triad.cin.is_empty());
        assert_eq!(triad.core_cout.len(), 1);
        assert!(triad.cin_core.is_empty());
    }

    #[test]
    fn toy_cohorts() {
        // authors: u on A(cout), v on A+B(cout+core), w on B+C(core+cin)
        let lg = corpus(
            &[2001, 2003, 2005],
            &[(1, 0), (2, 0), (2, 1)],
            &[(0, 0), (0, 1), (1, 1), (1, 2), (2, 2)],
            3,
        );
        let triad = extract_triad(&lg, &Epoch::from_years("mid", 2003, 2003).unwrap());
        let part = septa_partition(&lg, &triad);
        assert_eq!(part.cohort(AuthorId(0)), Some(1));
        assert_eq!(part.cohort(AuthorId(1)), Some(7));
        assert_eq!(part.cohort(AuthorId(2)), Some(5));
        assert_eq!(part.sizes(), [1, 0, 0, 0, 1, 0, 1]);
        assert_eq!(part.n_involved(), 3);
    }

    #[test]
    fn core_only_author_is_cohort_two() {
        let lg = corpus(&[2003], &[], &[(0, 0)], 1);
        let triad = extract_triad(&lg, &Epoch::from_years("w", 2003, 2003).unwrap());
        let part = septa_partition(&lg, &triad);
        assert_eq!(part.cohort(AuthorId(0)), Some(2));
    }

    #[test]
    fn no_followers_empties_cin_cohorts() {
        // last-window epoch: nothing can cite core
        let lg = corpus(
            &[2001, 2003, 2003],
            &[(1, 0), (2, 0)],
            &[(0, 0), (1, 0), (1, 1), (2, 2)],
            3,
        );
        let triad = extract_triad(&lg, &Epoch::from_years("last", 2003, 2003).unwrap());
        assert!(triad.cin.is_empty());
        let part = septa_partition(&lg, &triad);
        let sizes = part.sizes();
        assert_eq!(&sizes[2..6], &[0, 0, 0, 0]); // cohorts 3,4,5,6
        assert!(sizes[6] > 0); // author 0 spans cout and core
    }

    #[test]
    fn cout_and_cin_author_is_cohort_six() {
        // author 0 on precursor P and follower F, never in core
        let lg = corpus(
            &[2001, 2003, 2005],
            &[(1, 0), (2, 1)],
            &[(0, 0), (1, 1), (2, 0)],
            2,
        );
        let triad = extract_triad(&lg, &Epoch::from_years("mid", 2003, 2003).unwrap());
        let part = septa_partition(&lg, &triad);
        assert_eq!(part.cohort(AuthorId(0)), Some(6));
        assert_eq!(part.cohort(AuthorId(1)), Some(2));
    }

    #[test]
    fn relabeling_permutes_cohorts() {
        let lg = corpus(&[2003], &[], &[(0, 0)], 1);
        let triad = extract_triad(&lg, &Epoch::from_years("w", 2003, 2003).unwrap());
        let part = septa_partition(&lg, &triad);
        let swapped = part.relabeled(&[2, 1, 3, 4, 5, 6, 7]);
        assert_eq!(swapped.cohort(AuthorId(0)), Some(1));
        assert_eq!(swapped.members[0], vec![AuthorId(0)]);
    }

    #[test]
    fn collab_network_groups_cohorts_contiguously() {
        let lg = corpus(
            &[2001, 2003, 2005],
            &[(1, 0), (2, 0), (2, 1)],
            &[(0, 0), (0, 1), (1, 1), (1, 2), (2, 2)],
            3,
        );
        let triad = extract_triad(&lg, &Epoch::from_years("mid", 2003, 2003).unwrap());
        let part = septa_partition(&lg, &triad);
        let net = build_epoch_collab(&lg, &triad, &part);
        // order: cohort 1 (u0), cohort 5 (u2), cohort 7 (u1)
        assert_eq!(
            net.graph.vertex_keys(),
            &[AuthorId(0), AuthorId(2), AuthorId(1)]
        );
        assert_eq!(net.cohort_of_vertex, vec![1, 5, 7]);
        assert_eq!(net.boundaries, vec![1, 1, 1, 1, 2, 2, 3]);
        assert_eq!(net.cohort_sizes(), [1, 0, 0, 0, 1, 0, 1]);
        // edges u0–u1 (article A) and u1–u2 (article B)
        assert_eq!(net.graph.n_edges(), 2);
        let v = net.graph.local_index(AuthorId(1)).unwrap();
        assert_eq!(net.graph.degree(v), 2);
    }

    #[test]
    fn single_core_article_pair() {
        let lg = corpus(&[2003], &[], &[(0, 0), (0, 1)], 2);
        let triad = extract_triad(&lg, &Epoch::from_years("w", 2003, 2003).unwrap());
        let part = septa_partition(&lg, &triad);
        let net = build_epoch_collab(&lg, &triad, &part);
        assert_eq!(net.graph.n_edges(), 1);
        assert_eq!(net.cohort_of_vertex, vec![2, 2]);
    }

    #[test]
    fn no_edges_between_disjoint_cohorts() {
        let lg = crate::ingest::generate_synthetic(&crate::ingest::SyntheticConfig {
            n_articles: 200,
            seed: 11,
            ..Default::default()
        })
        .unwrap();
        let epoch = Epoch::from_years("mid", 2003, 2005).unwrap();
        let triad = extract_triad(&lg, &epoch);
        let part = septa_partition(&lg, &triad);
        let net = build_epoch_collab(&lg, &triad, &part);
        assert!(net.graph.n_edges() > 0, "fixture should be non-trivial");
        for (u, v) in net.graph.edges() {
            let (a, b) = (net.cohort_of_vertex[u], net.cohort_of_vertex[v]);
            let pair = (a.min(b), a.max(b));
            assert!(
                !DISJOINT_COHORT_PAIRS.contains(&pair),
                "edge between structurally disconnected cohorts {pair:?}"
            );
        }
    }
}
