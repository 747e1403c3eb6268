//! Corpus ingestion: parsing and validation of literature-graph input files,
//! a binary cache for fast reloads, and a synthetic-corpus generator.
//!
//! A corpus arrives as three UTF-8 tab-separated files:
//!
//! - articles: `external_key<TAB>year[-month]`, one article per line
//! - citations: `citing_key<TAB>cited_key`
//! - authorship: `article_key<TAB>author_key`
//!
//! Internal dense ids are assigned by lexicographic rank of the external
//! key, for articles and authors alike. This makes loading independent of
//! file line order and makes `load_corpus` invert [`write_corpus`] exactly.

mod cache;
mod synthetic;

pub use cache::{load_cache, save_cache, CacheError};
pub use synthetic::{generate_synthetic, SyntheticConfig, SyntheticError, TeamSizeDist};

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::graph_core::{
    build_citation_graph, ArticleId, AuthorId, Bipartite, CitationBuildStats, CitationGraph,
    GraphError, Timestamp,
};

/// A validated corpus: citation digraph and authorship bipartite over shared
/// index spaces, plus the external keys for both node kinds. Publication
/// times live in [`CitationGraph`]; `article_keys[i]` and `author_keys[j]`
/// are both lexicographically sorted by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiteratureGraph {
    pub citations: CitationGraph,
    pub authorship: Bipartite,
    pub article_keys: Vec<String>,
    pub author_keys: Vec<String>,
}

impl LiteratureGraph {
    pub fn n_articles(&self) -> usize {
        self.article_keys.len()
    }

    pub fn n_authors(&self) -> usize {
        self.author_keys.len()
    }

    /// Article–author incidence count.
    pub fn n_links(&self) -> usize {
        self.authorship.n_links()
    }

    pub fn article_index(&self, key: &str) -> Option<ArticleId> {
        self.article_keys
            .binary_search_by(|k| k.as_str().cmp(key))
            .ok()
            .map(|i| ArticleId(i as u32))
    }

    pub fn author_index(&self, key: &str) -> Option<AuthorId> {
        self.author_keys
            .binary_search_by(|k| k.as_str().cmp(key))
            .ok()
            .map(|i| AuthorId(i as u32))
    }

    pub fn article_key(&self, a: ArticleId) -> &str {
        &self.article_keys[a.index()]
    }

    pub fn author_key(&self, u: AuthorId) -> &str {
        &self.author_keys[u.index()]
    }
}

/// Load-time tallies, including rows dropped during normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IngestSummary {
    pub n_articles: usize,
    pub n_authors: usize,
    pub n_links: usize,
    pub n_citations: usize,
    pub citation_stats: CitationBuildStats,
    pub duplicate_authorship_dropped: usize,
}

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{}:{line}: {msg}", path.display())]
    Malformed {
        path: PathBuf,
        line: usize,
        msg: String,
    },
    #[error("{}:{line}: unknown article key {key:?}", path.display())]
    UnknownArticle {
        path: PathBuf,
        line: usize,
        key: String,
    },
}

impl IngestError {
    fn io(path: &Path, source: io::Error) -> IngestError {
        IngestError::Io {
            path: path.to_owned(),
            source,
        }
    }

    fn malformed(path: &Path, line: usize, msg: impl Into<String>) -> IngestError {
        IngestError::Malformed {
            path: path.to_owned(),
            line,
            msg: msg.into(),
        }
    }
}

fn read_lines(path: &Path) -> Result<Vec<String>, IngestError> {
    let text = fs::read_to_string(path).map_err(|e| IngestError::io(path, e))?;
    Ok(text.lines().map(str::to_owned).collect())
}

/// Splits a record into exactly two tab-separated fields.
fn two_fields<'a>(path: &Path, line_no: usize, line: &'a str) -> Result<(&'a str, &'a str), IngestError> {
    let mut it = line.split('\t');
    match (it.next(), it.next(), it.next()) {
        (Some(a), Some(b), None) if !a.is_empty() && !b.is_empty() => Ok((a, b)),
        _ => Err(IngestError::malformed(
            path,
            line_no,
            format!("expected two tab-separated fields, got {line:?}"),
        )),
    }
}

/// Parses and validates the three corpus files. Blank lines are ignored.
/// Line numbers in errors are 1-based positions in the offending file.
pub fn load_corpus(
    articles_path: &Path,
    citations_path: &Path,
    authorship_path: &Path,
) -> Result<(LiteratureGraph, IngestSummary), IngestError> {
    // articles: external key -> publication time, keys must be unique
    let mut times: BTreeMap<String, Timestamp> = BTreeMap::new();
    for (i, line) in read_lines(articles_path)?.iter().enumerate() {
        let line_no = i + 1;
        if line.is_empty() {
            continue;
        }
        let (key, stamp) = two_fields(articles_path, line_no, line)?;
        let t = Timestamp::parse(stamp)
            .map_err(|e| IngestError::malformed(articles_path, line_no, e.to_string()))?;
        if times.insert(key.to_owned(), t).is_some() {
            return Err(IngestError::malformed(
                articles_path,
                line_no,
                format!("duplicate article key {key:?}"),
            ));
        }
    }

    // citations: both endpoints must be declared articles
    let mut citation_edges: Vec<(String, String)> = Vec::new();
    for (i, line) in read_lines(citations_path)?.iter().enumerate() {
        let line_no = i + 1;
        if line.is_empty() {
            continue;
        }
        let (citing, cited) = two_fields(citations_path, line_no, line)?;
        for key in [citing, cited] {
            if !times.contains_key(key) {
                return Err(IngestError::UnknownArticle {
                    path: citations_path.to_owned(),
                    line: line_no,
                    key: key.to_owned(),
                });
            }
        }
        citation_edges.push((citing.to_owned(), cited.to_owned()));
    }

    // authorship: article must be declared; authors define their own universe
    let mut incidences: Vec<(String, String)> = Vec::new();
    for (i, line) in read_lines(authorship_path)?.iter().enumerate() {
        let line_no = i + 1;
        if line.is_empty() {
            continue;
        }
        let (article, author) = two_fields(authorship_path, line_no, line)?;
        if !times.contains_key(article) {
            return Err(IngestError::UnknownArticle {
                path: authorship_path.to_owned(),
                line: line_no,
                key: article.to_owned(),
            });
        }
        incidences.push((article.to_owned(), author.to_owned()));
    }

    let (citations, article_keys, citation_stats) =
        match build_citation_graph(&citation_edges, &times) {
            Ok(parts) => parts,
            Err(GraphError::UnknownKey(_)) => unreachable!("endpoints validated above"),
        };

    let mut author_keys: Vec<String> = incidences.iter().map(|(_, u)| u.clone()).collect();
    author_keys.sort_unstable();
    author_keys.dedup();

    let article_rank: BTreeMap<&str, u32> = article_keys
        .iter()
        .enumerate()
        .map(|(i, k)| (k.as_str(), i as u32))
        .collect();
    let author_rank: BTreeMap<&str, u32> = author_keys
        .iter()
        .enumerate()
        .map(|(i, k)| (k.as_str(), i as u32))
        .collect();
    let pairs: Vec<(u32, u32)> = incidences
        .iter()
        .map(|(a, u)| (article_rank[a.as_str()], author_rank[u.as_str()]))
        .collect();
    let raw_pairs = pairs.len();
    let authorship = Bipartite::from_pairs(article_keys.len(), author_keys.len(), pairs);

    let lg = LiteratureGraph {
        citations,
        authorship,
        article_keys,
        author_keys,
    };
    let summary = IngestSummary {
        n_articles: lg.n_articles(),
        n_authors: lg.n_authors(),
        n_links: lg.n_links(),
        n_citations: lg.citations.n_edges(),
        citation_stats,
        duplicate_authorship_dropped: raw_pairs - lg.n_links(),
    };
    Ok((lg, summary))
}

/// Writes the three corpus files in canonical order (keys ascending), the
/// exact inverse of [`load_corpus`].
pub fn write_corpus(
    lg: &LiteratureGraph,
    articles_path: &Path,
    citations_path: &Path,
    authorship_path: &Path,
) -> io::Result<()> {
    let mut articles = io::BufWriter::new(fs::File::create(articles_path)?);
    for (i, key) in lg.article_keys.iter().enumerate() {
        writeln!(articles, "{key}\t{}", lg.citations.pub_time(ArticleId(i as u32)))?;
    }
    articles.flush()?;

    let mut citations = io::BufWriter::new(fs::File::create(citations_path)?);
    for citing in 0..lg.n_articles() {
        for cited in lg.citations.cited_by(ArticleId(citing as u32)) {
            writeln!(
                citations,
                "{}\t{}",
                lg.article_keys[citing], lg.article_keys[cited.index()]
            )?;
        }
    }
    citations.flush()?;

    let mut authorship = io::BufWriter::new(fs::File::create(authorship_path)?);
    for article in 0..lg.n_articles() {
        for author in lg.authorship.authors_of(ArticleId(article as u32)) {
            writeln!(
                authorship,
                "{}\t{}",
                lg.article_keys[article], lg.author_keys[author.index()]
            )?;
        }
    }
    authorship.flush()
}

#[cfg(test)]
pub(crate) fn toy_corpus() -> LiteratureGraph {
    // A(2001) by {u,v}; B(2003) by {v,w}; C(2005) by {w}; B→A, C→A, C→B
    let dir = tempfile::tempdir().unwrap();
    let articles = dir.path().join("articles.tsv");
    let citations = dir.path().join("citations.tsv");
    let authorship = dir.path().join("authorship.tsv");
    fs::write(&articles, "A\t2001\nB\t2003\nC\t2005\n").unwrap();
    fs::write(&citations, "B\tA\nC\tA\nC\tB\n").unwrap();
    fs::write(&authorship, "A\tu\nA\tv\nB\tv\nB\tw\nC\tw\n").unwrap();
    load_corpus(&articles, &citations, &authorship).unwrap().0
}
