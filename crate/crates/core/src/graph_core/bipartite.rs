//! Article-author incidence stored as a CSR pair (forward and transpose).

use super::{csr_from_pairs, ArticleId, AuthorId};

/// Article-author bipartite incidence. Both orientations are stored so that
/// author lists per article and article lists per author are O(degree).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartite {
    n_articles: usize,
    n_authors: usize,
    art_offsets: Vec<usize>,
    art_authors: Vec<u32>,
    auth_offsets: Vec<usize>,
    auth_articles: Vec<u32>,
}

impl Bipartite {
    /// Builds from (article, author) incidence pairs; duplicates collapse.
    pub fn from_pairs(n_articles: usize, n_authors: usize, pairs: Vec<(u32, u32)>) -> Bipartite {
        let (art_offsets, art_authors) = csr_from_pairs(n_articles, pairs);
        let mut transpose = Vec::with_capacity(art_authors.len());
        for a in 0..n_articles {
            for &u in &art_authors[art_offsets[a]..art_offsets[a + 1]] {
                debug_assert!((u as usize) < n_authors);
                transpose.push((u, a as u32));
            }
        }
        let (auth_offsets, auth_articles) = csr_from_pairs(n_authors, transpose);
        Bipartite {
            n_articles,
            n_authors,
            art_offsets,
            art_authors,
            auth_offsets,
            auth_articles,
        }
    }

    pub fn n_articles(&self) -> usize {
        self.n_articles
    }

    pub fn n_authors(&self) -> usize {
        self.n_authors
    }

    /// Number of (article, author) incidence links.
    pub fn n_links(&self) -> usize {
        self.art_authors.len()
    }

    pub fn authors_of(&self, a: ArticleId) -> impl Iterator<Item = AuthorId> + '_ {
        self.art_authors[self.art_offsets[a.index()]..self.art_offsets[a.index() + 1]]
            .iter()
            .map(|&u| AuthorId(u))
    }

    pub fn articles_of(&self, u: AuthorId) -> impl Iterator<Item = ArticleId> + '_ {
        self.auth_articles[self.auth_offsets[u.index()]..self.auth_offsets[u.index() + 1]]
            .iter()
            .map(|&a| ArticleId(a))
    }

    pub(crate) fn csr_parts(&self) -> (&[usize], &[u32]) {
        (&self.art_offsets, &self.art_authors)
    }

    pub(crate) fn from_csr_parts(
        n_articles: usize,
        n_authors: usize,
        art_offsets: Vec<usize>,
        art_authors: Vec<u32>,
    ) -> Bipartite {
        let mut transpose = Vec::with_capacity(art_authors.len());
        for a in 0..n_articles {
            for &u in &art_authors[art_offsets[a]..art_offsets[a + 1]] {
                transpose.push((u, a as u32));
            }
        }
        let (auth_offsets, auth_articles) = csr_from_pairs(n_authors, transpose);
        Bipartite {
            n_articles,
            n_authors,
            art_offsets,
            art_authors,
            auth_offsets,
            auth_articles,
        }
    }
}
