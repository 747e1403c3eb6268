//! Compressed sparse graph structures shared by the whole pipeline.
//!
//! All graphs use dense internal integer ids with side string dictionaries
//! kept elsewhere; set operations and kernels work on integers only. Every
//! structure is immutable after construction and stores neighbors in sorted
//! order so outputs are reproducible.

mod bipartite;
mod citation;
mod collab;

pub use bipartite::Bipartite;
pub use citation::{build_citation_graph, CitationBuildStats, CitationGraph};
pub use collab::{graph_intersection, project_collaboration, CollabGraph};
pub(crate) use collab::collaboration_pairs;

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Dense internal index of an article. Contiguous `0..n_articles`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct ArticleId(pub u32);

/// Dense internal index of an author. Contiguous `0..n_authors`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct AuthorId(pub u32);

impl ArticleId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl AuthorId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Publication time at year or year+month granularity, stored as a month
/// index (`year * 12 + month0`). A year-only timestamp maps to January of
/// that year; a year-only epoch end maps to December, so inclusive year
/// windows behave as expected.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Timestamp(i32);

impl Timestamp {
    pub fn from_year(year: i32) -> Self {
        Timestamp(year * 12)
    }

    pub fn from_year_month(year: i32, month: u8) -> Result<Self, TimestampError> {
        if !(1..=12).contains(&month) {
            return Err(TimestampError::MonthOutOfRange(month));
        }
        Ok(Timestamp(year * 12 + (month as i32 - 1)))
    }

    /// End of the given year (December), used for inclusive epoch bounds.
    pub fn year_end(year: i32) -> Self {
        Timestamp(year * 12 + 11)
    }

    /// Parses `YYYY` or `YYYY-MM`.
    pub fn parse(s: &str) -> Result<Self, TimestampError> {
        let s = s.trim();
        let (year_part, month_part) = match s.split_once('-') {
            Some((y, m)) => (y, Some(m)),
            None => (s, None),
        };
        let year: i32 = year_part
            .parse()
            .map_err(|_| TimestampError::Unparseable(s.to_string()))?;
        match month_part {
            None => Ok(Timestamp::from_year(year)),
            Some(m) => {
                let month: u8 = m
                    .parse()
                    .map_err(|_| TimestampError::Unparseable(s.to_string()))?;
                Timestamp::from_year_month(year, month)
            }
        }
    }

    pub fn year(self) -> i32 {
        self.0.div_euclid(12)
    }

    /// 1-based month within the year.
    pub fn month(self) -> u8 {
        (self.0.rem_euclid(12) + 1) as u8
    }

    pub fn month_index(self) -> i32 {
        self.0
    }

    pub fn from_month_index(idx: i32) -> Self {
        Timestamp(idx)
    }
}

impl fmt::Display for Timestamp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.month() == 1 {
            write!(f, "{}", self.year())
        } else {
            write!(f, "{}-{:02}", self.year(), self.month())
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TimestampError {
    #[error("unparseable timestamp `{0}` (expected YYYY or YYYY-MM)")]
    Unparseable(String),
    #[error("month {0} out of range 1..=12")]
    MonthOutOfRange(u8),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("unknown key `{0}` referenced by an edge")]
    UnknownKey(String),
}

/// Builds CSR offsets and a column array from (row, col) pairs.
/// Pairs are sorted and deduplicated; columns end up ascending per row.
pub(crate) fn csr_from_pairs(n_rows: usize, mut pairs: Vec<(u32, u32)>) -> (Vec<usize>, Vec<u32>) {
    pairs.sort_unstable();
    pairs.dedup();
    let mut offsets = vec![0usize; n_rows + 1];
    for &(r, _) in &pairs {
        offsets[r as usize + 1] += 1;
    }
    for i in 0..n_rows {
        offsets[i + 1] += offsets[i];
    }
    let cols = pairs.into_iter().map(|(_, c)| c).collect();
    (offsets, cols)
}
