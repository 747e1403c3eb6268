//! Exact per-vertex graphlet frequencies over the five-pattern dictionary:
//! singleton, edge, bi-fork (counted at the fork center), 2-path (counted at
//! an endpoint), and triangle (automorphic).
//!
//! The primary output is *induced* counts: neighbor pairs that close into a
//! triangle are not double-reported as bi-forks, and 2-paths running through
//! a triangle edge are discounted accordingly. Raw (non-induced) counts are
//! available separately for diagnostics; induced counts derive from them as
//! `d2 = d2' − d4` and `d3 = d3' − 2·d4`.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph_core::{AuthorId, CollabGraph};

/// Graphlet frequency vector of one vertex: `[d0, d1, d2, d3, d4]` =
/// (singleton, edge, bi-fork, 2-path, triangle) incidences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphletVector {
    pub vertex: AuthorId,
    pub d0: u64,
    pub d1: u64,
    pub d2: u64,
    pub d3: u64,
    pub d4: u64,
}

impl GraphletVector {
    pub fn counts(&self) -> [u64; 5] {
        [self.d0, self.d1, self.d2, self.d3, self.d4]
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpectrogramError {
    #[error("vertex order is not a permutation of 0..{expected}")]
    NotAPermutation { expected: usize },
    #[error("cohort boundaries must be non-decreasing and end at {expected}")]
    BadBoundaries { expected: usize },
}

fn pairs_of(d: u64) -> u64 {
    d * d.saturating_sub(1) / 2
}

/// Per-vertex triangle incidence counts (`d4`).
///
/// Each triangle is discovered exactly once by orienting every edge from the
/// lower-ranked to the higher-ranked endpoint under the `(degree, id)` order
/// and intersecting the sorted forward lists of an edge's endpoints; all
/// three corners are then credited. Runs in O(Σ_edges min-degree).
pub fn triangle_counts(g: &CollabGraph) -> Vec<u64> {
    let n = g.n_vertices();
    // rank[v] = position of v in ascending (degree, id) order
    let mut by_rank: Vec<u32> = (0..n as u32).collect();
    by_rank.sort_unstable_by_key(|&v| (g.degree(v as usize), v));
    let mut rank = vec![0u32; n];
    for (r, &v) in by_rank.iter().enumerate() {
        rank[v as usize] = r as u32;
    }

    // forward adjacency in rank space, CSR layout, rows sorted ascending
    let mut offsets = vec![0usize; n + 1];
    for v in 0..n {
        let rv = rank[v] as usize;
        offsets[rv + 1] = g.neighbors(v).iter().filter(|&&u| rank[u as usize] > rank[v]).count();
    }
    for i in 0..n {
        offsets[i + 1] += offsets[i];
    }
    let mut forward = vec![0u32; offsets[n]];
    let mut cursor = offsets.clone();
    for v in 0..n {
        let rv = rank[v] as usize;
        for &u in g.neighbors(v) {
            let ru = rank[u as usize];
            if ru > rank[v] {
                forward[cursor[rv]] = ru;
                cursor[rv] += 1;
            }
        }
    }
    for rv in 0..n {
        forward[offsets[rv]..offsets[rv + 1]].sort_unstable();
    }

    let mut counts = vec![0u64; n];
    for rv in 0..n {
        let row_v = &forward[offsets[rv]..offsets[rv + 1]];
        for &ru in row_v {
            let row_u = &forward[offsets[ru as usize]..offsets[ru as usize + 1]];
            // two-pointer intersection: common rw closes triangle rv<ru<rw
            let (mut i, mut j) = (0, 0);
            while i < row_v.len() && j < row_u.len() {
                match row_v[i].cmp(&row_u[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        let rw = row_v[i];
                        counts[by_rank[rv] as usize] += 1;
                        counts[by_rank[ru as usize] as usize] += 1;
                        counts[by_rank[rw as usize] as usize] += 1;
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
    }
    counts
}

/// Raw (non-induced) graphlet field: `d2' = C(d1, 2)` counts every neighbor
/// pair, `d3' = Σ_{u∈N(v)} (deg(u) − 1)` counts every 2-step walk, and `d4`
/// is the exact triangle incidence.
pub fn transform_raw(g: &CollabGraph) -> Vec<GraphletVector> {
    let triangles = triangle_counts(g);
    (0..g.n_vertices())
        .map(|v| {
            let d1 = g.degree(v) as u64;
            let d3_raw: u64 = g
                .neighbors(v)
                .iter()
                .map(|&u| g.degree(u as usize) as u64 - 1)
                .sum();
            GraphletVector {
                vertex: g.vertex_key(v),
                d0: 1,
                d1,
                d2: pairs_of(d1),
                d3: d3_raw,
                d4: triangles[v],
            }
        })
        .collect()
}

/// Exact induced graphlet field over all vertices of `g`.
pub fn transform(g: &CollabGraph) -> Vec<GraphletVector> {
    let mut field = transform_raw(g);
    for f in &mut field {
        f.d2 = f
            .d2
            .checked_sub(f.d4)
            .expect("triangle incidences exceed neighbor pairs");
        f.d3 = f
            .d3
            .checked_sub(2 * f.d4)
            .expect("triangle incidences exceed 2-step walks");
        debug_assert_eq!(f.d2 + f.d4, pairs_of(f.d1));
    }
    field
}

/// Graphlet field reordered for display: row `k` holds the `d_k` value of
/// every vertex, columns follow a caller-supplied vertex order, and cohort
/// boundaries mark where column groups end. The constant `d0` row is
/// omitted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spectrogram {
    /// rows[k−1][c] = d_k of the vertex in display column c, k = 1..4
    pub rows: [Vec<u64>; 4],
    /// Global author id of each display column.
    pub vertex_keys: Vec<AuthorId>,
    /// Cumulative group sizes; empty means a single implicit group.
    pub boundaries: Vec<usize>,
}

/// Assembles a [`Spectrogram`] from a graphlet field and a display order.
/// `order[c]` names the field index shown in column `c`. `boundaries` are
/// cumulative group sizes and must end at the vertex count (or be empty).
pub fn spectrogram(
    field: &[GraphletVector],
    order: &[usize],
    boundaries: Vec<usize>,
) -> Result<Spectrogram, SpectrogramError> {
    let n = field.len();
    let mut seen = vec![false; n];
    if order.len() != n || order.iter().any(|&v| v >= n || std::mem::replace(&mut seen[v], true)) {
        return Err(SpectrogramError::NotAPermutation { expected: n });
    }
    let ends_at_n = boundaries.last().map_or(true, |&b| b == n);
    if !ends_at_n || boundaries.windows(2).any(|w| w[0] > w[1]) {
        return Err(SpectrogramError::BadBoundaries { expected: n });
    }

    let mut rows: [Vec<u64>; 4] = Default::default();
    for row in &mut rows {
        row.reserve(n);
    }
    let mut vertex_keys = Vec::with_capacity(n);
    for &v in order {
        let f = &field[v];
        rows[0].push(f.d1);
        rows[1].push(f.d2);
        rows[2].push(f.d3);
        rows[3].push(f.d4);
        vertex_keys.push(f.vertex);
    }
    Ok(Spectrogram {
        rows,
        vertex_keys,
        boundaries,
    })
}

impl Spectrogram {
    pub fn n_columns(&self) -> usize {
        self.vertex_keys.len()
    }

    /// 1-based group number of display column `c`.
    pub fn cohort_of_column(&self, c: usize) -> usize {
        1 + self.boundaries.iter().filter(|&&b| b <= c).count()
    }

    /// Writes `vertex_key,cohort,d1,d2,d3,d4` rows in display order.
    /// `key_of` resolves a global author id to its external key.
    pub fn write_csv<W: Write>(
        &self,
        mut out: W,
        mut key_of: impl FnMut(AuthorId) -> String,
    ) -> io::Result<()> {
        writeln!(out, "vertex_key,cohort,d1,d2,d3,d4")?;
        for c in 0..self.n_columns() {
            writeln!(
                out,
                "{},{},{},{},{},{}",
                key_of(self.vertex_keys[c]),
                self.cohort_of_column(c),
                self.rows[0][c],
                self.rows[1][c],
                self.rows[2][c],
                self.rows[3][c],
            )?;
        }
        Ok(())
    }

    /// Writes the sidecar JSON: `{"boundaries": [...]}`.
    pub fn write_boundaries_json<W: Write>(&self, out: W) -> io::Result<()> {
        #[derive(Serialize)]
        struct Sidecar<'a> {
            boundaries: &'a [usize],
        }
        serde_json::to_writer(
            out,
            &Sidecar {
                boundaries: &self.boundaries,
            },
        )
        .map_err(io::Error::from)
    }
}
