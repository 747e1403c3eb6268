//! Undirected author collaboration graph.
//!
//! Vertices are a subset of the author universe; `vertex_key` maps the local
//! dense index back to the global [`AuthorId`]. The adjacency is symmetric,
//! loop-free, deduplicated, and sorted by local index within each row. Edge
//! weights (number of co-authored articles) are carried as metadata only;
//! graphlet and discrepancy math see the unweighted topology.

use std::collections::HashMap;

use super::{ArticleId, AuthorId, Bipartite};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollabGraph {
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
    weights: Vec<u32>,
    vertex_key: Vec<AuthorId>,
    key_to_local: HashMap<AuthorId, u32>,
}

impl CollabGraph {
    /// Builds from an ordered vertex list and undirected weighted edges given
    /// as global-id pairs. Both endpoints of every edge must be listed in
    /// `vertex_key`; self-loops are rejected by debug assertion.
    pub fn from_weighted_edges(
        vertex_key: Vec<AuthorId>,
        edges: &[(AuthorId, AuthorId, u32)],
    ) -> CollabGraph {
        let n = vertex_key.len();
        let key_to_local: HashMap<AuthorId, u32> = vertex_key
            .iter()
            .enumerate()
            .map(|(i, &k)| (k, i as u32))
            .collect();
        assert_eq!(key_to_local.len(), n, "duplicate vertex keys");

        let mut halves: Vec<(u32, u32, u32)> = Vec::with_capacity(edges.len() * 2);
        for &(a, b, w) in edges {
            debug_assert_ne!(a, b, "self-loop in collaboration edges");
            let la = key_to_local[&a];
            let lb = key_to_local[&b];
            halves.push((la, lb, w));
            halves.push((lb, la, w));
        }
        halves.sort_unstable();
        halves.dedup();

        let mut offsets = vec![0usize; n + 1];
        for &(u, _, _) in &halves {
            offsets[u as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut neighbors = Vec::with_capacity(halves.len());
        let mut weights = Vec::with_capacity(halves.len());
        for &(_, v, w) in &halves {
            neighbors.push(v);
            weights.push(w);
        }
        let g = CollabGraph {
            offsets,
            neighbors,
            weights,
            vertex_key,
            key_to_local,
        };
        debug_assert!(g.rows_strictly_sorted(), "duplicate collaboration edge");
        g
    }

    fn rows_strictly_sorted(&self) -> bool {
        (0..self.n_vertices()).all(|v| {
            self.neighbors[self.offsets[v]..self.offsets[v + 1]]
                .windows(2)
                .all(|w| w[0] < w[1])
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.vertex_key.len()
    }

    /// Number of undirected edges.
    pub fn n_edges(&self) -> usize {
        self.neighbors.len() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Neighbors of local vertex `v`, ascending by local index.
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Per-neighbor co-authorship counts, parallel to [`Self::neighbors`].
    pub fn edge_weights(&self, v: usize) -> &[u32] {
        &self.weights[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&(v as u32)).is_ok()
    }

    pub fn vertex_key(&self, v: usize) -> AuthorId {
        self.vertex_key[v]
    }

    pub fn vertex_keys(&self) -> &[AuthorId] {
        &self.vertex_key
    }

    /// Local index of a global author id, if present in this graph.
    pub fn local_index(&self, key: AuthorId) -> Option<usize> {
        self.key_to_local.get(&key).map(|&i| i as usize)
    }

    /// Undirected edges as (local u, local v) with u < v, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n_vertices()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&&v| (v as usize) > u)
                .map(move |&v| (u, v as usize))
        })
    }

    /// Sizes of connected components, unordered except deterministically by
    /// lowest contained vertex. Isolated vertices are size-1 components.
    pub fn component_sizes(&self) -> Vec<usize> {
        let n = self.n_vertices();
        let mut seen = vec![false; n];
        let mut sizes = Vec::new();
        let mut stack = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            stack.push(start);
            let mut size = 0usize;
            while let Some(v) = stack.pop() {
                size += 1;
                for &w in self.neighbors(v) {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        stack.push(w as usize);
                    }
                }
            }
            sizes.push(size);
        }
        sizes
    }

    /// Size of the largest connected component (0 for the empty graph).
    pub fn largest_component(&self) -> usize {
        self.component_sizes().into_iter().max().unwrap_or(0)
    }
}

/// Accumulates co-authorship pairs over an article subset.
/// Returns (involved authors ascending, weighted edges keyed by global pair).
pub(crate) fn collaboration_pairs(
    bip: &Bipartite,
    article_subset: &[ArticleId],
) -> (Vec<AuthorId>, Vec<(AuthorId, AuthorId, u32)>) {
    let mut involved: Vec<AuthorId> = Vec::new();
    let mut pair_count: HashMap<(AuthorId, AuthorId), u32> = HashMap::new();
    for &a in article_subset {
        let team: Vec<AuthorId> = bip.authors_of(a).collect();
        involved.extend_from_slice(&team);
        for i in 0..team.len() {
            for j in (i + 1)..team.len() {
                // authors_of is ascending, so (team[i], team[j]) is canonical
                *pair_count.entry((team[i], team[j])).or_insert(0) += 1;
            }
        }
    }
    involved.sort_unstable();
    involved.dedup();
    let mut edges: Vec<(AuthorId, AuthorId, u32)> = pair_count
        .into_iter()
        .map(|((a, b), w)| (a, b, w))
        .collect();
    edges.sort_unstable();
    (involved, edges)
}

/// Projects the sub-bipartite restricted to `article_subset` onto its author
/// side: vertices are the incident authors, an edge joins two authors per
/// shared article with the share count as weight. Vertices are ordered by
/// ascending author id; an empty subset yields the empty graph.
pub fn project_collaboration(bip: &Bipartite, article_subset: &[ArticleId]) -> CollabGraph {
    let (involved, edges) = collaboration_pairs(bip, article_subset);
    CollabGraph::from_weighted_edges(involved, &edges)
}

/// Intersection of two collaboration graphs over the shared author universe:
/// vertex set is the key intersection, edge set the edges present in both.
/// Intersection edges carry the smaller of the two weights, which keeps the
/// operation commutative.
pub fn graph_intersection(gx: &CollabGraph, gy: &CollabGraph) -> CollabGraph {
    let mut vertices: Vec<AuthorId> = gx
        .vertex_keys()
        .iter()
        .copied()
        .filter(|&k| gy.local_index(k).is_some())
        .collect();
    vertices.sort_unstable();

    let mut edges: Vec<(AuthorId, AuthorId, u32)> = Vec::new();
    for (lu, lv) in gx.edges() {
        let ku = gx.vertex_key(lu);
        let kv = gx.vertex_key(lv);
        let (Some(yu), Some(yv)) = (gy.local_index(ku), gy.local_index(kv)) else {
            continue;
        };
        if let Ok(pos) = gy.neighbors(yu).binary_search(&(yv as u32)) {
            let wx = gx.edge_weights(lu)[gx.neighbors(lu).binary_search(&(lv as u32)).unwrap()];
            let wy = gy.edge_weights(yu)[pos];
            let (a, b) = if ku < kv { (ku, kv) } else { (kv, ku) };
            edges.push((a, b, wx.min(wy)));
        }
    }
    edges.sort_unstable();
    CollabGraph::from_weighted_edges(vertices, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bip(n_articles: usize, n_authors: usize, pairs: &[(u32, u32)]) -> Bipartite {
        Bipartite::from_pairs(n_articles, n_authors, pairs.to_vec())
    }

    fn art(i: u32) -> ArticleId {
        ArticleId(i)
    }

    #[test]
    fn single_article_projects_to_triangle() {
        let b = bip(1, 3, &[(0, 0), (0, 1), (0, 2)]);
        let g = project_collaboration(&b, &[art(0)]);
        assert_eq!(g.n_vertices(), 3);
        assert_eq!(g.n_edges(), 3);
        for v in 0..3 {
            assert_eq!(g.degree(v), 2);
            assert!(g.edge_weights(v).iter().all(|&w| w == 1));
        }
    }

    #[test]
    fn subset_restriction_drops_outside_authors() {
        // P1:{u,v}, P2:{v,w}; subset {P1} -> edge (u,v) only, w absent
        let b = bip(2, 3, &[(0, 0), (0, 1), (1, 1), (1, 2)]);
        let g = project_collaboration(&b, &[art(0)]);
        assert_eq!(g.n_vertices(), 2);
        assert_eq!(g.n_edges(), 1);
        assert!(g.local_index(AuthorId(2)).is_none());
    }

    #[test]
    fn repeated_coauthorship_accumulates_weight() {
        // P1:{u,v}, P2:{u,v}; subset both -> single edge with weight 2
        let b = bip(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1)]);
        let g = project_collaboration(&b, &[art(0), art(1)]);
        assert_eq!(g.n_edges(), 1);
        assert_eq!(g.edge_weights(0), &[2]);
    }

    #[test]
    fn empty_subset_is_empty_graph() {
        let b = bip(1, 2, &[(0, 0), (0, 1)]);
        let g = project_collaboration(&b, &[]);
        assert_eq!(g.n_vertices(), 0);
        assert_eq!(g.n_edges(), 0);
        assert_eq!(g.largest_component(), 0);
    }

    #[test]
    fn single_author_article_keeps_isolated_vertex() {
        let b = bip(1, 1, &[(0, 0)]);
        let g = project_collaboration(&b, &[art(0)]);
        assert_eq!(g.n_vertices(), 1);
        assert_eq!(g.n_edges(), 0);
    }

    #[test]
    fn degree_sum_is_twice_edge_count() {
        let b = bip(3, 5, &[(0, 0), (0, 1), (0, 2), (1, 2), (1, 3), (2, 4)]);
        let g = project_collaboration(&b, &[art(0), art(1), art(2)]);
        let degree_sum: usize = (0..g.n_vertices()).map(|v| g.degree(v)).sum();
        assert_eq!(degree_sum, 2 * g.n_edges());
    }

    fn graph(vertices: &[u32], edges: &[(u32, u32)]) -> CollabGraph {
        let vs = vertices.iter().map(|&v| AuthorId(v)).collect();
        let es: Vec<_> = edges
            .iter()
            .map(|&(a, b)| (AuthorId(a), AuthorId(b), 1))
            .collect();
        CollabGraph::from_weighted_edges(vs, &es)
    }

    #[test]
    fn intersection_with_self_is_identity() {
        let g = graph(&[0, 1, 2], &[(0, 1), (1, 2), (0, 2)]);
        let z = graph_intersection(&g, &g);
        assert_eq!(z.n_vertices(), g.n_vertices());
        assert_eq!(z.n_edges(), g.n_edges());
        for (u, v) in g.edges() {
            let ku = g.vertex_key(u);
            let kv = g.vertex_key(v);
            let zu = z.local_index(ku).unwrap();
            let zv = z.local_index(kv).unwrap();
            assert!(z.has_edge(zu, zv));
        }
    }

    #[test]
    fn disjoint_edges_intersect_to_shared_vertex() {
        let gx = graph(&[0, 1], &[(0, 1)]);
        let gy = graph(&[1, 2], &[(1, 2)]);
        let z = graph_intersection(&gx, &gy);
        assert_eq!(z.vertex_keys(), &[AuthorId(1)]);
        assert_eq!(z.n_edges(), 0);
    }

    #[test]
    fn triangle_meets_path() {
        let gx = graph(&[0, 1, 2], &[(0, 1), (1, 2), (0, 2)]);
        let gy = graph(&[0, 1, 2], &[(0, 1), (1, 2)]);
        let z = graph_intersection(&gx, &gy);
        assert_eq!(z.n_vertices(), 3);
        assert_eq!(z.n_edges(), 2);
        assert!(!z.has_edge(z.local_index(AuthorId(0)).unwrap(), z.local_index(AuthorId(2)).unwrap()));
    }

    #[test]
    fn intersection_is_commutative() {
        let gx = graph(&[0, 1, 2, 5], &[(0, 1), (1, 2), (0, 2), (2, 5)]);
        let gy = graph(&[1, 2, 5, 7], &[(1, 2), (2, 5), (5, 7)]);
        let xy = graph_intersection(&gx, &gy);
        let yx = graph_intersection(&gy, &gx);
        assert_eq!(xy, yx);
    }

    #[test]
    fn components_and_lcc() {
        let g = graph(&[0, 1, 2, 3, 4], &[(0, 1), (1, 2), (3, 4)]);
        let mut sizes = g.component_sizes();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![2, 3]);
        assert_eq!(g.largest_component(), 3);
    }
}
