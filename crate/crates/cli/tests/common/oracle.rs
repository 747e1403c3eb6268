//! Definition-level reimplementations used to cross-check the production
//! algorithms. Everything here favors obviousness over speed: exhaustive
//! subset enumeration, set-algebra intersection, and the discrepancy chain
//! written straight from the formulas with none of the library's
//! factorizations or compensated summation.

use std::collections::{BTreeMap, BTreeSet};

use glepoch_core::discrepancy::DiscrepancyConfig;
use glepoch_core::graph_core::{AuthorId, CollabGraph};
use glepoch_core::temporal::CollabNetwork;

/// Classifies the induced pattern of every 1-, 2-, and 3-vertex subset.
/// O(n³) — for tiny graphs. Returns `[d0..d4]` per vertex.
pub fn exhaustive_counts(g: &CollabGraph) -> Vec<[u64; 5]> {
    let n = g.n_vertices();
    let mut out = vec![[0u64; 5]; n];
    for v in 0..n {
        out[v][0] = 1;
    }
    for a in 0..n {
        for b in (a + 1)..n {
            if g.has_edge(a, b) {
                out[a][1] += 1;
                out[b][1] += 1;
            }
        }
    }
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                let (ab, ac, bc) = (g.has_edge(a, b), g.has_edge(a, c), g.has_edge(b, c));
                match ab as u8 + ac as u8 + bc as u8 {
                    3 => {
                        for v in [a, b, c] {
                            out[v][4] += 1;
                        }
                    }
                    2 => {
                        // the vertex on both edges forks; the others are path ends
                        let center = if ab && ac {
                            a
                        } else if ab && bc {
                            b
                        } else {
                            c
                        };
                        for v in [a, b, c] {
                            if v == center {
                                out[v][2] += 1;
                            } else {
                                out[v][3] += 1;
                            }
                        }
                    }
                    _ => {}
                }
            }
        }
    }
    out
}

/// Neighborhood-definition counts: forks are non-adjacent neighbor pairs,
/// path-ends are two-step walks avoiding triangles, triangles are adjacent
/// neighbor pairs. Usable at a few hundred vertices.
pub fn definitional_counts(g: &CollabGraph) -> Vec<[u64; 5]> {
    let n = g.n_vertices();
    let nbrs: Vec<BTreeSet<usize>> = (0..n)
        .map(|v| g.neighbors(v).iter().map(|&u| u as usize).collect())
        .collect();
    let mut out = vec![[0u64; 5]; n];
    for v in 0..n {
        out[v][0] = 1;
        out[v][1] = nbrs[v].len() as u64;
        let nb: Vec<usize> = nbrs[v].iter().copied().collect();
        for i in 0..nb.len() {
            for j in (i + 1)..nb.len() {
                if nbrs[nb[i]].contains(&nb[j]) {
                    out[v][4] += 1;
                } else {
                    out[v][2] += 1;
                }
            }
        }
        for &u in &nb {
            for &w in &nbrs[u] {
                if w != v && !nbrs[v].contains(&w) {
                    out[v][3] += 1;
                }
            }
        }
    }
    out
}

/// Set-algebra intersection: common vertex keys, edges present in both
/// graphs, minimum weight.
pub fn intersect(gx: &CollabGraph, gy: &CollabGraph) -> CollabGraph {
    let keys_x: BTreeSet<AuthorId> = gx.vertex_keys().iter().copied().collect();
    let keys_y: BTreeSet<AuthorId> = gy.vertex_keys().iter().copied().collect();
    let keys: Vec<AuthorId> = keys_x.intersection(&keys_y).copied().collect();
    let weight_of = |g: &CollabGraph, u: usize, v: usize| -> u32 {
        let i = g.neighbors(u).binary_search(&(v as u32)).expect("edge present");
        g.edge_weights(u)[i]
    };
    let mut edges = Vec::new();
    for (i, &a) in keys.iter().enumerate() {
        for &b in &keys[(i + 1)..] {
            let (ux, vx) = (gx.local_index(a).unwrap(), gx.local_index(b).unwrap());
            let (uy, vy) = (gy.local_index(a).unwrap(), gy.local_index(b).unwrap());
            if gx.has_edge(ux, vx) && gy.has_edge(uy, vy) {
                edges.push((a, b, weight_of(gx, ux, vx).min(weight_of(gy, uy, vy))));
            }
        }
    }
    CollabGraph::from_weighted_edges(keys, &edges)
}

/// Pairwise (divide-and-conquer) summation; error grows with log n rather
/// than n, without copying the library's compensated loop.
pub fn stable_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        n => {
            let (a, b) = xs.split_at(n / 2);
            stable_sum(a) + stable_sum(b)
        }
    }
}

fn normalized_weights(cfg: &DiscrepancyConfig) -> [f64; 5] {
    let mut w = cfg.weights;
    if !cfg.include_sigma0 {
        w[0] = 0.0;
    }
    let total: f64 = w.iter().sum();
    w.map(|x| x / total)
}

/// Node discrepancy straight from the formulas: elementwise relative
/// difference, then the weighted Hölder mean of order `p`.
pub fn node_score(fx: &[u64; 5], fz: &[u64; 5], cfg: &DiscrepancyConfig) -> f64 {
    let w = normalized_weights(cfg);
    let p = cfg.holder_p;
    let mut r = [0f64; 5];
    for k in 0..5 {
        r[k] = if fx[k] == fz[k] {
            0.0
        } else {
            fx[k].abs_diff(fz[k]) as f64 / (fx[k] + fz[k]) as f64
        };
    }
    let zero_hit = (0..5).any(|k| w[k] > 0.0 && r[k] == 0.0);
    let m = if p == 1.0 {
        (0..5).map(|k| w[k] * r[k]).sum()
    } else if p == 0.0 {
        if zero_hit {
            0.0
        } else {
            (0..5).map(|k| w[k] * r[k].ln()).sum::<f64>().exp()
        }
    } else if p < 0.0 && zero_hit {
        0.0
    } else {
        (0..5)
            .map(|k| w[k] * r[k].powf(p))
            .sum::<f64>()
            .powf(1.0 / p)
    };
    m.clamp(0.0, 1.0)
}

/// Full network comparison from first principles. Returns
/// `(eta, node scores of x, node scores of y)`.
pub fn network_score(
    nx: &CollabNetwork,
    ny: &CollabNetwork,
    cfg: &DiscrepancyConfig,
) -> (f64, Vec<f64>, Vec<f64>) {
    let gz = intersect(&nx.graph, &ny.graph);
    let fz = definitional_counts(&gz);
    let by_key: BTreeMap<AuthorId, [u64; 5]> = gz
        .vertex_keys()
        .iter()
        .copied()
        .zip(fz)
        .collect();
    let zero = [0u64; 5];

    let side = |net: &CollabNetwork| -> (Vec<f64>, f64) {
        let counts = definitional_counts(&net.graph);
        let nodes: Vec<f64> = (0..net.graph.n_vertices())
            .map(|v| {
                let fz = by_key.get(&net.graph.vertex_key(v)).unwrap_or(&zero);
                node_score(&counts[v], fz, cfg)
            })
            .collect();
        let mut per_cohort: [Vec<f64>; 7] = Default::default();
        for (v, &c) in net.cohort_of_vertex.iter().enumerate() {
            per_cohort[(c - 1) as usize].push(nodes[v]);
        }
        let n = net.graph.n_vertices() as f64;
        let mut eta = 0.0;
        for bucket in &per_cohort {
            if !bucket.is_empty() {
                let mean = stable_sum(bucket) / bucket.len() as f64;
                eta += (bucket.len() as f64 / n) * mean;
            }
        }
        (nodes, eta)
    };

    let (nodes_x, eta_x) = side(nx);
    let (nodes_y, eta_y) = side(ny);
    (eta_x / 2.0 + eta_y / 2.0, nodes_x, nodes_y)
}
