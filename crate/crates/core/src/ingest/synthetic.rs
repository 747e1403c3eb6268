//! Synthetic corpus generator for tests and benchmarks.
//!
//! Articles receive evenly spaced years over the configured span. Each
//! article cites a Poisson-distributed number of strictly earlier articles
//! chosen by preferential attachment (weight `(1 + citations)^α`), and is
//! written by a team drawn from a growing author pool: every slot is a brand
//! new author with probability `new_author_prob`, otherwise an existing
//! author chosen with weight `productivity^α`. The rich-get-richer author
//! process yields a power-law productivity/collaboration tail with exponent
//! `γ ≈ 1 + 1/(1 − new_author_prob)`.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Pareto, Poisson};
use thiserror::Error;

use crate::graph_core::{Bipartite, CitationGraph, Timestamp};
use crate::ingest::LiteratureGraph;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TeamSizeDist {
    /// Every article has exactly this many authors.
    Fixed(usize),
    /// `1 + Poisson(mean − 1)` authors; `mean` must be ≥ 1.
    Poisson { mean: f64 },
    /// `max(1, round(x))` with `x ~ Pareto(scale, shape)`; heavy-tailed teams.
    Pareto { scale: f64, shape: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticConfig {
    pub n_articles: usize,
    pub start_year: i32,
    /// Number of distinct publication years (articles spread evenly).
    pub span_years: u32,
    /// Mean references per article (Poisson; strictly earlier targets only).
    pub refs_mean: f64,
    /// Preferential-attachment exponent for both citations and authorship.
    pub attach_exponent: f64,
    pub team_size: TeamSizeDist,
    /// Probability that a team slot introduces a brand new author.
    pub new_author_prob: f64,
    /// Optional hard cap on team size (truncates oversized teams).
    pub team_size_cap: Option<usize>,
    pub seed: u64,
}

impl Default for SyntheticConfig {
    fn default() -> Self {
        SyntheticConfig {
            n_articles: 1000,
            start_year: 2000,
            span_years: 10,
            refs_mean: 8.0,
            attach_exponent: 1.0,
            team_size: TeamSizeDist::Poisson { mean: 5.0 },
            new_author_prob: 0.41,
            team_size_cap: None,
            seed: 0,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("invalid synthetic configuration: {0}")]
pub struct SyntheticError(String);

fn validate(cfg: &SyntheticConfig) -> Result<(), SyntheticError> {
    let fail = |msg: String| Err(SyntheticError(msg));
    if cfg.n_articles == 0 {
        return fail("n_articles must be at least 1".into());
    }
    if cfg.span_years == 0 {
        return fail("span_years must be at least 1".into());
    }
    if !(cfg.refs_mean >= 0.0) {
        return fail(format!("refs_mean must be non-negative, got {}", cfg.refs_mean));
    }
    if !(0.0..=1.0).contains(&cfg.new_author_prob) {
        return fail(format!(
            "new_author_prob must lie in [0, 1], got {}",
            cfg.new_author_prob
        ));
    }
    if !cfg.attach_exponent.is_finite() || cfg.attach_exponent < 0.0 {
        return fail(format!(
            "attach_exponent must be finite and non-negative, got {}",
            cfg.attach_exponent
        ));
    }
    if cfg.team_size_cap == Some(0) {
        return fail("team_size_cap must be at least 1".into());
    }
    match cfg.team_size {
        TeamSizeDist::Fixed(0) => fail("fixed team size must be at least 1".into()),
        TeamSizeDist::Poisson { mean } if !(mean >= 1.0) => {
            fail(format!("poisson team mean must be ≥ 1, got {mean}"))
        }
        TeamSizeDist::Pareto { scale, shape } if !(scale >= 1.0) || !(shape > 0.0) => {
            fail(format!(
                "pareto team parameters must satisfy scale ≥ 1, shape > 0, got ({scale}, {shape})"
            ))
        }
        _ => Ok(()),
    }
}

/// Fenwick tree over non-negative weights supporting append, point update,
/// and weighted sampling restricted to a prefix of the index space.
struct WeightedIndex {
    tree: Vec<f64>, // 1-based
}

impl WeightedIndex {
    fn new() -> WeightedIndex {
        WeightedIndex { tree: vec![0.0] }
    }

    /// Sum of weights at indices `0..i`.
    fn prefix(&self, i: usize) -> f64 {
        let mut k = i;
        let mut sum = 0.0;
        while k > 0 {
            sum += self.tree[k];
            k -= k & k.wrapping_neg();
        }
        sum
    }

    fn add(&mut self, i: usize, delta: f64) {
        let mut k = i + 1;
        while k < self.tree.len() {
            self.tree[k] += delta;
            k += k & k.wrapping_neg();
        }
    }

    fn push(&mut self, w: f64) {
        let k = self.tree.len();
        let low = k - (k & k.wrapping_neg());
        let below = self.prefix(k - 1) - self.prefix(low);
        self.tree.push(w + below);
    }

    /// Samples an index from `0..k` with probability proportional to weight.
    /// Returns `None` when the prefix has zero total weight.
    fn sample_prefix(&self, k: usize, rng: &mut impl Rng) -> Option<usize> {
        let total = self.prefix(k);
        if !(total > 0.0) {
            return None;
        }
        let mut r = rng.gen_range(0.0..total);
        let mut pos = 0usize;
        let mut bit = self.tree.len().next_power_of_two() / 2;
        while bit > 0 {
            let next = pos + bit;
            if next < self.tree.len() && self.tree[next] <= r {
                r -= self.tree[next];
                pos = next;
            }
            bit /= 2;
        }
        Some(pos.min(k - 1))
    }
}

/// Samples `want` distinct indices from the weighted prefix `0..k`.
fn sample_distinct(
    weights: &WeightedIndex,
    k: usize,
    want: usize,
    rng: &mut impl Rng,
) -> Vec<usize> {
    let mut picked: Vec<usize> = Vec::with_capacity(want);
    let mut attempts = 0usize;
    let budget = 50 * want.max(1) + 100;
    while picked.len() < want && attempts < budget {
        attempts += 1;
        match weights.sample_prefix(k, rng) {
            Some(idx) if !picked.contains(&idx) => picked.push(idx),
            Some(_) => {}
            None => break,
        }
    }
    picked
}

pub fn generate_synthetic(cfg: &SyntheticConfig) -> Result<LiteratureGraph, SyntheticError> {
    validate(cfg)?;
    let n = cfg.n_articles;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let refs_dist = if cfg.refs_mean > 0.0 {
        Some(Poisson::new(cfg.refs_mean).expect("validated"))
    } else {
        None
    };
    let team_poisson = match cfg.team_size {
        TeamSizeDist::Poisson { mean } if mean > 1.0 => {
            Some(Poisson::new(mean - 1.0).expect("validated"))
        }
        _ => None,
    };
    let team_pareto = match cfg.team_size {
        TeamSizeDist::Pareto { scale, shape } => {
            Some(Pareto::new(scale, shape).expect("validated"))
        }
        _ => None,
    };

    let alpha = cfg.attach_exponent;
    let mut pub_time: Vec<Timestamp> = Vec::with_capacity(n);
    let mut citation_edges: Vec<(u32, u32)> = Vec::new();
    let mut authorship_pairs: Vec<(u32, u32)> = Vec::new();

    let mut article_weights = WeightedIndex::new();
    let mut cites_received: Vec<u32> = Vec::with_capacity(n);
    let mut author_weights = WeightedIndex::new();
    let mut productivity: Vec<u32> = Vec::new();

    let mut current_year = cfg.start_year;
    let mut year_start_idx = 0usize;
    let mut team: Vec<usize> = Vec::new();

    for i in 0..n {
        let year = cfg.start_year + ((i as u64 * cfg.span_years as u64) / n as u64) as i32;
        if year != current_year {
            current_year = year;
            year_start_idx = i;
        }
        pub_time.push(Timestamp::from_year(year));

        // citations: preferential attachment over strictly earlier articles
        if year_start_idx > 0 {
            if let Some(dist) = &refs_dist {
                let want = (dist.sample(&mut rng) as usize).min(year_start_idx);
                for cited in sample_distinct(&article_weights, year_start_idx, want, &mut rng) {
                    citation_edges.push((i as u32, cited as u32));
                    let c = cites_received[cited] as f64;
                    article_weights.add(cited, (2.0 + c).powf(alpha) - (1.0 + c).powf(alpha));
                    cites_received[cited] += 1;
                }
            }
        }
        cites_received.push(0);
        article_weights.push(1.0); // weight (1 + 0)^α of the new article

        // authorship: Simon-model team assembly
        let mut size = match cfg.team_size {
            TeamSizeDist::Fixed(m) => m,
            TeamSizeDist::Poisson { .. } => match &team_poisson {
                Some(dist) => 1 + dist.sample(&mut rng) as usize,
                None => 1,
            },
            TeamSizeDist::Pareto { .. } => {
                (team_pareto.as_ref().expect("validated").sample(&mut rng)).round() as usize
            }
        }
        .max(1);
        if let Some(cap) = cfg.team_size_cap {
            size = size.min(cap);
        }

        team.clear();
        let mut misses = 0usize;
        while team.len() < size {
            let fresh = productivity.is_empty() || rng.gen::<f64>() < cfg.new_author_prob;
            if fresh || misses > 20 + 4 * size {
                let id = productivity.len();
                productivity.push(0);
                author_weights.push(0.0);
                team.push(id);
            } else {
                match author_weights.sample_prefix(productivity.len(), &mut rng) {
                    Some(id) if !team.contains(&id) => team.push(id),
                    _ => misses += 1,
                }
            }
        }
        for &member in &team {
            authorship_pairs.push((i as u32, member as u32));
            let p = productivity[member] as f64;
            author_weights.add(member, (p + 1.0).powf(alpha) - p.powf(alpha));
            productivity[member] += 1;
        }
    }

    let n_authors = productivity.len();
    let article_keys: Vec<String> = (0..n).map(|i| format!("a{i:08}")).collect();
    let author_keys: Vec<String> = (0..n_authors).map(|u| format!("u{u:08}")).collect();
    let (citations, _stats) = CitationGraph::from_edges(pub_time, citation_edges);
    let authorship = Bipartite::from_pairs(n, n_authors, authorship_pairs);
    Ok(LiteratureGraph {
        citations,
        authorship,
        article_keys,
        author_keys,
    })
}
