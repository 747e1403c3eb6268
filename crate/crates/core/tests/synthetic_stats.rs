//! Distributional checks on the synthetic corpus generator: author
//! productivity should follow the heavy-tailed law the attachment process is
//! built to produce, and citations must respect chronology.

use glepoch_core::graph_core::AuthorId;
use glepoch_core::ingest::{generate_synthetic, SyntheticConfig};

/// Least-squares slope of `ln(y)` against `ln(x)`.
fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(x, y) in points {
        let (lx, ly) = (x.ln(), y.ln());
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

#[test]
fn author_productivity_follows_the_expected_power_law() {
    let cfg = SyntheticConfig {
        n_articles: 30_000,
        seed: 42,
        ..SyntheticConfig::default()
    };
    let lg = generate_synthetic(&cfg).unwrap();

    let n_authors = lg.authorship.n_authors();
    let mut per_author = vec![0usize; n_authors];
    for u in 0..n_authors {
        per_author[u] = lg.authorship.articles_of(AuthorId(u as u32)).count();
    }

    let max_k = per_author.iter().copied().max().unwrap();
    let mut freq = vec![0usize; max_k + 1];
    for &k in &per_author {
        freq[k] += 1;
    }

    // fit the head of the distribution, where counts are dense
    let points: Vec<(f64, f64)> = (1..=8)
        .filter(|&k| freq[k] > 0)
        .map(|k| (k as f64, freq[k] as f64))
        .collect();
    assert!(points.len() >= 6, "head of the distribution is too sparse");
    let slope = log_log_slope(&points);

    // A new-author probability q drives productivity toward a Yule–Simon law
    // with tail exponent 1 + 1/(1-q) ≈ 2.69. Over a finite head the exact
    // pmf is flatter than its asymptote, so compare against the same
    // least-squares slope of the exact law (pmf ratio f(k+1)/f(k) =
    // k/(k+rho+1)), which is ≈ -2.15 for k ≤ 8.
    let rho = 1.0 / (1.0 - cfg.new_author_prob);
    let mut ln_f = 0.0f64;
    let exact: Vec<(f64, f64)> = (1..=8)
        .map(|k| {
            let point = (k as f64, ln_f.exp());
            ln_f += ((k as f64) / (k as f64 + rho + 1.0)).ln();
            point
        })
        .collect();
    let expected = log_log_slope(&exact);
    assert!(
        (slope - expected).abs() <= 0.25,
        "productivity head slope {slope:.3} should be near the exact {expected:.3}"
    );

    // the tail actually exists: someone wrote far more than the mean
    assert!(max_k > 20, "no prolific authors (max {max_k})");
}

#[test]
fn synthetic_citations_only_point_backward_in_time() {
    let cfg = SyntheticConfig {
        n_articles: 5_000,
        seed: 7,
        ..SyntheticConfig::default()
    };
    let lg = generate_synthetic(&cfg).unwrap();
    for (src, dst) in lg.citations.edges() {
        assert!(
            lg.citations.pub_time(dst) < lg.citations.pub_time(src),
            "citation {src:?} -> {dst:?} does not point strictly earlier"
        );
    }
}
