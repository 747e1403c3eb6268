//! The six pipeline stages. Each validates every input it needs before
//! writing anything, reads/writes self-contained artifacts under the output
//! directory, and prints a one-object JSON summary to stdout.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde_json::json;

use glepoch_core::discrepancy::{network_eta_with_fields, pairwise_from_reports};
use glepoch_core::graph_core::AuthorId;
use glepoch_core::graphlet::{spectrogram, transform, GraphletVector};
use glepoch_core::ingest::{generate_synthetic, load_cache, load_corpus, save_cache, write_corpus};
use glepoch_core::report::{
    cohort_table, degree_histogram, display_order, log_log_slope, persistent_scatter,
    rank_size_curves, svg, HistogramSpec,
};
use glepoch_core::temporal::{build_epoch_collab, extract_triad, septa_partition, Epoch};

use crate::artifact::{load_field, load_network, save_field, save_network, NetworkArtifact};
use crate::config::RunConfig;
use crate::error::CliError;

fn ensure_out(cfg: &RunConfig) -> Result<(), CliError> {
    fs::create_dir_all(&cfg.out).map_err(|e| CliError::io(&cfg.out, e))
}

fn write_bytes(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|e| CliError::io(path, e))
}

fn require(path: &Path, produced_by: &str) -> Result<(), CliError> {
    if path.is_file() {
        Ok(())
    } else {
        Err(CliError::missing_artifact(path, produced_by))
    }
}

fn emit(summary: serde_json::Value) {
    println!("{summary}");
}

fn collab_path(cfg: &RunConfig, e: &Epoch) -> PathBuf {
    cfg.out.join(format!("{}.collab.bin", e.file_label()))
}

fn field_path(cfg: &RunConfig, e: &Epoch) -> PathBuf {
    cfg.out.join(format!("{}.field.bin", e.file_label()))
}

pub fn cmd_synth(cfg: &RunConfig) -> Result<(), CliError> {
    let lg = generate_synthetic(&cfg.synth)?;
    let dir = cfg
        .corpus_dir
        .clone()
        .unwrap_or_else(|| cfg.out.join("corpus"));
    fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
    let articles = dir.join("articles.tsv");
    let citations = dir.join("citations.tsv");
    let authorship = dir.join("authorship.tsv");
    write_corpus(&lg, &articles, &citations, &authorship)
        .map_err(|e| CliError::io(&dir, e))?;
    emit(json!({
        "command": "synth",
        "corpus_dir": dir.display().to_string(),
        "articles": lg.n_articles(),
        "authors": lg.n_authors(),
        "authorship_links": lg.n_links(),
        "seed": cfg.synth.seed,
    }));
    Ok(())
}

pub fn cmd_ingest(cfg: &RunConfig) -> Result<(), CliError> {
    let [articles, citations, authorship] = cfg.corpus_paths()?;
    for p in [&articles, &citations, &authorship] {
        require(p, "synth")?;
    }
    let (lg, summary) = load_corpus(&articles, &citations, &authorship)?;
    if let Some(parent) = cfg.cache.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| CliError::io(parent, e))?;
    }
    save_cache(&lg, &cfg.cache)?;
    emit(json!({
        "command": "ingest",
        "cache": cfg.cache.display().to_string(),
        "articles": summary.n_articles,
        "authors": summary.n_authors,
        "authorship_links": summary.n_links,
        "citations": summary.n_citations,
        "dropped": {
            "self_loops": summary.citation_stats.self_loops_dropped,
            "duplicate_citations": summary.citation_stats.duplicates_dropped,
            "duplicate_authorships": summary.duplicate_authorship_dropped,
        },
        "chronology_violations": summary.citation_stats.chronology_violations,
    }));
    Ok(())
}

pub fn cmd_extract(cfg: &RunConfig) -> Result<(), CliError> {
    require(&cfg.cache, "ingest")?;
    let lg = load_cache(&cfg.cache)?;
    ensure_out(cfg)?;

    let per_epoch: Vec<serde_json::Value> = cfg
        .epochs
        .par_iter()
        .map(|epoch| -> Result<serde_json::Value, CliError> {
            let triad = extract_triad(&lg, epoch);
            let part = septa_partition(&lg, &triad);
            let net = build_epoch_collab(&lg, &triad, &part);
            save_network(&collab_path(cfg, epoch), &net, |k| {
                lg.author_key(k).to_string()
            })?;
            let sizes = part.sizes();
            let triad_json = json!({
                "label": epoch.label,
                "window": format!("{}:{}", epoch.t_start, epoch.t_end),
                "articles": { "core": triad.core.len(), "cout": triad.cout.len(), "cin": triad.cin.len() },
                "citation_edges": { "core_core": triad.core_core.len(), "core_cout": triad.core_cout.len(), "cin_core": triad.cin_core.len() },
                "cohort_sizes": sizes,
                "involved_authors": part.n_involved(),
                "collab": { "vertices": net.graph.n_vertices(), "edges": net.graph.n_edges() },
            });
            let path = cfg.out.join(format!("{}.triad.json", epoch.file_label()));
            write_bytes(&path, format!("{triad_json:#}\n").as_bytes())?;
            Ok(triad_json)
        })
        .collect::<Result<_, _>>()?;

    emit(json!({ "command": "extract", "epochs": per_epoch }));
    Ok(())
}

fn load_epoch_networks(cfg: &RunConfig) -> Result<Vec<NetworkArtifact>, CliError> {
    for epoch in &cfg.epochs {
        require(&collab_path(cfg, epoch), "extract")?;
    }
    cfg.epochs
        .par_iter()
        .map(|e| load_network(&collab_path(cfg, e)))
        .collect()
}

fn load_epoch_fields(cfg: &RunConfig) -> Result<Vec<Vec<GraphletVector>>, CliError> {
    for epoch in &cfg.epochs {
        require(&field_path(cfg, epoch), "transform")?;
    }
    cfg.epochs
        .par_iter()
        .map(|e| load_field(&field_path(cfg, e)).map(|(_, f)| f))
        .collect()
}

pub fn cmd_transform(cfg: &RunConfig) -> Result<(), CliError> {
    let arts = load_epoch_networks(cfg)?;
    ensure_out(cfg)?;

    let per_epoch: Vec<serde_json::Value> = cfg
        .epochs
        .par_iter()
        .zip(&arts)
        .map(|(epoch, art)| -> Result<serde_json::Value, CliError> {
            let stem = epoch.file_label();
            let field = transform(&art.net.graph);
            save_field(&field_path(cfg, epoch), &epoch.label, &field)?;

            let order = display_order(&art.net);
            let spec = spectrogram(&field, &order, art.net.boundaries.clone())
                .expect("display order is a permutation with matching boundaries");
            let mut csv = Vec::new();
            spec.write_csv(&mut csv, |k| art.name_of(k))
                .map_err(|e| CliError::io(&cfg.out, e))?;
            write_bytes(&cfg.out.join(format!("{stem}.graphlets.csv")), &csv)?;

            let mut sidecar = Vec::new();
            spec.write_boundaries_json(&mut sidecar)
                .map_err(|e| CliError::io(&cfg.out, e))?;
            sidecar.push(b'\n');
            write_bytes(&cfg.out.join(format!("{stem}.boundaries.json")), &sidecar)?;

            let svg_text = svg::render_spectrogram(&spec, &format!("{} graphlet spectrogram", epoch.label));
            write_bytes(&cfg.out.join(format!("{stem}.spectrogram.svg")), svg_text.as_bytes())?;

            let triangles: u64 = field.iter().map(|f| f.d4).sum::<u64>() / 3;
            Ok(json!({
                "label": epoch.label,
                "vertices": field.len(),
                "edges": art.net.graph.n_edges(),
                "triangles": triangles,
            }))
        })
        .collect::<Result<_, _>>()?;

    emit(json!({ "command": "transform", "epochs": per_epoch }));
    Ok(())
}

pub fn cmd_compare(cfg: &RunConfig) -> Result<(), CliError> {
    let arts = load_epoch_networks(cfg)?;
    let fields = load_epoch_fields(cfg)?;
    ensure_out(cfg)?;

    let n = arts.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let reports: Vec<_> = pairs
        .par_iter()
        .map(|&(i, j)| {
            network_eta_with_fields(&arts[i].net, &fields[i], &arts[j].net, &fields[j], &cfg.discrepancy)
        })
        .collect();

    let labels: Vec<String> = cfg.epochs.iter().map(|e| e.label.clone()).collect();
    let counts: Vec<usize> = arts.iter().map(|a| a.net.graph.n_vertices()).collect();
    let table = pairwise_from_reports(labels, &counts, &reports);

    let mut csv = Vec::new();
    table
        .write_csv(&mut csv)
        .map_err(|e| CliError::io(&cfg.out, e))?;
    write_bytes(&cfg.out.join("pairwise.csv"), &csv)?;
    let table_json = serde_json::to_string_pretty(&table).expect("table serializes");
    write_bytes(&cfg.out.join("pairwise.json"), format!("{table_json}\n").as_bytes())?;

    for (&(i, j), report) in pairs.iter().zip(&reports) {
        let name = format!(
            "{}__vs__{}.report.json",
            cfg.epochs[i].file_label(),
            cfg.epochs[j].file_label()
        );
        let body = serde_json::to_string_pretty(report).expect("report serializes");
        write_bytes(&cfg.out.join(name), format!("{body}\n").as_bytes())?;
    }

    emit(json!({
        "command": "compare",
        "networks": n,
        "pairs": pairs.len(),
        "out": cfg.out.display().to_string(),
    }));
    Ok(())
}

pub fn cmd_report(cfg: &RunConfig) -> Result<(), CliError> {
    let arts = load_epoch_networks(cfg)?;
    let fields = load_epoch_fields(cfg)?;
    ensure_out(cfg)?;

    let nets: Vec<_> = arts.iter().map(|a| &a.net).collect();
    let mut csv = Vec::new();
    cohort_table(&nets)
        .write_csv(&mut csv)
        .map_err(|e| CliError::io(&cfg.out, e))?;
    write_bytes(&cfg.out.join("cohort_table.csv"), &csv)?;

    let per_epoch: Vec<serde_json::Value> = cfg
        .epochs
        .par_iter()
        .zip(&arts)
        .zip(&fields)
        .map(|((epoch, art), field)| -> Result<serde_json::Value, CliError> {
            let stem = epoch.file_label();
            let hist = degree_histogram(field, HistogramSpec::default());
            let mut csv = Vec::new();
            hist.write_csv(&mut csv).map_err(|e| CliError::io(&cfg.out, e))?;
            write_bytes(&cfg.out.join(format!("{stem}.histogram.csv")), &csv)?;
            let title = format!("{} degree histogram", epoch.label);
            write_bytes(
                &cfg.out.join(format!("{stem}.histogram.svg")),
                svg::render_histogram(&hist, &title).as_bytes(),
            )?;

            let curves = rank_size_curves(field);
            let mut csv = Vec::new();
            curves
                .write_csv(&mut csv, |k| art.name_of(k))
                .map_err(|e| CliError::io(&cfg.out, e))?;
            write_bytes(&cfg.out.join(format!("{stem}.curves.csv")), &csv)?;
            let title = format!("{} rank-size curves", epoch.label);
            write_bytes(
                &cfg.out.join(format!("{stem}.curves.svg")),
                svg::render_curves(&curves, &title).as_bytes(),
            )?;

            let order = display_order(&art.net);
            let title = format!("{} cohort-ordered adjacency", epoch.label);
            write_bytes(
                &cfg.out.join(format!("{stem}.heatmap.svg")),
                svg::render_heatmap(&art.net, &order, &title).as_bytes(),
            )?;

            let slope = log_log_slope(&hist, 0..hist.counts.len());
            let stats = json!({
                "label": epoch.label,
                "vertices": art.net.graph.n_vertices(),
                "edges": art.net.graph.n_edges(),
                "largest_component": art.net.graph.largest_component(),
                "degree_slope": slope,
            });
            write_bytes(
                &cfg.out.join(format!("{stem}.stats.json")),
                format!("{stats:#}\n").as_bytes(),
            )?;
            Ok(stats)
        })
        .collect::<Result<_, _>>()?;

    let items: Vec<(&glepoch_core::temporal::CollabNetwork, &[GraphletVector])> = arts
        .iter()
        .zip(&fields)
        .map(|(a, f)| (&a.net, f.as_slice()))
        .collect();
    let scatter = persistent_scatter(&items);
    let name_of = |k: AuthorId| {
        arts.iter()
            .find_map(|a| a.net.graph.local_index(k).map(|v| a.author_names[v].clone()))
            .unwrap_or_else(|| k.index().to_string())
    };
    let mut csv = Vec::new();
    scatter
        .write_csv(&mut csv, name_of)
        .map_err(|e| CliError::io(&cfg.out, e))?;
    write_bytes(&cfg.out.join("scatter.csv"), &csv)?;
    write_bytes(
        &cfg.out.join("scatter.svg"),
        svg::render_scatter(&scatter, "persistent-cohort graphlet scatter").as_bytes(),
    )?;

    emit(json!({
        "command": "report",
        "epochs": per_epoch,
        "persistent_common_authors": scatter.common_authors.len(),
        "out": cfg.out.display().to_string(),
    }));
    Ok(())
}
