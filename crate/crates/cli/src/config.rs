//! Run configuration: defaults, then the `--config` key=value file, then
//! command-line flags, in increasing precedence. Everything is validated
//! here, before any command touches the filesystem.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use glepoch_core::discrepancy::DiscrepancyConfig;
use glepoch_core::ingest::{SyntheticConfig, TeamSizeDist};
use glepoch_core::temporal::{canonical_epochs, Epoch};

use crate::error::CliError;
use crate::CommonArgs;

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub corpus_dir: Option<PathBuf>,
    pub cache: PathBuf,
    pub epochs: Vec<Epoch>,
    pub out: PathBuf,
    pub threads: usize,
    pub discrepancy: DiscrepancyConfig,
    pub synth: SyntheticConfig,
}

impl RunConfig {
    pub fn resolve(args: &CommonArgs) -> Result<RunConfig, CliError> {
        let file = match &args.config {
            Some(path) => parse_config_file(path)?,
            None => BTreeMap::new(),
        };
        let get = |key: &str| file.get(key).map(String::as_str);

        let out: PathBuf = args
            .out
            .clone()
            .or_else(|| get("out").map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("out"));

        let corpus_dir = args
            .corpus_dir
            .clone()
            .or_else(|| get("corpus_dir").map(PathBuf::from));

        let cache = args
            .cache
            .clone()
            .or_else(|| get("cache").map(PathBuf::from))
            .or_else(|| {
                std::env::var_os("GLEPOCH_CACHE_DIR")
                    .map(|d| PathBuf::from(d).join("cache.lgc"))
            })
            .unwrap_or_else(|| out.join("cache.lgc"));

        let epochs = match args.epochs.as_deref().or_else(|| get("epochs")) {
            Some(spec) => parse_epoch_list(spec)?,
            None => canonical_epochs(),
        };
        let mut labels: Vec<&str> = epochs.iter().map(|e| e.label.as_str()).collect();
        labels.sort_unstable();
        labels.dedup();
        if labels.len() != epochs.len() {
            return Err(CliError::config("epoch labels must be unique"));
        }
        let mut files: Vec<String> = epochs.iter().map(Epoch::file_label).collect();
        files.sort_unstable();
        files.dedup();
        if files.len() != epochs.len() {
            return Err(CliError::config(
                "epoch labels collide after filename sanitization",
            ));
        }

        let threads = match args.threads.or(parse_opt(get("threads"), "threads")?) {
            Some(0) => return Err(CliError::config("--threads must be at least 1")),
            Some(t) => t,
            None => std::thread::available_parallelism().map_or(1, |n| n.get()),
        };

        let holder_p = args
            .holder_p
            .or(parse_opt(get("holder_p"), "holder_p")?)
            .unwrap_or(1.0);
        let include_sigma0 = if args.no_sigma0 {
            false
        } else {
            parse_opt(get("sigma0"), "sigma0")?.unwrap_or(true)
        };
        let weights = match get("weights") {
            Some(raw) => parse_weights(raw)?,
            None => [0.2; 5],
        };
        let discrepancy = DiscrepancyConfig::new(holder_p, weights, include_sigma0)
            .map_err(|e| CliError::config(e.to_string()))?;

        let seed = args.seed.or(parse_opt(get("seed"), "seed")?).unwrap_or(0);
        let mut synth = SyntheticConfig {
            seed,
            ..SyntheticConfig::default()
        };
        if let Some(n) = parse_opt(get("n_articles"), "n_articles")? {
            synth.n_articles = n;
        }
        if let Some(y) = parse_opt(get("start_year"), "start_year")? {
            synth.start_year = y;
        }
        if let Some(s) = parse_opt(get("span_years"), "span_years")? {
            synth.span_years = s;
        }
        if let Some(r) = parse_opt(get("refs_mean"), "refs_mean")? {
            synth.refs_mean = r;
        }
        if let Some(a) = parse_opt(get("attach_exponent"), "attach_exponent")? {
            synth.attach_exponent = a;
        }
        if let Some(p) = parse_opt(get("new_author_prob"), "new_author_prob")? {
            synth.new_author_prob = p;
        }
        if let Some(c) = parse_opt(get("team_size_cap"), "team_size_cap")? {
            synth.team_size_cap = Some(c);
        }
        if let Some(raw) = get("team_size") {
            synth.team_size = parse_team_size(raw)?;
        }

        Ok(RunConfig {
            corpus_dir,
            cache,
            epochs,
            out,
            threads,
            discrepancy,
            synth,
        })
    }

    pub fn corpus_paths(&self) -> Result<[PathBuf; 3], CliError> {
        let dir = self.corpus_dir.as_ref().ok_or_else(|| {
            CliError::config("no corpus directory; pass --corpus-dir or set corpus_dir")
        })?;
        Ok([
            dir.join("articles.tsv"),
            dir.join("citations.tsv"),
            dir.join("authorship.tsv"),
        ])
    }
}

fn parse_config_file(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::io(path, source))?;
    let mut map = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::config(format!(
                "{}:{}: expected `key = value`, got `{line}`",
                path.display(),
                i + 1
            ))
        })?;
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

fn parse_opt<T: std::str::FromStr>(raw: Option<&str>, key: &str) -> Result<Option<T>, CliError> {
    match raw {
        None => Ok(None),
        Some(s) => s
            .parse()
            .map(Some)
            .map_err(|_| CliError::config(format!("bad value `{s}` for `{key}`"))),
    }
}

fn parse_epoch_list(spec: &str) -> Result<Vec<Epoch>, CliError> {
    spec.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| Epoch::parse(s).map_err(CliError::from))
        .collect()
}

fn parse_weights(raw: &str) -> Result<[f64; 5], CliError> {
    let parts: Vec<f64> = raw
        .split(',')
        .map(|s| s.trim().parse())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::config(format!("bad `weights` value `{raw}`")))?;
    parts
        .try_into()
        .map_err(|_| CliError::config("`weights` needs exactly 5 comma-separated values"))
}

/// `fixed:K`, `poisson:MEAN`, or `pareto:SCALE,SHAPE`.
fn parse_team_size(raw: &str) -> Result<TeamSizeDist, CliError> {
    let bad = || CliError::config(format!("bad `team_size` value `{raw}`"));
    let (kind, params) = raw.split_once(':').ok_or_else(bad)?;
    match kind.trim() {
        "fixed" => Ok(TeamSizeDist::Fixed(params.trim().parse().map_err(|_| bad())?)),
        "poisson" => Ok(TeamSizeDist::Poisson {
            mean: params.trim().parse().map_err(|_| bad())?,
        }),
        "pareto" => {
            let (s, a) = params.split_once(',').ok_or_else(bad)?;
            Ok(TeamSizeDist::Pareto {
                scale: s.trim().parse().map_err(|_| bad())?,
                shape: a.trim().parse().map_err(|_| bad())?,
            })
        }
        _ => Err(bad()),
    }
}
