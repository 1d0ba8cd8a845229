//! Run configuration: flat `key=value` files merged under command-line flags.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use clap::Args;
use membrane_core::function_space::{Grid, MembraneParams};

pub const DEFAULT_HALF_WIDTH: f64 = 30.0;
pub const DEFAULT_POINTS: usize = 6001;
pub const DEFAULT_ALPHA: f64 = 0.25;
pub const DEFAULT_BETA: f64 = 0.75;
pub const DEFAULT_SEED: u64 = 1;

const KEYS: [&str; 10] = ["alpha", "beta", "grid_L", "grid_n", "input", "function", "second", "out", "seed", "tol"];

/// Options shared by every command; each may also come from the config file.
#[derive(Args, Debug, Clone, Default)]
pub struct CommonArgs {
    /// Rate on the left of the membrane.
    #[arg(long, global = true)]
    pub alpha: Option<f64>,
    /// Rate on the right of the membrane.
    #[arg(long, global = true)]
    pub beta: Option<f64>,
    /// Half-width L of the grid [-L, L].
    #[arg(long = "grid-L", global = true)]
    pub grid_l: Option<f64>,
    /// Number of grid points (odd).
    #[arg(long = "grid-n", global = true)]
    pub grid_n: Option<usize>,
    /// Input CSV file.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Named corpus function used instead of an input file, or `random`.
    #[arg(long, global = true)]
    pub function: Option<String>,
    /// Second component for commands that take a pair; defaults to `--function`.
    #[arg(long, global = true)]
    pub second: Option<String>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for randomized inputs.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Tolerance override for checks.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Flat `key=value` configuration file; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

/// Parses `key=value` lines; blank lines and `#` comments are skipped, `-` in keys reads as `_`.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| anyhow!("config line {}: expected key=value", i + 1))?;
        let key = k.trim().replace('-', "_");
        if !KEYS.contains(&key.as_str()) {
            bail!("config line {}: unknown key {:?}", i + 1, k.trim());
        }
        if out.insert(key, v.trim().to_string()).is_some() {
            bail!("config line {}: duplicate key {:?}", i + 1, k.trim());
        }
    }
    Ok(out)
}

/// Fully resolved configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub half_width: f64,
    /// `None` when neither a flag nor the config file fixed the point count.
    pub n_points: Option<usize>,
    pub alpha: f64,
    pub beta: f64,
    pub input: Option<PathBuf>,
    pub function: Option<String>,
    pub second: Option<String>,
    pub out: Option<PathBuf>,
    pub seed: u64,
    pub tol: Option<f64>,
}

fn pick<T: FromStr>(flag: Option<T>, file: &BTreeMap<String, String>, key: &str) -> Result<Option<T>> {
    if flag.is_some() {
        return Ok(flag);
    }
    file.get(key)
        .map(|v| v.parse::<T>().map_err(|_| anyhow!("config key {key}: cannot parse {v:?}")))
        .transpose()
}

impl RunConfig {
    pub fn resolve(args: &CommonArgs) -> Result<Self> {
        let file = match &args.config {
            Some(p) => parse_config(&read_text(p)?)?,
            None => BTreeMap::new(),
        };
        let cfg = RunConfig {
            half_width: pick(args.grid_l, &file, "grid_L")?.unwrap_or(DEFAULT_HALF_WIDTH),
            n_points: pick(args.grid_n, &file, "grid_n")?,
            alpha: pick(args.alpha, &file, "alpha")?.unwrap_or(DEFAULT_ALPHA),
            beta: pick(args.beta, &file, "beta")?.unwrap_or(DEFAULT_BETA),
            input: pick(args.input.clone(), &file, "input")?,
            function: pick(args.function.clone(), &file, "function")?,
            second: pick(args.second.clone(), &file, "second")?,
            out: pick(args.out.clone(), &file, "out")?,
            seed: pick(args.seed, &file, "seed")?.unwrap_or(DEFAULT_SEED),
            tol: pick(args.tol, &file, "tol")?,
        };
        if let Some(t) = cfg.tol {
            if !(t >= 0.0) {
                bail!("tolerance must be non-negative, got {t}");
            }
        }
        Ok(cfg)
    }

    pub fn grid(&self) -> Result<Grid> {
        Ok(Grid::new(self.half_width, self.n_points.unwrap_or(DEFAULT_POINTS))?)
    }

    pub fn params(&self) -> Result<MembraneParams> {
        Ok(MembraneParams::new(self.alpha, self.beta)?)
    }
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_dashed_keys() {
        let m = parse_config("# run\nalpha = 1.5\ngrid-L=12 # half width\n\nseed=9\n").unwrap();
        assert_eq!(m["alpha"], "1.5");
        assert_eq!(m["grid_L"], "12");
        assert_eq!(m["seed"], "9");
    }

    #[test]
    fn rejects_unknown_duplicate_and_malformed_lines() {
        assert!(parse_config("gamma=1").is_err());
        assert!(parse_config("alpha=1\nalpha=2").is_err());
        assert!(parse_config("alpha").is_err());
    }

    #[test]
    fn flags_win_over_file_values() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.cfg");
        std::fs::write(&path, "alpha=2\nbeta=3\ngrid_n=101\n").unwrap();
        let args = CommonArgs { alpha: Some(0.5), config: Some(path), ..CommonArgs::default() };
        let cfg = RunConfig::resolve(&args).unwrap();
        assert_eq!((cfg.alpha, cfg.beta, cfg.n_points), (0.5, 3.0, Some(101)));
        assert_eq!(cfg.seed, DEFAULT_SEED);
    }

    #[test]
    fn bad_values_are_errors() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.cfg");
        std::fs::write(&path, "alpha=fast\n").unwrap();
        let args = CommonArgs { config: Some(path), ..CommonArgs::default() };
        assert!(RunConfig::resolve(&args).is_err());
        let args = CommonArgs { alpha: Some(-1.0), beta: Some(0.5), ..CommonArgs::default() };
        assert!(RunConfig::resolve(&args).unwrap().params().is_err());
    }
}
