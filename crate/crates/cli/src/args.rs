use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::Value;
use wigmol_core::observables::stepped_grid;
use wigmol_core::Interaction;

use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "wigmol", version, about = "Harmonic-approximation scans for trapped 1D chains with |x|^-d repulsion")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ordered equilibrium positions
    Equilibrium {
        #[command(flatten)]
        common: Common,
        /// Report physical centers at this interaction strength
        #[arg(long)]
        g: Option<f64>,
        /// Small exponent paired with `--d log` for physical centers
        #[arg(long)]
        d_aux: Option<f64>,
    },
    /// Normal-mode frequencies
    Modes {
        #[command(flatten)]
        common: Common,
    },
    /// Per-site density-matrix kernel parameters
    Kernel {
        #[command(flatten)]
        common: Common,
    },
    /// Occupancy ladders of every site
    Spectrum {
        #[command(flatten)]
        common: Common,
    },
    /// Degree of correlation K and delta_K over a grid of N and d
    #[command(name = "scan-k")]
    ScanK {
        #[command(flatten)]
        common: Common,
    },
    /// One-particle density profile
    Density {
        #[command(flatten)]
        common: Common,
        /// Place peaks at physical centers for this interaction strength
        #[arg(long, conflicts_with = "spacing")]
        g: Option<f64>,
        /// Small exponent paired with `--d log` for physical centers
        #[arg(long)]
        d_aux: Option<f64>,
        /// Fictitious spacing between peaks
        #[arg(long)]
        spacing: Option<f64>,
        /// Grid as lo:hi:step
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
    },
    /// Momentum distribution
    Momentum {
        #[command(flatten)]
        common: Common,
        /// Grid as lo:hi:step
        #[arg(long, allow_hyphen_values = true)]
        k: Option<String>,
    },
    /// Run the oracle suite and report every check
    Verify {
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Particle numbers: `2..30`, `2,3,5` or a mix
    #[arg(long)]
    pub n: Option<String>,
    /// Exponents: numbers, `log` (d -> 0) or `inf` (d -> infinity), comma separated
    #[arg(long)]
    pub d: Option<String>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file; standard output when absent
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// JSON file supplying any of n, d, format, output, tail_tol, g, d_aux, spacing, x, k
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Truncate occupancy ladders once the remaining mass is below this
    #[arg(long)]
    pub tail_tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Same fields as the flags; flags win.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub n: Option<Value>,
    pub d: Option<Value>,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub tail_tol: Option<f64>,
    pub g: Option<f64>,
    pub d_aux: Option<f64>,
    pub spacing: Option<f64>,
    pub x: Option<String>,
    pub k: Option<String>,
}

impl ConfigFile {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else { return Ok(ConfigFile::default()) };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
    }
}

/// Flattens a JSON list or string into the comma-separated token syntax.
pub fn value_tokens(v: &Value) -> Result<String, CliError> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        Value::Array(items) => Ok(items.iter().map(value_tokens).collect::<Result<Vec<_>, _>>()?.join(",")),
        other => Err(CliError::Usage(format!("unsupported list value {other}"))),
    }
}

/// Resolved command-independent settings.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub n_list: Vec<usize>,
    pub d_list: Vec<Interaction>,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub tail_tol: f64,
    pub config: ConfigFile,
}

impl Common {
    pub fn resolve(&self) -> Result<Resolved, CliError> {
        let config = ConfigFile::load(self.config.as_deref())?;
        let n_text = match (&self.n, &config.n) {
            (Some(s), _) => s.clone(),
            (None, Some(v)) => value_tokens(v)?,
            (None, None) => return Err(CliError::Usage("--n is required".into())),
        };
        let d_text = match (&self.d, &config.d) {
            (Some(s), _) => s.clone(),
            (None, Some(v)) => value_tokens(v)?,
            (None, None) => return Err(CliError::Usage("--d is required".into())),
        };
        let tail_tol = self.tail_tol.or(config.tail_tol).unwrap_or(wigmol_core::DEFAULT_TAIL_TOL);
        if !(tail_tol > 0.0) {
            return Err(CliError::Usage(format!("tail tolerance must be positive, got {tail_tol}")));
        }
        Ok(Resolved {
            n_list: parse_n_list(&n_text)?,
            d_list: parse_d_list(&d_text)?,
            format: self.format.or(config.format).unwrap_or(Format::Csv),
            output: self.output.clone().or_else(|| config.output.clone()),
            tail_tol,
            config,
        })
    }
}

/// `2..30` (inclusive) and plain integers, comma separated. Sorted, deduplicated.
pub fn parse_n_list(text: &str) -> Result<Vec<usize>, CliError> {
    let bad = |t: &str| CliError::Usage(format!("bad particle number {t:?}"));
    let mut out = Vec::new();
    for token in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        if let Some((lo, hi)) = token.split_once("..") {
            let lo: usize = lo.trim().parse().map_err(|_| bad(token))?;
            let hi: usize = hi.trim().parse().map_err(|_| bad(token))?;
            if hi < lo {
                return Err(bad(token));
            }
            out.extend(lo..=hi);
        } else {
            out.push(token.parse().map_err(|_| bad(token))?);
        }
    }
    if out.is_empty() {
        return Err(CliError::Usage("empty particle-number list".into()));
    }
    if let Some(&n) = out.iter().find(|&&n| n < 2) {
        return Err(CliError::Usage(format!("need at least 2 particles, got {n}")));
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Exponent tokens, sorted as `log`, increasing numbers, `inf`.
pub fn parse_d_list(text: &str) -> Result<Vec<Interaction>, CliError> {
    let mut out: Vec<Interaction> = text
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<Interaction>().map_err(|e| CliError::Usage(e.to_string())))
        .collect::<Result<_, _>>()?;
    if out.is_empty() {
        return Err(CliError::Usage("empty exponent list".into()));
    }
    let rank = |i: &Interaction| match i {
        Interaction::LogLimit => (0, 0.0),
        Interaction::PowerLaw(d) => (1, *d),
        Interaction::HardCoreLimit => (2, 0.0),
    };
    out.sort_by(|a, b| rank(a).0.cmp(&rank(b).0).then(rank(a).1.total_cmp(&rank(b).1)));
    out.dedup();
    Ok(out)
}

/// `lo:hi:step`.
pub fn parse_grid(text: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::Usage(format!("grid must be lo:hi:step, got {text:?}"));
    let parts: Vec<f64> = text
        .split(':')
        .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    let [lo, hi, step] = parts[..] else { return Err(bad()) };
    stepped_grid(lo, hi, step).map_err(|e| CliError::Usage(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_ranges() {
        assert_eq!(parse_n_list("2..5").unwrap(), vec![2, 3, 4, 5]);
        assert_eq!(parse_n_list("7, 3,3, 2..3").unwrap(), vec![2, 3, 7]);
        assert!(parse_n_list("1..3").is_err());
        assert!(parse_n_list("5..2").is_err());
        assert!(parse_n_list("x").is_err());
    }

    #[test]
    fn d_tokens() {
        let d = parse_d_list("6,inf,0.5,log,1").unwrap();
        assert_eq!(
            d,
            vec![
                Interaction::LogLimit,
                Interaction::PowerLaw(0.5),
                Interaction::PowerLaw(1.0),
                Interaction::PowerLaw(6.0),
                Interaction::HardCoreLimit
            ]
        );
        assert!(parse_d_list("-2").is_err());
        assert!(parse_d_list("").is_err());
    }

    #[test]
    fn grids() {
        assert_eq!(parse_grid("-5:5:0.01").unwrap().len(), 1001);
        assert!(parse_grid("1:2").is_err());
        assert!(parse_grid("0:1:0").is_err());
    }

    #[test]
    fn config_values() {
        let v: Value = serde_json::json!([2, "3..4"]);
        assert_eq!(value_tokens(&v).unwrap(), "2,3..4");
        let v: Value = serde_json::json!(["log", 1.5]);
        assert_eq!(parse_d_list(&value_tokens(&v).unwrap()).unwrap().len(), 2);
    }
}
