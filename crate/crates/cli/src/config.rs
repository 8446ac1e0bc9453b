use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Verify,
    Density,
    Pairing,
    Scan,
    Moments,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum MethodChoice {
    Closed,
    Series,
    Both,
}

/// Overrides read from `--config <path>`; every field optional.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub rank: Option<Vec<usize>>,
    pub grid: Option<usize>,
    pub truncation: Option<usize>,
    #[serde(default)]
    pub tol: BTreeMap<String, f64>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub method: Option<MethodChoice>,
    pub levels: Option<Vec<f64>>,
    pub max_total: Option<usize>,
    pub max_moment: Option<usize>,
    pub gram_degree: Option<usize>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("bad config {}: {e}", path.display())))
    }
}

/// Fully resolved settings for one invocation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub ranks: Vec<usize>,
    pub grid_n: usize,
    pub truncation: usize,
    pub tolerances: BTreeMap<String, f64>,
    #[serde(skip)]
    pub output_path: Option<PathBuf>,
    pub format: Format,
    pub method: MethodChoice,
    pub levels: Vec<f64>,
    pub max_total: usize,
    pub max_moment: usize,
    pub gram_degree: usize,
    pub inject_fault: bool,
    #[serde(skip)]
    pub pair_cap: Option<u128>,
}

pub const KNOWN_TOLERANCES: [&str; 6] = ["tail", "agree", "quad", "norm", "moment", "gram"];

impl RunConfig {
    /// Defaults that reproduce the acceptance settings.
    pub fn defaults(command: Command) -> Self {
        let tolerances = [
            ("tail", 1e-10),
            ("agree", 1e-10),
            ("quad", 1e-6),
            ("norm", 1e-8),
            ("moment", 1e-8),
            ("gram", 1e-8),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect();
        let (ranks, grid_n, format) = match command {
            Command::Density => (vec![2], 64, Format::Csv),
            Command::Scan => (vec![2], 512, Format::Json),
            _ => (vec![2, 3], 64, Format::Json),
        };
        RunConfig {
            command,
            ranks,
            grid_n,
            truncation: 60,
            tolerances,
            output_path: None,
            format,
            method: MethodChoice::Closed,
            levels: vec![1e-1, 1e-3, 1e-5],
            max_total: 6,
            max_moment: 10,
            gram_degree: 8,
            inject_fault: false,
            pair_cap: None,
        }
    }

    pub fn apply_file(&mut self, file: ConfigFile) {
        if let Some(v) = file.rank {
            self.ranks = v;
        }
        if let Some(v) = file.grid {
            self.grid_n = v;
        }
        if let Some(v) = file.truncation {
            self.truncation = v;
        }
        self.tolerances.extend(file.tol);
        if let Some(v) = file.out {
            self.output_path = Some(v);
        }
        if let Some(v) = file.format {
            self.format = v;
        }
        if let Some(v) = file.method {
            self.method = v;
        }
        if let Some(v) = file.levels {
            self.levels = v;
        }
        if let Some(v) = file.max_total {
            self.max_total = v;
        }
        if let Some(v) = file.max_moment {
            self.max_moment = v;
        }
        if let Some(v) = file.gram_degree {
            self.gram_degree = v;
        }
    }

    pub fn tol(&self, name: &str) -> f64 {
        self.tolerances[name]
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.ranks.is_empty() {
            return Err(CliError::Config("at least one rank is required".into()));
        }
        if let Some(&r) = self.ranks.iter().find(|&&r| r < 2) {
            return Err(CliError::Config(format!(
                "rank must be at least 2 (F_{r} is not a nonabelian free group)"
            )));
        }
        for (name, &v) in &self.tolerances {
            if !KNOWN_TOLERANCES.contains(&name.as_str()) {
                return Err(CliError::Config(format!(
                    "unknown tolerance '{name}', expected one of {KNOWN_TOLERANCES:?}"
                )));
            }
            if !(v > 0.0 && v.is_finite()) {
                return Err(CliError::Config(format!(
                    "tolerance {name} must be positive"
                )));
            }
        }
        if self.grid_n == 0 {
            return Err(CliError::Config("grid must be positive".into()));
        }
        if self.truncation < 2 {
            return Err(CliError::Config("truncation must be at least 2".into()));
        }
        if self.levels.iter().any(|&l| !(l >= 0.0 && l.is_finite())) {
            return Err(CliError::Config("scan levels must be nonnegative".into()));
        }
        match self.command {
            Command::Density | Command::Scan if self.ranks.len() != 1 => {
                return Err(CliError::Config(format!(
                    "{:?} takes exactly one rank",
                    self.command
                )))
            }
            Command::Scan if self.grid_n < 16 => {
                return Err(CliError::Config("scan needs --grid >= 16".into()))
            }
            Command::Pairing if self.max_total > radial_masa_core::density::MAX_EXACT_TOTAL => {
                return Err(CliError::Config(format!(
                    "pairing supports --max-total <= {}",
                    radial_masa_core::density::MAX_EXACT_TOTAL
                )))
            }
            _ => {}
        }
        if self.max_moment == 0 && self.command == Command::Moments && self.gram_degree == 0 {
            return Err(CliError::Config("nothing to compare".into()));
        }
        Ok(())
    }
}

/// Parses `name=value`.
pub fn parse_tol(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| format!("expected <name>=<value>, got '{s}'"))?;
    let v: f64 = value
        .trim()
        .parse()
        .map_err(|e| format!("bad tolerance value '{value}': {e}"))?;
    Ok((name.trim().to_string(), v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tol_parsing() {
        assert_eq!(parse_tol("quad=1e-6").unwrap(), ("quad".into(), 1e-6));
        assert!(parse_tol("quad").is_err());
        assert!(parse_tol("quad=abc").is_err());
    }

    #[test]
    fn validation() {
        let mut c = RunConfig::defaults(Command::Verify);
        assert!(c.validate().is_ok());
        c.ranks = vec![1];
        assert!(c.validate().is_err());
        let mut c = RunConfig::defaults(Command::Density);
        c.ranks = vec![2, 3];
        assert!(c.validate().is_err());
        let mut c = RunConfig::defaults(Command::Scan);
        c.grid_n = 8;
        assert!(c.validate().is_err());
        let mut c = RunConfig::defaults(Command::Pairing);
        c.tolerances.insert("bogus".into(), 1.0);
        assert!(c.validate().is_err());
        let mut c = RunConfig::defaults(Command::Pairing);
        c.tolerances.insert("quad".into(), -1.0);
        assert!(c.validate().is_err());
    }

    #[test]
    fn file_overrides() {
        let mut c = RunConfig::defaults(Command::Density);
        let f: ConfigFile =
            serde_json::from_str(r#"{"grid": 8, "tol": {"tail": 1e-6}, "format": "json"}"#)
                .unwrap();
        c.apply_file(f);
        assert_eq!(c.grid_n, 8);
        assert_eq!(c.tol("tail"), 1e-6);
        assert_eq!(c.tol("quad"), 1e-6);
        assert_eq!(c.format, Format::Json);
        assert!(serde_json::from_str::<ConfigFile>(r#"{"grdi": 8}"#).is_err());
    }
}
