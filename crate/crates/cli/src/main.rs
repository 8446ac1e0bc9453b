//! Command-line driver for the radial MASA checks.
//!
//! Exit status: 0 when every check passes, 1 when a mathematical check
//! fails, 2 for configuration, resource or convergence failures.

mod commands;
mod config;
mod error;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{parse_tol, Command, ConfigFile, Format, MethodChoice, RunConfig};
use error::CliError;

const CAP_ENV: &str = "RADIAL_MASA_CAP";

#[derive(Parser, Debug)]
#[command(
    name = "radial-masa",
    version,
    about = "Exact and numerical checks for the radial MASA in free group factors"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Exact identities for chi_n beta chi_m in the rational group algebra.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Largest n + m swept.
        #[arg(long)]
        max_total: Option<usize>,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// The density f on an interior grid of [-a_N, a_N]^2.
    Density {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        method: Option<MethodChoice>,
    },
    /// Quadrature of chi_j(t) chi_k(s) f(t, s) against the exact pairing.
    Pairing {
        #[command(flatten)]
        common: Common,
        /// Largest j + k compared.
        #[arg(long)]
        max_total: Option<usize>,
    },
    /// Sub-tolerance fractions of |f| on a fine grid.
    Scan {
        #[command(flatten)]
        common: Common,
        /// Comma-separated tolerances; an empty string scans no levels.
        #[arg(long)]
        levels: Option<String>,
    },
    /// Moments and Gram matrix of the spectral measure.
    Moments {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        max_moment: Option<usize>,
        #[arg(long)]
        gram_degree: Option<usize>,
    },
}

#[derive(Args, Debug, Default)]
struct Common {
    /// Free group rank(s), comma-separated.
    #[arg(long, value_delimiter = ',')]
    rank: Vec<usize>,
    /// Grid points per axis.
    #[arg(long)]
    grid: Option<usize>,
    /// Series truncation order K.
    #[arg(long)]
    truncation: Option<usize>,
    /// Tolerance override, repeatable: tail, agree, quad, norm, moment, gram.
    #[arg(long = "tol", value_parser = parse_tol)]
    tol: Vec<(String, f64)>,
    /// Output file, written atomically; stdout if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// JSON file of defaults; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

fn parse_levels(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| {
            x.parse()
                .map_err(|e| CliError::Config(format!("bad level '{x}': {e}")))
        })
        .collect()
}

fn pair_cap_from_env() -> Result<Option<u128>, CliError> {
    match std::env::var(CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse::<u128>()
            .map(Some)
            .map_err(|e| CliError::Config(format!("{CAP_ENV}='{v}': {e}"))),
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(CliError::Config(format!("{CAP_ENV}: {e}"))),
    }
}

fn resolve(cli: Cli) -> Result<RunConfig, CliError> {
    let (command, common) = match &cli.command {
        Sub::Verify { common, .. } => (Command::Verify, common),
        Sub::Density { common, .. } => (Command::Density, common),
        Sub::Pairing { common, .. } => (Command::Pairing, common),
        Sub::Scan { common, .. } => (Command::Scan, common),
        Sub::Moments { common, .. } => (Command::Moments, common),
    };
    let mut cfg = RunConfig::defaults(command);
    if let Some(path) = &common.config {
        cfg.apply_file(ConfigFile::load(path)?);
    }
    if !common.rank.is_empty() {
        cfg.ranks = common.rank.clone();
    }
    if let Some(v) = common.grid {
        cfg.grid_n = v;
    }
    if let Some(v) = common.truncation {
        cfg.truncation = v;
    }
    cfg.tolerances.extend(common.tol.iter().cloned());
    if let Some(v) = &common.out {
        cfg.output_path = Some(v.clone());
    }
    if let Some(v) = common.format {
        cfg.format = v;
    }
    match cli.command {
        Sub::Verify {
            max_total,
            inject_fault,
            ..
        } => {
            if let Some(v) = max_total {
                cfg.max_total = v;
            }
            cfg.inject_fault = inject_fault;
        }
        Sub::Density { method, .. } => {
            if let Some(v) = method {
                cfg.method = v;
            }
        }
        Sub::Pairing { max_total, .. } => {
            if let Some(v) = max_total {
                cfg.max_total = v;
            }
        }
        Sub::Scan { levels, .. } => {
            if let Some(v) = levels {
                cfg.levels = parse_levels(&v)?;
            }
        }
        Sub::Moments {
            max_moment,
            gram_degree,
            ..
        } => {
            if let Some(v) = max_moment {
                cfg.max_moment = v;
            }
            if let Some(v) = gram_degree {
                cfg.gram_degree = v;
            }
        }
    }
    cfg.pair_cap = pair_cap_from_env()?;
    cfg.validate()?;
    Ok(cfg)
}

fn execute(cli: Cli) -> Result<bool, CliError> {
    let cfg = resolve(cli)?;
    let outcome = commands::run(&cfg)?;
    report::emit(&outcome, cfg.format, cfg.output_path.as_deref())?;
    eprintln!(
        "{} {}",
        if outcome.pass { "PASS" } else { "FAIL" },
        outcome.summary
    );
    Ok(outcome.pass)
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(args: &[&str]) -> Result<RunConfig, CliError> {
        let mut full = vec!["radial-masa"];
        full.extend_from_slice(args);
        resolve(Cli::try_parse_from(full).expect("parses"))
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn rank_list_and_levels() {
        let c = cfg(&["verify", "--rank", "2,3,4"]).unwrap();
        assert_eq!(c.ranks, vec![2, 3, 4]);
        let c = cfg(&["scan", "--levels", ""]).unwrap();
        assert!(c.levels.is_empty());
        let c = cfg(&["scan", "--levels", "0.1, 1e-4"]).unwrap();
        assert_eq!(c.levels, vec![0.1, 1e-4]);
        assert!(cfg(&["scan", "--levels", "x"]).is_err());
    }

    #[test]
    fn flags_beat_config_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.json");
        std::fs::write(
            &path,
            r#"{"grid": 8, "truncation": 30, "tol": {"tail": 1e-3}}"#,
        )
        .unwrap();
        let c = cfg(&[
            "density",
            "--config",
            path.to_str().unwrap(),
            "--grid",
            "4",
            "--tol",
            "tail=1e-4",
        ])
        .unwrap();
        assert_eq!(c.grid_n, 4);
        assert_eq!(c.truncation, 30);
        assert_eq!(c.tol("tail"), 1e-4);
    }

    #[test]
    fn rejects_bad_rank() {
        assert!(matches!(
            cfg(&["verify", "--rank", "1"]),
            Err(CliError::Config(_))
        ));
        assert!(matches!(
            cfg(&["density", "--rank", "2,3"]),
            Err(CliError::Config(_))
        ));
    }
}
