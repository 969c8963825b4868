//! The `salpeter` command line.
//!
//! Flags override values from an optional JSON file given with `--config`;
//! the file uses the field names of [`ConfigFile`].

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Deserialize;

use crate::bounds::{bounds_pair, SystemSpec};
use crate::error::{invalid, Error, Result};
use crate::figures::{self, format_sig, LowerCurve, MassGrid, ParticleRange};
use crate::pfunction::EnergyFunction;
use crate::radial::compact;
use crate::verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Print e(m) and P(m) for each mass.
    OneBody,
    /// Tabulate e(m) and P(m) over a mass grid.
    Pfunction,
    /// Lower and upper bounds on the N-boson ground energy.
    Bounds,
    /// CSV of e(m) − m and P(m).
    Figure1,
    /// CSV of the bounds with the lower curve at constant P(0).
    Figure2,
    /// CSV of the bounds with the lower curve at P(μ).
    Figure3,
    /// Run the oracle suite.
    Verify,
}

#[derive(Debug, Parser)]
#[command(name = "salpeter", version, about = "Energy bounds for relativistic bosons with oscillator pair forces")]
pub struct Cli {
    /// JSON file with default settings; flags take precedence.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Masses: a value, a comma list, or start:stop:count:linear|log.
    #[arg(long = "mass-grid", visible_alias = "mass", global = true, value_name = "GRID", allow_negative_numbers = true)]
    pub mass_grid: Option<MassGrid>,
    /// Particle numbers, e.g. 2..8 or 3.
    #[arg(long = "N", visible_alias = "n", global = true, value_name = "RANGE")]
    pub n_range: Option<ParticleRange>,
    /// Pair coupling γ.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub gamma: Option<f64>,
    /// Relative tolerance for e(m).
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub tol: Option<f64>,
    /// Write CSV here instead of standard output.
    #[arg(long, short = 'o', global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
    /// Report E − N m instead of E.
    #[arg(long = "subtract-rest-mass", global = true)]
    pub subtract_rest_mass: bool,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
enum RangeField {
    Single(u32),
    Pair([u32; 2]),
    Text(String),
}

impl RangeField {
    fn resolve(&self) -> Result<ParticleRange> {
        match self {
            RangeField::Single(n) => ParticleRange::new(*n, *n),
            RangeField::Pair([a, b]) => ParticleRange::new(*a, *b),
            RangeField::Text(s) => s.parse(),
        }
    }
}

/// Contents of a `--config` file. Every field is optional.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub command: Option<Command>,
    pub mass_grid: Option<MassGrid>,
    #[serde(rename = "N_range")]
    n_range: Option<RangeField>,
    #[serde(alias = "γ")]
    pub gamma: Option<f64>,
    pub tol: Option<f64>,
    pub output_path: Option<PathBuf>,
    pub subtract_rest_mass: Option<bool>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))
    }
}

/// Fully resolved settings for one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub mass_grid: MassGrid,
    pub n_range: ParticleRange,
    pub gamma: f64,
    pub tol: f64,
    pub output_path: Option<PathBuf>,
    pub subtract_rest_mass: bool,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        let mass_grid = match command {
            Command::OneBody | Command::Bounds => MassGrid::List(vec![0.0]),
            _ => MassGrid::default(),
        };
        Self {
            command,
            mass_grid,
            n_range: ParticleRange::default(),
            gamma: 1.0,
            tol: 1e-8,
            output_path: None,
            subtract_rest_mass: false,
        }
    }

    pub fn from_cli(cli: Cli) -> Result<Self> {
        let file = match &cli.config {
            Some(path) => ConfigFile::load(path)?,
            None => ConfigFile::default(),
        };
        let command = cli
            .command
            .or(file.command)
            .ok_or_else(|| invalid("no command given on the command line or in the config file"))?;
        let mut cfg = RunConfig::new(command);
        if let Some(g) = cli.mass_grid.or(file.mass_grid) {
            cfg.mass_grid = g;
        }
        if let Some(r) = cli.n_range {
            cfg.n_range = r;
        } else if let Some(r) = &file.n_range {
            cfg.n_range = r.resolve()?;
        }
        cfg.gamma = cli.gamma.or(file.gamma).unwrap_or(cfg.gamma);
        cfg.tol = cli.tol.or(file.tol).unwrap_or(cfg.tol);
        cfg.output_path = cli.output.or(file.output_path);
        cfg.subtract_rest_mass = cli.subtract_rest_mass || file.subtract_rest_mass.unwrap_or(false);
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.mass_grid.points()?;
        if !(self.gamma > 0.0 && self.gamma.is_finite()) {
            return Err(invalid(format!("coupling must be positive, got {}", self.gamma)));
        }
        if !(self.tol >= 1e-12 && self.tol < 1.0) {
            return Err(invalid(format!("tolerance must lie in [1e-12, 1), got {}", self.tol)));
        }
        Ok(())
    }
}

/// What a successful [`run`] produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Done,
    /// `verify` ran but at least one check failed.
    ChecksFailed,
}

fn emit(cfg: &RunConfig, out: &mut dyn Write, csv: &str) -> Result<()> {
    match &cfg.output_path {
        Some(path) => fs::write(path, csv).map_err(|e| {
            Error::Io(std::io::Error::new(e.kind(), format!("cannot write {}: {e}", path.display())))
        }),
        None => Ok(out.write_all(csv.as_bytes())?),
    }
}

pub fn run(cfg: &RunConfig, out: &mut dyn Write) -> Result<Outcome> {
    cfg.validate()?;
    let ef = EnergyFunction::new(cfg.tol);
    let masses = cfg.mass_grid.points()?;
    match cfg.command {
        Command::OneBody | Command::Pfunction => {
            let rows = figures::figure1(&ef, &masses)?;
            if cfg.command == Command::OneBody {
                for r in &rows {
                    writeln!(out, "e({m})={} P({m})={}", format_sig(r.m + r.e_minus_m), format_sig(r.p), m = compact(r.m))?;
                }
            }
            if cfg.command == Command::Pfunction || cfg.output_path.is_some() {
                let mut csv = String::from("m,e,P\n");
                for r in &rows {
                    csv.push_str(&format!("{},{},{}\n", format_sig(r.m), format_sig(r.m + r.e_minus_m), format_sig(r.p)));
                }
                emit(cfg, out, &csv)?;
            }
        }
        Command::Bounds => {
            let mut csv = String::from("N,m,gamma,mu,P_lower,E_lower,E_upper\n");
            for n in cfg.n_range.iter() {
                for &m in &masses {
                    let sys = SystemSpec::new(n, m, cfg.gamma)?;
                    let b = bounds_pair(&ef, &sys)?;
                    let (lo, up) = if cfg.subtract_rest_mass {
                        (b.lower_binding, b.upper_binding)
                    } else {
                        (b.lower, b.upper)
                    };
                    writeln!(
                        out,
                        "N={n} m={} gamma={} lower={} upper={}",
                        compact(m),
                        compact(cfg.gamma),
                        format_sig(lo),
                        format_sig(up)
                    )?;
                    csv.push_str(&format!(
                        "{n},{},{},{},{},{},{}\n",
                        format_sig(m),
                        format_sig(cfg.gamma),
                        format_sig(b.mu),
                        format_sig(b.p_lower.value()),
                        format_sig(lo),
                        format_sig(up)
                    ));
                }
            }
            if cfg.output_path.is_some() {
                emit(cfg, out, &csv)?;
            }
        }
        Command::Figure1 => {
            let rows = figures::figure1(&ef, &masses)?;
            emit(cfg, out, &figures::figure1_csv(&rows))?;
        }
        Command::Figure2 | Command::Figure3 => {
            let curve = if cfg.command == Command::Figure2 { LowerCurve::Constant } else { LowerCurve::Running };
            let rows = figures::bounds_table(&ef, &masses, cfg.n_range, cfg.gamma, curve, cfg.subtract_rest_mass)?;
            emit(cfg, out, &figures::bounds_csv(&rows, curve))?;
        }
        Command::Verify => {
            let report = verify::run_suite(&ef)?;
            writeln!(out, "{report}")?;
            if !report.all_passed() {
                return Ok(Outcome::ChecksFailed);
            }
        }
    }
    Ok(Outcome::Done)
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidArgument(_) | Error::Io(_) => EXIT_USAGE,
        _ => EXIT_NUMERICAL,
    }
}

/// Parses `args`, runs, and returns the process exit status.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let result = RunConfig::from_cli(cli).and_then(|cfg| run(&cfg, out));
    match result {
        Ok(Outcome::Done) => EXIT_OK,
        Ok(Outcome::ChecksFailed) => {
            let _ = writeln!(err, "salpeter: verification failed");
            EXIT_NUMERICAL
        }
        Err(e) => {
            let _ = writeln!(err, "salpeter: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<RunConfig> {
        let cli = Cli::try_parse_from(std::iter::once("salpeter").chain(args.iter().copied())).unwrap();
        RunConfig::from_cli(cli)
    }

    #[test]
    fn flags_resolve() {
        let cfg = parse(&["bounds", "--N", "2", "--mass", "0", "--gamma", "1"]).unwrap();
        assert_eq!(cfg.command, Command::Bounds);
        assert_eq!(cfg.n_range, ParticleRange { first: 2, last: 2 });
        assert_eq!(cfg.mass_grid, MassGrid::List(vec![0.0]));

        let cfg = parse(&["figure2"]).unwrap();
        assert_eq!(cfg.mass_grid.points().unwrap().len(), 101);
        assert_eq!(cfg.n_range, ParticleRange::default());

        assert!(parse(&["figure1", "--tol", "1e-14"]).is_err());
        assert!(parse(&["bounds", "--gamma", "-1"]).is_err());
        assert!(parse(&[]).is_err());
    }

    #[test]
    fn config_file_and_precedence() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.json");
        fs::write(
            &path,
            r#"{"command":"figure3","mass_grid":"0:1:3:linear","N_range":[2,4],"gamma":2.0,"subtract_rest_mass":true}"#,
        )
        .unwrap();
        let p = path.to_str().unwrap();
        let cfg = parse(&["--config", p]).unwrap();
        assert_eq!(cfg.command, Command::Figure3);
        assert_eq!(cfg.gamma, 2.0);
        assert_eq!(cfg.n_range, ParticleRange { first: 2, last: 4 });
        assert!(cfg.subtract_rest_mass);

        let cfg = parse(&["figure2", "--config", p, "--gamma", "0.5", "--N", "3"]).unwrap();
        assert_eq!(cfg.command, Command::Figure2);
        assert_eq!(cfg.gamma, 0.5);
        assert_eq!(cfg.n_range, ParticleRange { first: 3, last: 3 });

        fs::write(&path, r#"{"command":"figure1","colour":"red"}"#).unwrap();
        assert!(parse(&["--config", p]).is_err());
    }

    #[test]
    fn one_body_output() {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = main_with_args(["salpeter", "one-body", "--mass", "0"], &mut out, &mut err);
        assert_eq!(code, EXIT_OK);
        assert_eq!(String::from_utf8(out).unwrap(), "e(0)=2.33810741 P(0)=1.37608354\n");
    }

    #[test]
    fn usage_errors_exit_one() {
        let mut out = Vec::new();
        let mut err = Vec::new();
        assert_eq!(main_with_args(["salpeter", "frobnicate"], &mut out, &mut err), EXIT_USAGE);
        assert_eq!(main_with_args(["salpeter", "bounds", "--N", "1"], &mut out, &mut err), EXIT_USAGE);
        assert_eq!(main_with_args(["salpeter", "--help"], &mut out, &mut err), EXIT_OK);
    }
}
