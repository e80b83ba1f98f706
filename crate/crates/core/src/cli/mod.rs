//! Command-line front end shared by the `qchain` binary and tests.

pub mod commands;
pub mod config;
pub mod output;

use crate::chain::Model;
use crate::error::{Error, Result};
use clap::{Parser, Subcommand};
use config::{CommandName, Format, RunConfig};
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "qchain", version, about = "Quench thermodynamics of harmonic-oscillator chains")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Cmd>,
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Print the resolved configuration and exit.
    #[arg(long, global = true)]
    pub dump_config: bool,
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true, env = "QT_THREADS")]
    pub threads: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub model: Option<Model>,
    #[arg(long, global = true)]
    pub n_modes: Option<usize>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub omega: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub g0: Option<f64>,
    /// Inverse temperature; `inf` selects the ground state.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    /// `param:start:stop:count[:log]` with param one of g0 (g), beta, omega, n_modes.
    #[arg(long, global = true)]
    pub sweep: Option<String>,
    #[arg(long, global = true)]
    pub n_max: Option<usize>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub u_max: Option<f64>,
    #[arg(long, global = true)]
    pub u_points: Option<usize>,
    /// Evolution time for `decompose` (exports the full propagator network).
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub time: Option<f64>,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum Cmd {
    /// Normal-mode eigenvalues, frequencies and squeezing degrees.
    Spectrum,
    /// Characteristic function of work on a symmetric u grid.
    Chi,
    /// Average work, free-energy change and lag.
    Work,
    /// Entanglement and discord of the two-mode equilibrium state.
    Correlations,
    /// Lag against correlations along a beta sweep.
    Lagcurve,
    /// Beam-splitter network for the mode mixer or the propagator.
    Decompose,
    /// Cross-check report against the truncated-Fock oracle.
    Oracle,
}

impl From<Cmd> for CommandName {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Spectrum => CommandName::Spectrum,
            Cmd::Chi => CommandName::Chi,
            Cmd::Work => CommandName::Work,
            Cmd::Correlations => CommandName::Correlations,
            Cmd::Lagcurve => CommandName::Lagcurve,
            Cmd::Decompose => CommandName::Decompose,
            Cmd::Oracle => CommandName::Oracle,
        }
    }
}

impl Cli {
    fn flags(&self) -> RunConfig {
        RunConfig {
            command: self.command.map(Into::into),
            model: self.model,
            n_modes: self.n_modes,
            omega: self.omega,
            g0: self.g0,
            beta: self.beta,
            sweep: self.sweep.clone(),
            u_max: self.u_max,
            u_points: self.u_points,
            n_max: self.n_max,
            time: self.time,
            output: self.output.clone(),
            format: self.format,
            threads: self.threads,
        }
    }

    pub fn resolve(&self) -> Result<RunConfig> {
        let file = match &self.config {
            Some(p) => RunConfig::from_toml(&std::fs::read_to_string(p)?)?,
            None => RunConfig::default(),
        };
        file.overlay(&self.flags()).resolved()
    }
}

/// Run a resolved config and return the rendered output.
pub fn execute(cfg: &RunConfig) -> Result<String> {
    let threads = cfg.threads.unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1));
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    let out = pool.install(|| commands::dispatch(cfg))?;
    out.render(cfg.format.unwrap_or_default())
}

fn report_error(err: &Error) -> i32 {
    let code = if err.is_numerical() { 2 } else { 1 };
    let payload = serde_json::json!({ "error": err.kind(), "message": err.to_string(), "exit_code": code });
    eprintln!("{payload}");
    code
}

/// Parse arguments, run, write output; returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            return report_error(&Error::Config(e.to_string().trim().to_string()));
        }
    };
    let run = || -> Result<()> {
        let cfg = cli.resolve()?;
        if cli.dump_config {
            print!("{}", cfg.to_toml()?);
            return Ok(());
        }
        let text = execute(&cfg)?;
        match &cfg.output {
            Some(p) => std::fs::write(p, text)?,
            None => std::io::stdout().write_all(text.as_bytes())?,
        }
        Ok(())
    };
    match run() {
        Ok(()) => 0,
        Err(e) => report_error(&e),
    }
}
