use crate::chain::{ChainSpec, Model};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum CommandName {
    Spectrum,
    Chi,
    Work,
    Correlations,
    Lagcurve,
    Decompose,
    Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Flat key-value run description; every field may come from the config
/// file or from a flag, flags winning.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Option<CommandName>,
    pub model: Option<Model>,
    pub n_modes: Option<usize>,
    pub omega: Option<f64>,
    pub g0: Option<f64>,
    pub beta: Option<f64>,
    pub sweep: Option<String>,
    pub u_max: Option<f64>,
    pub u_points: Option<usize>,
    pub n_max: Option<usize>,
    pub time: Option<f64>,
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
    pub threads: Option<usize>,
}

macro_rules! overlay {
    ($base:expr, $top:expr, $($f:ident),*) => {
        RunConfig { $($f: $top.$f.clone().or_else(|| $base.$f.clone()),)* }
    };
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    /// `top` overrides `self` field by field.
    pub fn overlay(&self, top: &RunConfig) -> RunConfig {
        overlay!(self, top, command, model, n_modes, omega, g0, beta, sweep, u_max, u_points, n_max, time, output, format, threads)
    }

    /// Fill defaults so that the config fully determines the run.
    pub fn resolved(&self) -> Result<RunConfig> {
        let command = self.command.ok_or_else(|| Error::Config("no command given".into()))?;
        let omega = self.omega.unwrap_or(1.0);
        let n_modes = self.n_modes.unwrap_or(2);
        let mut out = RunConfig {
            command: Some(command),
            model: Some(self.model.unwrap_or_default()),
            n_modes: Some(n_modes),
            omega: Some(omega),
            g0: Some(self.g0.unwrap_or(1.0)),
            beta: Some(self.beta.unwrap_or(1.0)),
            sweep: self.sweep.clone(),
            u_max: Some(self.u_max.unwrap_or(10.0 / omega)),
            u_points: Some(self.u_points.unwrap_or(2001)),
            n_max: Some(self.n_max.unwrap_or_else(|| crate::fock::default_n_max(n_modes))),
            time: self.time,
            output: self.output.clone(),
            format: Some(self.format.unwrap_or_default()),
            threads: self.threads,
        };
        if command == CommandName::Lagcurve && out.sweep.is_none() {
            out.sweep = Some("beta:0.05:20:120:log".into());
        }
        out.spec()?;
        if let Some(s) = &out.sweep {
            Sweep::parse(s)?;
        }
        if out.u_points.unwrap() < 2 || !out.u_max.unwrap().is_finite() || out.u_max.unwrap() <= 0.0 {
            return Err(Error::Config("u grid needs u_points >= 2 and a positive finite u_max".into()));
        }
        if out.threads == Some(0) {
            return Err(Error::Config("threads must be >= 1".into()));
        }
        Ok(out)
    }

    pub fn spec(&self) -> Result<ChainSpec> {
        ChainSpec::new(
            self.n_modes.unwrap_or(2),
            self.omega.unwrap_or(1.0),
            self.g0.unwrap_or(1.0),
            self.beta.unwrap_or(1.0),
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepParam {
    G0,
    Beta,
    Omega,
    NModes,
}

/// `param:start:stop:count[:log]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Sweep {
    /// Column label, as written by the user.
    pub label: String,
    pub param: SweepParam,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub log: bool,
}

impl Sweep {
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(':').collect();
        let bad = || Error::Config(format!("sweep must read param:start:stop:count[:log], got {text:?}"));
        if !(4..=5).contains(&parts.len()) {
            return Err(bad());
        }
        let param = match parts[0] {
            "g0" | "g" => SweepParam::G0,
            "beta" => SweepParam::Beta,
            "omega" => SweepParam::Omega,
            "n_modes" | "n" => SweepParam::NModes,
            other => return Err(Error::Config(format!("unknown sweep parameter {other:?}"))),
        };
        let start: f64 = parts[1].parse().map_err(|_| bad())?;
        let stop: f64 = parts[2].parse().map_err(|_| bad())?;
        let count: usize = parts[3].parse().map_err(|_| bad())?;
        let log = match parts.get(4) {
            None => false,
            Some(&"log") => true,
            Some(&"lin") => false,
            Some(_) => return Err(bad()),
        };
        if !(start.is_finite() && stop.is_finite()) || count < 2 {
            return Err(Error::Config("sweep bounds must be finite and count >= 2".into()));
        }
        if log && (start <= 0.0 || stop <= 0.0) {
            return Err(Error::Config("log sweeps need positive bounds".into()));
        }
        Ok(Sweep { label: parts[0].to_string(), param, start, stop, count, log })
    }

    pub fn values(&self) -> Vec<f64> {
        let n = (self.count - 1) as f64;
        (0..self.count)
            .map(|k| {
                let f = k as f64 / n;
                if k == 0 {
                    self.start
                } else if k == self.count - 1 {
                    self.stop
                } else if self.log {
                    (self.start.ln() + f * (self.stop.ln() - self.start.ln())).exp()
                } else {
                    self.start + f * (self.stop - self.start)
                }
            })
            .collect()
    }

    pub fn apply(&self, spec: &ChainSpec, value: f64) -> Result<ChainSpec> {
        let mut s = *spec;
        match self.param {
            SweepParam::G0 => s.g0 = value,
            SweepParam::Beta => s.beta = value,
            SweepParam::Omega => s.omega = value,
            SweepParam::NModes => s.n_modes = value.round() as usize,
        }
        s.validate()?;
        Ok(s)
    }
}
