use super::config::{CommandName, Format, RunConfig, Sweep, SweepParam};
use super::output::{Cell, Table};
use crate::chain::{dense_spectrum, normal_modes, ChainSpec, Model};
use crate::correlations::{correlation_report, equilibrium_covariance, lag_correlation_curves, log_negativity_closed_form};
use crate::error::{Error, Result};
use crate::fock::{FockSystem, OracleEntry};
use crate::interferometer::reck_decompose;
use crate::symplectic::{propagator_network, NetworkElement, OpticalNetwork};
use crate::work::{
    characteristic_function, jarzynski_check, nonequilibrium_lag, partition_functions, rwa_statistics,
    uniform_grid,
};
use crate::C64;
use rayon::prelude::*;

/// Rendered command output.
pub enum Output {
    Table(Table),
    Document(String),
}

impl Output {
    pub fn render(&self, format: Format) -> Result<String> {
        match (self, format) {
            (Output::Table(t), Format::Csv) => t.to_csv(),
            (Output::Table(t), Format::Json) => t.to_json(),
            (Output::Document(s), _) => Ok(s.clone()),
        }
    }
}

fn num(x: f64) -> Cell {
    Cell::Num(x)
}

/// Base spec plus the sweep points (a single point when no sweep is set).
fn points(cfg: &RunConfig) -> Result<(Option<Sweep>, Vec<(f64, ChainSpec)>)> {
    let base = cfg.spec()?;
    match &cfg.sweep {
        None => Ok((None, vec![(f64::NAN, base)])),
        Some(s) => {
            let sweep = Sweep::parse(s)?;
            let pts = sweep.values().into_iter().map(|v| Ok((v, sweep.apply(&base, v)?))).collect::<Result<_>>()?;
            Ok((Some(sweep), pts))
        }
    }
}

fn with_param(sweep: &Option<Sweep>, cols: &[&str]) -> Table {
    let mut names: Vec<&str> = Vec::new();
    if let Some(s) = sweep {
        names.push(&s.label);
    }
    names.extend_from_slice(cols);
    Table::new(&names)
}

fn lead(sweep: &Option<Sweep>, v: f64) -> Vec<Cell> {
    if sweep.is_some() {
        vec![num(v)]
    } else {
        Vec::new()
    }
}

fn no_sweep(cfg: &RunConfig, what: &str) -> Result<()> {
    if cfg.sweep.is_some() {
        return Err(Error::Config(format!("{what} does not take a sweep")));
    }
    Ok(())
}

pub fn cmd_spectrum(cfg: &RunConfig) -> Result<Output> {
    let (sweep, pts) = points(cfg)?;
    let mut table = with_param(&sweep, &["j", "lambda", "lambda_dense", "mu", "r"]);
    let rows: Vec<Vec<Vec<Cell>>> = pts
        .par_iter()
        .map(|(v, spec)| {
            let nm = normal_modes(spec)?;
            let dense = dense_spectrum(spec);
            Ok((0..spec.n_modes)
                .map(|j| {
                    let mut r = lead(&sweep, *v);
                    r.extend([
                        Cell::Int(j as i64 + 1),
                        num(nm.lambdas[j]),
                        num(dense[j]),
                        num(nm.mus[j]),
                        num(nm.squeeze_params[j]),
                    ]);
                    r
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    table.rows = rows.into_iter().flatten().collect();
    Ok(Output::Table(table))
}

pub fn cmd_chi(cfg: &RunConfig) -> Result<Output> {
    no_sweep(cfg, "chi")?;
    if cfg.model == Some(Model::H2) {
        return Err(Error::Config("chi is available for the spring model only".into()));
    }
    let spec = cfg.spec()?;
    let u_max = cfg.u_max.unwrap_or(10.0 / spec.omega);
    let grid = uniform_grid(-u_max, u_max, cfg.u_points.unwrap_or(2001));
    let chunks: Vec<Vec<f64>> = grid.chunks(64).map(|c| c.to_vec()).collect();
    let parts: Vec<Vec<C64>> = chunks
        .par_iter()
        .map(|c| Ok(characteristic_function(&spec, c)?.chi))
        .collect::<Result<_>>()?;
    let mut table = Table::new(&["u", "re_chi", "im_chi", "abs_chi"]);
    for (u, z) in grid.iter().zip(parts.into_iter().flatten()) {
        table.rows.push(vec![num(*u), num(z.re), num(z.im), num(z.norm())]);
    }
    Ok(Output::Table(table))
}

pub fn cmd_work(cfg: &RunConfig) -> Result<Output> {
    let (sweep, pts) = points(cfg)?;
    if cfg.model == Some(Model::H2) {
        let mut table = with_param(&sweep, &["avg_work", "second_moment", "chi_u2_coefficient"]);
        table.rows = pts
            .par_iter()
            .map(|(v, spec)| {
                let r = rwa_statistics(spec)?;
                let mut row = lead(&sweep, *v);
                row.extend([num(r.avg_work), num(r.second_moment), num(r.chi_u2_coefficient)]);
                Ok(row)
            })
            .collect::<Result<_>>()?;
        return Ok(Output::Table(table));
    }
    let mut table = with_param(&sweep, &["avg_work", "delta_f", "lag", "lag_c", "lag_q", "jarzynski_residual"]);
    table.rows = pts
        .par_iter()
        .map(|(v, spec)| {
            let r = nonequilibrium_lag(spec)?;
            let jr = if spec.zero_temperature() { f64::NAN } else { jarzynski_check(spec)? };
            let mut row = lead(&sweep, *v);
            row.extend([num(r.avg_work), num(r.delta_f), num(r.lag), num(r.lag_c), num(r.lag_q), num(jr)]);
            Ok(row)
        })
        .collect::<Result<_>>()?;
    Ok(Output::Table(table))
}

pub fn cmd_correlations(cfg: &RunConfig) -> Result<Output> {
    let (sweep, pts) = points(cfg)?;
    let mut table = with_param(
        &sweep,
        &["log_neg", "log_neg_closed", "nu_minus_pt", "nu_minus", "nu_plus", "discord", "sigma0_s", "sigma0_phi"],
    );
    table.rows = pts
        .par_iter()
        .map(|(v, spec)| {
            let r = correlation_report(&equilibrium_covariance(spec)?)?;
            let mut row = lead(&sweep, *v);
            row.extend([
                num(r.log_negativity),
                num(log_negativity_closed_form(spec)),
                num(r.nu_minus_pt),
                num(r.nu_minus),
                num(r.nu_plus),
                num(r.discord),
                num(r.sigma0_s),
                num(r.sigma0_phi),
            ]);
            Ok(row)
        })
        .collect::<Result<_>>()?;
    Ok(Output::Table(table))
}

pub fn cmd_lagcurve(cfg: &RunConfig) -> Result<Output> {
    let spec = cfg.spec()?;
    let sweep = Sweep::parse(cfg.sweep.as_deref().unwrap_or("beta:0.05:20:120:log"))?;
    if sweep.param != SweepParam::Beta {
        return Err(Error::Config("lagcurve sweeps beta".into()));
    }
    let rows = lag_correlation_curves(&spec, &sweep.values())?;
    let mut table = Table::new(&["beta", "L", "L_c", "L_q", "E", "D"]);
    for r in rows {
        table.rows.push(vec![num(r.beta), num(r.lag), num(r.lag_c), num(r.lag_q), num(r.log_neg), num(r.discord)]);
    }
    Ok(Output::Table(table))
}

fn network_table(net: &OpticalNetwork) -> Table {
    let mut t = Table::new(&["index", "type", "mode_i", "mode_j", "theta", "phi", "r"]);
    for (k, e) in net.elements.iter().enumerate() {
        let nan = f64::NAN;
        let (kind, i, j, th, ph, r) = match *e {
            NetworkElement::BeamSplitter { mode_i, mode_j, theta, phi } => {
                ("beam_splitter", mode_i as i64, mode_j as i64, theta, phi, nan)
            }
            NetworkElement::Rotation { mode, theta } => ("rotation", mode as i64, -1, theta, nan, nan),
            NetworkElement::Squeezer { mode, r } => ("squeezer", mode as i64, -1, nan, nan, r),
        };
        t.rows.push(vec![Cell::Int(k as i64), Cell::Text(kind.into()), Cell::Int(i), Cell::Int(j), num(th), num(ph), num(r)]);
    }
    t
}

pub fn cmd_decompose(cfg: &RunConfig) -> Result<Output> {
    no_sweep(cfg, "decompose")?;
    let spec = cfg.spec()?;
    let format = cfg.format.unwrap_or_default();
    if let Some(t) = cfg.time {
        let net = propagator_network(&spec, t)?;
        return Ok(match format {
            Format::Json => Output::Document(net.to_json()? + "\n"),
            Format::Csv => Output::Table(network_table(&net)),
        });
    }
    let plan = reck_decompose(&normal_modes(&spec)?.p_matrix.transpose())?;
    Ok(match format {
        Format::Json => Output::Document(plan.to_json()? + "\n"),
        Format::Csv => Output::Table(network_table(&plan.network)),
    })
}

/// Default oracle suite for the configured chain.
pub fn oracle_report(cfg: &RunConfig) -> Result<Vec<OracleEntry>> {
    let spec = cfg.spec()?;
    let n_max = cfg.n_max.unwrap_or_else(|| crate::fock::default_n_max(spec.n_modes));
    let sys = FockSystem::build(&spec, n_max, Model::H1)?;
    let mut out = Vec::new();
    for u in [0.5, 2.0, 5.0, 10.0] {
        let a = crate::work::chi(&spec, C64::from(u))?;
        let o = sys.chi(C64::from(u))?;
        out.push(OracleEntry::new(&format!("re_chi(u={u})"), a.re, o.re, 1e-6, &sys));
        out.push(OracleEntry::new(&format!("im_chi(u={u})"), a.im, o.im, 1e-6, &sys));
    }
    let report = nonequilibrium_lag(&spec)?;
    let tpm = sys.tpm_distribution()?;
    out.push(OracleEntry::new("avg_work", report.avg_work, tpm.moment(1), 1e-4 * report.avg_work.abs().max(1e-12), &sys));
    let pf = partition_functions(&spec)?;
    let (zi, zf) = sys.ln_partition_functions()?;
    out.push(OracleEntry::new("z_ratio", pf.ratio(), (zf - zi).exp(), 1e-8, &sys));
    out.push(OracleEntry::new("delta_f", report.delta_f, sys.delta_free_energy()?, 1e-8, &sys));
    out.push(OracleEntry::new("lag", report.lag, sys.relative_entropy_lag(0.0)?, 1e-4, &sys));
    let nm = normal_modes(&spec)?;
    let e0: f64 = nm.mus.iter().sum::<f64>() / 2.0;
    out.push(OracleEntry::new("ground_energy", e0, sys.final_spectrum()[0], 1e-8, &sys));
    let jz = sys.chi(C64::new(0.0, spec.beta))? * (spec.beta * sys.delta_free_energy()?).exp();
    out.push(OracleEntry::new("jarzynski_oracle", 1.0, jz.re, 1e-8, &sys));
    if spec.n_modes == 2 && spec.g0 < 2.0 * spec.omega {
        let rwa = rwa_statistics(&spec)?;
        let sys2 = FockSystem::build(&spec, n_max, Model::H2)?;
        let d = sys2.tpm_distribution()?;
        out.push(OracleEntry::new("rwa_avg_work", rwa.avg_work, d.moment(1), 1e-8, &sys2));
        out.push(OracleEntry::new(
            "rwa_second_moment",
            rwa.second_moment,
            d.moment(2),
            1e-4 * rwa.second_moment.abs().max(1e-12),
            &sys2,
        ));
    }
    Ok(out)
}

pub fn cmd_oracle(cfg: &RunConfig) -> Result<Output> {
    no_sweep(cfg, "oracle")?;
    let entries = oracle_report(cfg)?;
    Ok(match cfg.format.unwrap_or_default() {
        Format::Json => Output::Document(serde_json::to_string_pretty(&entries)? + "\n"),
        Format::Csv => {
            let mut t = Table::new(&["quantity", "analytic", "oracle", "abs_error", "rel_error", "tolerance", "n_max", "tail_estimate", "pass"]);
            for e in entries {
                t.rows.push(vec![
                    Cell::Text(e.quantity),
                    num(e.analytic),
                    num(e.oracle),
                    num(e.abs_error),
                    num(e.rel_error),
                    num(e.tolerance),
                    Cell::Int(e.n_max as i64),
                    num(e.tail_estimate),
                    Cell::Text(e.pass.to_string()),
                ]);
            }
            Output::Table(t)
        }
    })
}

pub fn dispatch(cfg: &RunConfig) -> Result<Output> {
    match cfg.command.ok_or_else(|| Error::Config("no command given".into()))? {
        CommandName::Spectrum => cmd_spectrum(cfg),
        CommandName::Chi => cmd_chi(cfg),
        CommandName::Work => cmd_work(cfg),
        CommandName::Correlations => cmd_correlations(cfg),
        CommandName::Lagcurve => cmd_lagcurve(cfg),
        CommandName::Decompose => cmd_decompose(cfg),
        CommandName::Oracle => cmd_oracle(cfg),
    }
}
