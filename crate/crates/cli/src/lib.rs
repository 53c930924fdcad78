//! Command-line front end: tables of generating functions, central
//! charges, entropies and state counts, and the verification suite.

pub mod config;
pub mod table;

use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use exstat::charge::{charge_both, ChargeProblem};
use exstat::genfun::{coefficients, ln_eval, SeriesKind};
use exstat::identities::{check_names, run_suite, Outcome, SuiteConfig};
use exstat::thermo::{count_states, entropy_closed_hw, entropy_generic, mu_max, Count};
use exstat::{Statistics, Tolerances};

use config::ToleranceOverrides;
use table::{format_real, Cell, Format, OutputTable};

/// Bad flag combinations found after parsing; reported with exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(UsageError(msg.into()).into())
}

#[derive(Debug, Parser)]
#[command(name = "exstat", version, about = "Exclusion statistics: generating functions, entropy, central charges")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Emit JSON instead of CSV
    #[arg(long, global = true)]
    pub json: bool,
    /// key=value file with root_abs, quad_abs, series_tail, max_iter
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub root_abs: Option<f64>,
    #[arg(long, global = true)]
    pub quad_abs: Option<f64>,
    #[arg(long, global = true)]
    pub series_tail: Option<f64>,
    #[arg(long, global = true)]
    pub max_iter: Option<usize>,
}

impl GlobalArgs {
    /// Flags, then the config file, then the defaults.
    pub fn tolerances(&self) -> Result<Tolerances> {
        let file = match &self.config {
            Some(path) => ToleranceOverrides::load(path).map_err(|e| UsageError(format!("{e:#}")))?,
            None => ToleranceOverrides::default(),
        };
        let flags = ToleranceOverrides {
            root_abs: self.root_abs,
            quad_abs: self.quad_abs,
            series_tail: self.series_tail,
            max_iter: self.max_iter,
        };
        let tol = flags.over(file).apply(Tolerances::default());
        if let Err(e) = tol.validate() {
            return usage(e.to_string());
        }
        Ok(tol)
    }

    fn format(&self) -> Format {
        if self.json {
            Format::Json
        } else {
            Format::Csv
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generating function on a t-range, or its series coefficients
    Eval(EvalArgs),
    /// Central charge by the integral and the closed dilogarithm routes
    Charge(ChargeArgs),
    /// Entropy density on a filling grid
    Entropy(EntropyArgs),
    /// Number of ways W(N, n) to place n particles in N states
    Count(CountArgs),
    /// Run the verification suite
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// Haldane-Wu statistics, parameter --g
    Hw,
    /// Gentile statistics, parameter --G
    Gentile,
}

#[derive(Debug, Args)]
pub struct StatArgs {
    #[arg(long, value_enum)]
    pub stat: Family,
    /// Haldane-Wu exclusion parameter in [0, 1]
    #[arg(long)]
    pub g: Option<f64>,
    /// Gentile maximal occupation, G > 0
    #[arg(long = "G")]
    pub big_g: Option<f64>,
}

impl StatArgs {
    pub fn statistics(&self) -> Result<Statistics> {
        match (self.stat, self.g, self.big_g) {
            (Family::Hw, Some(g), None) => Ok(Statistics::haldane_wu(g)?),
            (Family::Gentile, None, Some(big_g)) => Ok(Statistics::gentile(big_g)?),
            (Family::Hw, _, _) => usage("--stat hw takes --g and not --G"),
            (Family::Gentile, _, _) => usage("--stat gentile takes --G and not --g"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    /// f(t)
    F,
    /// ln f(t)
    Logf,
    /// f(t)^m
    Fpow,
    /// (f(t) - 1)^m
    Hpow,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub stat: StatArgs,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub t_min: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub t_max: f64,
    /// Number of points, endpoints included
    #[arg(long, default_value_t = 11)]
    pub steps: usize,
    /// Emit the first N series coefficients instead of values
    #[arg(long, value_name = "N")]
    pub coeffs: Option<usize>,
    #[arg(long, value_enum, default_value_t = Kind::F)]
    pub kind: Kind,
    /// Exponent for fpow and hpow
    #[arg(long, allow_negative_numbers = true)]
    pub m: Option<f64>,
}

/// `start:end:count`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sweep {
    pub start: f64,
    pub end: f64,
    pub count: usize,
}

impl FromStr for Sweep {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("expected start:end:count, got {s:?}"));
        }
        let real = |p: &str| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}"));
        let count = parts[2].trim().parse::<usize>().map_err(|e| format!("{:?}: {e}", parts[2]))?;
        if count == 0 {
            return Err("sweep needs at least one point".into());
        }
        Ok(Sweep { start: real(parts[0])?, end: real(parts[1])?, count })
    }
}

impl Sweep {
    pub fn points(&self) -> Vec<f64> {
        linspace(self.start, self.end, self.count)
    }
}

fn linspace(start: f64, end: f64, count: usize) -> Vec<f64> {
    if count <= 1 {
        return vec![start];
    }
    let step = (end - start) / (count - 1) as f64;
    (0..count).map(|i| if i + 1 == count { end } else { start + step * i as f64 }).collect()
}

#[derive(Debug, Args)]
pub struct ChargeArgs {
    #[arg(long, value_enum)]
    pub stat: Family,
    #[arg(long)]
    pub g: Option<f64>,
    #[arg(long = "G")]
    pub big_g: Option<f64>,
    /// Scattering parameter Φ >= 0
    #[arg(long, conflicts_with = "nu")]
    pub phi: Option<f64>,
    /// ν = g + Φ (Haldane-Wu only)
    #[arg(long)]
    pub nu: Option<f64>,
    /// Haldane-Wu parameter sweep start:end:count
    #[arg(long, value_name = "A:B:N", conflicts_with = "g")]
    pub g_sweep: Option<Sweep>,
}

#[derive(Debug, Args)]
pub struct EntropyArgs {
    #[command(flatten)]
    pub stat: StatArgs,
    #[arg(long)]
    pub mu_min: Option<f64>,
    #[arg(long)]
    pub mu_max: Option<f64>,
    /// Number of fillings, endpoints included
    #[arg(long, default_value_t = 19)]
    pub steps: usize,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[command(flatten)]
    pub stat: StatArgs,
    /// Number of states N
    #[arg(long)]
    pub states: u64,
    /// Number of particles n; all admissible n when absent
    #[arg(long)]
    pub particles: Option<u64>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Check group or report-name prefix
    #[arg(long)]
    pub only: Option<String>,
    /// Identity tolerance
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub g: Option<f64>,
    #[arg(long)]
    pub phi: Option<f64>,
    #[arg(long = "G")]
    pub big_g: Option<f64>,
    /// Fixed number of series terms for the dilogarithm series checks
    #[arg(long)]
    pub n_terms: Option<usize>,
}

/// Runs a parsed command, writing to `out`, and returns the exit code.
pub fn run<W: Write>(cli: &Cli, out: &mut W) -> Result<i32> {
    let tol = cli.global.tolerances()?;
    let format = cli.global.format();
    let table = match &cli.command {
        Command::Eval(a) => cmd_eval(a, &tol)?,
        Command::Charge(a) => cmd_charge(a, &tol)?,
        Command::Entropy(a) => cmd_entropy(a, &tol)?,
        Command::Count(a) => cmd_count(a)?,
        Command::Verify(a) => return cmd_verify(a, tol, format, out),
    };
    table.write(out, format)?;
    Ok(0)
}

pub fn cmd_eval(a: &EvalArgs, tol: &Tolerances) -> Result<OutputTable> {
    let stat = a.stat.statistics()?;
    let m = match (a.kind, a.m) {
        (Kind::Fpow | Kind::Hpow, None) => return usage("--kind fpow and hpow need --m"),
        (Kind::F | Kind::Logf, Some(_)) => return usage("--m only applies to fpow and hpow"),
        (_, m) => m.unwrap_or(1.0),
    };
    let kind_name = match a.kind {
        Kind::F => "f",
        Kind::Logf => "ln_f",
        Kind::Fpow => "f_pow_m",
        Kind::Hpow => "h_pow_m",
    };

    if let Some(count) = a.coeffs {
        if count == 0 {
            return usage("--coeffs needs at least 1");
        }
        let kind = match a.kind {
            Kind::F => SeriesKind::F,
            Kind::Logf => SeriesKind::LogF,
            Kind::Fpow => SeriesKind::FPow(m),
            Kind::Hpow => {
                if m.fract() != 0.0 || m < 1.0 {
                    return usage("--kind hpow needs an integer --m >= 1");
                }
                SeriesKind::HPow(m as u32)
            }
        };
        let series = coefficients(&stat, kind, count - 1)?;
        let mut table = OutputTable::new(&[("n", ""), (kind_name, "")]);
        for (n, c) in series.coeffs.iter().enumerate() {
            table.push_reals(&[n as f64, *c]);
        }
        return Ok(table);
    }

    if a.steps == 0 {
        return usage("--steps needs at least 1");
    }
    let mut table = OutputTable::new(&[("t", ""), (kind_name, "")]);
    for t in linspace(a.t_min, a.t_max, a.steps) {
        let v = match a.kind {
            Kind::F => exstat::genfun::eval(&stat, t, tol)?,
            Kind::Logf => value_ln(&stat, t, tol)?,
            Kind::Fpow => (m * value_ln(&stat, t, tol)?).exp(),
            Kind::Hpow => (exstat::genfun::eval(&stat, t, tol)? - 1.0).powf(m),
        };
        table.push_reals(&[t, v]);
    }
    Ok(table)
}

fn value_ln(stat: &Statistics, t: f64, tol: &Tolerances) -> Result<f64> {
    if t >= 0.0 {
        Ok(ln_eval(stat, t, tol)?)
    } else {
        Ok(exstat::genfun::eval(stat, t, tol)?.ln())
    }
}

pub fn cmd_charge(a: &ChargeArgs, tol: &Tolerances) -> Result<OutputTable> {
    match a.stat {
        Family::Gentile => {
            let Some(big_g) = a.big_g else { return usage("--stat gentile needs --G") };
            if a.g.is_some() || a.nu.is_some() || a.g_sweep.is_some() {
                return usage("--g, --nu and --g-sweep apply to --stat hw only");
            }
            let phi = a.phi.unwrap_or(0.0);
            let r = charge_both(&ChargeProblem::new(Statistics::gentile(big_g)?, phi)?, tol)?;
            let mut table = OutputTable::new(&[
                ("G", ""),
                ("phi", ""),
                ("x0", ""),
                ("c_integral", ""),
                ("c_closed", ""),
                ("residual", ""),
            ]);
            table.push_reals(&[big_g, phi, r.x0, r.c_integral, r.c_closed, r.residual]);
            Ok(table)
        }
        Family::Hw => {
            if a.big_g.is_some() {
                return usage("--G applies to --stat gentile only");
            }
            let gs = match (a.g, a.g_sweep) {
                (Some(g), None) => vec![g],
                (None, Some(sweep)) => sweep.points(),
                _ => return usage("--stat hw needs --g or --g-sweep"),
            };
            let mut table = OutputTable::new(&[
                ("g", ""),
                ("phi", ""),
                ("x0", ""),
                ("y0", ""),
                ("c_integral", ""),
                ("c_closed", ""),
                ("residual", ""),
            ]);
            for g in gs {
                let phi = match (a.phi, a.nu) {
                    (_, Some(nu)) => nu - g,
                    (phi, None) => phi.unwrap_or(0.0),
                };
                let r = charge_both(&ChargeProblem::new(Statistics::haldane_wu(g)?, phi)?, tol)?;
                let y0 = r.y0.unwrap_or(f64::NAN);
                table.push_reals(&[g, phi, r.x0, y0, r.c_integral, r.c_closed, r.residual]);
            }
            Ok(table)
        }
    }
}

pub fn cmd_entropy(a: &EntropyArgs, tol: &Tolerances) -> Result<OutputTable> {
    let stat = a.stat.statistics()?;
    let top = mu_max(&stat);
    let mus = match (a.mu_min, a.mu_max) {
        (Some(lo), Some(hi)) => linspace(lo, hi, a.steps.max(1)),
        (None, None) if top.is_finite() => (1..=19).map(|k| k as f64 * top / 20.0).collect(),
        (None, None) => return usage("bosons have no maximal filling: give --mu-min and --mu-max"),
        _ => return usage("give both --mu-min and --mu-max"),
    };
    let closed_g = match stat {
        Statistics::HaldaneWu { g } => Some(g),
        Statistics::Gentile { .. } => None,
    };
    let mut columns = vec![("mu", ""), ("x", ""), ("s", "nats")];
    if closed_g.is_some() {
        columns.push(("s_closed", "nats"));
    }
    let mut table = OutputTable::new(&columns);
    for mu in mus {
        let p = entropy_generic(&stat, mu, tol)?;
        let mut row = vec![mu, p.x, p.s];
        if let Some(g) = closed_g {
            row.push(entropy_closed_hw(g, mu)?);
        }
        table.push_reals(&row);
    }
    Ok(table)
}

pub fn cmd_count(a: &CountArgs) -> Result<OutputTable> {
    let stat = a.stat.statistics()?;
    let particles: Vec<u64> = match a.particles {
        Some(n) => vec![n],
        None => {
            let top = mu_max(&stat);
            if !top.is_finite() {
                return usage("bosons admit any particle number: give --particles");
            }
            (0..=(top * a.states as f64).floor() as u64).collect()
        }
    };
    let mut table = OutputTable::new(&[("states", ""), ("particles", ""), ("count", ""), ("ln_count", "")]);
    for n in particles {
        let r = count_states(&stat, a.states, n)?;
        let count = match &r.count {
            Count::Exact(w) => Cell::Exact(w.to_string()),
            Count::Real(v) => Cell::Real(*v),
        };
        table.push(vec![Cell::Real(a.states as f64), Cell::Real(n as f64), count, Cell::Real(r.ln_value())]);
    }
    Ok(table)
}

pub fn cmd_verify<W: Write>(a: &VerifyArgs, tol: Tolerances, format: Format, out: &mut W) -> Result<i32> {
    if let Some(only) = &a.only {
        if !check_names().iter().any(|n| n.starts_with(only.as_str())) {
            return usage(format!("--only {only:?} matches no check; known: {}", check_names().join(", ")));
        }
    }
    let mut config = SuiteConfig { tolerances: tol, ..SuiteConfig::default() };
    if let Some(t) = a.tol {
        if !(t > 0.0) {
            return usage("--tol must be positive");
        }
        config.identity_tol = t;
    }
    config.g = a.g;
    config.phi = a.phi;
    config.big_g = a.big_g;
    config.n_terms = a.n_terms;

    let outcomes = run_suite(&config, a.only.as_deref())?;
    let all_passed = outcomes.iter().all(Outcome::passed);
    match format {
        Format::Json => {
            for o in &outcomes {
                let line = match o {
                    Outcome::Report(r) => serde_json::to_string(r)?,
                    Outcome::Skipped { name, reason } => {
                        serde_json::json!({ "name": name, "skipped": reason }).to_string()
                    }
                    Outcome::Failed { name, error } => {
                        serde_json::json!({ "name": name, "passed": false, "error": error }).to_string()
                    }
                };
                writeln!(out, "{line}")?;
            }
        }
        Format::Csv => {
            writeln!(out, "{:<6} {:<34} {:>24} {:>10} {:>7}  grid", "status", "name", "value", "tolerance", "points")?;
            for o in &outcomes {
                match o {
                    Outcome::Report(r) => writeln!(
                        out,
                        "{:<6} {:<34} {:>24} {:>10.1e} {:>7}  {}",
                        if r.passed { "PASS" } else { "FAIL" },
                        r.name,
                        format_real(r.value()),
                        r.tolerance,
                        r.points_checked,
                        r.grid_description
                    )?,
                    Outcome::Skipped { name, reason } => writeln!(out, "{:<6} {name:<34} {reason}", "SKIP")?,
                    Outcome::Failed { name, error } => writeln!(out, "{:<6} {name:<34} {error}", "ERROR")?,
                }
            }
        }
    }
    if outcomes.is_empty() {
        bail!("no checks ran");
    }
    Ok(if all_passed { 0 } else { 1 })
}
