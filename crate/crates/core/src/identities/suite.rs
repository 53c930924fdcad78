//! The full verification suite: named groups of checks run concurrently,
//! results sorted by report name.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::charge_checks::{
    verify_anchors, verify_charge_equivalence, verify_gentile_growth, verify_monotone_in_nu,
    verify_nu_invariance, verify_rational_values,
};
use super::gsum::{verify_gsum, verify_gsum_split_invariance, verify_special_value_families};
use super::majorization::{
    verify_dilog_inequality, verify_entropy_charge_majorization, verify_majorization,
    verify_reverse_majorization, verify_reverse_majorization_trend, verify_t1_anchor,
};
use super::series_checks::{verify_generating_functions, verify_series_proposition};
use super::thermo_checks::{verify_asymptotic_entropy, verify_entropy, verify_gentile_extensivity};
use super::{default_g_grid, default_phi_grid, default_t_grid, linspace, Tracker, VerificationReport};
use crate::error::{domain, Error, Result};
use crate::numerics::{log_gamma, rogers_dilog, Tolerances};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SuiteConfig {
    pub tolerances: Tolerances,
    /// Tolerance of identities that do not carry their own.
    pub identity_tol: f64,
    pub g_grid: Vec<f64>,
    pub phi_grid: Vec<f64>,
    pub t_grid: Vec<f64>,
    /// Gentile parameters above 1 for the majorization checks.
    pub gentile_grid: Vec<f64>,
    /// Gentile parameters below 1 for the reversed inequality.
    pub reverse_grid: Vec<f64>,
    /// Fixed number of series terms; automatic when absent.
    pub n_terms: Option<usize>,
    /// Single-point overrides for targeted runs.
    pub g: Option<f64>,
    pub phi: Option<f64>,
    pub big_g: Option<f64>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        let mut t_grid = default_t_grid();
        t_grid.push(1.0);
        SuiteConfig {
            tolerances: Tolerances::default(),
            identity_tol: 1e-8,
            g_grid: default_g_grid(),
            phi_grid: default_phi_grid(),
            t_grid,
            gentile_grid: vec![1.5, 2.0, 3.0, 4.0, 8.0],
            reverse_grid: vec![0.2, 0.5, 0.8, 0.95],
            n_terms: None,
            g: None,
            phi: None,
            big_g: None,
        }
    }
}

impl SuiteConfig {
    fn gentile_above(&self) -> Vec<f64> {
        match self.big_g {
            Some(big_g) => vec![big_g],
            None => self.gentile_grid.clone(),
        }
    }
}

/// Result of one report slot in a suite run.
#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Report(VerificationReport),
    Skipped { name: String, reason: String },
    Failed { name: String, error: String },
}

impl Outcome {
    pub fn name(&self) -> &str {
        match self {
            Outcome::Report(r) => &r.name,
            Outcome::Skipped { name, .. } | Outcome::Failed { name, .. } => name,
        }
    }

    /// Skipped checks do not fail a run.
    pub fn passed(&self) -> bool {
        match self {
            Outcome::Report(r) => r.passed,
            Outcome::Skipped { .. } => true,
            Outcome::Failed { .. } => false,
        }
    }
}

type CheckFn = fn(&SuiteConfig) -> Result<Vec<VerificationReport>>;

struct Group {
    name: &'static str,
    reports: &'static [&'static str],
    run: CheckFn,
}

const GROUPS: &[Group] = &[
    Group {
        name: "numerics",
        reports: &["dilog_abel", "dilog_reflection", "log_gamma_recurrence"],
        run: numerics_group,
    },
    Group {
        name: "genfun",
        reports: &["genfun_implicit_residual", "genfun_monotone", "genfun_upper_bound"],
        run: |c| verify_generating_functions(&with_ends(&c.g_grid), &c.t_grid, &c.tolerances),
    },
    Group {
        name: "series",
        reports: &[
            "series_bound_yi",
            "series_duality",
            "series_fractional_power",
            "series_h_power_convolution",
            "series_log_consistency",
            "series_power_convolution",
            "series_ratio_limit",
            "series_recursion",
            "series_solver_agreement",
        ],
        run: |c| verify_series_proposition(&linspace(0.1, 0.9, 9), &[2, 3, 4, 5, 6], 40, &c.tolerances),
    },
    Group { name: "gsum", reports: &["gsum", "gsum_split_invariance"], run: gsum_group },
    Group {
        name: "special_value",
        reports: &[
            "special_value_near_boundary",
            "special_value_nu_two",
            "special_value_nu_one",
            "special_value_nu_half",
            "special_value_nu_half_boundary",
        ],
        run: |c| {
            let mut grid = c.g_grid.clone();
            grid.extend([0.87, 0.99, 0.999]);
            verify_special_value_families(c.n_terms, &grid, c.identity_tol, &c.tolerances)
        },
    },
    Group {
        name: "majorization",
        reports: &[
            "majorization",
            "majorization_t1_anchor",
            "reverse_majorization",
            "reverse_majorization_trend",
        ],
        run: majorization_group,
    },
    Group {
        name: "entropy_charge_majorization",
        reports: &["charge_majorization", "entropy_majorization"],
        run: |c| {
            let mut all = Vec::new();
            for big_g in c.gentile_above() {
                let mus: Vec<f64> = (1..20).map(|k| big_g * k as f64 / 20.0).collect();
                all.push(verify_entropy_charge_majorization(big_g, &mus, &c.phi_grid, &c.tolerances)?);
            }
            combine_columns(all)
        },
    },
    Group {
        name: "dilog_inequality",
        reports: &[
            "dilog_inequality",
            "dilog_inequality_abel_endpoint",
            "dilog_inequality_boson_endpoint",
        ],
        run: |c| verify_dilog_inequality(&c.g_grid, &c.phi_grid, &c.tolerances),
    },
    Group {
        name: "charge",
        reports: &[
            "charge_anchors",
            "charge_equivalence",
            "charge_gentile_growth",
            "charge_gentile_values",
            "charge_intermediate_y",
            "charge_monotone_in_nu",
            "charge_nu_invariance",
            "charge_nu_invariance_integral",
            "charge_rational_values",
        ],
        run: charge_group,
    },
    Group {
        name: "entropy",
        reports: &[
            "entropy_asymptotic",
            "entropy_asymptotic_extrapolated",
            "entropy_closed_vs_generic",
            "entropy_concavity",
            "entropy_gentile_extensivity",
            "entropy_legendre",
            "entropy_saddle_identity",
        ],
        run: |c| {
            let mut all = verify_entropy(&with_ends(&c.g_grid), &[1.0, 2.0, 2.5, 4.0], c.identity_tol, &c.tolerances)?;
            all.push(verify_gentile_extensivity(4, 12)?);
            all.extend(verify_asymptotic_entropy(2, 1.0, [512, 1024, 2048], &c.tolerances)?);
            Ok(all)
        },
    },
];

fn with_ends(grid: &[f64]) -> Vec<f64> {
    let mut g = grid.to_vec();
    for end in [0.0, 1.0] {
        if !g.contains(&end) {
            g.push(end);
        }
    }
    g
}

fn numerics_group(_: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let mut reflection = Tracker::residuals();
    for k in 1..=1000 {
        let x = k as f64 / 1001.0;
        reflection.push(rogers_dilog(x)? + rogers_dilog(1.0 - x)? - PI * PI / 6.0, || format!("x={x}"));
    }
    let mut abel = Tracker::residuals();
    for k in 1..=100 {
        let t = k as f64 / 100.0;
        let r = rogers_dilog(t * t)? - 2.0 * rogers_dilog(t)? + 2.0 * rogers_dilog(t / (1.0 + t))?;
        abel.push(r, || format!("t={t}"));
    }
    let mut recurrence = Tracker::residuals();
    for k in 1..=1000 {
        let z = k as f64 / 10.0;
        recurrence.push(log_gamma(z + 1.0)? - log_gamma(z)? - z.ln(), || format!("z={z}"));
    }
    Ok(vec![
        VerificationReport::identity("dilog_reflection", "x = k/1001, k = 1..1000", reflection, 1e-11),
        VerificationReport::identity("dilog_abel", "L(t²) = 2L(t) - 2L(t/(1+t)), t = k/100", abel, 1e-10),
        VerificationReport::identity("log_gamma_recurrence", "z = 0.1, 0.2, ..., 100", recurrence, 1e-12),
    ])
}

fn gsum_group(c: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let points = match (c.g, c.phi) {
        (Some(g), phi) => vec![(g, phi.unwrap_or(0.0))],
        (None, Some(phi)) => vec![(0.3, phi)],
        (None, None) => vec![(0.3, 0.7), (0.5, 1.5), (0.5, 0.0), (0.1, 0.0), (0.7, 0.3), (0.9, 3.0)],
    };
    let mut reports = Vec::new();
    for (g, phi) in points {
        reports.push(verify_gsum(g, phi, c.n_terms, c.identity_tol, &c.tolerances)?);
    }
    let mut all = vec![VerificationReport::combine("gsum", reports)];
    if c.g.is_none() && c.phi.is_none() {
        all.push(verify_gsum_split_invariance(&[0.5, 1.0, 2.0], &c.g_grid, c.identity_tol, &c.tolerances)?);
    }
    Ok(all)
}

fn majorization_group(c: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let (above, below): (Vec<f64>, Vec<f64>) = match c.big_g {
        Some(big_g) if big_g == 1.0 => {
            return Err(Error::Skipped("G = 1 is the fermion on both sides".into()))
        }
        Some(big_g) if big_g > 1.0 => (vec![big_g], vec![]),
        Some(big_g) if big_g > 0.0 => (vec![], vec![big_g]),
        Some(big_g) => return domain(format!("G must be positive, got {big_g}")),
        None => (c.gentile_grid.clone(), c.reverse_grid.clone()),
    };
    let mut all = Vec::new();
    if !above.is_empty() {
        let reports = above
            .iter()
            .map(|&big_g| verify_majorization(big_g, &c.t_grid, &c.tolerances))
            .collect::<Result<Vec<_>>>()?;
        all.push(VerificationReport::combine("majorization", reports));
        let gs: Vec<f64> = above.iter().map(|big_g| 1.0 / big_g).collect();
        all.push(verify_t1_anchor(&gs, 1e-10, &c.tolerances)?);
    }
    if !below.is_empty() {
        let reports = below
            .iter()
            .map(|&big_g| verify_reverse_majorization(big_g, &c.t_grid, &c.tolerances))
            .collect::<Result<Vec<_>>>()?;
        all.push(VerificationReport::combine("reverse_majorization", reports));
        if c.big_g.is_none() {
            all.push(verify_reverse_majorization_trend(&[0.5, 0.8, 0.9, 0.95, 0.99], 1.0, &c.tolerances)?);
        }
    }
    Ok(all)
}

fn charge_group(c: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let tol = &c.tolerances;
    let mut all = verify_charge_equivalence(&c.g_grid, &c.phi_grid, c.identity_tol, tol)?;
    all.push(verify_rational_values(&c.g_grid, tol)?);
    all.extend(verify_nu_invariance(&[0.5, 1.0, 1.5, 2.0, 3.0], &c.g_grid, c.identity_tol, tol)?);
    all.push(verify_monotone_in_nu(tol)?);
    all.push(verify_anchors(tol)?);
    all.extend(verify_gentile_growth(tol)?);
    Ok(all)
}

/// Merges per-parameter report lists position by position.
fn combine_columns(rows: Vec<Vec<VerificationReport>>) -> Result<Vec<VerificationReport>> {
    let width = rows.first().map_or(0, Vec::len);
    let mut columns: Vec<Vec<VerificationReport>> = vec![Vec::new(); width];
    for row in rows {
        for (i, r) in row.into_iter().enumerate() {
            columns[i].push(r);
        }
    }
    Ok(columns
        .into_iter()
        .map(|col| {
            let name = col[0].name.clone();
            VerificationReport::combine(&name, col)
        })
        .collect())
}

/// Group names followed by report names, for selecting with `only`.
pub fn check_names() -> Vec<&'static str> {
    let mut names: Vec<&'static str> = GROUPS.iter().map(|g| g.name).collect();
    for r in GROUPS.iter().flat_map(|g| g.reports.iter()) {
        if !names.contains(r) {
            names.push(r);
        }
    }
    names
}

fn selects(group: &Group, only: Option<&str>) -> bool {
    match only {
        None => true,
        Some(x) => group.name == x || group.reports.iter().any(|r| r.starts_with(x)),
    }
}

/// Runs every group matching `only` (a group name, or a prefix of report
/// names) and returns the outcomes sorted by name. Unknown filters are a
/// domain error.
pub fn run_suite(config: &SuiteConfig, only: Option<&str>) -> Result<Vec<Outcome>> {
    config.tolerances.validate()?;
    let chosen: Vec<&Group> = GROUPS.iter().filter(|g| selects(g, only)).collect();
    if chosen.is_empty() {
        return domain(format!("no check matches {:?}", only.unwrap_or_default()));
    }
    let mut outcomes: Vec<Outcome> = chosen
        .par_iter()
        .flat_map_iter(|group| {
            let keep = |name: &str| match only {
                Some(x) if x != group.name => name.starts_with(x),
                _ => true,
            };
            let results = match (group.run)(config) {
                Ok(reports) => reports.into_iter().filter(|r| keep(&r.name)).map(Outcome::Report).collect(),
                Err(Error::Skipped(reason)) => vec![Outcome::Skipped { name: group.name.into(), reason }],
                Err(e @ Error::SkippedOutsideRadius { .. }) => {
                    vec![Outcome::Skipped { name: group.name.into(), reason: e.to_string() }]
                }
                Err(e) => vec![Outcome::Failed { name: group.name.into(), error: e.to_string() }],
            };
            results.into_iter()
        })
        .collect();
    outcomes.sort_by(|a, b| a.name().cmp(b.name()));
    Ok(outcomes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn declared_names_match_reports() {
        let config = SuiteConfig::default();
        for group in GROUPS.iter().filter(|g| g.name != "entropy" && g.name != "special_value") {
            let mut got: Vec<String> = (group.run)(&config).unwrap().into_iter().map(|r| r.name).collect();
            got.sort();
            assert_eq!(got, group.reports.to_vec(), "{}", group.name);
        }
    }

    #[test]
    fn targeted_runs() {
        let config = SuiteConfig { g: Some(0.3), phi: Some(0.7), ..SuiteConfig::default() };
        let out = run_suite(&config, Some("gsum")).unwrap();
        assert_eq!(out.len(), 1);
        assert!(out[0].passed());

        let config = SuiteConfig { big_g: Some(0.5), ..SuiteConfig::default() };
        let out = run_suite(&config, Some("majorization")).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].name(), "reverse_majorization");
        assert!(out[0].passed());

        let config = SuiteConfig { big_g: Some(1.0), ..SuiteConfig::default() };
        let out = run_suite(&config, Some("majorization")).unwrap();
        assert!(matches!(out[0], Outcome::Skipped { .. }));

        assert!(run_suite(&SuiteConfig::default(), Some("nonsense")).is_err());
    }

    #[test]
    fn prefix_filter_keeps_matching_reports() {
        let out = run_suite(&SuiteConfig::default(), Some("dilog_")).unwrap();
        let names: Vec<&str> = out.iter().map(|o| o.name()).collect();
        assert_eq!(
            names,
            [
                "dilog_abel",
                "dilog_inequality",
                "dilog_inequality_abel_endpoint",
                "dilog_inequality_boson_endpoint",
                "dilog_reflection"
            ]
        );
    }
}
