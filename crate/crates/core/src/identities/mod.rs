//! Executable checks of the series, central-charge and majorization
//! statements, each producing a [`VerificationReport`].

mod charge_checks;
mod gsum;
mod majorization;
mod series_checks;
mod suite;
mod thermo_checks;

pub use gsum::{
    gsum_series, nu_half_convergence_boundary, verify_gsum, verify_gsum_split_invariance,
    verify_special_value_families, Family, GsumSeries,
};
pub use charge_checks::{
    verify_anchors, verify_charge_equivalence, verify_gentile_growth, verify_monotone_in_nu,
    verify_nu_invariance, verify_rational_values,
};
pub use majorization::{
    dilog_margin, verify_dilog_inequality, verify_entropy_charge_majorization, verify_majorization,
    verify_reverse_majorization, verify_reverse_majorization_trend, verify_t1_anchor,
};
pub use series_checks::{verify_generating_functions, verify_series_proposition};
pub use thermo_checks::{verify_asymptotic_entropy, verify_entropy, verify_gentile_extensivity};
pub use suite::{check_names, run_suite, Outcome, SuiteConfig};

use serde::{Deserialize, Serialize};

/// Identity reports bound a residual, strict inequalities bound a margin
/// away from zero, observations only record a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Identity,
    StrictInequality,
    Observation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub name: String,
    pub kind: CheckKind,
    pub grid_description: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub max_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub min_margin: Option<f64>,
    pub tolerance: f64,
    pub passed: bool,
    pub points_checked: usize,
    /// Where the worst value occurred, plus anything else worth knowing.
    #[serde(skip_serializing_if = "String::is_empty", default)]
    pub notes: String,
}

impl VerificationReport {
    pub fn identity(name: &str, grid: impl Into<String>, worst: Tracker, tolerance: f64) -> Self {
        let passed = worst.points > 0 && worst.value <= tolerance;
        VerificationReport {
            name: name.to_string(),
            kind: CheckKind::Identity,
            grid_description: grid.into(),
            max_residual: Some(worst.value),
            min_margin: None,
            tolerance,
            passed,
            points_checked: worst.points,
            notes: worst.at,
        }
    }

    pub fn inequality(name: &str, grid: impl Into<String>, worst: Tracker) -> Self {
        let passed = worst.points > 0 && worst.value > 0.0;
        VerificationReport {
            name: name.to_string(),
            kind: CheckKind::StrictInequality,
            grid_description: grid.into(),
            max_residual: None,
            min_margin: Some(worst.value),
            tolerance: 0.0,
            passed,
            points_checked: worst.points,
            notes: worst.at,
        }
    }

    pub fn observation(name: &str, grid: impl Into<String>, worst: Tracker) -> Self {
        VerificationReport {
            name: name.to_string(),
            kind: CheckKind::Observation,
            grid_description: grid.into(),
            max_residual: Some(worst.value),
            min_margin: None,
            tolerance: f64::INFINITY,
            passed: worst.points > 0,
            points_checked: worst.points,
            notes: worst.at,
        }
    }

    pub fn with_note(mut self, note: impl AsRef<str>) -> Self {
        if !self.notes.is_empty() {
            self.notes.push_str("; ");
        }
        self.notes.push_str(note.as_ref());
        self
    }

    /// Folds reports of one kind into a single report under `name`,
    /// keeping the worst value and summing the points.
    pub fn combine(name: &str, reports: Vec<VerificationReport>) -> Self {
        let kind = reports.first().map_or(CheckKind::Identity, |r| r.kind);
        let tolerance = reports.first().map_or(0.0, |r| r.tolerance);
        let mut worst = match kind {
            CheckKind::StrictInequality => Tracker::margins(),
            _ => Tracker::residuals(),
        };
        let mut grids = Vec::new();
        for r in reports {
            grids.push(r.grid_description.clone());
            worst.merge(Tracker {
                value: r.value(),
                points: r.points_checked,
                at: r.notes,
                minimize: worst.minimize,
            });
        }
        let grid = grids.join(" | ");
        match kind {
            CheckKind::Identity => Self::identity(name, grid, worst, tolerance),
            CheckKind::StrictInequality => Self::inequality(name, grid, worst),
            CheckKind::Observation => Self::observation(name, grid, worst),
        }
    }

    /// The residual or margin, whichever the kind records.
    pub fn value(&self) -> f64 {
        self.max_residual.or(self.min_margin).unwrap_or(f64::NAN)
    }

    /// Re-derives `passed` from the recorded numbers.
    pub fn is_consistent(&self) -> bool {
        let derived = match self.kind {
            CheckKind::Identity => self.max_residual.is_some_and(|r| r <= self.tolerance),
            CheckKind::StrictInequality => self.min_margin.is_some_and(|m| m > 0.0),
            CheckKind::Observation => true,
        };
        self.points_checked >= 1 && derived == self.passed
    }
}

/// Running worst case: the largest residual or the smallest margin.
/// NaN counts as the worst possible value.
#[derive(Debug, Clone, Default)]
pub struct Tracker {
    value: f64,
    points: usize,
    at: String,
    minimize: bool,
}

impl Tracker {
    pub fn residuals() -> Self {
        Tracker { value: 0.0, points: 0, at: String::new(), minimize: false }
    }

    pub fn margins() -> Self {
        Tracker { value: f64::INFINITY, points: 0, at: String::new(), minimize: true }
    }

    pub fn push(&mut self, value: f64, label: impl FnOnce() -> String) {
        let v = match (value.is_nan(), self.minimize) {
            (true, true) => f64::NEG_INFINITY,
            (true, false) => f64::INFINITY,
            (false, true) => value,
            (false, false) => value.abs(),
        };
        let worse = if self.minimize { v < self.value } else { v > self.value };
        if self.points == 0 || worse {
            self.value = v;
            self.at = format!("worst at {}", label());
        }
        self.points += 1;
    }

    pub fn merge(&mut self, other: Tracker) {
        if other.points == 0 {
            return;
        }
        let worse = if self.minimize { other.value < self.value } else { other.value > self.value };
        if self.points == 0 || worse {
            self.value = other.value;
            self.at = other.at;
        }
        self.points += other.points;
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn points(&self) -> usize {
        self.points
    }
}

/// `start, start + step, ...` with `count` points.
pub(crate) fn linspace(start: f64, end: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![start];
    }
    let step = (end - start) / (count - 1) as f64;
    (0..count).map(|i| start + step * i as f64).collect()
}

/// `0.05, 0.10, ..., 0.95`
pub fn default_g_grid() -> Vec<f64> {
    (1..=19).map(|k| k as f64 / 20.0).collect()
}

pub fn default_phi_grid() -> Vec<f64> {
    vec![0.0, 0.25, 0.5, 1.0, 2.0, 5.0]
}

/// 60 points spaced geometrically over `[0.01, 10]`.
pub fn default_t_grid() -> Vec<f64> {
    (0..60).map(|k| 10f64.powf(-2.0 + 3.0 * k as f64 / 59.0)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tracker_keeps_worst() {
        let mut r = Tracker::residuals();
        r.push(1e-3, || "a".into());
        r.push(-2e-3, || "b".into());
        r.push(1e-4, || "c".into());
        assert_eq!(r.value(), 2e-3);
        assert_eq!(r.points(), 3);
        let rep = VerificationReport::identity("x", "", r, 1e-2);
        assert!(rep.passed && rep.is_consistent());
        assert!(rep.notes.contains('b'));

        let mut m = Tracker::margins();
        m.push(0.5, || "a".into());
        m.push(f64::NAN, || "nan".into());
        let rep = VerificationReport::inequality("y", "", m);
        assert!(!rep.passed && rep.is_consistent());
    }

    #[test]
    fn empty_tracker_fails() {
        let rep = VerificationReport::identity("x", "", Tracker::residuals(), 1.0);
        assert!(!rep.passed);
    }

    #[test]
    fn grids() {
        let g = default_g_grid();
        assert_eq!(g.len(), 19);
        assert!((g[18] - 0.95).abs() < 1e-15);
        let t = default_t_grid();
        assert!((t[0] - 0.01).abs() < 1e-15 && (t[59] - 10.0).abs() < 1e-12);
        assert_eq!(linspace(0.1, 0.9, 9)[4], 0.5);
    }
}
