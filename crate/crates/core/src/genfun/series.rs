use serde::{Deserialize, Serialize};

use super::{formal, radius, Statistics};
use crate::error::{domain, Error, Result};
use crate::numerics::{ln_factorial, log_gamma, sin_pi, Tolerances};

/// Which Taylor expansion a coefficient vector belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SeriesKind {
    /// `f(t)`
    F,
    /// `ln f(t)`
    LogF,
    /// `f(t)^m`; only integer `m` is accepted as a series.
    FPow(f64),
    /// `(f(t) - 1)^m` for `m >= 1`.
    HPow(u32),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesCoefficients {
    pub kind: SeriesKind,
    pub stat: Statistics,
    /// Coefficients of `t^0 ..= t^n_max`.
    pub coeffs: Vec<f64>,
    pub radius: f64,
}

impl SeriesCoefficients {
    pub fn n_max(&self) -> usize {
        self.coeffs.len() - 1
    }
}

// Above this index the products are accumulated in log space.
const DIRECT_PRODUCT_MAX: usize = 300;
const AUTO_TERMS_CAP: usize = 16384;

/// `∏ factor(k)` over `ks`, switching to a signed log-space sum for long
/// products whose partial values could leave the floating-point range.
fn product<I: Iterator<Item = f64>>(factors: I, long: bool) -> f64 {
    if !long {
        return factors.product();
    }
    let mut negative = false;
    let mut log_abs = 0.0;
    for x in factors {
        if x == 0.0 {
            return 0.0;
        }
        negative ^= x < 0.0;
        log_abs += x.abs().ln();
    }
    let v = log_abs.exp();
    if negative {
        -v
    } else {
        v
    }
}

/// `f_n = ∏_{k=2}^{n} (1 - g n / k)`, with `f_0 = f_1 = 1`.
pub(crate) fn hw_f_coefficient(g: f64, n: usize) -> f64 {
    let nf = n as f64;
    product((2..=n).map(|k| 1.0 - g * nf / k as f64), n > DIRECT_PRODUCT_MAX)
}

/// `w_n = (1/n) ∏_{k=1}^{n-1} (1 - g n / k)`, `w_0 = 0`. Equivalent to
/// `(1 - g n) / ((1 - g) n) · f_n` but free of the `0/0` at `g = 1`.
pub(crate) fn hw_log_coefficient(g: f64, n: usize) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let nf = n as f64;
    product((1..n).map(|k| 1.0 - g * nf / k as f64), n > DIRECT_PRODUCT_MAX) / nf
}

/// Coefficient of `t^n` in `f_g^m`: `m ∏_{k=2}^{n} (1 + (m - 1 - g n) / k)`.
pub(crate) fn hw_power_coefficient(g: f64, m: f64, n: usize) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let nf = n as f64;
    m * product(
        (2..=n).map(|k| 1.0 + (m - 1.0 - g * nf) / k as f64),
        n > DIRECT_PRODUCT_MAX,
    )
}

/// Coefficient of `t^n` in `(f_g - 1)^m`, pole-free form
/// `(m / n) ∏_{k=m+1}^{n} (k - g n) / (k - m)` for `n >= m`.
pub(crate) fn hw_h_power_coefficient(g: f64, m: u32, n: usize) -> f64 {
    let m = m as usize;
    if n < m || m == 0 {
        return if m == 0 && n == 0 { 1.0 } else { 0.0 };
    }
    let nf = n as f64;
    let mf = m as f64;
    (mf / nf)
        * product(
            (m + 1..=n).map(|k| (k as f64 - g * nf) / (k - m) as f64),
            n > DIRECT_PRODUCT_MAX,
        )
}

/// `w_n` through the gamma-function form
/// `sin(π g n) Γ((1-g) n) Γ(g n) / (π n!)`, valid for `0 < g < 1`.
///
/// Every gamma argument is positive, so this is an independent route to the
/// product form and stays O(1) per coefficient for very large `n`.
pub fn hw_log_coefficient_gamma_form(g: f64, n: usize) -> Result<f64> {
    if !(g > 0.0 && g < 1.0) {
        return domain(format!("gamma form needs 0 < g < 1, got {g}"));
    }
    if n == 0 {
        return Ok(0.0);
    }
    let nf = n as f64;
    let s = sin_pi(g * nf);
    if s == 0.0 {
        return Ok(0.0);
    }
    let log_mag = log_gamma((1.0 - g) * nf)? + log_gamma(g * nf)? - ln_factorial(n as u64);
    Ok(s * log_mag.exp() / std::f64::consts::PI)
}

/// Coefficients of `f^m` from the product formula for real `m`. For
/// non-integer `m` the series is unproven; callers compare it against
/// pointwise powers instead of relying on it.
pub fn power_coefficients_real(g: f64, m: f64, n_max: usize) -> Vec<f64> {
    (0..=n_max).map(|n| hw_power_coefficient(g, m, n)).collect()
}

pub fn coefficients(stat: &Statistics, kind: SeriesKind, n_max: usize) -> Result<SeriesCoefficients> {
    if let SeriesKind::FPow(m) = kind {
        if m.fract() != 0.0 || !m.is_finite() {
            return domain(format!(
                "powers f^m are available as series for integer m only (got m = {m}); use the pointwise route"
            ));
        }
    }
    if let SeriesKind::HPow(0) = kind {
        return domain("H powers need m >= 1");
    }
    let (coeffs, series_radius) = match *stat {
        Statistics::HaldaneWu { g } => {
            let coeffs = (0..=n_max)
                .map(|n| match kind {
                    SeriesKind::F => hw_f_coefficient(g, n),
                    SeriesKind::LogF => hw_log_coefficient(g, n),
                    SeriesKind::FPow(m) => hw_power_coefficient(g, m, n),
                    SeriesKind::HPow(m) => hw_h_power_coefficient(g, m, n),
                })
                .collect();
            (coeffs, radius(stat))
        }
        Statistics::Gentile { big_g } => {
            if !stat.is_integer_gentile() {
                return domain(format!("Gentile series need integer G, got {big_g}"));
            }
            let degree = big_g as usize;
            let base: Vec<f64> = (0..=n_max).map(|n| if n <= degree { 1.0 } else { 0.0 }).collect();
            match kind {
                SeriesKind::F => (base, f64::INFINITY),
                // zeros of F_G lie on the unit circle
                SeriesKind::LogF => (formal::ln(&base, n_max)?, 1.0),
                SeriesKind::FPow(m) if m >= 0.0 => (formal::pow(&base, m as u32, n_max), f64::INFINITY),
                SeriesKind::FPow(m) => {
                    let inv = formal::inverse(&base, n_max)?;
                    (formal::pow(&inv, (-m) as u32, n_max), 1.0)
                }
                SeriesKind::HPow(m) => {
                    let mut h = base;
                    h[0] = 0.0;
                    (formal::pow(&h, m, n_max), f64::INFINITY)
                }
            }
        }
    };
    Ok(SeriesCoefficients { kind, stat: *stat, coeffs, radius: series_radius })
}

/// Horner sum of a truncated series, refusing points outside the radius
/// and truncations whose last terms are not below `tol.series_tail`.
///
/// The tail is judged on the largest of the last four terms because
/// individual coefficients vanish exactly whenever `g n` is an integer.
pub fn eval_series(coeffs: &SeriesCoefficients, t: f64, tol: &Tolerances) -> Result<f64> {
    if !(t.abs() < coeffs.radius) {
        return Err(Error::OutsideRadius { t, radius: coeffs.radius });
    }
    let c = &coeffs.coeffs;
    let n_max = c.len() - 1;
    let tail = (n_max.saturating_sub(3)..=n_max)
        .filter(|&n| n > 0 && c[n] != 0.0)
        .map(|n| (c[n].abs().ln() + n as f64 * t.abs().ln()).exp())
        .fold(0.0, f64::max);
    if tail > tol.series_tail {
        return Err(Error::TailTooLarge { tail, bound: tol.series_tail });
    }
    Ok(formal::eval(c, t))
}

/// Series value with the truncation order doubled until the tail criterion
/// holds.
pub fn series_value_auto(stat: &Statistics, kind: SeriesKind, t: f64, tol: &Tolerances) -> Result<f64> {
    let mut n_max = 32;
    loop {
        let c = coefficients(stat, kind, n_max)?;
        match eval_series(&c, t, tol) {
            Err(Error::TailTooLarge { .. }) if n_max < AUTO_TERMS_CAP => n_max *= 2,
            other => return other,
        }
    }
}
