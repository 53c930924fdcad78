//! The two statistics families and their generating functions.
//!
//! Haldane-Wu: `f_g` is the positive root of `f - 1 = t f^(1-g)`.
//! Gentile: `F_G(t) = 1 + t + ... + t^G = (1 - t^(G+1)) / (1 - t)`.

pub mod formal;
mod series;

pub use series::{
    coefficients, eval_series, hw_log_coefficient_gamma_form, power_coefficients_real,
    series_value_auto, SeriesCoefficients,
    SeriesKind,
};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::numerics::{solve_bracketed_newton, Bracket, Tolerances};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Statistics {
    HaldaneWu { g: f64 },
    Gentile { big_g: f64 },
}

impl Statistics {
    pub fn haldane_wu(g: f64) -> Result<Statistics> {
        if !(0.0..=1.0).contains(&g) {
            return domain(format!("Haldane-Wu parameter must satisfy 0 <= g <= 1, got {g}"));
        }
        Ok(Statistics::HaldaneWu { g })
    }

    /// Non-integer `G` is accepted; see [`Statistics::is_integer_gentile`].
    pub fn gentile(big_g: f64) -> Result<Statistics> {
        if !(big_g > 0.0) || !big_g.is_finite() {
            return domain(format!("Gentile parameter must be finite and positive, got {big_g}"));
        }
        Ok(Statistics::Gentile { big_g })
    }

    pub fn fermion() -> Statistics {
        Statistics::HaldaneWu { g: 1.0 }
    }

    pub fn boson() -> Statistics {
        Statistics::HaldaneWu { g: 0.0 }
    }

    /// `g` or `G`.
    pub fn parameter(&self) -> f64 {
        match *self {
            Statistics::HaldaneWu { g } => g,
            Statistics::Gentile { big_g } => big_g,
        }
    }

    pub fn is_integer_gentile(&self) -> bool {
        matches!(*self, Statistics::Gentile { big_g } if big_g.fract() == 0.0)
    }

    /// True for a Gentile statistics with non-integer `G`, which is legal
    /// but has no direct occupation-number reading.
    pub fn is_flagged(&self) -> bool {
        matches!(self, Statistics::Gentile { .. }) && !self.is_integer_gentile()
    }
}

impl fmt::Display for Statistics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statistics::HaldaneWu { g } => write!(f, "HaldaneWu(g={g})"),
            Statistics::Gentile { big_g } => write!(f, "Gentile(G={big_g})"),
        }
    }
}

/// Convergence radius `t0 = exp(-g ln g - (1-g) ln(1-g))` of the Haldane-Wu
/// series, `1` at `g ∈ {0, 1}`.
pub fn radius_hw(g: f64) -> f64 {
    let xlogx = crate::numerics::xlogx;
    (-xlogx(g) - xlogx(1.0 - g)).exp()
}

/// Series radius. Gentile generating functions are polynomials, reported
/// with the `+∞` convention.
pub fn radius(stat: &Statistics) -> f64 {
    match *stat {
        Statistics::HaldaneWu { g } => radius_hw(g),
        Statistics::Gentile { .. } => f64::INFINITY,
    }
}

pub fn eval(stat: &Statistics, t: f64, tol: &Tolerances) -> Result<f64> {
    match *stat {
        Statistics::HaldaneWu { g } if g == 1.0 && t.is_finite() => Ok(1.0 + t),
        Statistics::HaldaneWu { g } if g == 0.0 && t.abs() < 1.0 => Ok(1.0 / (1.0 - t)),
        Statistics::HaldaneWu { .. } if t < 0.0 => series_value_auto(stat, SeriesKind::F, t, tol),
        Statistics::Gentile { big_g } if stat.is_integer_gentile() && big_g <= 64.0 && (0.0..=1e4).contains(&t) => {
            Ok(gentile_polynomial(big_g as u64, t))
        }
        Statistics::Gentile { big_g } if t < 0.0 => {
            if stat.is_integer_gentile() {
                Ok(gentile_polynomial(big_g as u64, t))
            } else {
                domain(format!("Gentile with non-integer G = {big_g} is undefined at t = {t} < 0"))
            }
        }
        _ => {
            let ln_f = ln_eval(stat, t, tol)?;
            let f = ln_f.exp();
            if f.is_finite() {
                Ok(f)
            } else {
                domain(format!("f(t) = exp({ln_f}) overflows at t = {t}; use ln_eval"))
            }
        }
    }
}

/// `ln f(t)` for `t >= 0`, computed without forming `f` first so it keeps full
/// relative accuracy as `t -> 0`.
pub fn ln_eval(stat: &Statistics, t: f64, tol: &Tolerances) -> Result<f64> {
    if !(t >= 0.0) {
        return domain(format!("ln f(t) is evaluated for t >= 0 only, got {t}"));
    }
    match *stat {
        Statistics::HaldaneWu { g } => hw_ln_f(g, t, tol),
        Statistics::Gentile { big_g } => Ok(gentile_ln_f(big_g, t)),
    }
}

/// Haldane-Wu generating function for any `g >= 0`, including `g > 1`
/// where the implicit equation still has a unique positive root.
pub fn hw_eval_extended(g: f64, t: f64, tol: &Tolerances) -> Result<f64> {
    Ok(hw_ln_f(g, t, tol)?.exp())
}

/// Solves `ln(f - 1) = ln t + (1 - g) ln f` for `u = ln f`.
pub fn hw_ln_f(g: f64, t: f64, tol: &Tolerances) -> Result<f64> {
    if !(g >= 0.0) || !g.is_finite() {
        return domain(format!("Haldane-Wu parameter must be finite and >= 0, got {g}"));
    }
    if !(t >= 0.0) || !t.is_finite() {
        return domain(format!("implicit solve needs finite t >= 0, got {t}"));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    if g == 0.0 {
        if t >= 1.0 {
            return domain(format!("boson generating function 1/(1-t) diverges at t = {t} >= 1"));
        }
        return Ok(-(-t).ln_1p());
    }
    if g == 1.0 {
        return Ok(t.ln_1p());
    }
    let ln_t = t.ln();
    let residual = |u: f64| {
        // ln(e^u - 1) = u + ln(1 - e^-u)
        let value = u + (-(-u).exp_m1()).ln() - ln_t - (1.0 - g) * u;
        let slope = -1.0 / (-u).exp_m1() - (1.0 - g);
        (value, slope)
    };
    let (lo, hi) = if g < 1.0 {
        // 1 + t <= f < 1/g + t^(1/g)
        let (a, b) = (-g.ln(), ln_t / g);
        let hi = a.max(b) + (-(a - b).abs()).exp().ln_1p();
        // the bound is asymptotically tight: pad it past rounding
        (t.ln_1p(), hi + 1e-12 * hi.max(1.0))
    } else {
        // 1 + t (1+t)^(1-g) <= f <= 1 + t
        let lo = (t * ((1.0 - g) * t.ln_1p()).exp()).ln_1p();
        (lo, t.ln_1p())
    };
    let bracket = Bracket::from_values(lo, hi, residual(lo).0, residual(hi).0)?;
    let u = solve_bracketed_newton(residual, bracket, tol)?;
    // one more Newton step takes the root from tolerance to rounding level
    let (value, slope) = residual(u);
    let polished = u - value / slope;
    Ok(if polished.is_finite() && residual(polished).0.abs() <= value.abs() { polished } else { u })
}

fn gentile_polynomial(big_g: u64, t: f64) -> f64 {
    (0..=big_g).rev().fold(0.0, |acc, _| acc * t + 1.0)
}

/// `ln F_G(t)` for `t >= 0` and any real `G > 0`.
pub fn gentile_ln_f(big_g: f64, t: f64) -> f64 {
    let a = big_g + 1.0;
    if t == 0.0 {
        return 0.0;
    }
    if (t - 1.0).abs() < 1e-6 && big_g.fract() == 0.0 && big_g <= 64.0 {
        return gentile_polynomial(big_g as u64, t).ln();
    }
    if t == 1.0 {
        return a.ln();
    }
    let v = t.ln();
    if t < 0.5 {
        (-(a * v).exp()).ln_1p() - (-t).ln_1p()
    } else if v < 0.0 {
        (-(a * v).exp_m1()).ln() - (-v.exp_m1()).ln()
    } else {
        (a - 1.0) * v + (-(-a * v).exp_m1()).ln() - (-(-v).exp_m1()).ln()
    }
}

/// Logarithmic derivative `t f'(t) / f(t)`.
///
/// Haldane-Wu uses the exact implicit derivative `(f - 1) / (g f + 1 - g)`;
/// Gentile differentiates the rational form analytically.
pub fn log_derivative(stat: &Statistics, t: f64, tol: &Tolerances) -> Result<f64> {
    if !(t >= 0.0) {
        return domain(format!("log-derivative is evaluated for t >= 0 only, got {t}"));
    }
    match *stat {
        Statistics::HaldaneWu { g } => hw_log_derivative(g, t, tol),
        Statistics::Gentile { big_g } => Ok(gentile_log_derivative(big_g, t)),
    }
}

pub fn hw_log_derivative(g: f64, t: f64, tol: &Tolerances) -> Result<f64> {
    let u = hw_ln_f(g, t, tol)?;
    let f = u.exp();
    Ok(u.exp_m1() / (g * f + 1.0 - g))
}

pub fn gentile_log_derivative(big_g: f64, t: f64) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    if t.is_infinite() {
        return big_g;
    }
    let a = big_g + 1.0;
    let v = t.ln();
    if (a * v).abs() < 0.1 {
        // a / (1 - e^{-a v}) - 1 / (1 - e^{-v}) expanded in Bernoulli numbers
        const C: [f64; 4] = [1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0, -1.0 / 1209600.0];
        let v2 = v * v;
        let a2 = a * a;
        let mut a_pow = a2;
        let mut v_pow = v;
        let mut sum = 0.5 * (a - 1.0);
        for c in C {
            sum += c * (a_pow - 1.0) * v_pow;
            a_pow *= a2;
            v_pow *= v2;
        }
        return sum;
    }
    -a / (-a * v).exp_m1() + 1.0 / (-v).exp_m1()
}

/// `f_g(t) · f_{1-g}(-t) - 1`, both factors summed as series.
pub fn duality_residual(g: f64, t: f64, tol: &Tolerances) -> Result<f64> {
    if !(g > 0.0 && g < 1.0) {
        return domain(format!("duality check needs 0 < g < 1, got {g}"));
    }
    let r = radius_hw(g).min(radius_hw(1.0 - g));
    if !(t.abs() < r) {
        return Err(crate::Error::OutsideRadius { t, radius: r });
    }
    let left = series_value_auto(&Statistics::HaldaneWu { g }, SeriesKind::F, t, tol)?;
    let right = series_value_auto(&Statistics::HaldaneWu { g: 1.0 - g }, SeriesKind::F, -t, tol)?;
    Ok(left * right - 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn hw(g: f64) -> Statistics {
        Statistics::haldane_wu(g).unwrap()
    }

    #[test]
    fn constructors_validate() {
        assert!(Statistics::haldane_wu(-0.1).is_err());
        assert!(Statistics::haldane_wu(1.1).is_err());
        assert!(Statistics::gentile(0.0).is_err());
        assert!(Statistics::gentile(f64::INFINITY).is_err());
        let s = Statistics::gentile(1.5).unwrap();
        assert!(s.is_flagged());
        assert!(!Statistics::gentile(3.0).unwrap().is_flagged());
    }

    #[test]
    fn eval_examples() {
        assert!((eval(&hw(1.0), 2.0, &tol()).unwrap() - 3.0).abs() < 1e-15);
        assert!((eval(&hw(0.0), 0.5, &tol()).unwrap() - 2.0).abs() < 1e-15);
        // u = √f solves u² - t u - 1 = 0
        let golden_sq = (3.0 + 5f64.sqrt()) / 2.0;
        assert!((eval(&hw(0.5), 1.0, &tol()).unwrap() - golden_sq).abs() < 1e-12);
        let gentile = Statistics::gentile(2.0).unwrap();
        assert!((eval(&gentile, 1.0, &tol()).unwrap() - 3.0).abs() < 1e-15);
        assert_eq!(eval(&hw(0.3), 0.0, &tol()).unwrap(), 1.0);
    }

    #[test]
    fn boson_divergence_is_a_domain_error() {
        assert!(eval(&hw(0.0), 1.0, &tol()).is_err());
        assert!(eval(&hw(0.0), 3.0, &tol()).is_err());
    }

    #[test]
    fn gentile_matches_polynomial() {
        for big_g in 1..=5u64 {
            let s = Statistics::gentile(big_g as f64).unwrap();
            for &t in &[0.01f64, 0.3, 0.999_999_5, 1.0, 1.000_000_2, 1.7, 4.0] {
                let direct: f64 = (0..=big_g).map(|k| t.powi(k as i32)).sum();
                let v = eval(&s, t, &tol()).unwrap();
                assert!(((v - direct) / direct).abs() < 1e-13, "G={big_g} t={t}");
            }
            let v = eval(&s, -0.5, &tol()).unwrap();
            let direct: f64 = (0..=big_g).map(|k| (-0.5f64).powi(k as i32)).sum();
            assert!((v - direct).abs() < 1e-15);
        }
        assert!(eval(&Statistics::gentile(1.5).unwrap(), -0.5, &tol()).is_err());
        // non-integer G at t = 1 is the limit G + 1
        let v = eval(&Statistics::gentile(0.5).unwrap(), 1.0, &tol()).unwrap();
        assert!((v - 1.5).abs() < 1e-15);
    }

    #[test]
    fn radius_examples() {
        assert!((radius(&hw(0.5)) - 2.0).abs() < 1e-15);
        assert_eq!(radius(&hw(1.0)), 1.0);
        assert_eq!(radius(&hw(0.0)), 1.0);
        let expected = (-0.3 * 0.3f64.ln() - 0.7 * 0.7f64.ln()).exp();
        assert!((radius(&hw(0.3)) - expected).abs() < 1e-15);
        assert!((radius(&hw(0.3)) - 1.842_022_775_037_31).abs() < 1e-12);
        assert_eq!(radius(&Statistics::gentile(2.0).unwrap()), f64::INFINITY);
    }

    #[test]
    fn implicit_residual_on_grid() {
        for i in 0..=10 {
            let g = i as f64 / 10.0;
            for j in 1..=50 {
                let t = j as f64 * 0.1;
                if g == 0.0 && t >= 1.0 {
                    continue;
                }
                let f = eval(&hw(g), t, &tol()).unwrap();
                let res = (f - 1.0 - t * f.powf(1.0 - g)) / f;
                assert!(res.abs() <= 1e-10, "g={g} t={t} res={res:e}");
            }
        }
    }

    #[test]
    fn monotone_and_bounded() {
        for i in 1..=10 {
            let g = i as f64 / 10.0;
            let mut prev = 1.0;
            for j in 1..=200 {
                let t = j as f64 * 0.025;
                let f = eval(&hw(g), t, &tol()).unwrap();
                assert!(f > prev, "g={g} t={t}");
                // equality for the fermion, where f = 1 + t
                if g < 1.0 {
                    assert!(f < 1.0 / g + t.powf(1.0 / g), "g={g} t={t}");
                } else {
                    assert!(f <= (1.0 + t) * (1.0 + 1e-15));
                }
                prev = f;
            }
        }
    }

    #[test]
    fn extended_parameter_above_one() {
        // g = 2: f - 1 = t / f  =>  f = (1 + √(1 + 4t)) / 2
        for &t in &[0.1, 1.0, 3.0] {
            let f = hw_eval_extended(2.0, t, &tol()).unwrap();
            assert!((f - (1.0 + (1.0 + 4.0 * t).sqrt()) / 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn log_derivative_matches_finite_differences() {
        let stats = [hw(0.0), hw(0.35), hw(1.0), Statistics::gentile(2.0).unwrap(), Statistics::gentile(0.7).unwrap()];
        for s in stats {
            for &t in &[0.05, 0.4, 0.9, 0.999, 1.0, 1.003, 2.5] {
                if matches!(s, Statistics::HaldaneWu { g } if g == 0.0) && t >= 0.95 {
                    continue;
                }
                let h = 1e-5 * t;
                let fp = eval(&s, t + h, &tol()).unwrap();
                let fm = eval(&s, t - h, &tol()).unwrap();
                let f = eval(&s, t, &tol()).unwrap();
                let fd = t * (fp - fm) / (2.0 * h) / f;
                let d = log_derivative(&s, t, &tol()).unwrap();
                assert!((d - fd).abs() < 1e-7 * d.abs().max(1.0), "{s} t={t}: {d} vs {fd}");
            }
        }
        assert_eq!(gentile_log_derivative(3.0, 1.0), 1.5);
    }

    #[test]
    fn duality_examples() {
        assert!(duality_residual(0.5, 0.3, &tol()).unwrap().abs() <= 1e-10);
        assert_eq!(duality_residual(0.2, 0.0, &tol()).unwrap(), 0.0);
        assert!(duality_residual(0.7, -0.4, &tol()).unwrap().abs() <= 1e-10);
        assert!(duality_residual(0.5, 2.5, &tol()).is_err());
    }
}
