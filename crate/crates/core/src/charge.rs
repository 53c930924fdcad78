//! Effective central charge by two routes: the integral over `ln f(t)/t`
//! and the closed dilogarithm forms.

use std::cell::RefCell;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::genfun::{ln_eval, log_derivative, Statistics};
use crate::numerics::{integrate_removable, rogers_dilog, solve_bracketed_newton, Bracket, Tolerances};

const SIX_OVER_PI2: f64 = 6.0 / (PI * PI);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChargeProblem {
    pub stat: Statistics,
    /// Scattering parameter `Φ >= 0`.
    pub phi: f64,
}

impl ChargeProblem {
    pub fn new(stat: Statistics, phi: f64) -> Result<ChargeProblem> {
        if !(phi >= 0.0) || !phi.is_finite() {
            return domain(format!("Φ must be finite and non-negative, got {phi}"));
        }
        Ok(ChargeProblem { stat, phi })
    }

    /// `ν = g + Φ`; defined for Haldane-Wu only.
    pub fn nu(&self) -> Option<f64> {
        match self.stat {
            Statistics::HaldaneWu { g } => Some(g + self.phi),
            Statistics::Gentile { .. } => None,
        }
    }

    fn is_boson_corner(&self) -> bool {
        matches!(self.stat, Statistics::HaldaneWu { g } if g == 0.0) && self.phi == 0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChargeResult {
    pub x0: f64,
    /// Root of `ln y = ν ln(1 - y)`; Haldane-Wu only.
    pub y0: Option<f64>,
    pub c_integral: f64,
    pub c_closed: f64,
    /// `|c_integral - c_closed|`
    pub residual: f64,
    /// `1 - 1/f(x0)`, which must coincide with `y0`; Haldane-Wu only.
    pub y_from_x0: Option<f64>,
}

/// Solves `h(v) = 0` for an increasing `h` on `v < 0` given as value and
/// slope. The upper end is `v = 0` when `h(0)` is finite and positive,
/// otherwise it creeps toward 0 from the left.
fn solve_on_negative_axis<F>(h: F, at_zero: Option<f64>, tol: &Tolerances) -> Result<f64>
where
    F: Fn(f64) -> Result<(f64, f64)>,
{
    let hi = match at_zero {
        Some(v) if v == 0.0 => return Ok(0.0),
        Some(v) if v > 0.0 && v.is_finite() => 0.0,
        _ => {
            let mut hi = -0.5f64;
            while h(hi)?.0 <= 0.0 {
                hi *= 0.5;
                if hi > -1e-300 {
                    return Err(Error::NoConvergence { what: "upper bracket search", iterations: 1000 });
                }
            }
            hi
        }
    };
    let mut lo = -1.0f64;
    while h(lo)?.0 >= 0.0 {
        lo *= 2.0;
        if lo < -1e6 {
            return Err(Error::NoConvergence { what: "lower bracket search", iterations: 20 });
        }
    }
    let hi_value = if hi == 0.0 { at_zero.unwrap_or(f64::NAN) } else { h(hi)?.0 };
    let bracket = Bracket::from_values(lo, hi, h(lo)?.0, hi_value)?;
    let failure = RefCell::new(None);
    let root = solve_bracketed_newton(
        |v| match h(v) {
            Ok(r) => r,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                (f64::NAN, f64::NAN)
            }
        },
        bracket,
        tol,
    );
    match failure.into_inner() {
        Some(e) => Err(e),
        None => root,
    }
}

/// Unique root in `(0, 1]` of `ln x + Φ ln f(x) = 0`; exactly 1 for `Φ = 0`.
pub fn solve_x0(prob: &ChargeProblem, tol: &Tolerances) -> Result<f64> {
    if prob.phi == 0.0 {
        return Ok(1.0);
    }
    let phi = prob.phi;
    let stat = &prob.stat;
    let h = |v: f64| -> Result<(f64, f64)> {
        let x = v.exp();
        Ok((v + phi * ln_eval(stat, x, tol)?, 1.0 + phi * log_derivative(stat, x, tol)?))
    };
    let at_zero = ln_eval(stat, 1.0, tol).ok().map(|l| phi * l);
    Ok(solve_on_negative_axis(h, at_zero, tol)?.exp())
}

/// Unique root in `(0, 1)` of `ln y = ν ln(1 - y)`; exactly 1 for `ν = 0`.
pub fn solve_y0(nu: f64, tol: &Tolerances) -> Result<f64> {
    if !(nu >= 0.0) || !nu.is_finite() {
        return domain(format!("ν must be finite and non-negative, got {nu}"));
    }
    if nu == 0.0 {
        return Ok(1.0);
    }
    let h = |v: f64| -> Result<(f64, f64)> {
        let one_minus_y = -v.exp_m1();
        Ok((v - nu * one_minus_y.ln(), 1.0 + nu * v.exp() / one_minus_y))
    };
    Ok(solve_on_negative_axis(h, None, tol)?.exp())
}

/// `(6/π²) [∫_0^{x0} ln f(t)/t dt - ½ ln x0 ln f(x0)]`.
///
/// At the boson corner (`g = 0`, `Φ = 0`) `x0 = 1` and `f` diverges there;
/// the integral is taken up to 1, where its log singularity is integrable,
/// and the boundary term is replaced by its limit 0.
pub fn charge_integral(prob: &ChargeProblem, tol: &Tolerances) -> Result<f64> {
    let x0 = solve_x0(prob, tol)?;
    let stat = &prob.stat;
    let failure = RefCell::new(None);
    let integrand = |t: f64| match ln_eval(stat, t, tol) {
        Ok(l) => l / t,
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            f64::NAN
        }
    };
    let integral = integrate_removable(integrand, 0.0, 1.0, x0, tol);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let integral = integral?;
    let boundary = if prob.is_boson_corner() {
        0.0
    } else {
        0.5 * x0.ln() * ln_eval(stat, x0, tol)?
    };
    Ok(SIX_OVER_PI2 * (integral - boundary))
}

/// Haldane-Wu: `(6/π²) L(y0)` with `y0 = solve_y0(g + Φ)`.
/// Gentile: `(6/π²) [L(x0) - L(x0^{G+1}) / (G+1)]`.
pub fn charge_closed(prob: &ChargeProblem, tol: &Tolerances) -> Result<f64> {
    match prob.stat {
        Statistics::HaldaneWu { g } => {
            let y0 = solve_y0(g + prob.phi, tol)?;
            Ok(SIX_OVER_PI2 * rogers_dilog(y0)?)
        }
        Statistics::Gentile { big_g } => {
            let x0 = solve_x0(prob, tol)?;
            let a = big_g + 1.0;
            let top = (a * x0.ln()).exp();
            Ok(SIX_OVER_PI2 * (rogers_dilog(x0)? - rogers_dilog(top)? / a))
        }
    }
}

/// Both routes plus the intermediate identity `1 - 1/f(x0) = y0`.
pub fn charge_both(prob: &ChargeProblem, tol: &Tolerances) -> Result<ChargeResult> {
    let x0 = solve_x0(prob, tol)?;
    let c_integral = charge_integral(prob, tol)?;
    let c_closed = charge_closed(prob, tol)?;
    let (y0, y_from_x0) = match prob.stat {
        Statistics::HaldaneWu { g } => {
            let y0 = solve_y0(g + prob.phi, tol)?;
            let y_mid = if prob.is_boson_corner() {
                1.0
            } else {
                -(-ln_eval(&prob.stat, x0, tol)?).exp_m1()
            };
            (Some(y0), Some(y_mid))
        }
        Statistics::Gentile { .. } => (None, None),
    };
    Ok(ChargeResult {
        x0,
        y0,
        c_integral,
        c_closed,
        residual: (c_integral - c_closed).abs(),
        y_from_x0,
    })
}
