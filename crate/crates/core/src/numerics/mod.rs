//! Scalar kernels shared by the rest of the crate: bracketed root solving,
//! adaptive quadrature, log-gamma and the Rogers dilogarithm.

mod dilog;
mod gamma;
mod quad;
mod roots;

pub use dilog::{rogers_dilog, rogers_dilog_with_tail};
pub use gamma::{ln_factorial, log_gamma};
pub use quad::{integrate, integrate_removable, integrate_with_estimate, QuadratureResult};
pub use roots::{solve_bracketed, solve_bracketed_newton, Bracket, Sign};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Numerical tolerances threaded through every solver, quadrature and series sum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Absolute residual bound for root solves.
    pub root_abs: f64,
    /// Absolute error target for adaptive quadrature.
    pub quad_abs: f64,
    /// Truncation bound for series summation.
    pub series_tail: f64,
    pub max_iter: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            root_abs: 1e-12,
            quad_abs: 1e-10,
            series_tail: 1e-16,
            max_iter: 200,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64| v > 0.0 && v.is_finite();
        if !positive(self.root_abs) || !positive(self.quad_abs) || !positive(self.series_tail) {
            return domain(format!("tolerances must be finite and strictly positive: {self:?}"));
        }
        if self.max_iter == 0 {
            return domain("max_iter must be at least 1");
        }
        Ok(())
    }
}

/// `sin(pi * x)` with exact argument reduction, so integer `x` gives an exact zero.
pub fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).round();
    // r in [-1, 1]
    let r = if r > 0.5 {
        1.0 - r
    } else if r < -0.5 {
        -1.0 - r
    } else {
        r
    };
    (std::f64::consts::PI * r).sin()
}

/// `x ln x` with the `0 ln 0 = 0` convention.
pub fn xlogx(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_tolerances_are_valid() {
        Tolerances::default().validate().unwrap();
        let bad = Tolerances { quad_abs: 0.0, ..Default::default() };
        assert!(bad.validate().is_err());
        let bad = Tolerances { max_iter: 0, ..Default::default() };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn sin_pi_is_exact_at_integers() {
        for k in -20..20 {
            assert_eq!(sin_pi(k as f64), 0.0);
        }
        assert!((sin_pi(0.5) - 1.0).abs() < 1e-16);
        assert!((sin_pi(2.25) - (std::f64::consts::PI * 0.25).sin()).abs() < 1e-15);
        assert!((sin_pi(-1.5) - 1.0).abs() < 1e-16);
        assert!((sin_pi(0.999) - (std::f64::consts::PI * 0.001).sin()).abs() < 1e-17);
    }
}
