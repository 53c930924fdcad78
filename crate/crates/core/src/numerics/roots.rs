use std::cell::Cell;

use crate::error::{Error, Result};

use super::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(v: f64) -> Option<Sign> {
        if v.is_nan() {
            None
        } else if v < 0.0 {
            Some(Sign::Negative)
        } else if v > 0.0 {
            Some(Sign::Positive)
        } else {
            Some(Sign::Zero)
        }
    }
}

/// An interval `[lo, hi]` across which the target function changes sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo_sign: Sign,
    pub f_hi_sign: Sign,
}

impl Bracket {
    /// Builds a bracket from already evaluated endpoint values. Infinite
    /// endpoint values are fine, only their sign is used.
    pub fn from_values(lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Result<Bracket> {
        let no_change = Error::NoSignChange { lo, hi };
        if !(lo < hi) {
            return Err(no_change);
        }
        let (Some(f_lo_sign), Some(f_hi_sign)) = (Sign::of(f_lo), Sign::of(f_hi)) else {
            return Err(no_change);
        };
        if f_lo_sign == f_hi_sign {
            return Err(no_change);
        }
        Ok(Bracket { lo, hi, f_lo_sign, f_hi_sign })
    }

    pub fn enclose<F: Fn(f64) -> f64>(lo: f64, hi: f64, func: F) -> Result<Bracket> {
        Bracket::from_values(lo, hi, func(lo), func(hi))
    }
}

/// Root of a continuous function on a bracket, without derivative information.
///
/// The Newton step uses the secant slope through the two most recent points.
pub fn solve_bracketed<F: Fn(f64) -> f64>(func: F, bracket: Bracket, tol: &Tolerances) -> Result<f64> {
    let prev: Cell<Option<(f64, f64)>> = Cell::new(None);
    let lo_val = func(bracket.lo);
    let hi_val = func(bracket.hi);
    let initial_slope = if lo_val.is_finite() && hi_val.is_finite() {
        Some((hi_val - lo_val) / (bracket.hi - bracket.lo))
    } else {
        None
    };
    safeguarded_newton(
        |x| {
            let fx = func(x);
            let slope = match prev.get() {
                Some((xp, fp)) if xp != x => (fx - fp) / (x - xp),
                _ => initial_slope.unwrap_or(f64::NAN),
            };
            (fx, slope)
        },
        |x, fx| prev.set(Some((x, fx))),
        bracket,
        tol,
    )
}

/// Root of a function supplied together with its derivative: safeguarded
/// Newton with bisection fallback whenever a step leaves the bracket or
/// fails to shrink it fast enough.
pub fn solve_bracketed_newton<F: Fn(f64) -> (f64, f64)>(
    func: F,
    bracket: Bracket,
    tol: &Tolerances,
) -> Result<f64> {
    safeguarded_newton(func, |_, _| {}, bracket, tol)
}

fn safeguarded_newton<F, R>(mut func: F, mut record: R, bracket: Bracket, tol: &Tolerances) -> Result<f64>
where
    F: FnMut(f64) -> (f64, f64),
    R: FnMut(f64, f64),
{
    match (bracket.f_lo_sign, bracket.f_hi_sign) {
        (Sign::Zero, _) => return Ok(bracket.lo),
        (_, Sign::Zero) => return Ok(bracket.hi),
        _ => {}
    }
    // Orient so that func(neg) < 0 < func(pos).
    let (mut neg, mut pos) = if bracket.f_lo_sign == Sign::Negative {
        (bracket.lo, bracket.hi)
    } else {
        (bracket.hi, bracket.lo)
    };
    let mut x = 0.5 * (bracket.lo + bracket.hi);
    let mut step_old = (bracket.hi - bracket.lo).abs();
    let mut step = step_old;

    for _ in 0..tol.max_iter {
        let (fx, dfx) = func(x);
        if fx.is_nan() {
            return Err(Error::Domain(format!("function evaluated to NaN at x = {x}")));
        }
        if fx.abs() <= tol.root_abs {
            return Ok(x);
        }
        record(x, fx);
        if fx < 0.0 {
            neg = x;
        } else {
            pos = x;
        }
        let (a, b) = if neg < pos { (neg, pos) } else { (pos, neg) };

        let newton = x - fx / dfx;
        let usable = dfx.is_finite() && dfx != 0.0 && newton > a && newton < b;
        let fast_enough = (2.0 * fx).abs() <= (step_old * dfx).abs();
        step_old = step;
        let next = if usable && fast_enough {
            newton
        } else {
            0.5 * (a + b)
        };
        step = (next - x).abs();
        if next <= a || next >= b {
            // The bracket has collapsed to adjacent floats.
            break;
        }
        x = next;
    }
    Err(Error::NoConvergence {
        what: "bracketed root solve",
        iterations: tol.max_iter,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn linear_root() {
        let f = |x: f64| x - 0.5;
        let b = Bracket::enclose(0.0, 1.0, f).unwrap();
        let x = solve_bracketed(f, b, &tol()).unwrap();
        assert!(f(x).abs() <= tol().root_abs);
        assert!((x - 0.5).abs() < 1e-12);
    }

    #[test]
    fn golden_ratio_from_fermion_charge_equation() {
        // ln x + ln(1 + x) = 0  <=>  x (1 + x) = 1
        let f = |x: f64| x.ln() + x.ln_1p();
        let b = Bracket::enclose(1e-3, 1.0, f).unwrap();
        let x = solve_bracketed(f, b, &tol()).unwrap();
        assert!(f(x).abs() <= tol().root_abs);
        assert!((x - (5f64.sqrt() - 1.0) / 2.0).abs() < 1e-12);

        let fd = |x: f64| (x.ln() + x.ln_1p(), 1.0 / x + 1.0 / (1.0 + x));
        let b = Bracket::enclose(1e-3, 1.0, |x| fd(x).0).unwrap();
        let x = solve_bracketed_newton(fd, b, &tol()).unwrap();
        assert!(fd(x).0.abs() <= tol().root_abs);
        assert!((x - 0.6180339887498949).abs() < 1e-12);
    }

    #[test]
    fn half_from_tba_equation() {
        // ln y = ln(1 - y)
        let f = |y: f64| y.ln() - (-y).ln_1p();
        let b = Bracket::enclose(0.0, 1.0, f).unwrap();
        assert_eq!(b.f_lo_sign, Sign::Negative);
        assert_eq!(b.f_hi_sign, Sign::Positive);
        let y = solve_bracketed(f, b, &tol()).unwrap();
        assert!(f(y).abs() <= tol().root_abs);
        assert!((y - 0.5).abs() < 1e-12);
    }

    #[test]
    fn decreasing_functions_are_fine() {
        let f = |x: f64| 2.0 - x * x;
        let b = Bracket::enclose(0.0, 3.0, f).unwrap();
        let x = solve_bracketed(f, b, &tol()).unwrap();
        assert!(f(x).abs() <= tol().root_abs);
    }

    #[test]
    fn invalid_brackets_are_rejected() {
        let f = |x: f64| x * x + 1.0;
        assert!(matches!(Bracket::enclose(-1.0, 1.0, f), Err(Error::NoSignChange { .. })));
        assert!(Bracket::enclose(1.0, 0.0, |x| x - 0.5).is_err());
        assert!(Bracket::from_values(0.0, 1.0, f64::NAN, 1.0).is_err());
    }

    #[test]
    fn endpoint_root_is_returned_directly() {
        let b = Bracket::enclose(0.0, 1.0, |x| x).unwrap();
        assert_eq!(solve_bracketed(|x| x, b, &tol()).unwrap(), 0.0);
    }

    #[test]
    fn iteration_cap_reports_no_convergence() {
        let f = |x: f64| x - 0.3;
        let b = Bracket::enclose(0.0, 1.0, f).unwrap();
        let strict = Tolerances { max_iter: 1, root_abs: 1e-300, ..Default::default() };
        assert!(matches!(solve_bracketed(f, b, &strict), Err(Error::NoConvergence { .. })));
    }

    #[test]
    fn unreachable_residual_reports_no_convergence() {
        // Steep function: adjacent floats straddle the root with large residuals.
        let f = |x: f64| 1e20 * (x * x - 0.2);
        let b = Bracket::enclose(0.0, 1.0, f).unwrap();
        assert!(solve_bracketed(f, b, &tol()).is_err());
    }
}
