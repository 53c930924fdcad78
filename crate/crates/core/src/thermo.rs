//! Entropy density from the saddle-point equations, the closed Haldane-Wu
//! entropy, and finite-size state counting.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::genfun::{ln_eval, log_derivative, Statistics};
use crate::numerics::{log_gamma, solve_bracketed, xlogx, Bracket, Tolerances};

/// A solution of the saddle equations at filling `mu`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThermoPoint {
    pub mu: f64,
    /// Positive root of `x f'(x) = mu f(x)`.
    pub x: f64,
    /// Entropy density in nats.
    pub s: f64,
}

/// Maximal occupation of a single state: `G`, `1/g`, or `+∞` for bosons.
pub fn mu_max(stat: &Statistics) -> f64 {
    match *stat {
        Statistics::HaldaneWu { g } if g == 0.0 => f64::INFINITY,
        Statistics::HaldaneWu { g } => 1.0 / g,
        Statistics::Gentile { big_g } => big_g,
    }
}

/// Entropy density `s = ln f(x) - mu ln x` with `x` solving
/// `x f'(x) / f(x) = mu`, solved in `v = ln x` where the left side
/// increases from 0 to `mu_max`.
pub fn entropy_generic(stat: &Statistics, mu: f64, tol: &Tolerances) -> Result<ThermoPoint> {
    let top = mu_max(stat);
    if !(mu > 0.0 && mu < top) {
        return domain(format!("{stat}: filling must satisfy 0 < mu < {top}, got {mu}"));
    }
    let boson = matches!(*stat, Statistics::HaldaneWu { g } if g == 0.0);
    let excess = |v: f64| log_derivative(stat, v.exp(), tol).map(|d| d - mu);

    let mut lo = -1.0;
    while excess(lo)? >= 0.0 {
        lo *= 2.0;
        if lo < -1100.0 {
            return domain(format!("{stat}: no saddle point below mu = {mu}"));
        }
    }
    let mut hi = if boson { -0.5 } else { 1.0 };
    while excess(hi)? <= 0.0 {
        // bosons: x stays below 1, approach v = 0 from the left
        hi = if boson { 0.5 * hi } else { 2.0 * hi };
        if hi > 700.0 || hi == 0.0 {
            return domain(format!("{stat}: no saddle point above mu = {mu}"));
        }
    }
    let bracket = Bracket::from_values(lo, hi, excess(lo)?, excess(hi)?)?;
    let v = solve_bracketed(|v| excess(v).unwrap_or(f64::NAN), bracket, tol)?;
    let s = ln_eval(stat, v.exp(), tol)? - mu * v;
    Ok(ThermoPoint { mu, x: v.exp(), s })
}

/// Closed Haldane-Wu entropy
/// `(1+μ(1-g)) ln(1+μ(1-g)) - μ ln μ - (1-gμ) ln(1-gμ)`, including the
/// endpoints `μ = 0` and `μ = 1/g` where it vanishes.
pub fn entropy_closed_hw(g: f64, mu: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&g) {
        return domain(format!("Haldane-Wu parameter must satisfy 0 <= g <= 1, got {g}"));
    }
    let top = if g == 0.0 { f64::INFINITY } else { 1.0 / g };
    if !(mu >= 0.0 && mu <= top) || mu.is_infinite() {
        return domain(format!("filling must satisfy 0 <= mu <= {top}, got {mu}"));
    }
    let empty = (1.0 - g * mu).max(0.0);
    Ok(xlogx(1.0 + mu * (1.0 - g)) - xlogx(mu) - xlogx(empty))
}

/// Number of ways to place `n` particles in `N` states.
#[derive(Debug, Clone, PartialEq)]
pub enum Count {
    Exact(BigUint),
    /// Gamma-function extension of the factorial formula.
    Real(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CountResult {
    pub states: u64,
    pub particles: u64,
    pub count: Count,
}

impl CountResult {
    pub fn value(&self) -> f64 {
        match &self.count {
            Count::Exact(w) => w.to_f64().unwrap_or(f64::INFINITY),
            Count::Real(w) => *w,
        }
    }

    pub fn ln_value(&self) -> f64 {
        match &self.count {
            Count::Exact(w) => ln_biguint(w),
            Count::Real(w) => w.ln(),
        }
    }
}

pub(crate) fn ln_biguint(w: &BigUint) -> f64 {
    if w.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = w.bits();
    if bits < 1000 {
        return w.to_f64().expect("fits").ln();
    }
    let shift = bits - 64;
    let top = (w >> shift).to_f64().expect("64 bits");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `W(N, n)`.
///
/// Haldane-Wu reads the factorials of `(N + (1-g)n + g - 1)! / (n! (N - gn + g - 1)!)`
/// as gamma functions; the count is zero once `N - gn + g <= 0`. The fermion
/// and boson ends and integer-`G` Gentile counts are exact integers.
pub fn count_states(stat: &Statistics, states: u64, particles: u64) -> Result<CountResult> {
    if states == 0 {
        return domain("the number of states must be at least 1");
    }
    let (big_n, n) = (states as f64, particles as f64);
    let count = match *stat {
        Statistics::HaldaneWu { g } if g == 1.0 => Count::Exact(binomial(states, particles)),
        Statistics::HaldaneWu { g } if g == 0.0 => {
            Count::Exact(binomial(states + particles - 1, particles))
        }
        Statistics::HaldaneWu { g } => {
            let rest = big_n - g * n + g;
            if rest <= 0.0 {
                Count::Real(0.0)
            } else {
                let a = big_n + (1.0 - g) * n + g;
                Count::Real((log_gamma(a)? - log_gamma(n + 1.0)? - log_gamma(rest)?).exp())
            }
        }
        Statistics::Gentile { big_g } => {
            if !stat.is_integer_gentile() {
                return domain(format!("state counting needs integer G, got {big_g}"));
            }
            Count::Exact(gentile_count_exact(big_g as u64, states, particles))
        }
    };
    Ok(CountResult { states, particles, count })
}

/// Coefficient of `t^n` in `(1 + t + ... + t^G)^N` by repeated
/// multiplication, each step a sliding-window sum.
pub fn gentile_count_exact(big_g: u64, states: u64, particles: u64) -> BigUint {
    let n = particles as usize;
    let width = big_g as usize + 1;
    let mut poly = vec![BigUint::zero(); n + 1];
    poly[0] = BigUint::one();
    for _ in 0..states {
        let mut next = vec![BigUint::zero(); n + 1];
        let mut window = BigUint::zero();
        for k in 0..=n {
            window += &poly[k];
            if k >= width {
                window -= &poly[k - width];
            }
            next[k] = window.clone();
        }
        poly = next;
    }
    std::mem::take(&mut poly[n])
}

/// `ln W(N, n)` for integer-`G` Gentile statistics by floating-point
/// convolution with per-step rescaling. All terms are positive, so the
/// relative error grows only linearly in `N`.
pub fn gentile_ln_count(big_g: u64, states: u64, particles: u64) -> f64 {
    let n = particles as usize;
    if particles > big_g * states {
        return f64::NEG_INFINITY;
    }
    let width = big_g as usize + 1;
    let mut poly = vec![0.0f64; n + 1];
    poly[0] = 1.0;
    let mut log_scale = 0.0;
    for _ in 0..states {
        let next: Vec<f64> = (0..=n)
            .map(|k| poly[k.saturating_sub(width - 1)..=k].iter().sum())
            .collect();
        let peak = next.iter().cloned().fold(0.0, f64::max);
        log_scale += peak.ln();
        poly = next.into_iter().map(|c| c / peak).collect();
    }
    poly[n].ln() + log_scale
}

/// Extrapolates `a_N = (1/N) ln W(N, μN)` to `N → ∞` from three sizes,
/// eliminating the `ln N / N` and `1 / N` corrections.
pub fn extrapolate_entropy(samples: &[(f64, f64); 3]) -> f64 {
    // Solve [1, ln N / N, 1 / N] · (s, α, β) = a_N by Cramer's rule.
    let rows: Vec<[f64; 4]> = samples
        .iter()
        .map(|&(n, a)| [1.0, n.ln() / n, 1.0 / n, a])
        .collect();
    let det3 = |c0: usize, c1: usize, c2: usize| {
        let m = |r: usize, c: usize| rows[r][c];
        m(0, c0) * (m(1, c1) * m(2, c2) - m(1, c2) * m(2, c1))
            - m(0, c1) * (m(1, c0) * m(2, c2) - m(1, c2) * m(2, c0))
            + m(0, c2) * (m(1, c0) * m(2, c1) - m(1, c1) * m(2, c0))
    };
    det3(3, 1, 2) / det3(0, 1, 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn hw(g: f64) -> Statistics {
        Statistics::haldane_wu(g).unwrap()
    }

    #[test]
    fn mu_max_examples() {
        assert_eq!(mu_max(&Statistics::gentile(3.0).unwrap()), 3.0);
        assert_eq!(mu_max(&hw(0.5)), 2.0);
        assert_eq!(mu_max(&hw(1.0)), 1.0);
        assert_eq!(mu_max(&hw(0.0)), f64::INFINITY);
    }

    #[test]
    fn generic_entropy_examples() {
        let p = entropy_generic(&hw(1.0), 0.5, &tol()).unwrap();
        assert!((p.s - LN_2).abs() < 1e-12);
        assert!((p.x - 1.0).abs() < 1e-10);
        let p = entropy_generic(&hw(0.0), 1.0, &tol()).unwrap();
        assert!((p.s - 2.0 * LN_2).abs() < 1e-12);
        assert!((p.x - 0.5).abs() < 1e-10);
        let p = entropy_generic(&Statistics::gentile(1.0).unwrap(), 0.5, &tol()).unwrap();
        assert!((p.s - LN_2).abs() < 1e-12);
        let p = entropy_generic(&Statistics::gentile(2.0).unwrap(), 1.0, &tol()).unwrap();
        assert!((p.s - 3f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn generic_entropy_domain() {
        assert!(entropy_generic(&hw(0.5), 0.0, &tol()).is_err());
        assert!(entropy_generic(&hw(0.5), 2.0, &tol()).is_err());
        assert!(entropy_generic(&Statistics::gentile(2.0).unwrap(), 2.5, &tol()).is_err());
    }

    #[test]
    fn closed_entropy_examples() {
        assert!((entropy_closed_hw(1.0, 0.5).unwrap() - LN_2).abs() < 1e-15);
        assert_eq!(entropy_closed_hw(0.5, 2.0).unwrap(), xlogx(2.0) - xlogx(2.0));
        assert!(entropy_closed_hw(0.5, 2.0).unwrap().abs() < 1e-15);
        assert!(entropy_closed_hw(0.5, 2.0 - 1e-12).unwrap().abs() < 1e-9);
        let expected = 1.5 * 1.5f64.ln() - 0.5 * 0.5f64.ln();
        assert!((entropy_closed_hw(0.5, 1.0).unwrap() - expected).abs() < 1e-15);
        assert!((entropy_closed_hw(0.5, 1.0).unwrap() - 0.954_771_252_4).abs() < 1e-10);
        assert!(entropy_closed_hw(0.5, 2.1).is_err());
        assert!(entropy_closed_hw(0.5, -0.1).is_err());
        assert_eq!(entropy_closed_hw(0.3, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn closed_matches_generic() {
        for i in 1..=19 {
            let g = i as f64 / 20.0;
            for j in 1..=19 {
                let mu = j as f64 / 20.0 / g;
                let generic = entropy_generic(&hw(g), mu, &tol()).unwrap();
                let closed = entropy_closed_hw(g, mu).unwrap();
                assert!((generic.s - closed).abs() <= 1e-8, "g={g} mu={mu}");
            }
        }
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_states(&hw(1.0), 4, 2).unwrap().value(), 6.0);
        assert_eq!(count_states(&hw(0.0), 3, 2).unwrap().value(), 6.0);
        assert_eq!(count_states(&Statistics::gentile(2.0).unwrap(), 2, 2).unwrap().value(), 3.0);
        let w = count_states(&hw(0.5), 3, 2).unwrap().value();
        assert!((w - 4.375).abs() < 1e-12);
        assert_eq!(count_states(&hw(0.7), 5, 0).unwrap().value(), 1.0);
        assert_eq!(count_states(&hw(1.0), 4, 5).unwrap().value(), 0.0);
        // N - g n + g <= 0
        assert_eq!(count_states(&hw(0.5), 2, 6).unwrap().value(), 0.0);
    }

    #[test]
    fn count_errors() {
        assert!(count_states(&hw(0.5), 0, 1).is_err());
        assert!(count_states(&Statistics::gentile(1.5).unwrap(), 3, 1).is_err());
    }

    #[test]
    fn fractional_counts_interpolate_integer_ends() {
        // g -> 1 and g -> 0 approach the binomial counts continuously
        let near_fermion = count_states(&hw(1.0 - 1e-9), 6, 3).unwrap().value();
        assert!((near_fermion - 20.0).abs() < 1e-6);
        let near_boson = count_states(&hw(1e-9), 6, 3).unwrap().value();
        assert!((near_boson - 56.0).abs() < 1e-6);
    }

    #[test]
    fn log_space_count_matches_exact() {
        for (big_g, states, n) in [(2u64, 40u64, 40u64), (3, 25, 30), (1, 30, 12), (4, 10, 41)] {
            let exact = gentile_count_exact(big_g, states, n);
            let ln_exact = ln_biguint(&exact);
            let ln_float = gentile_ln_count(big_g, states, n);
            if exact.is_zero() {
                assert_eq!(ln_float, f64::NEG_INFINITY);
            } else {
                assert!((ln_exact - ln_float).abs() < 1e-12 * ln_exact.abs().max(1.0));
            }
        }
    }

    #[test]
    fn extrapolation_recovers_model_limit() {
        let model = |n: f64| 1.25 - 0.5 * n.ln() / n + 0.3 / n;
        let s = extrapolate_entropy(&[(100.0, model(100.0)), (200.0, model(200.0)), (400.0, model(400.0))]);
        assert!((s - 1.25).abs() < 1e-12);
    }
}
