//! Series expansions of the Haldane-Wu generating function checked
//! against the implicit solver, against convolution, and against each
//! other.

use super::{Tracker, VerificationReport};
use crate::error::Result;
use crate::genfun::{
    coefficients, duality_residual, eval, formal, power_coefficients_real, radius_hw,
    series_value_auto, SeriesKind, Statistics,
};
use crate::numerics::{log_gamma, ln_factorial, xlogx, Tolerances};

pub const SOLVER_TOL: f64 = 1e-9;
pub const CONVOLUTION_TOL: f64 = 1e-10;
pub const DUALITY_TOL: f64 = 1e-10;
pub const IMPLICIT_TOL: f64 = 1e-10;
pub const RATIO_TOL: f64 = 0.01;

/// `t = k t0 / 10` for `k = 1..=9`.
fn radius_fractions(g: f64) -> impl Iterator<Item = f64> {
    let r = radius_hw(g);
    (1..=9).map(move |k| k as f64 * 0.1 * r)
}

/// `|a_n - b_n| / scale_n` over `n <= n_max`.
fn push_relative(worst: &mut Tracker, a: &[f64], b: &[f64], scale: &[f64], label: impl Fn(usize) -> String) {
    for n in 0..a.len().min(b.len()) {
        worst.push((a[n] - b[n]).abs() / scale[n].max(f64::MIN_POSITIVE), || label(n));
    }
}

fn abs_all(a: &[f64]) -> Vec<f64> {
    a.iter().map(|x| x.abs()).collect()
}

/// `ln |w̃_{n+1} / w̃_n|` with `w̃_n = Γ((1-g) n) Γ(g n) / (π n!)`.
fn log_ratio(g: f64, n: usize) -> Result<f64> {
    let ln_w = |n: usize| -> Result<f64> {
        let nf = n as f64;
        Ok(log_gamma((1.0 - g) * nf)? + log_gamma(g * nf)? - ln_factorial(n as u64))
    };
    Ok(ln_w(n + 1)? - ln_w(n)?)
}

/// Reports for the series of `f`, `ln f`, `f^m` and `(f-1)^m`, the
/// duality `f_g(t) f_{1-g}(-t) = 1`, the bound `(1-y)^g < 1 - g y`, the
/// growth rate of the log coefficients, and the unproven series of `f^m`
/// for non-integer `m` (recorded, not asserted).
pub fn verify_series_proposition(
    g_grid: &[f64],
    m_list: &[u32],
    n_max: usize,
    tol: &Tolerances,
) -> Result<Vec<VerificationReport>> {
    let gs: Vec<f64> = g_grid.iter().cloned().filter(|&g| g > 0.0 && g < 1.0).collect();
    let mut solver = Tracker::residuals();
    let mut log_pointwise = Tracker::residuals();
    let mut power = Tracker::residuals();
    let mut h_power = Tracker::residuals();
    let mut recursion = Tracker::residuals();
    let mut duality = Tracker::residuals();
    let mut ratio = Tracker::residuals();
    let mut fractional = Tracker::residuals();

    for &g in &gs {
        let stat = Statistics::haldane_wu(g)?;
        for t in radius_fractions(g) {
            let series = series_value_auto(&stat, SeriesKind::F, t, tol)?;
            solver.push(series - eval(&stat, t, tol)?, || format!("g={g}, t={t:.4}"));
            let log_series = series_value_auto(&stat, SeriesKind::LogF, t, tol)?;
            log_pointwise.push(log_series.exp() - series, || format!("g={g}, t={t:.4}"));
        }
        let dual_radius = radius_hw(g).min(radius_hw(1.0 - g));
        for k in 1..=9 {
            for sign in [-1.0, 1.0] {
                let t = sign * 0.1 * k as f64 * dual_radius;
                duality.push(duality_residual(g, t, tol)?, || format!("g={g}, t={t:.4}"));
            }
        }

        let f = coefficients(&stat, SeriesKind::F, n_max)?.coeffs;
        let log_f = coefficients(&stat, SeriesKind::LogF, n_max)?.coeffs;
        let h: Vec<f64> = f.iter().enumerate().map(|(n, &c)| if n == 0 { 0.0 } else { c }).collect();
        for &m in m_list {
            let closed = coefficients(&stat, SeriesKind::FPow(m as f64), n_max)?.coeffs;
            let conv = formal::pow(&f, m, n_max);
            let scale = formal::pow(&abs_all(&f), m, n_max);
            push_relative(&mut power, &closed, &conv, &scale, |n| format!("g={g}, m={m}, n={n}"));
            if m >= 1 {
                let closed = coefficients(&stat, SeriesKind::HPow(m), n_max)?.coeffs;
                let conv = formal::pow(&h, m, n_max);
                let scale = formal::pow(&abs_all(&h), m, n_max);
                push_relative(&mut h_power, &closed, &conv, &scale, |n| format!("g={g}, m={m}, n={n}"));
            }
        }

        // exp of the log series reproduces f; exp((1-g) ln f) = f^{1-g}
        // shifted by one index reproduces f itself.
        let exp_log = formal::exp(&log_f, n_max)?;
        let exp_scale = formal::exp(&abs_all(&log_f), n_max)?;
        push_relative(&mut recursion, &exp_log, &f, &exp_scale, |n| format!("g={g}, exp ln f, n={n}"));
        let scaled: Vec<f64> = log_f.iter().map(|c| (1.0 - g) * c).collect();
        let f_pow = formal::exp(&scaled, n_max)?;
        let pow_scale = formal::exp(&abs_all(&scaled), n_max)?;
        push_relative(&mut recursion, &f_pow[..n_max], &f[1..], &pow_scale[..n_max], |n| {
            format!("g={g}, f^(1-g) shift, n={n}")
        });

        let target = xlogx(g) + xlogx(1.0 - g);
        let (d400, d800) = ((log_ratio(g, 400)? - target).abs(), (log_ratio(g, 800)? - target).abs());
        let dev = if d800 < d400 { d800 } else { f64::INFINITY };
        ratio.push(dev, || format!("g={g}: n=400 {d400:.2e}, n=800 {d800:.2e}"));

        let t = 0.5 * radius_hw(g);
        let ln_f = eval(&stat, t, tol)?.ln();
        for m in [0.5, 1.5, -0.5, 1.0 - g] {
            let c = power_coefficients_real(g, m, 200);
            fractional.push(formal::eval(&c, t) - (m * ln_f).exp(), || format!("g={g}, m={m}"));
        }
    }

    let mut bound = Tracker::margins();
    for &g in &gs {
        for k in 1..=20 {
            let y = k as f64 / 20.0;
            let m = -(g * (-y).ln_1p()).exp_m1() - g * y;
            bound.push(m, || format!("g={g}, y={y}"));
        }
    }

    let g_desc = format!("{} g values in (0,1)", gs.len());
    let pts = format!("{g_desc}, t = k t0/10 for k = 1..9");
    let conv = format!("{g_desc}, m ∈ {m_list:?}, n <= {n_max}, relative to the |·| convolution");
    Ok(vec![
        VerificationReport::identity("series_solver_agreement", pts.clone(), solver, SOLVER_TOL),
        VerificationReport::identity("series_log_consistency", pts, log_pointwise, SOLVER_TOL),
        VerificationReport::identity("series_power_convolution", conv.clone(), power, CONVOLUTION_TOL),
        VerificationReport::identity("series_h_power_convolution", conv, h_power, CONVOLUTION_TOL),
        VerificationReport::identity(
            "series_recursion",
            format!("{g_desc}, formal exp of ln f and (1-g) ln f, n <= {n_max}"),
            recursion,
            CONVOLUTION_TOL,
        ),
        VerificationReport::identity(
            "series_duality",
            format!("{g_desc}, |t| = k min(t0(g), t0(1-g))/10 for k = 1..9, both signs"),
            duality,
            DUALITY_TOL,
        ),
        VerificationReport::inequality(
            "series_bound_yi",
            format!("{g_desc} × y ∈ {{0.05, ..., 1}}: 1 - g y - (1-y)^g"),
            bound,
        ),
        VerificationReport::identity(
            "series_ratio_limit",
            format!("{g_desc}: log coefficient growth at n = 800, decreasing from n = 400"),
            ratio,
            RATIO_TOL,
        ),
        VerificationReport::observation(
            "series_fractional_power",
            format!("{g_desc}, m ∈ {{0.5, 1.5, -0.5, 1-g}}, 200 terms at t = t0/2"),
            fractional,
        ),
    ])
}

/// `1/g + t^{1/g} - f` rewritten through `t = f^g (1 - 1/f)` as
/// `f [(1 - ε)^{1/g} - 1 + ε/g]` with `ε = 1/f`, summed as a binomial
/// series for small `ε` where the direct difference cancels completely.
fn upper_bound_margin(g: f64, f: f64) -> f64 {
    let (a, eps) = (1.0 / g, 1.0 / f);
    let m = if eps >= 0.1 {
        (a * (-eps).ln_1p()).exp() - 1.0 + a * eps
    } else {
        let mut term = a * (a - 1.0) / 2.0 * eps * eps;
        let mut sum = term;
        for k in 3..200 {
            term *= -(a - (k - 1) as f64) / k as f64 * eps;
            sum += term;
            if term.abs() <= 1e-17 * sum.abs() {
                break;
            }
        }
        sum
    };
    f * m
}

/// The implicit equation residual relative to `f`, monotonicity in `t`,
/// and the upper bound `f < 1/g + t^{1/g}`.
pub fn verify_generating_functions(
    g_grid: &[f64],
    t_grid: &[f64],
    tol: &Tolerances,
) -> Result<Vec<VerificationReport>> {
    let mut residual = Tracker::residuals();
    let mut monotone = Tracker::margins();
    let mut bound = Tracker::margins();
    let mut sorted = t_grid.to_vec();
    sorted.sort_by(f64::total_cmp);
    for &g in g_grid.iter().filter(|&&g| (0.0..=1.0).contains(&g)) {
        let stat = Statistics::haldane_wu(g)?;
        let mut prev = 1.0;
        for &t in sorted.iter().filter(|&&t| t > 0.0 && (g > 0.0 || t < 1.0)) {
            let f = eval(&stat, t, tol)?;
            let r = (f - 1.0 - t * f.powf(1.0 - g)) / f;
            residual.push(r, || format!("g={g}, t={t}"));
            monotone.push(f - prev, || format!("g={g}, t={t}"));
            prev = f;
            if g > 0.0 && g < 1.0 {
                bound.push(upper_bound_margin(g, f), || format!("g={g}, t={t}"));
            }
        }
    }
    let desc = format!("{} g values in [0,1] × {} t values", g_grid.len(), t_grid.len());
    Ok(vec![
        VerificationReport::identity("genfun_implicit_residual", desc.clone(), residual, IMPLICIT_TOL),
        VerificationReport::inequality("genfun_monotone", desc.clone(), monotone),
        VerificationReport::inequality("genfun_upper_bound", desc, bound),
    ])
}

#[cfg(test)]
mod tests {
    use super::super::{default_t_grid, linspace};
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn proposition_reports_pass() {
        let grid = linspace(0.1, 0.9, 9);
        let reports = verify_series_proposition(&grid, &[2, 3, 4, 5, 6], 40, &tol()).unwrap();
        assert_eq!(reports.len(), 9);
        for r in &reports {
            assert!(r.passed, "{r:?}");
            assert!(r.is_consistent());
        }
    }

    #[test]
    fn ratio_at_half() {
        let d = (log_ratio(0.5, 800).unwrap() + std::f64::consts::LN_2).abs();
        assert!(d < 0.01, "{d}");
    }

    #[test]
    fn bound_margin_forms_agree() {
        let tol = tol();
        for &(g, t) in &[(0.5, 1.0), (0.3, 2.0), (0.8, 0.5), (0.1, 1.5)] {
            let f = eval(&Statistics::haldane_wu(g).unwrap(), t, &tol).unwrap();
            let direct = 1.0 / g + t.powf(1.0 / g) - f;
            let m = upper_bound_margin(g, f);
            assert!((m - direct).abs() < 1e-9 * f, "g={g} t={t}: {m} vs {direct}");
        }
    }

    #[test]
    fn yi_example() {
        let (g, y) = (0.25f64, 0.5f64);
        assert!(((1.0 - y).powf(g) - 0.8409).abs() < 1e-4);
        assert!((1.0 - y).powf(g) < 1.0 - g * y);
    }

    #[test]
    fn generating_function_reports() {
        let gs: Vec<f64> = (0..=20).map(|k| k as f64 / 20.0).collect();
        for r in verify_generating_functions(&gs, &default_t_grid(), &tol()).unwrap() {
            assert!(r.passed, "{r:?}");
        }
    }
}
