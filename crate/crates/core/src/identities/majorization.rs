//! Gentile statistics with `G` against Haldane-Wu with `g = 1/G`:
//! generating functions, entropies, central charges and the dilogarithm
//! inequality behind them.

use super::{Tracker, VerificationReport};
use crate::charge::{charge_closed, solve_x0, solve_y0, ChargeProblem};
use crate::error::{domain, Error, Result};
use crate::genfun::{eval, hw_eval_extended, Statistics};
use crate::numerics::{rogers_dilog, Tolerances};
use crate::thermo::{entropy_closed_hw, entropy_generic};

/// Tolerance of the equality endpoints of the dilogarithm inequality.
pub const ENDPOINT_TOL: f64 = 1e-7;

fn skip_fermion(big_g: f64) -> Result<()> {
    if big_g == 1.0 {
        return Err(Error::Skipped("G = 1 is the fermion on both sides".into()));
    }
    Ok(())
}

/// `min_t F_G(t) - f_{1/G}(t)` over `t_grid`, for `G > 1`.
pub fn verify_majorization(big_g: f64, t_grid: &[f64], tol: &Tolerances) -> Result<VerificationReport> {
    skip_fermion(big_g)?;
    if !(big_g > 1.0) {
        return domain(format!("majorization needs G > 1, got {big_g}"));
    }
    let gentile = Statistics::gentile(big_g)?;
    let hw = Statistics::haldane_wu(1.0 / big_g)?;
    let mut margin = Tracker::margins();
    for &t in t_grid.iter().filter(|&&t| t > 0.0) {
        let m = eval(&gentile, t, tol)? - eval(&hw, t, tol)?;
        margin.push(m, || format!("G={big_g}, t={t}"));
    }
    let grid = format!("G={big_g}, {} t values in ({:.3}, {:.3}]", margin.points(), lo(t_grid), hi(t_grid));
    Ok(VerificationReport::inequality("majorization", grid, margin))
}

/// `min_t f_{1/G}(t) - F_G(t)` over `t_grid`, for `0 < G < 1` where the
/// Haldane-Wu parameter exceeds 1.
pub fn verify_reverse_majorization(
    big_g: f64,
    t_grid: &[f64],
    tol: &Tolerances,
) -> Result<VerificationReport> {
    skip_fermion(big_g)?;
    if !(big_g > 0.0 && big_g < 1.0) {
        return domain(format!("reverse majorization needs 0 < G < 1, got {big_g}"));
    }
    let gentile = Statistics::gentile(big_g)?;
    let mut margin = Tracker::margins();
    for &t in t_grid.iter().filter(|&&t| t > 0.0) {
        let m = hw_eval_extended(1.0 / big_g, t, tol)? - eval(&gentile, t, tol)?;
        margin.push(m, || format!("G={big_g}, t={t}"));
    }
    let grid = format!("G={big_g}, {} t values in ({:.3}, {:.3}]", margin.points(), lo(t_grid), hi(t_grid));
    Ok(VerificationReport::inequality("reverse_majorization", grid, margin))
}

/// The reversed margin at `t` must shrink as `G` increases toward 1.
pub fn verify_reverse_majorization_trend(
    big_gs: &[f64],
    t: f64,
    tol: &Tolerances,
) -> Result<VerificationReport> {
    let margins = big_gs
        .iter()
        .map(|&big_g| {
            Ok(hw_eval_extended(1.0 / big_g, t, tol)? - eval(&Statistics::gentile(big_g)?, t, tol)?)
        })
        .collect::<Result<Vec<f64>>>()?;
    let mut drop = Tracker::margins();
    for (i, w) in margins.windows(2).enumerate() {
        drop.push(w[0] - w[1], || format!("G={} -> {}", big_gs[i], big_gs[i + 1]));
    }
    let grid = format!("t={t}, increasing G ∈ {big_gs:?}");
    Ok(VerificationReport::inequality("reverse_majorization_trend", grid, drop))
}

/// `f_g(1) = 1/(1 - y0)` with `y0 = (1 - y0)^g`.
pub fn verify_t1_anchor(g_grid: &[f64], identity_tol: f64, tol: &Tolerances) -> Result<VerificationReport> {
    let mut worst = Tracker::residuals();
    for &g in g_grid.iter().filter(|&&g| g > 0.0 && g <= 1.0) {
        let y0 = solve_y0(g, tol)?;
        let f1 = eval(&Statistics::haldane_wu(g)?, 1.0, tol)?;
        worst.push((f1 * (1.0 - y0) - 1.0).abs(), || format!("g={g}"));
    }
    let grid = format!("{} g values, relative residual of f_g(1)", worst.points());
    Ok(VerificationReport::identity("majorization_t1_anchor", grid, worst, identity_tol))
}

/// Entropy and central-charge majorization for `G > 1`: the Gentile
/// entropy from the saddle equations against the closed Haldane-Wu
/// entropy at `g = 1/G`, and both closed central charges.
pub fn verify_entropy_charge_majorization(
    big_g: f64,
    mu_grid: &[f64],
    phi_grid: &[f64],
    tol: &Tolerances,
) -> Result<Vec<VerificationReport>> {
    skip_fermion(big_g)?;
    if !(big_g > 1.0) {
        return domain(format!("entropy majorization needs G > 1, got {big_g}"));
    }
    let g = 1.0 / big_g;
    let gentile = Statistics::gentile(big_g)?;
    let hw = Statistics::haldane_wu(g)?;

    let mut entropy = Tracker::margins();
    for &mu in mu_grid.iter().filter(|&&mu| mu > 0.0 && mu < big_g) {
        let m = entropy_generic(&gentile, mu, tol)?.s - entropy_closed_hw(g, mu)?;
        entropy.push(m, || format!("G={big_g}, μ={mu}"));
    }
    let mut charge = Tracker::margins();
    for &phi in phi_grid {
        let m = charge_closed(&ChargeProblem::new(gentile, phi)?, tol)?
            - charge_closed(&ChargeProblem::new(hw, phi)?, tol)?;
        charge.push(m, || format!("G={big_g}, Φ={phi}"));
    }
    Ok(vec![
        VerificationReport::inequality(
            "entropy_majorization",
            format!("G={big_g}, {} μ values in (0, G)", entropy.points()),
            entropy,
        ),
        VerificationReport::inequality(
            "charge_majorization",
            format!("G={big_g}, Φ ∈ {phi_grid:?}"),
            charge,
        ),
    ])
}

/// `L(x0) - (g/(1+g)) L(x0^{1+1/g}) - L(y0)` where `x0` belongs to
/// Gentile statistics with `G = 1/g` and `y0` solves
/// `ln y = (g + Φ) ln(1 - y)`.
pub fn dilog_margin(g: f64, phi: f64, tol: &Tolerances) -> Result<f64> {
    let x0 = solve_x0(&ChargeProblem::new(Statistics::gentile(1.0 / g)?, phi)?, tol)?;
    let y0 = solve_y0(g + phi, tol)?;
    let top = ((1.0 + 1.0 / g) * x0.ln()).exp();
    Ok(rogers_dilog(x0)? - g / (1.0 + g) * rogers_dilog(top)? - rogers_dilog(y0)?)
}

/// Strict positivity of [`dilog_margin`] on the open grid, plus the two
/// equality endpoints: `g = 1` and `g → 0`. The boson end is sampled at
/// `g = 1e-8`, except at `Φ = 0` where the margin decays only like
/// `g ln(1/g)` and `g = 1e-10` is used.
pub fn verify_dilog_inequality(
    g_grid: &[f64],
    phi_grid: &[f64],
    tol: &Tolerances,
) -> Result<Vec<VerificationReport>> {
    let mut strict = Tracker::margins();
    for &g in g_grid.iter().filter(|&&g| g > 0.0 && g < 1.0) {
        for &phi in phi_grid {
            strict.push(dilog_margin(g, phi, tol)?, || format!("g={g}, Φ={phi}"));
        }
    }
    let mut abel = Tracker::residuals();
    let mut boson = Tracker::residuals();
    for &phi in phi_grid {
        abel.push(dilog_margin(1.0, phi, tol)?, || format!("Φ={phi}"));
        let g = if phi == 0.0 { 1e-10 } else { 1e-8 };
        boson.push(dilog_margin(g, phi, tol)?, || format!("g={g}, Φ={phi}"));
    }
    Ok(vec![
        VerificationReport::inequality(
            "dilog_inequality",
            format!("{} g values in (0,1) × Φ ∈ {phi_grid:?}", strict.points() / phi_grid.len().max(1)),
            strict,
        ),
        VerificationReport::identity(
            "dilog_inequality_abel_endpoint",
            format!("g=1, Φ ∈ {phi_grid:?}"),
            abel,
            ENDPOINT_TOL,
        ),
        VerificationReport::identity(
            "dilog_inequality_boson_endpoint",
            format!("g=1e-8 (g=1e-10 at Φ=0), Φ ∈ {phi_grid:?}"),
            boson,
            ENDPOINT_TOL,
        ),
    ])
}

fn lo(v: &[f64]) -> f64 {
    v.iter().cloned().fold(f64::INFINITY, f64::min)
}

fn hi(v: &[f64]) -> f64 {
    v.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
}
