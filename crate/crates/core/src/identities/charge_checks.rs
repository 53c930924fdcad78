//! Central charge: the two routes against each other, dependence on
//! `ν = g + Φ` only, rational values and anchors.

use super::{Tracker, VerificationReport};
use crate::charge::{charge_both, charge_closed, charge_integral, ChargeProblem};
use crate::error::Result;
use crate::genfun::Statistics;
use crate::numerics::Tolerances;

pub const CLOSED_TOL: f64 = 1e-10;
pub const ANCHOR_TOL: f64 = 1e-9;

fn hw(g: f64, phi: f64) -> Result<ChargeProblem> {
    ChargeProblem::new(Statistics::haldane_wu(g)?, phi)
}

/// Both routes over the `(g, Φ)` grid, with the intermediate value
/// `1 - 1/f(x0)` against `y0`.
pub fn verify_charge_equivalence(
    g_grid: &[f64],
    phi_grid: &[f64],
    identity_tol: f64,
    tol: &Tolerances,
) -> Result<Vec<VerificationReport>> {
    let mut routes = Tracker::residuals();
    let mut middle = Tracker::residuals();
    for &g in g_grid {
        for &phi in phi_grid {
            let r = charge_both(&hw(g, phi)?, tol)?;
            routes.push(r.residual, || format!("g={g}, Φ={phi}"));
            if let (Some(y0), Some(y)) = (r.y0, r.y_from_x0) {
                middle.push(y - y0, || format!("g={g}, Φ={phi}"));
            }
        }
    }
    let desc = format!("{} g values × Φ ∈ {phi_grid:?}", g_grid.len());
    Ok(vec![
        VerificationReport::identity("charge_equivalence", desc.clone(), routes, identity_tol),
        VerificationReport::identity("charge_intermediate_y", desc, middle, CLOSED_TOL),
    ])
}

/// `c = 2/5, 1/2, 3/5` at `ν = 2, 1, 1/2` for every split `ν = g + Φ`
/// with `g` on the grid.
pub fn verify_rational_values(g_grid: &[f64], tol: &Tolerances) -> Result<VerificationReport> {
    let mut worst = Tracker::residuals();
    for (nu, c) in [(2.0, 0.4), (1.0, 0.5), (0.5, 0.6)] {
        for &g in g_grid.iter().filter(|&&g| g <= nu) {
            let value = charge_closed(&hw(g, nu - g)?, tol)?;
            worst.push(value - c, || format!("ν={nu}, g={g}"));
        }
    }
    let desc = format!("ν ∈ {{2, 1, 1/2}}, g from {} grid values with g <= ν", g_grid.len());
    Ok(VerificationReport::identity("charge_rational_values", desc, worst, CLOSED_TOL))
}

/// Spread of each route over the splits of fixed `ν`: the closed route to
/// 1e-10, the integral route to the identity tolerance.
pub fn verify_nu_invariance(
    nus: &[f64],
    g_grid: &[f64],
    identity_tol: f64,
    tol: &Tolerances,
) -> Result<Vec<VerificationReport>> {
    let mut closed = Tracker::residuals();
    let mut integral = Tracker::residuals();
    let spread = |v: &[f64]| {
        v.iter().cloned().fold(f64::NEG_INFINITY, f64::max) - v.iter().cloned().fold(f64::INFINITY, f64::min)
    };
    for &nu in nus {
        let mut by_closed = Vec::new();
        let mut by_integral = Vec::new();
        for &g in g_grid.iter().filter(|&&g| g <= nu) {
            let p = hw(g, nu - g)?;
            by_closed.push(charge_closed(&p, tol)?);
            by_integral.push(charge_integral(&p, tol)?);
        }
        if by_closed.len() > 1 {
            closed.push(spread(&by_closed), || format!("ν={nu}"));
            integral.push(spread(&by_integral), || format!("ν={nu}"));
        }
    }
    let desc = format!("ν ∈ {nus:?}, Φ = ν - g over {} grid values", g_grid.len());
    Ok(vec![
        VerificationReport::identity("charge_nu_invariance", desc.clone(), closed, CLOSED_TOL),
        VerificationReport::identity("charge_nu_invariance_integral", desc, integral, identity_tol),
    ])
}

/// `c` strictly decreasing in `ν` on `ν = 0.1, 0.2, ..., 5`.
pub fn verify_monotone_in_nu(tol: &Tolerances) -> Result<VerificationReport> {
    let nus: Vec<f64> = (1..=50).map(|k| k as f64 / 10.0).collect();
    let cs = nus
        .iter()
        .map(|&nu| charge_closed(&hw(nu.min(1.0), (nu - 1.0).max(0.0))?, tol))
        .collect::<Result<Vec<f64>>>()?;
    let mut drop = Tracker::margins();
    for (i, w) in cs.windows(2).enumerate() {
        drop.push(w[0] - w[1], || format!("ν={} -> {}", nus[i], nus[i + 1]));
    }
    Ok(VerificationReport::inequality("charge_monotone_in_nu", "ν = 0.1, 0.2, ..., 5", drop))
}

/// Boson 1, fermion 1/2 and Gentile `G = 1` 1/2, by both routes.
pub fn verify_anchors(tol: &Tolerances) -> Result<VerificationReport> {
    let mut worst = Tracker::residuals();
    let cases = [
        ("boson", ChargeProblem::new(Statistics::boson(), 0.0)?, 1.0),
        ("fermion", ChargeProblem::new(Statistics::fermion(), 0.0)?, 0.5),
        ("Gentile G=1", ChargeProblem::new(Statistics::gentile(1.0)?, 0.0)?, 0.5),
    ];
    for (label, p, c) in cases {
        let r = charge_both(&p, tol)?;
        worst.push(r.c_integral - c, || format!("{label}, integral"));
        worst.push(r.c_closed - c, || format!("{label}, closed"));
    }
    Ok(VerificationReport::identity("charge_anchors", "Φ=0: boson, fermion, Gentile G=1", worst, ANCHOR_TOL))
}

/// At `Φ = 0` the Gentile charge is `G/(G+1)`: checked exactly on
/// `G = 1, 2, 4, ..., 64`, together with strict growth and `c̃(64) > 0.98`.
pub fn verify_gentile_growth(tol: &Tolerances) -> Result<Vec<VerificationReport>> {
    let gs = [1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0];
    let cs = gs
        .iter()
        .map(|&big_g| charge_closed(&ChargeProblem::new(Statistics::gentile(big_g)?, 0.0)?, tol))
        .collect::<Result<Vec<f64>>>()?;
    let mut exact = Tracker::residuals();
    for (&big_g, &c) in gs.iter().zip(&cs) {
        exact.push(c - big_g / (big_g + 1.0), || format!("G={big_g}"));
    }
    let mut growth = Tracker::margins();
    for (i, w) in cs.windows(2).enumerate() {
        growth.push(w[1] - w[0], || format!("G={} -> {}", gs[i], gs[i + 1]));
    }
    let last = cs[cs.len() - 1];
    growth.push(last - 0.98, || format!("c̃(64) = {last:.10} against 0.98"));
    let desc = format!("Φ=0, G ∈ {gs:?}");
    Ok(vec![
        VerificationReport::identity("charge_gentile_values", desc.clone(), exact, CLOSED_TOL),
        VerificationReport::inequality("charge_gentile_growth", desc, growth),
    ])
}
