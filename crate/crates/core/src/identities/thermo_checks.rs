//! Entropy: closed form against the saddle equations, Legendre structure,
//! concavity, exact finite-size counts and the large-N limit.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Tracker, VerificationReport};
use crate::error::Result;
use crate::genfun::{eval, Statistics};
use crate::numerics::Tolerances;
use crate::thermo::{
    count_states, entropy_closed_hw, entropy_generic, extrapolate_entropy, gentile_ln_count, mu_max,
    Count,
};

pub const LEGENDRE_TOL: f64 = 1e-5;
pub const ASYMPTOTIC_TOL: f64 = 0.01;
pub const EXTRAPOLATION_TOL: f64 = 1e-4;

/// `k mu_max / 20` for `k = 1..=19`.
fn mu_fractions(stat: &Statistics) -> Vec<f64> {
    let top = mu_max(stat);
    (1..=19).map(|k| k as f64 * top / 20.0).collect()
}

fn entropy_of(stat: &Statistics, mu: f64, tol: &Tolerances) -> Result<f64> {
    match *stat {
        Statistics::HaldaneWu { g } if g > 0.0 => entropy_closed_hw(g, mu),
        _ => Ok(entropy_generic(stat, mu, tol)?.s),
    }
}

/// Closed against generic entropy, the saddle identity
/// `f(x(μ)) = (1 + (1-g)μ)/(1 - gμ)`, the Legendre relation
/// `ln f(x) = s - μ ds/dμ` with a central difference, and strict concavity.
pub fn verify_entropy(
    g_grid: &[f64],
    gentile_grid: &[f64],
    identity_tol: f64,
    tol: &Tolerances,
) -> Result<Vec<VerificationReport>> {
    let mut closed = Tracker::residuals();
    let mut saddle = Tracker::residuals();
    let mut legendre = Tracker::residuals();
    let mut concave = Tracker::margins();

    let mut stats = Vec::new();
    for &g in g_grid.iter().filter(|&&g| g > 0.0 && g <= 1.0) {
        stats.push(Statistics::haldane_wu(g)?);
    }
    for &big_g in gentile_grid {
        stats.push(Statistics::gentile(big_g)?);
    }

    for stat in &stats {
        let h = 1e-4 * mu_max(stat);
        for mu in mu_fractions(stat) {
            let p = entropy_generic(stat, mu, tol)?;
            let f = eval(stat, p.x, tol)?;
            if let Statistics::HaldaneWu { g } = *stat {
                closed.push(p.s - entropy_closed_hw(g, mu)?, || format!("g={g}, μ={mu}"));
                let expected = (1.0 + (1.0 - g) * mu) / (1.0 - g * mu);
                saddle.push((f - expected) / expected, || format!("g={g}, μ={mu}"));
            }
            let s = entropy_of(stat, mu, tol)?;
            let (s_up, s_down) = (entropy_of(stat, mu + h, tol)?, entropy_of(stat, mu - h, tol)?);
            let slope = (s_up - s_down) / (2.0 * h);
            legendre.push(((s - mu * slope).exp() - f) / f, || format!("{stat}, μ={mu}"));
            concave.push(-(s_up - 2.0 * s + s_down), || format!("{stat}, μ={mu}"));
        }
    }
    let hw_desc = format!("{} g values × μ = k/(20 g), k = 1..19", closed.points() / 19);
    let all_desc = format!("{} statistics × 19 fillings, step 1e-4 mu_max", stats.len());
    Ok(vec![
        VerificationReport::identity("entropy_closed_vs_generic", hw_desc.clone(), closed, identity_tol),
        VerificationReport::identity("entropy_saddle_identity", hw_desc, saddle, identity_tol),
        VerificationReport::identity("entropy_legendre", all_desc.clone(), legendre, LEGENDRE_TOL),
        VerificationReport::inequality("entropy_concavity", all_desc, concave),
    ])
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// `Σ_j (-1)^j C(N, j) C(n - j(G+1) + N - 1, N - 1)`.
fn alternating_count(big_g: u64, states: u64, particles: u64) -> BigInt {
    let mut total = BigInt::zero();
    for j in 0..=states {
        let used = j * (big_g + 1);
        if used > particles {
            break;
        }
        let term = binomial(states, j) * binomial(particles - used + states - 1, states - 1);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Exact check that `Σ_n W(N, n) t^n = (1 + t + ... + t^G)^N` at rational
/// `t`, and that each count matches the inclusion-exclusion formula.
pub fn verify_gentile_extensivity(max_g: u64, max_states: u64) -> Result<VerificationReport> {
    let points = [(1, 3), (2, 5), (3, 2)].map(|(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)));
    let mut mismatch = Tracker::residuals();
    for big_g in 1..=max_g {
        let stat = Statistics::gentile(big_g as f64)?;
        for states in 1..=max_states {
            let mut counts = Vec::new();
            for n in 0..=big_g * states {
                let w = match count_states(&stat, states, n)?.count {
                    Count::Exact(w) => w,
                    Count::Real(_) => BigUint::zero(),
                };
                let w = BigInt::from(w);
                let ok = w == alternating_count(big_g, states, n);
                mismatch.push(if ok { 0.0 } else { 1.0 }, || format!("W({states}, {n}), G={big_g}"));
                counts.push(w);
            }
            for t in &points {
                let mut lhs = BigRational::zero();
                let mut power = BigRational::one();
                for w in &counts {
                    lhs += BigRational::from_integer(w.clone()) * &power;
                    power *= t;
                }
                let mut single = BigRational::zero();
                let mut tk = BigRational::one();
                for _ in 0..=big_g {
                    single += &tk;
                    tk *= t;
                }
                let rhs = num_traits::pow(single, states as usize);
                mismatch.push(if lhs == rhs { 0.0 } else { 1.0 }, || {
                    format!("generating identity G={big_g}, N={states}, t={t}")
                });
            }
        }
    }
    let desc = format!("G <= {max_g}, N <= {max_states}, t ∈ {{1/3, 2/5, 3/2}}, exact rationals");
    Ok(VerificationReport::identity("entropy_gentile_extensivity", desc, mismatch, 0.0))
}

/// `a_N = (1/N) ln W(N, μN)` for Gentile statistics against the entropy
/// density: the largest size must be close and increasing toward it, and
/// the three-size extrapolation must agree tightly.
pub fn verify_asymptotic_entropy(
    big_g: u64,
    mu: f64,
    sizes: [u64; 3],
    tol: &Tolerances,
) -> Result<Vec<VerificationReport>> {
    let s = entropy_generic(&Statistics::gentile(big_g as f64)?, mu, tol)?.s;
    let samples = sizes.map(|n| {
        let particles = (mu * n as f64).round() as u64;
        (n as f64, gentile_ln_count(big_g, n, particles) / n as f64)
    });
    let monotone = samples.windows(2).all(|w| w[1].1 > w[0].1 && w[1].1 < s);
    let last = samples[2];
    let mut direct = Tracker::residuals();
    direct.push(if monotone { last.1 - s } else { f64::INFINITY }, || {
        format!("N={}: a_N={:.10}, s={s:.10}", last.0, last.1)
    });
    let extrapolated = extrapolate_entropy(&samples);
    let mut richardson = Tracker::residuals();
    richardson.push(extrapolated - s, || format!("extrapolated {extrapolated:.10}"));
    let desc = format!("G={big_g}, μ={mu}, N ∈ {sizes:?}");
    Ok(vec![
        VerificationReport::identity("entropy_asymptotic", desc.clone(), direct, ASYMPTOTIC_TOL),
        VerificationReport::identity("entropy_asymptotic_extrapolated", desc, richardson, EXTRAPOLATION_TOL),
    ])
}

#[cfg(test)]
mod tests {
    use super::super::default_g_grid;
    use super::*;
    use crate::thermo::gentile_count_exact;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn entropy_reports() {
        for r in verify_entropy(&default_g_grid(), &[1.0, 2.0, 2.5, 4.0], 1e-8, &tol()).unwrap() {
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn alternating_formula_small_cases() {
        // (1 + t + t²)² = 1 + 2t + 3t² + 2t³ + t⁴
        let w: Vec<BigInt> = (0..=4).map(|n| alternating_count(2, 2, n)).collect();
        assert_eq!(w, [1, 2, 3, 2, 1].map(BigInt::from));
        assert_eq!(BigInt::from(gentile_count_exact(2, 2, 2)), BigInt::from(3));
    }

    #[test]
    fn extensivity_exact() {
        let r = verify_gentile_extensivity(4, 12).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.max_residual, Some(0.0));
    }

    #[test]
    fn large_n_limit() {
        let rs = verify_asymptotic_entropy(2, 1.0, [512, 1024, 2048], &tol()).unwrap();
        for r in &rs {
            assert!(r.passed, "{r:?}");
        }
        let s = entropy_generic(&Statistics::gentile(2.0).unwrap(), 1.0, &tol()).unwrap().s;
        assert!((s - 3f64.ln()).abs() < 1e-12);
    }
}
