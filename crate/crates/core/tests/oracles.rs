//! Library values against independently computed reference values.

use exstat::charge::{charge_both, solve_y0, ChargeProblem};
use exstat::genfun::{coefficients, eval, SeriesKind};
use exstat::numerics::{log_gamma, rogers_dilog};
use exstat::thermo::{count_states, gentile_count_exact, gentile_ln_count, Count};
use exstat::{Statistics, Tolerances};
use num_bigint::BigUint;

fn tol() -> Tolerances {
    Tolerances::default()
}

fn hw(g: f64) -> Statistics {
    Statistics::haldane_wu(g).unwrap()
}

fn bisect(h: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if h(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn haldane_wu_against_bisection() {
    for k in 1..10 {
        let g = k as f64 / 10.0;
        for &t in &[0.01f64, 0.1, 0.5, 1.0, 2.0, 5.0] {
            // f - 1 - t f^{1-g} changes sign on [1, 2 + 1/g + t^{1/g}]
            let oracle = bisect(|f| f - 1.0 - t * f.powf(1.0 - g), 1.0, 2.0 + 1.0 / g + t.powf(1.0 / g));
            let f = eval(&hw(g), t, &tol()).unwrap();
            assert!(((f - oracle) / oracle).abs() < 1e-13, "g={g} t={t}: {f} vs {oracle}");
        }
    }
}

#[test]
fn integer_gentile_against_geometric_sum() {
    for big_g in 1..=6u32 {
        let stat = Statistics::gentile(big_g as f64).unwrap();
        for &t in &[0.0f64, 0.3, 0.999, 1.0, 1.5, 4.0] {
            let oracle: f64 = (0..=big_g).map(|k| t.powi(k as i32)).sum();
            let f = eval(&stat, t, &tol()).unwrap();
            assert!(((f - oracle) / oracle).abs() < 1e-14, "G={big_g} t={t}");
        }
    }
}

#[test]
fn coefficients_against_lagrange_inversion() {
    // [t^n] f = C(n(1-g), n-1) / n
    for &g in &[0.0, 0.2, 1.0 / 3.0, 0.5, 0.75, 1.0] {
        let c = coefficients(&hw(g), SeriesKind::F, 30).unwrap().coeffs;
        assert_eq!(c[0], 1.0);
        for n in 1..=30usize {
            let a = n as f64 * (1.0 - g);
            let binom: f64 = (0..n - 1).map(|j| (a - j as f64) / (j + 1) as f64).product();
            let oracle = binom / n as f64;
            // exact zeros come out of the oracle as rounding noise
            assert!((c[n] - oracle).abs() <= 1e-12 * oracle.abs() + 1e-15, "g={g} n={n}: {} vs {oracle}", c[n]);
        }
    }
}

#[test]
fn dilog_against_direct_series() {
    for k in 1..=19 {
        let x = k as f64 / 20.0;
        let mut li2 = 0.0;
        let mut p = 1.0;
        for n in 1..=4000 {
            p *= x;
            li2 += p / (n * n) as f64;
        }
        let oracle = li2 + 0.5 * x.ln() * (1.0 - x).ln();
        let l = rogers_dilog(x).unwrap();
        assert!((l - oracle).abs() < 1e-13, "x={x}: {l} vs {oracle}");
    }
}

#[test]
fn log_gamma_against_factorials() {
    let mut ln_fact = 0.0;
    for n in 1..=60u32 {
        assert!((log_gamma(n as f64).unwrap() - ln_fact).abs() < 1e-12 * ln_fact.max(1.0));
        ln_fact += (n as f64).ln();
    }
    // Γ(n + 1/2) = (2n)! √π / (4^n n!)
    for n in 0..=20u32 {
        let ln_2n: f64 = (1..=2 * n).map(|k| (k as f64).ln()).sum();
        let ln_n: f64 = (1..=n).map(|k| (k as f64).ln()).sum();
        let oracle = ln_2n + 0.5 * std::f64::consts::PI.ln() - n as f64 * 4f64.ln() - ln_n;
        let v = log_gamma(n as f64 + 0.5).unwrap();
        assert!((v - oracle).abs() < 1e-12 * oracle.abs().max(1.0), "n={n}");
    }
}

fn enumerate(big_g: u64, states: u64, particles: u64) -> u64 {
    if states == 0 {
        return (particles == 0) as u64;
    }
    (0..=big_g.min(particles)).map(|k| enumerate(big_g, states - 1, particles - k)).sum()
}

#[test]
fn gentile_counts_against_enumeration() {
    for big_g in 1..=3u64 {
        for states in 1..=6u64 {
            for particles in 0..=big_g * states + 1 {
                let r = count_states(&Statistics::gentile(big_g as f64).unwrap(), states, particles).unwrap();
                assert_eq!(r.count, Count::Exact(BigUint::from(enumerate(big_g, states, particles))));
            }
        }
    }
}

#[test]
fn half_exclusion_counts_against_factorials() {
    // odd n at g = 1/2: W = (N + (n-1)/2)! / (n! (N - (n+1)/2)!)
    let fact = |k: u64| (1..=k).map(|i| i as f64).product::<f64>();
    for states in 2..=10u64 {
        for n in (1..2 * states).step_by(2) {
            let oracle = fact(states + (n - 1) / 2) / (fact(n) * fact(states - (n + 1) / 2));
            let w = count_states(&hw(0.5), states, n).unwrap().value();
            assert!(((w - oracle) / oracle).abs() < 1e-11, "N={states} n={n}: {w} vs {oracle}");
        }
    }
}

#[test]
fn log_count_against_exact_count() {
    for &(big_g, states) in &[(1u64, 200u64), (2, 150), (4, 80)] {
        for particles in [1, states / 3, states * big_g / 2, states * big_g] {
            let exact = gentile_count_exact(big_g, states, particles);
            let bits = exact.bits();
            let shift = bits.saturating_sub(60);
            let oracle = ((&exact >> shift).to_string().parse::<f64>().unwrap()).ln() + shift as f64 * std::f64::consts::LN_2;
            let v = gentile_ln_count(big_g, states, particles);
            assert!((v - oracle).abs() < 1e-10 * oracle.max(1.0), "G={big_g} N={states} n={particles}");
        }
    }
}

#[test]
fn rational_charges() {
    let rho = (5f64.sqrt() - 1.0) / 2.0;
    for &(g, phi, y0, c) in &[(1.0, 1.0, 1.0 - rho, 0.4), (1.0, 0.0, 0.5, 0.5), (0.5, 0.0, rho, 0.6)] {
        assert!((solve_y0(g + phi, &tol()).unwrap() - y0).abs() < 1e-12);
        let r = charge_both(&ChargeProblem::new(hw(g), phi).unwrap(), &tol()).unwrap();
        assert!((r.c_closed - c).abs() < 1e-10, "g={g} Φ={phi}");
        assert!((r.c_integral - c).abs() < 1e-10, "g={g} Φ={phi}");
    }
}
