//! Truncated formal power series arithmetic on coefficient vectors.
//!
//! Every routine returns coefficients `0..=n_max`; missing input
//! coefficients are treated as zero.

use crate::error::{domain, Result};

fn at(a: &[f64], i: usize) -> f64 {
    a.get(i).copied().unwrap_or(0.0)
}

pub fn mul(a: &[f64], b: &[f64], n_max: usize) -> Vec<f64> {
    (0..=n_max)
        .map(|n| (0..=n).map(|k| at(a, k) * at(b, n - k)).sum())
        .collect()
}

/// `a^m` for a non-negative integer `m` by binary powering.
pub fn pow(a: &[f64], m: u32, n_max: usize) -> Vec<f64> {
    let mut result = vec![0.0; n_max + 1];
    result[0] = 1.0;
    let mut base: Vec<f64> = (0..=n_max).map(|i| at(a, i)).collect();
    let mut e = m;
    while e > 0 {
        if e & 1 == 1 {
            result = mul(&result, &base, n_max);
        }
        e >>= 1;
        if e > 0 {
            base = mul(&base, &base, n_max);
        }
    }
    result
}

/// Multiplicative inverse; requires `a[0] != 0`.
pub fn inverse(a: &[f64], n_max: usize) -> Result<Vec<f64>> {
    let a0 = at(a, 0);
    if a0 == 0.0 {
        return domain("formal inverse needs a nonzero constant term");
    }
    let mut b = vec![0.0; n_max + 1];
    b[0] = 1.0 / a0;
    for n in 1..=n_max {
        let s: f64 = (1..=n).map(|k| at(a, k) * b[n - k]).sum();
        b[n] = -s / a0;
    }
    Ok(b)
}

/// `exp(a)` for a series with `a[0] = 0`, from `E' = A' E`.
pub fn exp(a: &[f64], n_max: usize) -> Result<Vec<f64>> {
    if at(a, 0) != 0.0 {
        return domain("formal exp needs a zero constant term");
    }
    let mut e = vec![0.0; n_max + 1];
    e[0] = 1.0;
    for n in 1..=n_max {
        let s: f64 = (1..=n).map(|k| k as f64 * at(a, k) * e[n - k]).sum();
        e[n] = s / n as f64;
    }
    Ok(e)
}

/// `ln(a)` for a series with `a[0] = 1`, from `a L' = a'`.
pub fn ln(a: &[f64], n_max: usize) -> Result<Vec<f64>> {
    if at(a, 0) != 1.0 {
        return domain("formal log needs a unit constant term");
    }
    let mut l = vec![0.0; n_max + 1];
    for n in 1..=n_max {
        let s: f64 = (1..n).map(|k| k as f64 * l[k] * at(a, n - k)).sum();
        l[n] = at(a, n) - s / n as f64;
    }
    Ok(l)
}

/// Horner evaluation.
pub fn eval(a: &[f64], t: f64) -> f64 {
    a.iter().rev().fold(0.0, |acc, &c| acc * t + c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_series_roundtrips() {
        let one_minus_t = [1.0, -1.0];
        let geo = inverse(&one_minus_t, 10).unwrap();
        assert!(geo.iter().all(|&c| c == 1.0));
        let sq = pow(&geo, 2, 10);
        for (n, c) in sq.iter().enumerate() {
            assert_eq!(*c, (n + 1) as f64);
        }
    }

    #[test]
    fn exp_and_ln_are_inverse() {
        let a = [0.0, 1.0, -0.5, 0.25, 0.125];
        let e = exp(&a, 12).unwrap();
        let back = ln(&e, 12).unwrap();
        for n in 0..=12 {
            assert!((back[n] - at(&a, n)).abs() < 1e-14);
        }
        // ln(1 + t) = t - t²/2 + t³/3 - ...
        let l = ln(&[1.0, 1.0], 6).unwrap();
        for n in 1..=6 {
            let expect = if n % 2 == 1 { 1.0 } else { -1.0 } / n as f64;
            assert!((l[n] - expect).abs() < 1e-15);
        }
    }

    #[test]
    fn preconditions() {
        assert!(exp(&[1.0, 1.0], 3).is_err());
        assert!(ln(&[2.0, 1.0], 3).is_err());
        assert!(inverse(&[0.0, 1.0], 3).is_err());
    }

    #[test]
    fn horner() {
        assert_eq!(eval(&[1.0, 2.0, 3.0], 2.0), 17.0);
        assert_eq!(eval(&[], 2.0), 0.0);
    }
}
