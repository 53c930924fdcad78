use crate::error::{Error, Result};

use super::Tolerances;

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_SUBINTERVALS: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub abs_error: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn kronrod15<F: Fn(f64) -> f64>(func: &F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = func(center);
    let mut res_k = f_center * WGK[7];
    let mut res_g = f_center * WG[3];
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = func(center - dx);
        let f2 = func(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();
    let mut err = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    let round_off = 50.0 * f64::EPSILON * res_abs;
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) && round_off > err {
        err = round_off;
    }
    Segment { a, b, value: res_k * half, error: err }
}

/// Globally adaptive Gauss-Kronrod integration of `func` over `[a, b]`.
///
/// The rule never samples the endpoints, so integrands with a removable
/// singularity or an integrable log singularity at an endpoint are fine.
pub fn integrate_with_estimate<F: Fn(f64) -> f64>(
    func: F,
    a: f64,
    b: f64,
    tol: &Tolerances,
) -> Result<QuadratureResult> {
    if a == b {
        return Ok(QuadratureResult { value: 0.0, abs_error: 0.0, evaluations: 0 });
    }
    let mut segments = vec![kronrod15(&func, a, b)];
    let mut evaluations = 15;
    loop {
        let (value, error) = segments
            .iter()
            .fold((0.0, 0.0), |(v, e), s| (v + s.value, e + s.error));
        if !value.is_finite() {
            return Err(Error::Domain(format!("integrand is not finite on [{a}, {b}]")));
        }
        if error <= tol.quad_abs {
            return Ok(QuadratureResult { value, abs_error: error, evaluations });
        }
        if segments.len() >= MAX_SUBINTERVALS {
            break;
        }
        let worst = segments
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, _)| i)
            .expect("at least one segment");
        let s = segments.swap_remove(worst);
        let mid = 0.5 * (s.a + s.b);
        if mid <= s.a.min(s.b) || mid >= s.a.max(s.b) {
            // Cannot subdivide further at this precision.
            break;
        }
        segments.push(kronrod15(&func, s.a, mid));
        segments.push(kronrod15(&func, mid, s.b));
        evaluations += 30;
    }
    Err(Error::NoConvergence {
        what: "adaptive quadrature",
        iterations: segments.len(),
    })
}

pub fn integrate<F: Fn(f64) -> f64>(func: F, a: f64, b: f64, tol: &Tolerances) -> Result<f64> {
    integrate_with_estimate(func, a, b, tol).map(|r| r.value)
}

/// Integrates a function with a removable singularity at `a`, using the
/// caller's limiting value whenever the integrand is requested exactly at `a`.
pub fn integrate_removable<F: Fn(f64) -> f64>(
    func: F,
    a: f64,
    limit_at_a: f64,
    b: f64,
    tol: &Tolerances,
) -> Result<f64> {
    integrate(|t| if t == a { limit_at_a } else { func(t) }, a, b, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn polynomial() {
        assert!((integrate(|t| t, 0.0, 1.0, &tol()).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(integrate(|t| t, 0.3, 0.3, &tol()).unwrap(), 0.0);
    }

    #[test]
    fn dilog_integral_at_one() {
        // Term-wise oracle: ∫_0^1 ln(1+t)/t dt = Σ (-1)^{n+1}/n² = π²/12.
        let v = integrate_removable(|t: f64| t.ln_1p() / t, 0.0, 1.0, 1.0, &tol()).unwrap();
        assert!((v - PI * PI / 12.0).abs() < 1e-12);
        assert!((v - 0.8224670334241132).abs() < 1e-12);
    }

    #[test]
    fn boson_integrand_to_one_half() {
        // Σ 0.5^n / n²
        let oracle: f64 = (1..200).map(|n| 0.5f64.powi(n) / (n * n) as f64).sum();
        let v = integrate_removable(|t: f64| -(-t).ln_1p() / t, 0.0, 1.0, 0.5, &tol()).unwrap();
        assert!((v - oracle).abs() < 1e-12);
        assert!((v - 0.5822405264650125).abs() < 1e-12);
    }

    #[test]
    fn log_endpoint_singularity() {
        // ∫_0^1 -ln(1-t)/t dt = π²/6 with a log singularity at t = 1.
        let v = integrate_with_estimate(|t: f64| -(-t).ln_1p() / t, 0.0, 1.0, &tol()).unwrap();
        assert!((v.value - PI * PI / 6.0).abs() < 1e-10, "{v:?}");
        assert!(v.abs_error <= tol().quad_abs);
    }

    #[test]
    fn reversed_limits_change_sign() {
        let v = integrate(|t: f64| t.exp(), 1.0, 0.0, &tol()).unwrap();
        assert!((v + (1f64.exp() - 1.0)).abs() < 1e-14);
    }

    #[test]
    fn non_integrable_fails() {
        let r = integrate(|t: f64| 1.0 / t, 0.0, 1.0, &tol());
        assert!(r.is_err());
    }
}
