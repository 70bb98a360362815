//! Complex log-gamma, digamma, and polygamma.

use alloc::format;
// Float methods come from this trait in no_std builds; when a std-enabled
// dependency joins the graph the inherent methods shadow it.
#[allow(unused_imports)]
use num_traits::Float;

use super::{hurwitz::hurwitz_zeta_any, LN_PI, LN_TWO_PI};
use crate::{Error, Result, C64};

/// Lanczos shift parameter (Pugh's analysis of the Lanczos approximation).
const GAMMA_R: f64 = 10.900511;

/// Polynomial coefficients for the Lanczos series at `g = GAMMA_R`.
const GAMMA_DK: &[f64] = &[
    2.48574089138753565546e-5,
    1.05142378581721974210,
    -3.45687097222016235469,
    4.51227709466894823700,
    -2.98285225323576655721,
    1.05639711577126713077,
    -1.95428773191645869583e-1,
    1.70970543404441224307e-2,
    -5.71926117404305781283e-4,
    4.63399473359905636708e-6,
    -2.71994908488607703910e-9,
];

/// ln(2 * sqrt(e / pi))
const LN_2_SQRT_E_OVER_PI: f64 = 0.620_782_237_635_245_2;

/// Bernoulli numbers B_2, B_4, ..., B_16.
pub(crate) const BERNOULLI: [f64; 8] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
];

fn is_nonpositive_integer(z: C64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.floor()
}

/// Principal-branch complex log-gamma.
///
/// Lanczos approximation for moderate `|z|`, Stirling's series with
/// Bernoulli corrections for large `|z|`, and the reflection formula for
/// `Re z < 1/2`. Real on the positive real axis; `exp(log_gamma(z))`
/// recovers the gamma function itself.
pub fn log_gamma(z: C64) -> Result<C64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!("log_gamma: non-finite input {z}")));
    }
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(format!("log_gamma: pole at {z}")));
    }
    Ok(log_gamma_unchecked(z))
}

fn log_gamma_unchecked(z: C64) -> C64 {
    if z.re < 0.5 {
        // Reflection: ln Γ(z) = ln π − ln sin(πz) − ln Γ(1−z).
        let lnsin = (C64::new(core::f64::consts::PI, 0.0) * z).sin().ln();
        return C64::new(LN_PI, 0.0) - lnsin - log_gamma_unchecked(C64::new(1.0, 0.0) - z);
    }
    if z.norm_sqr() >= 625.0 {
        return stirling_ln_gamma(z);
    }
    let mut s = C64::new(GAMMA_DK[0], 0.0);
    for (k, dk) in GAMMA_DK.iter().enumerate().skip(1) {
        s += dk / (z + (k as f64 - 1.0));
    }
    s.ln() + LN_2_SQRT_E_OVER_PI + (z - 0.5) * ((z - 0.5 + GAMMA_R) / core::f64::consts::E).ln()
}

/// Stirling series, valid for Re z >= 1/2 with |z| large.
fn stirling_ln_gamma(z: C64) -> C64 {
    let mut sum = (z - 0.5) * z.ln() - z + 0.5 * LN_TWO_PI;
    let inv2 = 1.0 / (z * z);
    let mut zpow = 1.0 / z;
    for (j, b) in BERNOULLI.iter().enumerate() {
        let tj = 2.0 * (j as f64 + 1.0);
        sum += b / (tj * (tj - 1.0)) * zpow;
        zpow *= inv2;
    }
    sum
}

/// Complex digamma (logarithmic derivative of gamma).
///
/// Accurate to better than 1e-12 relative error for `|z| <= 100`.
pub fn digamma(z: C64) -> Result<C64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!("digamma: non-finite input {z}")));
    }
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(format!("digamma: pole at {z}")));
    }
    Ok(digamma_unchecked(z))
}

fn digamma_unchecked(z: C64) -> C64 {
    if z.re < 0.5 {
        // ψ(z) = ψ(1−z) − π cot(πz)
        let piz = C64::new(core::f64::consts::PI, 0.0) * z;
        return digamma_unchecked(C64::new(1.0, 0.0) - z)
            - core::f64::consts::PI * piz.cos() / piz.sin();
    }
    // Shift until the asymptotic series applies, then Stirling.
    let mut acc = C64::new(0.0, 0.0);
    let mut w = z;
    while w.norm_sqr() < 400.0 {
        acc -= 1.0 / w;
        w += 1.0;
    }
    let inv = 1.0 / w;
    let inv2 = inv * inv;
    let mut sum = w.ln() - 0.5 * inv;
    let mut p = inv2;
    for (j, b) in BERNOULLI.iter().enumerate() {
        let tj = 2.0 * (j as f64 + 1.0);
        sum -= b / tj * p;
        p *= inv2;
    }
    acc + sum
}

/// Polygamma function `ψ^(k)(z)` for `k >= 1` (`k = 0` is [`digamma`]).
///
/// Computed as `(-1)^(k+1) k! ζ(k+1, z)` with the shifted-argument Hurwitz
/// evaluation; a recurrence moves `Re z` into the convergent half-plane.
pub fn polygamma(k: u32, z: C64) -> Result<C64> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(format!("polygamma: pole at {z}")));
    }
    if k == 0 {
        return digamma(z);
    }
    let mut w = z;
    let mut acc = C64::new(0.0, 0.0);
    let kf = factorial(k);
    let sign = if k % 2 == 0 { -1.0 } else { 1.0 };
    // ψ^(k)(z) = ψ^(k)(z+1) + (−1)^(k+1) k!/z^(k+1)
    while w.re <= 0.5 {
        acc += sign * kf * w.powi(-(k as i32 + 1));
        w += 1.0;
    }
    let zeta = hurwitz_zeta_any(C64::new(k as f64 + 1.0, 0.0), w)?;
    Ok(acc + sign * kf * zeta)
}

pub(crate) fn factorial(k: u32) -> f64 {
    let mut f = 1.0;
    for i in 2..=k {
        f *= i as f64;
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn log_gamma_at_one_is_zero() {
        let v = log_gamma(C64::new(1.0, 0.0)).unwrap();
        assert_abs_diff_eq!(v.re, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn log_gamma_at_half_is_log_sqrt_pi() {
        let v = log_gamma(C64::new(0.5, 0.0)).unwrap();
        assert_abs_diff_eq!(v.re, 0.572_364_942_924_700_1, epsilon = 1e-13);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-13);
    }

    #[test]
    fn log_gamma_at_2p5_from_recurrence() {
        // Γ(2.5) = 1.5 * 0.5 * Γ(0.5), derived from the half-integer value.
        let expected = (1.5f64 * 0.5).ln() + 0.572_364_942_924_700_1;
        let v = log_gamma(C64::new(2.5, 0.0)).unwrap();
        assert_abs_diff_eq!(v.re, expected, epsilon = 1e-13);
    }

    #[test]
    fn log_gamma_pole_is_an_error() {
        assert!(matches!(log_gamma(C64::new(0.0, 0.0)), Err(Error::Pole(_))));
        assert!(matches!(
            log_gamma(C64::new(-3.0, 0.0)),
            Err(Error::Pole(_))
        ));
    }

    #[test]
    fn log_gamma_recurrence_random_points() {
        // exp(lnΓ(z+1)) = z exp(lnΓ(z)) across both Lanczos and Stirling branches.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..500 {
            let z = C64::new(0.1 + 9.9 * next(), 40.0 * next() - 20.0);
            let lhs = log_gamma(z + 1.0).unwrap().exp();
            let rhs = z * log_gamma(z).unwrap().exp();
            assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm().max(1.0));
        }
    }

    #[test]
    fn stirling_and_lanczos_agree_at_seam() {
        for im in [-40.0, -3.0, 0.25, 18.0] {
            let z = C64::new(24.9, im);
            let a = log_gamma_unchecked(z);
            let b = stirling_ln_gamma(z);
            assert!((a - b).norm() < 1e-11, "seam mismatch at {z}: {a} vs {b}");
        }
    }

    #[test]
    fn digamma_known_values() {
        let g = 0.577_215_664_901_532_9;
        let v = digamma(C64::new(1.0, 0.0)).unwrap();
        assert_abs_diff_eq!(v.re, -g, epsilon = 1e-13);
        let v = digamma(C64::new(2.0, 0.0)).unwrap();
        assert_abs_diff_eq!(v.re, 1.0 - g, epsilon = 1e-13);
        let v = digamma(C64::new(0.5, 0.0)).unwrap();
        assert_abs_diff_eq!(v.re, -2.0 * core::f64::consts::LN_2 - g, epsilon = 1e-13);
    }

    #[test]
    fn digamma_matches_log_gamma_difference_quotient() {
        let h = 1e-4;
        for &(re, im) in &[(0.7, 0.3), (3.2, -1.5), (12.0, 8.0), (0.9, -25.0)] {
            let z = C64::new(re, im);
            let fd = (log_gamma(z + h).unwrap() - log_gamma(z - h).unwrap()) / (2.0 * h);
            let ps = digamma(z).unwrap();
            assert!((fd - ps).norm() < 1e-6, "at {z}: {fd} vs {ps}");
        }
    }

    #[test]
    fn polygamma_one_at_one_is_pi_squared_over_six() {
        let v = polygamma(1, C64::new(1.0, 0.0)).unwrap();
        assert_abs_diff_eq!(v.re, core::f64::consts::PI.powi(2) / 6.0, epsilon = 1e-12);
    }

    #[test]
    fn polygamma_recurrence_shift() {
        // ψ'(z) = ψ'(z+1) + 1/z² exercised through the negative-Re shift path.
        let z = C64::new(0.3, 0.4);
        let lhs = polygamma(1, z).unwrap();
        let rhs = polygamma(1, z + 1.0).unwrap() + (z * z).inv();
        assert!((lhs - rhs).norm() < 1e-11);
    }
}
