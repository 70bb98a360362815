//! Adaptive quadrature.
//!
//! Gauss-Kronrod (G7, K15) panels with bisection refinement, plus the
//! weighted line integral against `1/cosh(pi t)` used by the boundary
//! integrals, and a dyadic scheme for integrable endpoint singularities.

use alloc::vec::Vec;
// Float methods come from this trait in no_std builds; when a std-enabled
// dependency joins the graph the inherent methods shadow it.
#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, Result, C64};

/// Kronrod-15 abscissae (positive half, descending).
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.0,
];

/// Kronrod-15 weights.
const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];

/// Embedded 7-point Gauss weights.
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    /// Estimated value of the integral.
    pub value: C64,
    /// Bound on the difference to the next adaptive refinement level.
    pub error_estimate: f64,
    /// Number of integrand evaluations spent.
    pub evaluations: usize,
}

fn kronrod15<F: FnMut(f64) -> Result<C64>>(
    f: &mut F,
    a: f64,
    b: f64,
    evals: &mut usize,
) -> Result<(C64, f64)> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut kron = C64::new(0.0, 0.0);
    let mut gauss = C64::new(0.0, 0.0);
    for (j, (x, wk)) in XGK.iter().zip(WGK.iter()).enumerate() {
        let (lo, hi) = (c - h * x, c + h * x);
        let v = if *x == 0.0 { f(c)? } else { f(lo)? + f(hi)? };
        *evals += if *x == 0.0 { 1 } else { 2 };
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::Precision(alloc::format!(
                "non-finite integrand sample near t = {c}"
            )));
        }
        kron += wk * v;
        if j % 2 == 1 {
            gauss += WG[j / 2] * v;
        }
    }
    kron *= h;
    gauss *= h;
    Ok((kron, (kron - gauss).norm()))
}

/// The 15 Kronrod nodes and weights mapped to `[a, b]`.
pub(crate) fn kronrod15_pointset(a: f64, b: f64) -> [(f64, f64); 15] {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut out = [(0.0, 0.0); 15];
    let mut idx = 0;
    for (x, w) in XGK.iter().zip(WGK.iter()) {
        if *x == 0.0 {
            out[idx] = (c, w * h);
            idx += 1;
        } else {
            out[idx] = (c - h * x, w * h);
            out[idx + 1] = (c + h * x, w * h);
            idx += 2;
        }
    }
    out
}

/// Adaptive integration of `f` over `[a, b]` to absolute tolerance `tol`.
pub fn integrate<F: FnMut(f64) -> Result<C64>>(
    mut f: F,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<QuadratureResult> {
    let mut evals = 0usize;
    let (v0, e0) = kronrod15(&mut f, a, b, &mut evals)?;
    // Worklist of panels with their current estimates.
    let mut panels: Vec<(f64, f64, C64, f64)> = alloc::vec![(a, b, v0, e0)];
    let max_panels = 4096usize;
    loop {
        let total_err: f64 = panels.iter().map(|p| p.3).sum();
        if total_err <= tol {
            break;
        }
        // Split the worst panel.
        let (idx, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.partial_cmp(&y.1 .3).unwrap())
            .unwrap();
        let (pa, pb, _, perr) = panels.swap_remove(idx);
        let mid = 0.5 * (pa + pb);
        if mid <= pa || mid >= pb {
            // Interval exhausted at machine precision; keep its estimate.
            let (v, _) = kronrod15(&mut f, pa, pb, &mut evals)?;
            panels.push((pa, pb, v, 0.0));
            continue;
        }
        let (vl, el) = kronrod15(&mut f, pa, mid, &mut evals)?;
        let (vr, er) = kronrod15(&mut f, mid, pb, &mut evals)?;
        panels.push((pa, mid, vl, el));
        panels.push((mid, pb, vr, er));
        if panels.len() > max_panels {
            let value = panels.iter().map(|p| p.2).sum();
            let err: f64 = panels.iter().map(|p| p.3).sum();
            if err > 1e3 * tol {
                return Err(Error::Precision(alloc::format!(
                    "quadrature did not converge: error {err:.3e} after {max_panels} panels"
                )));
            }
            return Ok(QuadratureResult {
                value,
                error_estimate: err,
                evaluations: evals,
            });
        }
        let _ = perr;
    }
    Ok(QuadratureResult {
        value: panels.iter().map(|p| p.2).sum(),
        error_estimate: panels.iter().map(|p| p.3).sum(),
        evaluations: evals,
    })
}

/// Dyadic panels accumulating toward the left endpoint `a`, for integrands
/// with an integrable (logarithmic) singularity there. Nodes never touch
/// the endpoint itself.
pub(crate) fn integrate_dyadic_left<F: FnMut(f64) -> Result<C64>>(
    mut f: F,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<QuadratureResult> {
    let mut evals = 0usize;
    let mut value = C64::new(0.0, 0.0);
    let mut err = 0.0f64;
    let mut hi = b;
    let mut small = 0u32;
    for _ in 0..56 {
        let lo = a + 0.5 * (hi - a);
        let (v, e) = kronrod15(&mut f, lo, hi, &mut evals)?;
        value += v;
        err += e;
        if v.norm() + e < 0.25 * tol {
            small += 1;
            if small >= 2 {
                break;
            }
        } else {
            small = 0;
        }
        hi = lo;
    }
    Ok(QuadratureResult {
        value,
        error_estimate: err + tol * 0.5,
        evaluations: evals,
    })
}

/// Integral of `f(t) / cosh(pi t)` over the whole real line.
///
/// The weight drops below 1e-18 outside `|t| <= 14`, so the line is
/// truncated there. The even part `f(t) + f(-t)` is integrated on `[0, 14]`,
/// which makes the parity of `f` exact: odd integrands give exactly zero.
pub fn integrate_cosh_weight<F: Fn(f64) -> Result<C64>>(f: F) -> Result<QuadratureResult> {
    let g = |t: f64| -> Result<C64> {
        let w = 1.0 / (core::f64::consts::PI * t).cosh();
        Ok((f(t)? + f(-t)?) * w)
    };
    let mut out = integrate(g, 0.0, 14.0, 1e-12)?;
    // Truncation allowance for the discarded tail beyond |t| = 14.
    let edge = (f(14.0)? + f(-14.0)?).norm();
    out.error_estimate += 2e-19 * (1.0 + edge);
    out.evaluations *= 2;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn cosh_weight_of_one_is_one() {
        let r = integrate_cosh_weight(|_| Ok(C64::new(1.0, 0.0))).unwrap();
        assert_abs_diff_eq!(r.value.re, 1.0, epsilon = 1e-11);
        assert_abs_diff_eq!(r.value.im, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn cosh_weight_of_character_twist() {
        // ∫ n^{-it} dt / cosh(pi t) = 1 / cosh((log n)/2)
        for &n in &[2.0f64, 5.0, 97.0] {
            let r = integrate_cosh_weight(|t| Ok(C64::new(0.0, -t * n.ln()).exp())).unwrap();
            let expected = 1.0 / (0.5 * n.ln()).cosh();
            assert_abs_diff_eq!(r.value.re, expected, epsilon = 1e-11);
            assert!(r.value.im.abs() < 1e-12);
        }
    }

    #[test]
    fn cosh_weight_odd_integrand_is_exactly_zero() {
        let r = integrate_cosh_weight(|t| Ok(C64::new(t + t.powi(3), 0.0))).unwrap();
        assert_eq!(r.value.re, 0.0);
        assert_eq!(r.value.im, 0.0);
    }

    #[test]
    fn cosh_weight_second_moment() {
        // The sech weight has second moment 1/4.
        let r = integrate_cosh_weight(|t| Ok(C64::new(t * t, 0.0))).unwrap();
        assert_abs_diff_eq!(r.value.re, 0.25, epsilon = 1e-10);
    }

    #[test]
    fn adaptive_handles_oscillation() {
        // ∫_0^1 cos(40 x) dx = sin(40)/40
        let r = integrate(|x| Ok(C64::new((40.0 * x).cos(), 0.0)), 0.0, 1.0, 1e-12).unwrap();
        assert_abs_diff_eq!(r.value.re, (40.0f64).sin() / 40.0, epsilon = 1e-11);
    }

    #[test]
    fn dyadic_integrates_log_singularity() {
        // ∫_0^1 ln(x) dx = -1
        let r = integrate_dyadic_left(|x| Ok(C64::new(x.ln(), 0.0)), 0.0, 1.0, 1e-12).unwrap();
        assert_abs_diff_eq!(r.value.re, -1.0, epsilon = 1e-10);
    }

    #[test]
    fn non_finite_sample_is_an_error() {
        let r = integrate(|x| Ok(C64::new(1.0 / x, 0.0)), -1.0, 1.0, 1e-10);
        assert!(matches!(r, Err(Error::Precision(_))));
    }
}
