//! The critical-strip Jensen identity and the convexity decomposition.
//!
//! The identity equates `log|(1/2)^r L(1/2)|` plus cotangent-kernel sums
//! over zeros (and over gamma shifts with negative real part) with a
//! `1/cosh`-weighted boundary integral over the two edge lines of the
//! strip. Both sides are computed by fully independent routes: the left
//! side from located zeros and one central value, the right side by
//! quadrature of edge-line data only.

use alloc::format;
// Float methods come from this trait in no_std builds; when a std-enabled
// dependency joins the graph the inherent methods shadow it.
#[allow(unused_imports)]
use num_traits::Float;

use crate::dirichlet::{evaluate_l, evaluate_l_from_bank, hurwitz_bank, DirichletCharacter};
use crate::numerics::quad;
use crate::zeros::ZeroRecord;
use crate::{Error, Result, C64};

/// `log |cot(π z / 2)|` for `|Re z| <= 1/2`, in a cancellation-safe form.
///
/// Equals `(1/2) log((cosh πy + cos πx)/(cosh πy − cos πx))` and is bounded
/// below by `cos(πx)/cosh(πy)`.
///
/// ```
/// use lfclass::C64;
/// // cot(π/4) = 1: the kernel vanishes on the critical line's image.
/// let k = lfclass::jensen::cot_kernel(C64::new(0.5, 0.0)).unwrap();
/// assert!(k.abs() < 1e-15);
/// ```
pub fn cot_kernel(z: C64) -> Result<f64> {
    let x = z.re;
    let y = z.im;
    if x.abs() > 0.5 + 1e-12 {
        return Err(Error::Domain(format!(
            "cot kernel: |Re z| = {} exceeds 1/2",
            x.abs()
        )));
    }
    if x == 0.0 && y == 0.0 {
        return Err(Error::Domain("cot kernel: singular at z = 0".into()));
    }
    let c = (core::f64::consts::PI * x).cos();
    let py = core::f64::consts::PI * y;
    if py.abs() > 40.0 {
        // cosh overflowing regime: kernel ≈ 2 c e^{-π|y|}.
        return Ok(2.0 * c * (-py.abs()).exp());
    }
    let ch = py.cosh();
    if ch - c <= 0.0 {
        // x = 0, y = 0 handled above; otherwise only rounding can land here.
        return Err(Error::Domain(format!("cot kernel: singular input {z}")));
    }
    Ok(0.5 * (2.0 * c / (ch - c)).ln_1p())
}

/// Left side of the identity, assembled from the central value, the
/// located zeros, and the gamma shifts of negative real part.
#[derive(Debug, Clone, PartialEq)]
pub struct JensenLhs {
    pub log_central: f64,
    pub zero_kernel_sum: f64,
    pub archimedean_kernel_sum: f64,
    /// Bound on the discarded kernel mass above the located height.
    pub zero_tail_bound: f64,
    pub total: f64,
}

pub fn jensen_lhs(
    chi: &DirichletCharacter,
    zeros: &[ZeroRecord],
    mu: &[C64],
    pole_order: u32,
    covered_to: f64,
) -> Result<JensenLhs> {
    let central = evaluate_l(chi, C64::new(0.5, 0.0))?;
    if central.norm() < 1e-12 {
        return Err(Error::Domain(
            "jensen: central value vanishes; log |L(1/2)| is not finite".into(),
        ));
    }
    let log_central = 0.5f64.ln() * pole_order as f64 + central.norm().ln();

    let mut zero_kernel_sum = 0.0;
    for r in zeros {
        zero_kernel_sum += cot_kernel(C64::new(r.beta - 0.5, r.gamma))?;
        if r.gamma.abs() > covered_to {
            return Err(Error::Data(format!(
                "jensen: zero at height {} beyond the declared coverage {covered_to}",
                r.gamma
            )));
        }
    }
    // Kernel decays like 4 e^{-π γ}; crude density 2 log-ish per unit.
    let zero_tail_bound =
        40.0 * (1.0 + (chi.modulus as f64).ln()) * (-core::f64::consts::PI * covered_to).exp();
    if zero_tail_bound > 1e-9 {
        return Err(Error::Data(format!(
            "jensen: zeros covered to {covered_to:.2}; kernel tail {zero_tail_bound:.2e} above 1e-9"
        )));
    }

    let mut archimedean_kernel_sum = 0.0;
    for m in mu {
        if m.re < 0.0 {
            archimedean_kernel_sum += cot_kernel(m + 0.5)?;
        }
    }
    Ok(JensenLhs {
        log_central,
        zero_kernel_sum,
        archimedean_kernel_sum,
        zero_tail_bound,
        total: log_central + zero_kernel_sum + archimedean_kernel_sum,
    })
}

/// Right side: `(1/2) ∫ log|L(1+it) L(it) t^r (1-it)^r| dt / cosh(πt)`.
///
/// The integrand has integrable log singularities at `t = 0` (from the
/// `t^r` factor and, for even characters, the central trivial zero of
/// `L(it)`); dyadic panels toward zero absorb them. All logs are summed
/// before exponentials ever meet, so the pole/zero cancellation at `t = 0`
/// for the modulus-1 case is exact.
pub fn jensen_rhs(chi: &DirichletCharacter, pole_order: u32) -> Result<(f64, f64)> {
    let r = pole_order as f64;
    // Split: dyadic toward 0 on both signs, adaptive on [1, 10].
    let f = |t: f64| -> Result<C64> {
        let v = edge_log_abs(chi, t, r)?;
        Ok(C64::new(v, 0.0))
    };
    let weight = |t: f64| 1.0 / (2.0 * (core::f64::consts::PI * t).cosh());
    let near_plus = quad::integrate_dyadic_left(|t| Ok(f(t)? * weight(t)), 0.0, 1.0, 1e-11)?;
    let near_minus = quad::integrate_dyadic_left(|t| Ok(f(-t)? * weight(t)), 0.0, 1.0, 1e-11)?;
    let far_plus = quad::integrate(|t| Ok(f(t)? * weight(t)), 1.0, 10.0, 1e-11)?;
    let far_minus = quad::integrate(|t| Ok(f(-t)? * weight(t)), 1.0, 10.0, 1e-11)?;
    let value = near_plus.value.re + near_minus.value.re + far_plus.value.re + far_minus.value.re;
    let err = near_plus.error_estimate
        + near_minus.error_estimate
        + far_plus.error_estimate
        + far_minus.error_estimate
        + 1e-10; // truncation beyond |t| = 10 under the cosh weight
    Ok((value, err))
}

/// `log |L(1+it) L(it) t^r (1-it)^r|` as a sum of logs.
fn edge_log_abs(chi: &DirichletCharacter, t: f64, r: f64) -> Result<f64> {
    let bank1 = hurwitz_bank(chi.modulus, C64::new(1.0, t))?;
    let bank0 = hurwitz_bank(chi.modulus, C64::new(0.0, t))?;
    let l1 = evaluate_l_from_bank(chi, C64::new(1.0, t), &bank1);
    let l0 = evaluate_l_from_bank(chi, C64::new(0.0, t), &bank0);
    Ok(l1.norm().ln() + l0.norm().ln() + r * t.abs().ln() + 0.5 * r * (1.0 + t * t).ln())
}

/// Full identity report.
#[derive(Debug, Clone, PartialEq)]
pub struct JensenReport {
    pub lhs_log_l: f64,
    pub zero_kernel_sum: f64,
    pub archimedean_kernel_sum: f64,
    pub rhs_integral: f64,
    pub rhs_error: f64,
    pub defect: f64,
}

/// Verifies the identity for a primitive character, given its zeros to a
/// height where the kernel tail is negligible (height 8 suffices).
pub fn verify_jensen(
    chi: &DirichletCharacter,
    zeros: &[ZeroRecord],
    covered_to: f64,
) -> Result<JensenReport> {
    let g = chi.gamma_data()?;
    let lhs = jensen_lhs(chi, zeros, &g.mu, g.pole_order, covered_to)?;
    let (rhs, rhs_err) = jensen_rhs(chi, g.pole_order)?;
    Ok(JensenReport {
        lhs_log_l: lhs.log_central,
        zero_kernel_sum: lhs.zero_kernel_sum,
        archimedean_kernel_sum: lhs.archimedean_kernel_sum,
        rhs_integral: rhs,
        rhs_error: rhs_err,
        defect: (lhs.total - rhs).abs(),
    })
}

/// Terms of the convexity decomposition of the central value:
/// `log|L(1/2)| <= (1/4) log C − Σ_ρ sin(πβ)/cosh(πγ) + 2 log|L(3/2)|`
/// up to the class constant; the slack reports it.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexityReport {
    pub quarter_log_c: f64,
    pub zero_sin_sum: f64,
    pub two_log_l32: f64,
    pub log_central: f64,
    /// rhs − lhs; contains the unasserted `O(m²)`.
    pub slack: f64,
}

pub fn convexity_decomposition(
    chi: &DirichletCharacter,
    zeros: &[ZeroRecord],
    covered_to: f64,
) -> Result<ConvexityReport> {
    let g = chi.gamma_data()?;
    let c = crate::lfunc::analytic_conductor(&g);
    let central = evaluate_l(chi, C64::new(0.5, 0.0))?;
    if central.norm() < 1e-12 {
        return Err(Error::Domain(
            "convexity: central value vanishes; log |L(1/2)| is not finite".into(),
        ));
    }
    let tail =
        40.0 * (1.0 + (chi.modulus as f64).ln()) * (-core::f64::consts::PI * covered_to).exp();
    if tail > 1e-9 {
        return Err(Error::Data(format!(
            "convexity: sin/cosh tail {tail:.2e} above 1e-9; locate zeros higher"
        )));
    }
    let mut zero_sin_sum = 0.0;
    for r in zeros {
        zero_sin_sum +=
            (core::f64::consts::PI * r.beta).sin() / (core::f64::consts::PI * r.gamma).cosh();
    }
    let l32 = evaluate_l(chi, C64::new(1.5, 0.0))?;
    let quarter_log_c = 0.25 * c.ln();
    let two_log_l32 = 2.0 * l32.norm().ln();
    let log_central = central.norm().ln();
    Ok(ConvexityReport {
        quarter_log_c,
        zero_sin_sum,
        two_log_l32,
        log_central,
        slack: quarter_log_c - zero_sin_sum + two_log_l32 - log_central,
    })
}

/// The two closed-form bound evaluators: the central-value bound in terms
/// of `(C, m, δ, N(1−δ,6), log|L(3/2)|)`, and the weak-subconvexity shape
/// `|L(3/2)|² C^{1/4} / (log C)^{1/(10^17 m³)}`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundValues {
    pub central_bound: f64,
    pub subconvex_bound: f64,
}

pub fn bound_evaluators(
    c: f64,
    m: u32,
    delta: f64,
    zeros_near_one: u32,
    log_abs_l32: f64,
) -> Result<BoundValues> {
    if !(0.0..0.5).contains(&delta) {
        return Err(Error::Domain(format!("delta = {delta} outside [0, 1/2)")));
    }
    if c < 1.0 {
        return Err(Error::Domain(format!("conductor {c} below 1")));
    }
    let central_bound =
        (0.25 - 1e-9 * delta) * c.ln() + 1e-7 * delta * zeros_near_one as f64 + 2.0 * log_abs_l32;
    let subconvex_bound = if c > 1.0 {
        let m3 = (m as f64).powi(3);
        (2.0 * log_abs_l32).exp() * c.powf(0.25) / c.ln().powf(1.0 / (1e17 * m3))
    } else {
        return Err(Error::Domain(
            "subconvex bound needs C > 1 for its logarithm".into(),
        ));
    };
    Ok(BoundValues {
        central_bound,
        subconvex_bound,
    })
}

/// The `δ` used to trade the density estimate into the subconvexity bound:
/// `10^{-8} m^{-3} log log C / log C`.
pub fn subconvex_delta_choice(c: f64, m: u32) -> Result<f64> {
    if c <= core::f64::consts::E {
        return Err(Error::Domain(format!(
            "delta choice needs log log C > 0, got C = {c}"
        )));
    }
    let m3 = (m as f64).powi(3);
    Ok(1e-8 / m3 * c.ln().ln() / c.ln())
}
