//! Nontrivial zeros: location, box counts, and Hadamard-side identities.
//!
//! Zeros are located by scanning the rotated completed function on the
//! critical line for sign changes and refining by bisection; every scan is
//! cross-validated by an argument-principle count over the enclosing box,
//! computed as the winding of the completed function along the contour
//! (adaptive phase tracking, so no logarithmic derivative is needed and
//! removable corner singularities cause no trouble). A box/line mismatch
//! is an error, never silently accepted.

use alloc::format;
use alloc::vec::Vec;
// Float methods come from this trait in no_std builds; when a std-enabled
// dependency joins the graph the inherent methods shadow it.
#[allow(unused_imports)]
use num_traits::Float;

use crate::dirichlet::{completed_l, evaluate_l_jet, CriticalLine, DirichletCharacter};
use crate::lfunc::analytic_conductor;
use crate::numerics::{digamma, LN_PI};
use crate::{Error, Result, C64};

/// A located nontrivial zero `ρ = β + iγ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroRecord {
    pub beta: f64,
    pub gamma: f64,
    /// Uncertainty of the ordinate, in `γ` units: bracket width plus the
    /// residual completed value divided by the local slope.
    pub residual: f64,
    pub multiplicity: u32,
}

/// A rectangle in the critical strip.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroBox {
    pub sigma_min: f64,
    pub sigma_max: f64,
    pub t_min: f64,
    pub t_max: f64,
}

impl ZeroBox {
    pub fn new(sigma_min: f64, sigma_max: f64, t_min: f64, t_max: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&sigma_min)
            || !(0.0..=1.0).contains(&sigma_max)
            || sigma_min >= sigma_max
            || t_min >= t_max
        {
            return Err(Error::Domain(format!(
                "zero box [{sigma_min}, {sigma_max}] x [{t_min}, {t_max}] is empty or out of range"
            )));
        }
        Ok(ZeroBox {
            sigma_min,
            sigma_max,
            t_min,
            t_max,
        })
    }
}

/// Phase increment along a contour segment, subdividing until each step
/// rotates by less than a quarter turn.
fn phase_walk(
    chi: &DirichletCharacter,
    a: C64,
    b: C64,
    va: C64,
    vb: C64,
    depth: u32,
) -> Result<f64> {
    let ratio = vb / va;
    if ratio.re > 0.0 && ratio.re.is_finite() && ratio.im.is_finite() {
        return Ok(ratio.arg());
    }
    if depth >= 48 {
        return Err(Error::Precision(format!(
            "phase tracking exhausted near contour point {a}; zero too close to the contour"
        )));
    }
    let (mid, vm) = sample_on_edge(chi, 0.5 * (a + b), (b - a) * 0.25, true)?;
    if vm.norm() < 1e-290 {
        return Err(Error::Precision(format!(
            "completed value vanishes on the contour at {mid}"
        )));
    }
    Ok(phase_walk(chi, a, mid, va, vm, depth + 1)? + phase_walk(chi, mid, b, vm, vb, depth + 1)?)
}

/// Completed value at a contour sample; a sample landing exactly on a
/// gamma-factor pole (e.g. s = 0 for an even character, where the trivial
/// zero of L cancels it analytically) is shifted slightly along the edge.
fn sample_on_edge(
    chi: &DirichletCharacter,
    pos: C64,
    step: C64,
    can_shift: bool,
) -> Result<(C64, C64)> {
    match completed_l(chi, pos) {
        Ok(v) => Ok((pos, v)),
        Err(Error::Pole(_)) | Err(Error::Domain(_)) if can_shift => {
            let shifted = pos + step * 0.1407;
            Ok((shifted, completed_l(chi, shifted)?))
        }
        Err(e) => Err(e),
    }
}

fn edge_phase(chi: &DirichletCharacter, a: C64, b: C64, base: usize) -> Result<f64> {
    let n = base.max(4);
    let step = (b - a) / n as f64;
    let mut total = 0.0;
    let (mut prev_pos, mut prev_val) = sample_on_edge(chi, a, step, false)?;
    for i in 1..=n {
        let pos = a + (b - a) * (i as f64 / n as f64);
        let (pos, val) = sample_on_edge(chi, pos, step, i < n)?;
        total += phase_walk(chi, prev_pos, pos, prev_val, val, 0)?;
        prev_pos = pos;
        prev_val = val;
    }
    Ok(total)
}

fn winding(chi: &DirichletCharacter, bx: &ZeroBox, samples_per_unit: f64) -> Result<f64> {
    let c1 = C64::new(bx.sigma_min, bx.t_min);
    let c2 = C64::new(bx.sigma_max, bx.t_min);
    let c3 = C64::new(bx.sigma_max, bx.t_max);
    let c4 = C64::new(bx.sigma_min, bx.t_max);
    let mut total = 0.0;
    for (a, b) in [(c1, c2), (c2, c3), (c3, c4), (c4, c1)] {
        let len = (b - a).norm();
        total += edge_phase(chi, a, b, (len * samples_per_unit).ceil() as usize)?;
    }
    Ok(total / (2.0 * core::f64::consts::PI))
}

/// Number of nontrivial zeros inside the box, by the argument principle.
///
/// The winding is computed at two contour resolutions; it must be stable
/// under halving and within a quarter of an integer. Edges landing too
/// close to a zero are nudged outward in `t` before failing.
pub fn count_zeros(chi: &DirichletCharacter, bx: &ZeroBox) -> Result<u32> {
    let mut nudge = 0.0f64;
    let mut last_err = None;
    for attempt in 0..4 {
        let bx_n = ZeroBox {
            sigma_min: bx.sigma_min,
            sigma_max: bx.sigma_max,
            t_min: bx.t_min - nudge,
            t_max: bx.t_max + nudge,
        };
        match try_count(chi, &bx_n) {
            Ok(c) => return Ok(c),
            Err(e) => {
                last_err = Some(e);
                nudge = 1e-4 * (attempt + 1) as f64;
            }
        }
    }
    Err(match last_err.unwrap() {
        Error::Precision(m) => Error::Precision(format!("nudge failure: {m}")),
        e => e,
    })
}

fn try_count(chi: &DirichletCharacter, bx: &ZeroBox) -> Result<u32> {
    let mut density = 4.0;
    let v1 = winding(chi, bx, density)?;
    for _ in 0..3 {
        let v2 = winding(chi, bx, density * 2.0)?;
        let nearest = v1.round();
        if (v1 - nearest).abs() <= 0.25 && (v2 - v1).abs() < 0.05 {
            if nearest < -0.5 {
                return Err(Error::Precision(format!(
                    "negative winding {nearest} around a box; contour inverted"
                )));
            }
            return Ok(nearest as u32);
        }
        density *= 2.0;
    }
    Err(Error::Precision(format!(
        "contour resolution: winding {v1} did not stabilize within 0.25 of an integer"
    )))
}

fn bisect_zero(line: &CriticalLine, mut lo: f64, mut hi: f64) -> Result<ZeroRecord> {
    let (mut zlo, _) = line.z(lo)?;
    let (zhi, _) = line.z(hi)?;
    let slope = ((zhi - zlo) / (hi - lo)).abs().max(1e-300);
    for _ in 0..64 {
        if hi - lo < 1e-13 * (1.0 + lo.abs()) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let (zm, _) = line.z(mid)?;
        if zm == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if (zm > 0.0) == (zlo > 0.0) {
            lo = mid;
            zlo = zm;
        } else {
            hi = mid;
        }
    }
    let gamma = 0.5 * (lo + hi);
    let (zg, _) = line.z(gamma)?;
    Ok(ZeroRecord {
        beta: 0.5,
        gamma,
        residual: (hi - lo) + zg.abs() / slope,
        multiplicity: 1,
    })
}

/// All zeros with `|γ| <= t_max`, by sign-change scanning on the critical
/// line, each run validated against an argument-principle box count.
pub fn locate_zeros(chi: &DirichletCharacter, t_max: f64) -> Result<Vec<ZeroRecord>> {
    locate_zeros_with_step(chi, t_max, 0.045)
}

pub fn locate_zeros_with_step(
    chi: &DirichletCharacter,
    t_max: f64,
    step: f64,
) -> Result<Vec<ZeroRecord>> {
    if !(0.0 < t_max && t_max <= 100.0) {
        return Err(Error::Domain(format!(
            "zero location supports heights in (0, 100]; asked for {t_max}"
        )));
    }
    let line = CriticalLine::new(chi)?;
    let scan_to = t_max + 1.0;
    let mut h = step;
    for _ in 0..3 {
        let records = scan_line(&line, scan_to, h)?;
        // Validation cut: a height at least t_max, away from every zero.
        let mut t_v = t_max;
        if records.iter().any(|r| (r.gamma.abs() - t_v).abs() < 0.01) {
            let below = records
                .iter()
                .map(|r| r.gamma.abs())
                .filter(|g| *g <= t_max)
                .fold(0.0, f64::max);
            let mut above = records
                .iter()
                .map(|r| r.gamma.abs())
                .filter(|g| *g > t_max)
                .fold(scan_to, f64::min);
            if above <= below {
                above = scan_to;
            }
            t_v = 0.5 * (below + above);
        }
        let bx = ZeroBox::new(0.0, 1.0, -t_v, t_v)?;
        let counted = count_zeros(chi, &bx)?;
        let listed = records.iter().filter(|r| r.gamma.abs() < t_v).count();
        if counted as usize == listed {
            let mut out: Vec<ZeroRecord> = records
                .into_iter()
                .filter(|r| r.gamma.abs() <= t_max)
                .collect();
            out.sort_by(|a, b| a.gamma.partial_cmp(&b.gamma).unwrap());
            return Ok(out);
        }
        h *= 0.25;
    }
    Err(Error::Data(format!(
        "incomplete scan for modulus {} index {}: box count disagrees with the line scan",
        chi.modulus, chi.index
    )))
}

fn scan_line(line: &CriticalLine, scan_to: f64, h: f64) -> Result<Vec<ZeroRecord>> {
    let n = (2.0 * scan_to / h).ceil() as usize;
    let mut records = Vec::new();
    let mut prev_t = -scan_to;
    let (mut prev_z, _) = line.z(prev_t)?;
    for i in 1..=n {
        let t = -scan_to + 2.0 * scan_to * (i as f64) / (n as f64);
        let (z, _) = line.z(t)?;
        if prev_z == 0.0 {
            records.push(ZeroRecord {
                beta: 0.5,
                gamma: prev_t,
                residual: 1e-15,
                multiplicity: 1,
            });
        } else if (z > 0.0) != (prev_z > 0.0) && z != 0.0 {
            records.push(bisect_zero(line, prev_t, t)?);
        }
        prev_t = t;
        prev_z = z;
    }
    Ok(records)
}

/// Smooth one-sided zero-count model `(t/2π) ln(qt/(2πe))`.
fn smooth_count(q: u64, t: f64) -> f64 {
    let x = q as f64 * t / (2.0 * core::f64::consts::PI);
    t / (2.0 * core::f64::consts::PI) * (x.ln() - 1.0)
}

/// One-sided zero density `(1/2π) ln(qt/2π)`, clamped at zero.
fn density(q: u64, t: f64) -> f64 {
    let x = q as f64 * t / (2.0 * core::f64::consts::PI);
    (x.ln() / (2.0 * core::f64::consts::PI)).max(0.0)
}

/// Constant offset of the smooth count fitted to located ordinates of one
/// side (positive values, ascending).
fn fit_offset(q: u64, side: &[f64]) -> f64 {
    if side.is_empty() {
        return 0.0;
    }
    let mut acc = 0.0;
    for (i, g) in side.iter().enumerate() {
        acc += (i as f64 + 0.5) - smooth_count(q, *g);
    }
    acc / side.len() as f64
}

/// Tail `Σ_{γ > T} g(γ)` over one side of the zero set, estimated by the
/// density model with a fluctuation correction pinned to the located count
/// at the cut.
pub(crate) fn side_tail(q: u64, side: &[f64], t_cut: f64, g: impl Fn(f64) -> f64) -> f64 {
    let mut integral = 0.0;
    let mut lo = t_cut;
    while lo < 1e8 {
        let hi = lo * 2.0;
        integral += simpson(|t| g(t) * density(q, t), lo, hi, 64);
        lo = hi;
    }
    let c = fit_offset(q, side);
    let n_loc = side.iter().filter(|x| **x <= t_cut).count() as f64;
    let s_at_cut = n_loc - smooth_count(q, t_cut) - c;
    integral - g(t_cut) * s_at_cut
}

/// Complex-valued variant of [`side_tail`].
pub(crate) fn side_tail_complex(q: u64, side: &[f64], t_cut: f64, g: impl Fn(f64) -> C64) -> C64 {
    let re = side_tail(q, side, t_cut, |t| g(t).re);
    let im = side_tail(q, side, t_cut, |t| g(t).im);
    C64::new(re, im)
}

fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + h * i as f64);
    }
    acc * h / 3.0
}

pub(crate) fn split_sides(zeros: &[ZeroRecord]) -> (Vec<f64>, Vec<f64>) {
    let mut plus: Vec<f64> = zeros
        .iter()
        .filter(|r| r.gamma > 0.0)
        .map(|r| r.gamma)
        .collect();
    let mut minus: Vec<f64> = zeros
        .iter()
        .filter(|r| r.gamma <= 0.0)
        .map(|r| -r.gamma)
        .collect();
    plus.sort_by(|a, b| a.partial_cmp(b).unwrap());
    minus.sort_by(|a, b| a.partial_cmp(b).unwrap());
    (plus, minus)
}

/// Both sides of the Hadamard real-part identity at `s`: the zero side
/// `Σ_ρ Re 1/(s−ρ)` (truncated sum plus density tail) against the gamma,
/// Dirichlet-series and pole side.
#[derive(Debug, Clone, PartialEq)]
pub struct HadamardReport {
    pub zero_sum: f64,
    pub zero_tail: f64,
    pub lhs_total: f64,
    pub rhs_gamma: f64,
    pub rhs_log_deriv: f64,
    pub rhs_poles: f64,
    pub rhs_total: f64,
    pub gap: f64,
    pub tail_cut: f64,
}

pub fn hadamard_identity_check(
    chi: &DirichletCharacter,
    s: C64,
    zeros: &[ZeroRecord],
    tail_t: f64,
) -> Result<HadamardReport> {
    if s.re < 1.5 {
        return Err(Error::Domain(format!(
            "hadamard check needs Re s >= 1.5, got {}",
            s.re
        )));
    }
    // Coverage sanity: the located count to the cut must sit near the
    // smooth two-sided model (a short list would silently skew the tail).
    let q = chi.modulus;
    let located = zeros.iter().filter(|r| r.gamma.abs() <= tail_t).count() as f64;
    let expected = 2.0 * smooth_count(q, tail_t);
    if located + (4.0 + 0.1 * expected.abs()) < expected {
        return Err(Error::Data(format!(
            "zero list holds {located} ordinates below {tail_t}; the density model expects about {expected:.1}"
        )));
    }
    let g = chi.gamma_data()?;

    let mut zero_sum = 0.0;
    for r in zeros.iter().filter(|r| r.gamma.abs() <= tail_t) {
        let rho = C64::new(r.beta, r.gamma);
        zero_sum += (s - rho).inv().re;
    }
    let (plus, minus) = split_sides(zeros);
    let gp = |t: f64| (s - C64::new(0.5, t)).inv().re;
    let gm = |t: f64| (s - C64::new(0.5, -t)).inv().re;
    let zero_tail = side_tail(q, &plus, tail_t, gp) + side_tail(q, &minus, tail_t, gm);

    let rhs_gamma = 0.5 * ((g.conductor as f64).ln() - g.degree as f64 * LN_PI)
        + g.mu
            .iter()
            .map(|mu| digamma((s + mu) / 2.0).map(|v| 0.5 * v.re))
            .sum::<Result<f64>>()?;
    let (l, dl) = evaluate_l_jet(chi, s)?;
    let rhs_log_deriv = (dl / l).re;
    let r = g.pole_order as f64;
    let rhs_poles = (r * s.inv() + r * (s - 1.0).inv()).re;
    let rhs_total = rhs_gamma + rhs_log_deriv + rhs_poles;
    let lhs_total = zero_sum + zero_tail;
    Ok(HadamardReport {
        zero_sum,
        zero_tail,
        lhs_total,
        rhs_gamma,
        rhs_log_deriv,
        rhs_poles,
        rhs_total,
        gap: lhs_total - rhs_total,
        tail_cut: tail_t,
    })
}

/// Low-height counts and the two weighted zero-sum bounds, each side
/// computed; the unknown `O(m)`/`O(m²)` slack is reported through margins.
#[derive(Debug, Clone, PartialEq)]
pub struct LowHeightReport {
    /// Count of zeros with `|γ| <= 6`.
    pub n_low: u32,
    /// `(4/15) log C`.
    pub four_fifteenths_log_c: f64,
    pub margin_count: f64,
    /// `Σ_ρ (1+η−β)/|1+η+it−ρ|²` with its density tail.
    pub weighted_sum: f64,
    /// `2m log C + m log(2+|t|) + 2m/η`.
    pub weighted_bound: f64,
    pub margin_weighted: f64,
    /// Count of zeros within `η` of `1 + it`.
    pub disc_count: u32,
    /// `10 m η log C + 5 m η log(2+|t|)`.
    pub disc_bound: f64,
    pub margin_disc: f64,
    pub t_probe: f64,
    pub eta: f64,
}

pub fn low_height_report(
    chi: &DirichletCharacter,
    zeros: &[ZeroRecord],
    t_probe: f64,
    eta: f64,
) -> Result<LowHeightReport> {
    if !(0.0 < eta && eta <= 1.0) {
        return Err(Error::Domain(format!("eta = {eta} outside (0, 1]")));
    }
    let max_located = zeros.iter().map(|r| r.gamma.abs()).fold(0.0, f64::max);
    if max_located < 6.0 {
        return Err(Error::Data(format!(
            "zero list reaches only {max_located:.2}; need height 6"
        )));
    }
    let g = chi.gamma_data()?;
    let m = g.degree as f64;
    let log_c = analytic_conductor(&g).ln();

    let n_low = zeros.iter().filter(|r| r.gamma.abs() <= 6.0).count() as u32;
    let four_fifteenths_log_c = 4.0 / 15.0 * log_c;

    let s = C64::new(1.0 + eta, t_probe);
    let weight = |rho: C64| (1.0 + eta - rho.re) / (s - rho).norm_sqr();
    let mut weighted_sum = 0.0;
    for r in zeros {
        weighted_sum += weight(C64::new(r.beta, r.gamma));
    }
    let (plus, minus) = split_sides(zeros);
    let cut = max_located;
    weighted_sum += side_tail(chi.modulus, &plus, cut, |t| weight(C64::new(0.5, t)))
        + side_tail(chi.modulus, &minus, cut, |t| weight(C64::new(0.5, -t)));
    let weighted_bound = 2.0 * m * log_c + m * (2.0 + t_probe.abs()).ln() + 2.0 * m / eta;

    let center = C64::new(1.0, t_probe);
    let disc_count = zeros
        .iter()
        .filter(|r| (C64::new(r.beta, r.gamma) - center).norm() <= eta)
        .count() as u32;
    let disc_bound = 10.0 * m * eta * log_c + 5.0 * m * eta * (2.0 + t_probe.abs()).ln();

    Ok(LowHeightReport {
        n_low,
        four_fifteenths_log_c,
        margin_count: n_low as f64 - four_fifteenths_log_c,
        weighted_sum,
        weighted_bound,
        margin_weighted: weighted_bound - weighted_sum,
        disc_count,
        disc_bound,
        margin_disc: disc_bound - disc_count as f64,
        t_probe,
        eta,
    })
}
