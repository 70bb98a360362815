//! Truncated power-series arithmetic over complex coefficients.
//!
//! Small utilities shared by the coefficient algebra and by test oracles:
//! products, exp, and log of series normalized at the constant term.

use alloc::vec;
use alloc::vec::Vec;

use crate::C64;

/// Product of two truncated series, truncated to `trunc + 1` coefficients.
pub fn mul(a: &[C64], b: &[C64], trunc: usize) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); trunc + 1];
    for (i, ai) in a.iter().enumerate().take(trunc + 1) {
        for (j, bj) in b.iter().enumerate().take(trunc + 1 - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Exponential of a series with vanishing constant term.
///
/// With `l[0] = 0`, returns `a = exp(l)` via the recurrence
/// `n a_n = sum_{k=1}^{n} k l_k a_{n-k}`.
pub fn exp(l: &[C64]) -> Vec<C64> {
    let n = l.len();
    let mut a = vec![C64::new(0.0, 0.0); n];
    if n == 0 {
        return a;
    }
    debug_assert!(l[0].norm() == 0.0, "series::exp needs l[0] = 0");
    a[0] = C64::new(1.0, 0.0);
    for m in 1..n {
        let mut acc = C64::new(0.0, 0.0);
        for k in 1..=m {
            acc += k as f64 * l[k] * a[m - k];
        }
        a[m] = acc / m as f64;
    }
    a
}

/// Logarithm of a series with constant term 1.
///
/// Inverse of [`exp`]: `n l_n = n a_n - sum_{k=1}^{n-1} k l_k a_{n-k}`.
pub fn log(a: &[C64]) -> Vec<C64> {
    let n = a.len();
    let mut l = vec![C64::new(0.0, 0.0); n];
    if n == 0 {
        return l;
    }
    debug_assert!((a[0] - 1.0).norm() < 1e-12, "series::log needs a[0] = 1");
    for m in 1..n {
        let mut acc = m as f64 * a[m];
        for k in 1..m {
            acc -= k as f64 * l[k] * a[m - k];
        }
        l[m] = acc / m as f64;
    }
    l
}

/// Coefficients of `(1 - c X^e)^{-1}` up to degree `trunc`.
pub fn geometric(c: C64, e: usize, trunc: usize) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); trunc + 1];
    let mut p = C64::new(1.0, 0.0);
    let mut idx = 0usize;
    while idx <= trunc {
        out[idx] = p;
        p *= c;
        idx += e;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn exp_log_roundtrip() {
        let l = [
            c(0.0, 0.0),
            c(0.3, -0.2),
            c(-1.1, 0.4),
            c(0.05, 0.0),
            c(0.0, 0.9),
        ];
        let a = exp(&l);
        let back = log(&a);
        for (x, y) in l.iter().zip(back.iter()) {
            assert!((x - y).norm() < 1e-13);
        }
    }

    #[test]
    fn exp_of_harmonic_weights_is_geometric() {
        // exp(sum X^k / k) = 1/(1-X): all coefficients 1.
        let l: Vec<C64> = (0..12)
            .map(|k| {
                if k == 0 {
                    c(0.0, 0.0)
                } else {
                    c(1.0 / k as f64, 0.0)
                }
            })
            .collect();
        let a = exp(&l);
        for x in a {
            assert!((x - 1.0).norm() < 1e-12);
        }
    }

    #[test]
    fn mul_against_geometric_pair() {
        // (1-cX)^{-1} (1+cX) has coefficients c^n + c^n = telescoping check.
        let g = geometric(c(0.5, 0.2), 1, 8);
        let other = [c(1.0, 0.0), c(-0.5, -0.2)];
        let prod = mul(&g, &other, 8);
        assert!((prod[0] - 1.0).norm() < 1e-15);
        for x in &prod[1..] {
            assert!(x.norm() < 1e-15);
        }
    }
}
