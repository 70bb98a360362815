//! Elementary prime-arithmetic utilities.

use alloc::vec;
use alloc::vec::Vec;
// Float methods come from this trait in no_std builds; when a std-enabled
// dependency joins the graph the inherent methods shadow it.
#[allow(unused_imports)]
use num_traits::Float;

/// Primes up to and including `n`, by sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for p in 2..=n {
        if !composite[p] {
            out.push(p as u64);
            let mut q = p * p;
            while q <= n {
                composite[q] = true;
                q += p;
            }
        }
    }
    out
}

/// Smallest-prime-factor table for `0..=n`; entries 0 and 1 are 0.
pub fn spf_table(n: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

/// Factorization of `n` via a precomputed SPF table covering `n`.
pub fn factorize(mut n: u64, spf: &[u32]) -> Vec<(u64, u32)> {
    debug_assert!((n as usize) < spf.len());
    let mut out = Vec::new();
    while n > 1 {
        let p = spf[n as usize] as u64;
        let mut k = 0u32;
        while n % p == 0 {
            n /= p;
            k += 1;
        }
        out.push((p, k));
    }
    out
}

/// Factorization by trial division (no table required).
pub fn factorize_trial(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// True when `n` has no repeated prime factor.
pub fn is_squarefree(n: u64) -> bool {
    factorize_trial(n).iter().all(|&(_, k)| k == 1)
}

/// Squarefree integers in `[1, n]`.
pub fn squarefree_up_to(n: u64) -> Vec<u64> {
    (1..=n).filter(|&d| is_squarefree(d)).collect()
}

/// Prime powers `p^k` in the half-open window `(lo, hi]`, as `(p, k, p^k)`.
///
/// Needs nothing beyond primes up to `hi` for `k = 1` (via a segmented
/// mark-off) and up to `sqrt(hi)` for higher powers.
pub fn prime_powers_in(lo: u64, hi: u64) -> Vec<(u64, u32, u64)> {
    let mut out = Vec::new();
    if hi <= lo {
        return out;
    }
    // Higher powers first: p <= sqrt(hi).
    let root = (hi as f64).sqrt() as u64 + 1;
    let small = primes_up_to(root);
    for &p in &small {
        let mut pk = p * p;
        let mut k = 2u32;
        while pk <= hi {
            if pk > lo {
                out.push((p, k, pk));
            }
            match pk.checked_mul(p) {
                Some(next) => pk = next,
                None => break,
            }
            k += 1;
        }
    }
    // Primes in the window by segmented sieve.
    let len = (hi - lo) as usize;
    let mut comp = vec![false; len];
    for &p in &small {
        if p * p > hi {
            break;
        }
        let mut start = ((lo / p) + 1) * p;
        if start <= p {
            start = p * 2;
        }
        let mut q = start;
        while q <= hi {
            comp[(q - lo - 1) as usize] = true;
            q += p;
        }
    }
    for (i, &c) in comp.iter().enumerate() {
        let n = lo + 1 + i as u64;
        if !c && n >= 2 && (n <= root as u64 && small.binary_search(&n).is_ok() || n > root) {
            out.push((n, 1, n));
        }
    }
    out.sort_by_key(|&(_, _, pk)| pk);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_basics() {
        assert_eq!(primes_up_to(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert!(primes_up_to(1).is_empty());
    }

    #[test]
    fn spf_factorization() {
        let spf = spf_table(1000);
        assert_eq!(factorize(720, &spf), vec![(2, 4), (3, 2), (5, 1)]);
        assert_eq!(factorize_trial(720), vec![(2, 4), (3, 2), (5, 1)]);
    }

    #[test]
    fn squarefree_detection() {
        assert!(is_squarefree(30));
        assert!(!is_squarefree(12));
        assert_eq!(squarefree_up_to(10), vec![1, 2, 3, 5, 6, 7, 10]);
    }

    #[test]
    fn prime_powers_window_matches_direct_scan() {
        let (lo, hi) = (50u64, 200u64);
        let got = prime_powers_in(lo, hi);
        let mut expected = Vec::new();
        for n in lo + 1..=hi {
            let f = factorize_trial(n);
            if f.len() == 1 {
                expected.push((f[0].0, f[0].1, n));
            }
        }
        expected.sort_by_key(|&(_, _, pk)| pk);
        assert_eq!(got, expected);
    }
}
