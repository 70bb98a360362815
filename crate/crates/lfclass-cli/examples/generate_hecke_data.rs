//! Regenerates `data/delta_ap.txt`: normalized Hecke eigenvalues
//! `a_p = tau(p) / p^{11/2}` of the weight-12 level-1 cusp form, for
//! primes up to 20000.
//!
//! The tau values come from the 24th power of the pentagonal-number
//! series, computed exactly in i128 (the largest intermediate is far
//! below the i128 range at this size).
//!
//! Usage: cargo run --release -p lfclass-cli --example generate_hecke_data

use std::fmt::Write as _;

const LIMIT: usize = 20_000;

fn pentagonal_series(n: usize) -> Vec<i128> {
    // Π (1 - q^m) = Σ_k (-1)^k q^{k(3k-1)/2} over all integers k.
    let mut e = vec![0i128; n];
    e[0] = 1;
    let mut k = 1i64;
    loop {
        let mut hit = false;
        for g in [k * (3 * k - 1) / 2, k * (3 * k + 1) / 2] {
            if (g as usize) < n {
                e[g as usize] += if k % 2 == 0 { 1 } else { -1 };
                hit = true;
            }
        }
        if !hit {
            break;
        }
        k += 1;
    }
    e
}

fn sparse_multiply(dense: &[i128], sparse: &[(usize, i128)]) -> Vec<i128> {
    let n = dense.len();
    let mut out = vec![0i128; n];
    for &(idx, coeff) in sparse {
        for j in 0..n - idx {
            out[idx + j] += coeff * dense[j];
        }
    }
    out
}

fn main() {
    let e = pentagonal_series(LIMIT);
    let sparse: Vec<(usize, i128)> = e
        .iter()
        .enumerate()
        .filter(|&(_, c)| *c != 0)
        .map(|(i, c)| (i, *c))
        .collect();
    let mut f = vec![0i128; LIMIT];
    f[0] = 1;
    for _ in 0..24 {
        f = sparse_multiply(&f, &sparse);
    }
    // tau(n) = coefficient of q^{n-1} in Π(1-q^m)^{24}.
    let tau = |n: usize| f[n - 1];
    assert_eq!(tau(1), 1);
    assert_eq!(tau(2), -24);
    assert_eq!(tau(3), 252);
    assert_eq!(tau(4), -1472);
    assert_eq!(tau(5), 4830);
    assert_eq!(tau(6), (-24) * 252, "multiplicativity at 6");
    assert_eq!(tau(7), -16744);
    assert_eq!(tau(11), 534_612);

    let mut out = String::new();
    writeln!(
        out,
        "# Normalized Hecke eigenvalues a_p = tau(p)/p^(11/2), weight 12, level 1"
    )
    .unwrap();
    writeln!(out, "# One record per line: p,a_p").unwrap();
    let mut sieve = vec![true; LIMIT + 1];
    for p in 2..=LIMIT {
        if sieve[p] {
            let mut m = p * p;
            while m <= LIMIT {
                sieve[m] = false;
                m += p;
            }
            let a = tau(p) as f64 / (p as f64).powf(5.5);
            assert!(a.abs() <= 2.0, "Ramanujan bound violated at {p}: {a}");
            writeln!(out, "{p},{a:.17}").unwrap();
        }
    }
    std::fs::write("crates/lfclass-cli/data/delta_ap.txt", out).unwrap();
    println!("wrote crates/lfclass-cli/data/delta_ap.txt");
}
