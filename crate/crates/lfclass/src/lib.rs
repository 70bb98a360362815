//! Numerical toolkit for an axiomatic class of degree-`m` L-functions.
//!
//! The crate is organized around the data of such an L-function (Euler
//! roots at each prime, gamma-factor shifts, conductor, pole order, root
//! number) and the analytic machinery one can verify numerically on top of
//! it:
//!
//! * [`numerics`] — complex log-gamma, digamma, Hurwitz zeta with analytic
//!   continuation, and weighted adaptive quadrature;
//! * [`lfunc`] — the class data model, the λ ↔ a coefficient algebra,
//!   analytic conductors, and averaged coefficient checks;
//! * [`dirichlet`] — Dirichlet characters and whole-plane evaluation of
//!   their L-functions through the Hurwitz decomposition;
//! * [`zeros`] — zero location on the critical line, argument-principle
//!   box counts, and Hadamard-factorization identities;
//! * [`turan`] — the power-sum method, the zero-detector inequalities it
//!   feeds, and Gallagher's Plancherel-type bound;
//! * [`jensen`] — the cotangent-kernel Jensen identity on the critical
//!   strip and the convexity decomposition of the central value;
//! * [`rankin_selberg`] — local Rankin-Selberg factors built from segment
//!   data over supercuspidal classes, and their coefficient inequalities;
//! * [`sieve`] — smooth bumps, Mellin inversion, smoothed divisor sums,
//!   and the Selberg-sieve upper bound for rough-number sums.
//!
//! Everything is pure computation over `f64`/`Complex64`; the crate is
//! `no_std` (with `alloc`) and all operations are safe to call from any
//! number of threads. IO, file formats, and the command-line surface live
//! in the companion `lfclass-cli` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod arith;
pub mod dirichlet;
mod error;
pub mod jensen;
pub mod lfunc;
pub mod numerics;
pub mod rankin_selberg;
pub mod series;
pub mod sieve;
pub mod turan;
pub mod zeros;

pub use error::{Error, Result};

/// Complex double-precision scalar used throughout the crate.
pub type C64 = num_complex::Complex64;
