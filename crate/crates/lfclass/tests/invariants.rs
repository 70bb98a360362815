//! Cross-module invariants, mostly exercised through random inputs.

use lfclass::lfunc::{euler_to_dirichlet, exp_identity_coeffs, lambda_from_coeffs, power_sum_of};
use lfclass::numerics::{integrate_cosh_weight, log_gamma};
use lfclass::C64;
use proptest::prelude::*;

fn complex_in_disc(r: f64) -> impl Strategy<Value = C64> {
    (0.0..1.0f64, 0.0..(2.0 * core::f64::consts::PI)).prop_map(move |(u, th)| {
        let rad = r * u.sqrt();
        C64::new(rad * th.cos(), rad * th.sin())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// exp-identity and Newton inversion are mutually inverse.
    #[test]
    fn newton_roundtrip(lams in prop::collection::vec(complex_in_disc(2.0), 1..20)) {
        let a = exp_identity_coeffs(&lams);
        let back = lambda_from_coeffs(&a);
        for (x, y) in lams.iter().zip(back.iter()) {
            prop_assert!((x - y).norm() < 1e-10 * (1.0 + x.norm()));
        }
    }

    /// The Euler-product expansion agrees with exponentiating power sums.
    #[test]
    fn product_vs_exp_identity(roots in prop::collection::vec(complex_in_disc(1.5), 0..=6)) {
        let j = 20usize;
        let via_product = euler_to_dirichlet(&roots, j);
        let lams: Vec<C64> = (1..=j as u32).map(|k| power_sum_of(&roots, k)).collect();
        let via_exp = exp_identity_coeffs(&lams);
        for (x, y) in via_product.iter().zip(via_exp.iter()) {
            prop_assert!((x - y).norm() < 1e-9 * (1.0 + x.norm()));
        }
    }

    /// Odd integrands against the cosh weight integrate to exactly zero;
    /// even ones match the doubled half-line value.
    #[test]
    fn cosh_weight_parity(c1 in -2.0..2.0f64, c3 in -1.0..1.0f64) {
        let odd = integrate_cosh_weight(|t| Ok(C64::new(c1 * t + c3 * t * t * t, 0.0))).unwrap();
        prop_assert_eq!(odd.value.re, 0.0);
        let even = integrate_cosh_weight(|t| Ok(C64::new(c1.abs() + t * t, 0.0))).unwrap();
        prop_assert!((even.value.re - (c1.abs() + 0.25)).abs() < 1e-9);
    }

    /// The gamma recurrence after exponentiation.
    #[test]
    fn gamma_recurrence(re in 0.1..8.0f64, im in -15.0..15.0f64) {
        let z = C64::new(re, im);
        let lhs = log_gamma(z + 1.0).unwrap().exp();
        let rhs = z * log_gamma(z).unwrap().exp();
        prop_assert!((lhs - rhs).norm() <= 1e-11 * rhs.norm().max(1e-12));
    }

    /// The cotangent kernel dominates its closed lower bound everywhere.
    #[test]
    fn cot_kernel_lower_bound(x in -0.5..0.5f64, y in -25.0..25.0f64) {
        prop_assume!(x != 0.0 || y != 0.0);
        let k = lfclass::jensen::cot_kernel(C64::new(x, y)).unwrap();
        let bound = (core::f64::consts::PI * x).cos() / (core::f64::consts::PI * y).cosh();
        prop_assert!(k >= bound - 1e-13);
    }

    /// Archimedean quotient at mirrored inputs never exceeds 1 on the
    /// diagonal ray, and is always finite and positive.
    #[test]
    fn archimedean_quotient_sane(
        z1 in complex_in_disc(5.0), z2 in complex_in_disc(5.0),
        w1 in complex_in_disc(5.0), w2 in complex_in_disc(5.0),
    ) {
        let shift = C64::new(0.75, 0.0); // keep real parts above -1/2
        let q = lfclass::lfunc::archimedean_quotient(
            z1 + shift, z2 + shift, w1 + shift, w2 + shift,
        );
        prop_assert!(q.is_finite() && q > 0.0);
        prop_assert!(q < 16.0);
    }
}

/// Multiplicativity of the assembled Dirichlet coefficients over coprime
/// arguments, on a synthetic degree-3 instance.
#[test]
fn coefficient_table_multiplicative_on_random_instance() {
    use lfclass::lfunc::{CoefficientTable, EulerData, GammaData, LFunctionSpec};
    let gamma = GammaData::new(
        2,
        vec![C64::new(0.0, 0.4), C64::new(0.2, -0.4), C64::new(0.1, 0.0)],
        3,
        0,
        C64::new(1.0, 0.0),
    )
    .unwrap();
    let spec = LFunctionSpec::new(
        gamma,
        EulerData::Uniform(vec![
            C64::new(0.4, 0.3),
            C64::new(-0.2, 0.5),
            C64::new(0.3, -0.6),
        ]),
        u64::MAX,
        "deg3".into(),
    )
    .unwrap();
    let table = CoefficientTable::build(&spec, 20_000).unwrap();
    let pairs = [
        (7u64, 8u64),
        (9, 25),
        (11, 13),
        (4, 15),
        (49, 64),
        (27, 121),
    ];
    for (a, b) in pairs {
        let lhs = table.a(a * b);
        let rhs = table.a(a) * table.a(b);
        assert!((lhs - rhs).norm() < 1e-11, "({a}, {b})");
    }
}
