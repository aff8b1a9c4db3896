use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use taustar::extremal::{build_f_n, growth_bounds, table1_function, tau_tilde, ExtremalFunction};
use taustar::series::PowerSeries;

fn logderiv_gap(f: &ExtremalFunction, psi_minus_one: &PowerSeries) -> f64 {
    // z f' / f computed independently of the stored log-derivative
    let zf_prime = f.f.derivative().with_order(f.order()).shift_up();
    let ratio = zf_prime.shift_down().unwrap().div(&f.f.shift_down().unwrap()).unwrap();
    let n = ratio.order().saturating_sub(1);
    (0..=n)
        .map(|k| {
            let expect = if k == 0 { 1.0 } else { psi_minus_one.coeff(k) };
            (ratio.coeff(k) - expect).abs()
        })
        .fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn f_n_leading_coefficients(n in 2usize..12) {
        let f = build_f_n(n, 40).unwrap();
        for k in 2..n {
            prop_assert_eq!(f.coeff(k), 0.0);
        }
        prop_assert!((f.coeff(n) - 1.0 / (n - 1) as f64).abs() <= 1e-15);
        let psi = PowerSeries::arctan(39).compose(&PowerSeries::monomial(39, n - 1, 1.0)).unwrap();
        prop_assert!(logderiv_gap(&f, &psi) <= 1e-11);
    }

    #[test]
    fn growth_bounds_ordered_and_monotone(r in 0.01f64..0.98) {
        let g = growth_bounds(r, 48).unwrap();
        let h = growth_bounds(r + 0.01, 48).unwrap();
        prop_assert!(g.lower <= r && r <= g.upper);
        prop_assert!(g.lower < h.lower && g.upper < h.upper);
    }
}

#[test]
fn tau_tilde_round_trip() {
    let f = tau_tilde(48).unwrap();
    assert!(logderiv_gap(&f, &PowerSeries::arctan(47)) <= 1e-11);
}

#[test]
fn table1_members_dominated_by_tau_tilde() {
    let bound = |r: f64| growth_bounds(r, 48).unwrap().upper / r;
    for idx in 1..=3 {
        let f = table1_function(idx, 48).unwrap();
        for r in [0.3, 0.6, 0.9] {
            let b = bound(r);
            for k in 0..720 {
                let z = Complex64::from_polar(r, 2.0 * PI * k as f64 / 720.0);
                let v = (f.f.eval(z) / z).norm();
                assert!(v <= b + 1e-9, "f{idx} r={r}: {v} > {b}");
            }
        }
    }
}
