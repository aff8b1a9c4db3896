use num_complex::Complex64;
use proptest::prelude::*;
use taustar::series::{ps_arith, ArithOp, PowerSeries};

const N: usize = 12;

fn coeffs(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-2.0f64..2.0, n + 1)
}

/// Coefficients decaying like 0.5^k, so order-48 truncation is negligible at |z| ≤ 0.9.
fn decaying(n: usize) -> impl Strategy<Value = PowerSeries> {
    prop::collection::vec(-1.0f64..1.0, n + 1)
        .prop_map(move |v| PowerSeries::from_fn(n, |k| v[k] * 0.5f64.powi(k as i32)))
}

fn max_rel_gap(a: &PowerSeries, b: &PowerSeries) -> f64 {
    let scale = a.coeffs().iter().chain(b.coeffs()).fold(1.0f64, |m, c| m.max(c.abs()));
    a.coeffs().iter().zip(b.coeffs()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max) / scale
}

proptest! {
    #[test]
    fn mul_commutes(a in coeffs(N), b in coeffs(N)) {
        let (a, b) = (PowerSeries::new(a).unwrap(), PowerSeries::new(b).unwrap());
        prop_assert!(max_rel_gap(&a.mul(&b).unwrap(), &b.mul(&a).unwrap()) <= 1e-13);
    }

    #[test]
    fn mul_associates(a in coeffs(N), b in coeffs(N), c in coeffs(N)) {
        let (a, b, c) = (PowerSeries::new(a).unwrap(), PowerSeries::new(b).unwrap(), PowerSeries::new(c).unwrap());
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert!(max_rel_gap(&left, &right) <= 1e-13);
    }

    #[test]
    fn exp_of_sum_is_product(mut f in coeffs(N), mut g in coeffs(N)) {
        f[0] = 0.0;
        g[0] = 0.0;
        let (f, g) = (PowerSeries::new(f).unwrap(), PowerSeries::new(g).unwrap());
        let lhs = f.add(&g).unwrap().exp().unwrap();
        let rhs = f.exp().unwrap().mul(&g.exp().unwrap()).unwrap();
        prop_assert!(max_rel_gap(&lhs, &rhs) <= 1e-11);
    }

    #[test]
    fn compose_with_z_is_identity(a in coeffs(N)) {
        let f = PowerSeries::new(a).unwrap();
        prop_assert_eq!(f.compose(&PowerSeries::z(N)).unwrap(), f);
    }

    #[test]
    fn integrate_then_differentiate(mut a in coeffs(N)) {
        a[0] = 0.0;
        let f = PowerSeries::new(a).unwrap();
        // d/dz ∫ f/t = f/z, so z · (d/dz ∫ f/t) = f
        let back = f.integrate_over_t().unwrap().derivative().with_order(N).shift_up();
        prop_assert!(max_rel_gap(&back, &f) <= 1e-15);
    }

    #[test]
    fn eval_of_product(a in decaying(48), b in decaying(48), r in 0.0f64..0.9, t in 0.0f64..6.3) {
        let z = Complex64::from_polar(r, t);
        let prod = a.mul(&b).unwrap().eval(z);
        let expect = a.eval(z) * b.eval(z);
        prop_assert!((prod - expect).norm() <= 1e-11 * expect.norm().max(1.0));
    }

    #[test]
    fn order_mismatch_is_an_error(a in coeffs(4), b in coeffs(5)) {
        let (a, b) = (PowerSeries::new(a).unwrap(), PowerSeries::new(b).unwrap());
        for op in [ArithOp::Add, ArithOp::Sub, ArithOp::Mul] {
            prop_assert!(ps_arith(&a, &b, op).is_err());
        }
    }
}

#[test]
fn arctan_square_coefficients() {
    let a = PowerSeries::arctan(6);
    let sq = a.mul(&a).unwrap();
    // hand convolution of 1, 0, −1/3, 0, 1/5
    let expect = [0.0, 0.0, 1.0, 0.0, -2.0 / 3.0, 0.0, 23.0 / 45.0];
    for (k, e) in expect.iter().enumerate() {
        assert!((sq.coeff(k) - e).abs() < 1e-15, "z^{k}");
    }
}
