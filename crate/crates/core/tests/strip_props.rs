use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;
use proptest::prelude::*;
use taustar::strip_domain::{
    arctan, convexity_expression, disk_in_strip, janowski_member, re_range_on_circle, re_range_sampled,
    tau_eval, JanowskiParams,
};

fn disk_point() -> impl Strategy<Value = Complex64> {
    (0.0f64..0.9999, 0.0f64..2.0 * PI).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

proptest! {
    #[test]
    fn image_lies_in_the_strip(z in disk_point()) {
        let w = tau_eval(z).unwrap();
        prop_assert!(w.re > 1.0 - FRAC_PI_4 && w.re < 1.0 + FRAC_PI_4);
        prop_assert!(w.re > 0.0);
    }

    #[test]
    fn arctan_matches_library_atan(z in disk_point()) {
        let ours = arctan(z).unwrap();
        prop_assert!((ours - z.atan()).norm() <= 1e-14);
    }

    #[test]
    fn conjugation_symmetry(z in disk_point()) {
        let a = tau_eval(z.conj()).unwrap();
        let b = tau_eval(z).unwrap().conj();
        prop_assert!((a - b).norm() <= 1e-15);
    }

    #[test]
    fn convexity_proxy_positive(z in disk_point()) {
        let v = convexity_expression(z);
        prop_assert!(v.re > 0.0);
    }

    #[test]
    fn convexity_proxy_matches_finite_differences(r in 0.0f64..0.9, t in 0.0f64..2.0 * PI) {
        let z = Complex64::from_polar(r, t);
        let h = 1e-4;
        let g = |w: Complex64| tau_eval(w).unwrap();
        let d1 = (g(z + h) - g(z - h)) / (2.0 * h);
        let d2 = (g(z + h) - 2.0 * g(z) + g(z - h)) / (h * h);
        let fd = 1.0 + z * d2 / d1;
        prop_assert!((fd - convexity_expression(z)).norm() < 1e-5);
    }

    #[test]
    fn janowski_routes_agree(a in -1.0f64..=1.0, b in -0.999f64..0.999) {
        let p = JanowskiParams::new(a, b).unwrap();
        let v = janowski_member(&p).unwrap();
        prop_assert!(v.consistent());
        let (centre, radius) = p.image_disk();
        prop_assert_eq!(v.member, disk_in_strip(centre, radius).unwrap());
    }
}

#[test]
fn real_axis_minimum_decreases_to_the_edge() {
    let mut prev = f64::INFINITY;
    for k in 1..1000 {
        let r = k as f64 / 1000.0;
        let w = tau_eval(Complex64::new(-r, 0.0)).unwrap().re;
        assert!(w < prev);
        prev = w;
    }
    assert!((prev - (1.0 - FRAC_PI_4)).abs() < 1e-3);
}

#[test]
fn re_range_matches_dense_sampling() {
    let (lo, hi) = re_range_on_circle(0.5).unwrap();
    let (slo, shi) = re_range_sampled(0.5, 10_000).unwrap();
    assert!((lo - (1.0 - 0.463_647_609)).abs() < 1e-9);
    assert!((lo - slo).abs() < 1e-9 && (hi - shi).abs() < 1e-9);
}
