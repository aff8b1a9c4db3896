use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use taustar::hankel::{
    coeffs_from_p, functionals, h3_direct, maximize_surrogate, maximize_surrogate_slice, p_from_params,
    schwarz_a4, schwarz_from_p, surrogate_faces, surrogate_h, CaratheodoryPoint, Slice,
};

fn point() -> impl Strategy<Value = CaratheodoryPoint> {
    (0.0f64..=2.0, prop::array::uniform6(0.0f64..1.0)).prop_map(|(p1, v)| {
        let tau = 2.0 * std::f64::consts::PI;
        CaratheodoryPoint::new(
            p1,
            Complex64::from_polar(v[0], tau * v[1]),
            Complex64::from_polar(v[2], tau * v[3]),
            Complex64::from_polar(v[4], tau * v[5]),
        )
        .unwrap()
    })
}

fn seeded(n: usize, seed: u64) -> Vec<CaratheodoryPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| CaratheodoryPoint::random(&mut rng)).collect()
}

proptest! {
    #[test]
    fn schwarz_route_matches(c in point()) {
        let p = p_from_params(&c);
        let [w1, w2, w3] = schwarz_from_p(&p);
        // hand expansion of (p − 1)/(p + 1)
        let (p1, p2, p3) = (p.p1, p.p2, p.p3);
        prop_assert!((w1 - p1 / 2.0).norm() < 1e-15);
        prop_assert!((w2 - (p2 / 2.0 - p1 * p1 / 4.0)).norm() < 1e-14);
        prop_assert!((w3 - (p3 / 2.0 - p1 * p2 / 2.0 + p1.powi(3) / 8.0)).norm() < 1e-14);
        prop_assert!((schwarz_a4(w1, w2, w3) - coeffs_from_p(&p).a4).norm() <= 1e-11);
    }

    #[test]
    fn p_coefficients_bounded(c in point()) {
        let p = p_from_params(&c);
        for v in [p.p1, p.p2, p.p3, p.p4] {
            prop_assert!(v.norm() <= 2.0 + 1e-12);
        }
    }
}

#[test]
fn h3_route_equality() {
    for c in seeded(10_000, 1) {
        let p = p_from_params(&c);
        let a = functionals(&coeffs_from_p(&p)).h3;
        assert!((a - h3_direct(&p)).norm() <= 1e-11, "{c:?}");
    }
}

#[test]
fn surrogate_dominates_h3() {
    for c in seeded(100_000, 2) {
        let h3 = functionals(&coeffs_from_p(&p_from_params(&c))).h3.norm();
        assert!(h3 <= surrogate_h(&c.cuboid()) + 1e-9, "{c:?}");
    }
}

#[test]
fn coefficient_bounds_hold() {
    for c in seeded(100_000, 3) {
        let a = coeffs_from_p(&p_from_params(&c));
        assert!(a.a2.norm() <= 1.0 + 1e-12);
        assert!(a.a3.norm() <= 0.5 + 1e-12);
        assert!(a.a4.norm() <= 1.0 / 3.0 + 1e-12);
        assert!(a.a5.norm() <= 323.0 / 528.0 + 1e-9);
    }
}

#[test]
fn surrogate_argmax_on_the_boundary() {
    let (_, pt) = maximize_surrogate(61, 30).unwrap();
    assert!(pt.on_boundary(1e-6), "{pt:?}");
}

#[test]
fn surrogate_slices() {
    let (v, _) = maximize_surrogate_slice(Slice { p: Some(2.0), ..Slice::default() }, 41, 10).unwrap();
    assert!((v - 49.0 / 1296.0).abs() < 1e-12);
    let (v, pt) = maximize_surrogate_slice(Slice { p: Some(0.0), y: Some(0.0), x: None }, 101, 60).unwrap();
    assert!((v - 0.0680413).abs() < 1e-6);
    assert!((pt.x - (2.0f64 / 3.0).sqrt()).abs() < 1e-6);
    assert!(maximize_surrogate(40, 1).is_err());
}

#[test]
fn faces_report() {
    let f = surrogate_faces();
    assert!((f.g3_max.0 - 0.102376).abs() < 1e-5);
    assert!((f.g3_max.1 - 1.32811).abs() < 1e-4);
    assert!((f.s1_max.0 - 0.0393988).abs() < 1e-6);
    assert!((f.s1_max.1 - 1.75123).abs() < 1e-4);
    assert!((f.s2_max.0 - 1.0 / 9.0).abs() < 1e-15 && f.s2_max.1 == 0.0);
    assert!(f.h01y_deviation < 1e-15);
    assert!((f.p2_edge_range.0 - 49.0 / 1296.0).abs() < 1e-15);
    assert!((f.p2_edge_range.1 - 49.0 / 1296.0).abs() < 1e-15);
    assert!((f.p0 - 1.54572).abs() < 1e-5);
    assert!((f.printed_octic_root.unwrap() - 1.136590).abs() < 1e-5);
    assert!((f.derived_octic_root.unwrap() - 1.166537).abs() < 1e-5);
    assert!(f.x0_face_disjoint);
}

#[test]
fn derived_octic_is_the_eliminant() {
    use taustar::hankel::{derived_octic, g2_p_partial, y1};
    // zero of ∂g₂/∂p along y = y₁(p) coincides with the octic root
    let r = surrogate_faces().derived_octic_root.unwrap();
    let scale = (0..=100).map(|k| g2_p_partial(k as f64 / 100.0, y1(k as f64 / 100.0)).abs()).fold(0.0, f64::max);
    assert!(g2_p_partial(r, y1(r)).abs() < 1e-9 * scale);
    assert!(derived_octic(r).abs() < 1e-6);
}
