//! Adaptive Simpson quadrature, real or complex valued.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

/// Values that can be integrated: a vector space over `f64` with a norm.
pub trait Integrand:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
    fn magnitude(self) -> f64;
}

impl Integrand for f64 {
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl Integrand for Complex64 {
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

/// Absolute tolerance used for every `∫ arctan(t^k)/t dt` in the crate.
pub const DEFAULT_TOL: f64 = 1e-12;
const MAX_DEPTH: u32 = 50;

/// Integrates `f` over `[a, b]` to absolute tolerance `tol`.
pub fn adaptive_simpson<T, F>(f: F, a: f64, b: f64, tol: f64) -> T
where
    T: Integrand,
    F: Fn(f64) -> T,
{
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(a, b, fa, fm, fb);
    recurse(&f, a, b, fa, fm, fb, whole, tol, MAX_DEPTH)
}

fn simpson<T: Integrand>(a: f64, b: f64, fa: T, fm: T, fb: T) -> T {
    (fa + fm * 4.0 + fb) * ((b - a) / 6.0)
}

#[allow(clippy::too_many_arguments)]
fn recurse<T, F>(f: &F, a: f64, b: f64, fa: T, fm: T, fb: T, whole: T, tol: f64, depth: u32) -> T
where
    T: Integrand,
    F: Fn(f64) -> T,
{
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.magnitude() <= 15.0 * tol {
        return left + right + delta * (1.0 / 15.0);
    }
    recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

/// `arctan(t)/t`, continuous at 0.
pub fn arctan_over_t(t: f64) -> f64 {
    if t == 0.0 {
        1.0
    } else {
        t.atan() / t
    }
}

/// `∫_0^x arctan(t)/t dt` for real `x` (odd in `x`).
pub fn arctan_integral(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let v = adaptive_simpson(arctan_over_t, 0.0, x.abs(), DEFAULT_TOL);
    v.copysign(x)
}
