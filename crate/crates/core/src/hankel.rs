//! Coefficient functionals of the class expressed through Carathéodory
//! coefficients, the cuboid surrogate `H(p, x, y)` bounding `|H₃(1)|`, and
//! seeded searches for the extremal values.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::extremal::golden_max;
use crate::radius::solve_monotone;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `(p₁, γ, η, ρ)` with `p₁ ∈ [0, 2]` and `γ, η, ρ` in the closed unit disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CaratheodoryPoint {
    pub p1: f64,
    pub gamma: Complex64,
    pub eta: Complex64,
    pub rho: Complex64,
}

impl CaratheodoryPoint {
    pub fn new(p1: f64, gamma: Complex64, eta: Complex64, rho: Complex64) -> Result<Self> {
        const SLACK: f64 = 1e-12;
        if !(0.0..=2.0).contains(&p1) {
            return domain(format!("p1 = {p1} outside [0, 2]"));
        }
        for (name, v) in [("gamma", gamma), ("eta", eta), ("rho", rho)] {
            if v.norm().is_nan() || v.norm() > 1.0 + SLACK {
                return domain(format!("|{name}| = {} exceeds 1", v.norm()));
            }
        }
        Ok(Self { p1, gamma, eta, rho })
    }

    /// Polar form: moduli are clamped to `[0, 1]`, `p₁` to `[0, 2]`.
    pub fn from_polar(v: &[f64; 7]) -> Self {
        let m = |x: f64| x.clamp(0.0, 1.0);
        Self {
            p1: v[0].clamp(0.0, 2.0),
            gamma: Complex64::from_polar(m(v[1]), v[2]),
            eta: Complex64::from_polar(m(v[3]), v[4]),
            rho: Complex64::from_polar(m(v[5]), v[6]),
        }
    }

    pub fn random<R: Rng>(rng: &mut R) -> Self {
        let modulus = |rng: &mut R| if rng.gen_bool(0.1) { 1.0 } else { rng.gen::<f64>() };
        let p1 = if rng.gen_bool(0.05) { 2.0 } else { 2.0 * rng.gen::<f64>() };
        let g = modulus(rng);
        let e = modulus(rng);
        let r = modulus(rng);
        Self {
            p1,
            gamma: Complex64::from_polar(g, 2.0 * PI * rng.gen::<f64>()),
            eta: Complex64::from_polar(e, 2.0 * PI * rng.gen::<f64>()),
            rho: Complex64::from_polar(r, 2.0 * PI * rng.gen::<f64>()),
        }
    }

    pub fn cuboid(&self) -> CuboidPoint {
        CuboidPoint {
            p: self.p1,
            x: self.gamma.norm().min(1.0),
            y: self.eta.norm().min(1.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PCoeffs {
    pub p1: Complex64,
    pub p2: Complex64,
    pub p3: Complex64,
    pub p4: Complex64,
}

impl PCoeffs {
    pub fn real(p1: f64, p2: f64, p3: f64, p4: f64) -> Self {
        Self { p1: c(p1), p2: c(p2), p3: c(p3), p4: c(p4) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoeffVector {
    pub a2: Complex64,
    pub a3: Complex64,
    pub a4: Complex64,
    pub a5: Complex64,
}

impl CoeffVector {
    pub fn real(a2: f64, a3: f64, a4: f64, a5: f64) -> Self {
        Self { a2: c(a2), a3: c(a3), a4: c(a4), a5: c(a5) }
    }
}

/// `(p, x, y) ∈ [0, 2] × [0, 1] × [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CuboidPoint {
    pub p: f64,
    pub x: f64,
    pub y: f64,
}

impl CuboidPoint {
    pub fn new(p: f64, x: f64, y: f64) -> Result<Self> {
        if !(0.0..=2.0).contains(&p) || !(0.0..=1.0).contains(&x) || !(0.0..=1.0).contains(&y) {
            return domain(format!("({p}, {x}, {y}) outside the cuboid"));
        }
        Ok(Self { p, x, y })
    }

    pub fn on_boundary(&self, tol: f64) -> bool {
        self.p <= tol
            || self.p >= 2.0 - tol
            || self.x <= tol
            || self.x >= 1.0 - tol
            || self.y <= tol
            || self.y >= 1.0 - tol
    }
}

/// `p₂, p₃, p₄` from `(p₁, γ, η, ρ)`.
pub fn p_from_params(cp: &CaratheodoryPoint) -> PCoeffs {
    let p = c(cp.p1);
    if cp.p1 == 2.0 {
        return PCoeffs::real(2.0, 2.0, 2.0, 2.0);
    }
    let q = c(4.0 - cp.p1 * cp.p1);
    let (g, e, r) = (cp.gamma, cp.eta, cp.rho);
    let g_abs = 1.0 - g.norm_sqr();
    let e_abs = 1.0 - e.norm_sqr();
    let p2 = (p * p + g * q) / 2.0;
    let p3 = (p.powi(3) + 2.0 * p * q * g - p * q * g * g + 2.0 * q * g_abs * e) / 4.0;
    let p4 = (p.powi(4) + q * g * (p * p * (g * g - 3.0 * g + 3.0) + 4.0 * g)
        - 4.0 * q * g_abs * (p * (g - ONE) * e + g.conj() * e * e - e_abs * r))
        / 8.0;
    PCoeffs { p1: p, p2, p3, p4 }
}

pub fn coeffs_from_p(p: &PCoeffs) -> CoeffVector {
    let PCoeffs { p1, p2, p3, p4 } = *p;
    CoeffVector {
        a2: p1 / 2.0,
        a3: p2 / 4.0,
        a4: -(p1.powi(3) / 6.0 + p1 * p2 / 2.0 - 2.0 * p3) / 12.0,
        a5: -(-5.0 * p1.powi(4) / 72.0 + p2 * p2 / 4.0 + p1 * p3 / 3.0 + p1 * p1 * p2 / 6.0 - p4) / 8.0,
    }
}

/// `a₄` from the first three Schwarz coefficients.
pub fn schwarz_a4(w1: Complex64, w2: Complex64, w3: Complex64) -> Complex64 {
    (w3 + 1.5 * w1 * w2 + w1.powi(3) / 6.0) / 3.0
}

/// First three coefficients of `w = (p − 1)/(p + 1)`.
pub fn schwarz_from_p(p: &PCoeffs) -> [Complex64; 3] {
    let pk = [p.p1, p.p2, p.p3];
    // (2 + P) w = P, P = p − 1
    let mut w = [ZERO; 3];
    for n in 0..3 {
        let mut s = pk[n];
        for k in 0..n {
            s -= pk[k] * w[n - 1 - k];
        }
        w[n] = s / 2.0;
    }
    w
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Functionals {
    /// `a₂a₃ − a₄`.
    pub fs: Complex64,
    /// `a₂a₄ − a₃²`.
    pub h2: Complex64,
    /// `H₃(1)`.
    pub h3: Complex64,
}

pub fn functionals(a: &CoeffVector) -> Functionals {
    let CoeffVector { a2, a3, a4, a5 } = *a;
    Functionals {
        fs: a2 * a3 - a4,
        h2: a2 * a4 - a3 * a3,
        h3: a3 * (a2 * a4 - a3 * a3) - a4 * (a4 - a2 * a3) + a5 * (a3 - a2 * a2),
    }
}

/// `H₃(1)` written directly in `p₁, …, p₄`.
pub fn h3_direct(p: &PCoeffs) -> Complex64 {
    let PCoeffs { p1, p2, p3, p4 } = *p;
    (-49.0 * p1.powi(6) + 57.0 * p1.powi(4) * p2 - 198.0 * p1 * p1 * p2 * p2 - 486.0 * p2.powi(3)
        + 312.0 * p1.powi(3) * p3
        + 936.0 * p1 * p2 * p3
        - 576.0 * p3 * p3
        - 648.0 * p1 * p1 * p4
        + 648.0 * p2 * p4)
        / 20736.0
}

pub fn h1(p: f64, x: f64) -> f64 {
    let q = 4.0 - p * p;
    49.0 * p.powi(6)
        + 81.0 * x * x * p * p * q * q
        + 135.0 * x.powi(3) * p * p * q * q
        + 18.0 * x.powi(4) * p * p * q * q
        + 324.0 * x.powi(3) * q * q
        + 6.0 * x * x * p.powi(4) * q
        + 117.0 * x * p.powi(4) * q
        + 648.0 * x * x * p * p * q
        + 162.0 * x.powi(3) * p.powi(4) * q
}

pub fn h2(p: f64, x: f64) -> f64 {
    let q = 4.0 - p * p;
    (1.0 - x * x) * q * (336.0 * p.powi(3) + 648.0 * p.powi(3) * x + q * (432.0 * p * x + 72.0 * p * x * x))
}

pub fn h3(p: f64, x: f64) -> f64 {
    let q = 4.0 - p * p;
    72.0 * (1.0 - x * x) * q * ((8.0 + x * x) * q + 9.0 * p * p * x)
}

pub fn h4(p: f64, x: f64) -> f64 {
    let q = 4.0 - p * p;
    648.0 * (1.0 - x * x) * q * (p * p + x * q)
}

/// The cuboid majorant of `|H₃(1)|`.
pub fn surrogate_h(q: &CuboidPoint) -> f64 {
    let CuboidPoint { p, x, y } = *q;
    (h1(p, x) + h2(p, x) * y + h3(p, x) * y * y + h4(p, x) * (1.0 - y * y)) / 82944.0
}

fn surrogate(p: f64, x: f64, y: f64) -> f64 {
    surrogate_h(&CuboidPoint { p, x, y })
}

/// `H(p, 1, y)`, independent of `y`.
pub fn g3(p: f64) -> f64 {
    (2592.0 + 1872.0 * p * p - 528.0 * p.powi(4) - p.powi(6)) / 41472.0
}

/// `H(p, 0, 0)`.
pub fn s1(p: f64) -> f64 {
    (49.0 * p.powi(6) + 2592.0 * p * p - 648.0 * p.powi(4)) / 82944.0
}

/// `H(p, 0, 1)`.
pub fn s2(p: f64) -> f64 {
    (9216.0 - 4608.0 * p * p + 1344.0 * p.powi(3) + 576.0 * p.powi(4) - 336.0 * p.powi(5) + 49.0 * p.powi(6))
        / 82944.0
}

/// `H(0, x, 0)`.
pub fn s5(x: f64) -> f64 {
    x * (2.0 - x * x) / 16.0
}

/// The octic printed for the critical points of `H(p, 0, y)` after
/// eliminating `y`.
pub fn printed_octic(p: f64) -> f64 {
    let t = p * p;
    1327104.0 - 2073600.0 * t + 1079568.0 * t * t - 215496.0 * t.powi(3) + 5243.0 * t.powi(4)
}

/// The octic obtained by substituting `y₁(p)` into `∂g₂/∂p = 0` and
/// clearing denominators.
pub fn derived_octic(p: f64) -> f64 {
    let t = p * p;
    294912.0 - 460800.0 * t + 239904.0 * t * t - 47888.0 * t.powi(3) + 2499.0 * t.powi(4)
}

/// `∂g₂/∂p` up to a positive factor.
pub fn g2_p_partial(p: f64, y: f64) -> f64 {
    864.0 * p - 432.0 * p.powi(3) + 49.0 * p.powi(5) + 672.0 * p * p * y - 280.0 * p.powi(4) * y
        - 2400.0 * p * y * y
        + 816.0 * p.powi(3) * y * y
}

/// Stationary point of `g₂` in `y`.
pub fn y1(p: f64) -> f64 {
    -7.0 * p.powi(3) / (3.0 * (32.0 - 17.0 * p * p))
}

/// Dense scan then golden refinement of a one-variable maximum.
pub fn max_1d<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> (f64, f64) {
    const N: usize = 4000;
    let h = (b - a) / N as f64;
    let mut best = (a, f(a));
    for i in 1..=N {
        let t = a + h * i as f64;
        let v = f(t);
        if v > best.1 {
            best = (t, v);
        }
    }
    let (x, v) = golden_max(&f, (best.0 - h).max(a), (best.0 + h).min(b), 1e-13);
    if v > best.1 {
        (x, v)
    } else {
        best
    }
}

fn first_root<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> Option<f64> {
    const N: usize = 20000;
    let h = (b - a) / N as f64;
    (0..N).find_map(|i| {
        let (lo, hi) = (a + h * i as f64, a + h * (i + 1) as f64);
        if f(lo) * f(hi) <= 0.0 {
            solve_monotone(&f, 0.0, (lo, hi)).ok()
        } else {
            None
        }
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurrogateFaces {
    /// `H(p, 1, y)` maximum and its location.
    pub g3_max: (f64, f64),
    /// `H(p, 0, 0)` maximum and its location.
    pub s1_max: (f64, f64),
    /// `H(p, 0, 1)` maximum and its location.
    pub s2_max: (f64, f64),
    /// `H(0, x, 0)` maximum and its location.
    pub s5_max: (f64, f64),
    /// `H(0, x, 1)` maximum and its location.
    pub s4_max: (f64, f64),
    /// Largest deviation of `H(0, 1, y)` from 1/16.
    pub h01y_deviation: f64,
    /// Range of `H` over the four `p = 2` edges.
    pub p2_edge_range: (f64, f64),
    /// Root in `(0, 2)` of the printed octic.
    pub printed_octic_root: Option<f64>,
    /// Root in `(0, 2)` of the re-derived octic.
    pub derived_octic_root: Option<f64>,
    /// Smallest `p` with `y₁(p) ∈ (0, 1)`.
    pub p0: f64,
    /// Neither octic root admits `y₁ ∈ (0, 1)`.
    pub x0_face_disjoint: bool,
    /// Maximum of `H(p, x, 1)` and its `(p, x)`.
    pub y1_face_max: (f64, f64, f64),
}

pub fn surrogate_faces() -> SurrogateFaces {
    let swap = |(x, v): (f64, f64)| (v, x);
    let mut edge = (f64::INFINITY, f64::NEG_INFINITY);
    for i in 0..=100 {
        let t = i as f64 / 100.0;
        for v in [surrogate(2.0, 1.0, t), surrogate(2.0, 0.0, t), surrogate(2.0, t, 0.0), surrogate(2.0, t, 1.0)] {
            edge = (edge.0.min(v), edge.1.max(v));
        }
    }
    let h01y_deviation = (0..=100)
        .map(|i| (surrogate(0.0, 1.0, i as f64 / 100.0) - 1.0 / 16.0).abs())
        .fold(0.0, f64::max);

    // y₁ enters (0, 1) once 7p³ − 51p² + 96 turns negative past the pole √(32/17)
    let pole = (32.0f64 / 17.0).sqrt();
    let p0 = solve_monotone(|p| 7.0 * p.powi(3) - 51.0 * p * p + 96.0, 0.0, (pole, 2.0)).unwrap_or(f64::NAN);
    let printed_octic_root = first_root(printed_octic, 0.0, 2.0);
    let derived_octic_root = first_root(derived_octic, 0.0, 2.0);
    let x0_face_disjoint = [printed_octic_root, derived_octic_root]
        .iter()
        .flatten()
        .all(|&r| !(r > p0 && r < 2.0));

    let mut y1_face = (f64::NEG_INFINITY, 0.0, 0.0);
    let n = 400;
    for i in 0..=n {
        for j in 0..=n {
            let (p, x) = (2.0 * i as f64 / n as f64, j as f64 / n as f64);
            let v = surrogate(p, x, 1.0);
            if v > y1_face.0 {
                y1_face = (v, p, x);
            }
        }
    }
    let (v, p, x) = refine_2d(|p, x| surrogate(p, x, 1.0), (y1_face.1, y1_face.2), (2.0 / n as f64, 1.0 / n as f64));
    if v > y1_face.0 {
        y1_face = (v, p, x);
    }

    SurrogateFaces {
        g3_max: swap(max_1d(g3, 0.0, 2.0)),
        s1_max: swap(max_1d(s1, 0.0, 2.0)),
        s2_max: swap(max_1d(s2, 0.0, 2.0)),
        s5_max: swap(max_1d(s5, 0.0, 1.0)),
        s4_max: swap(max_1d(|x| surrogate(0.0, x, 1.0), 0.0, 1.0)),
        h01y_deviation,
        p2_edge_range: edge,
        printed_octic_root,
        derived_octic_root,
        p0,
        x0_face_disjoint,
        y1_face_max: y1_face,
    }
}

fn refine_2d<F: Fn(f64, f64) -> f64>(f: F, start: (f64, f64), step: (f64, f64)) -> (f64, f64, f64) {
    let (mut p, mut x) = start;
    let (mut hp, mut hx) = step;
    for _ in 0..60 {
        p = golden_max(|t| f(t, x), (p - hp).max(0.0), (p + hp).min(2.0), 1e-14).0;
        x = golden_max(|t| f(p, t), (x - hx).max(0.0), (x + hx).min(1.0), 1e-14).0;
        hp *= 0.8;
        hx *= 0.8;
    }
    (f(p, x), p, x)
}

/// Coordinates held fixed during a surrogate search.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Slice {
    pub p: Option<f64>,
    pub x: Option<f64>,
    pub y: Option<f64>,
}

const BOX_HI: [f64; 3] = [2.0, 1.0, 1.0];

/// Grid search over the cuboid followed by coordinate-wise golden refinement.
pub fn maximize_surrogate(grid_n: usize, refine_iters: usize) -> Result<(f64, CuboidPoint)> {
    maximize_surrogate_slice(Slice::default(), grid_n, refine_iters)
}

pub fn maximize_surrogate_slice(slice: Slice, grid_n: usize, refine_iters: usize) -> Result<(f64, CuboidPoint)> {
    if grid_n < 41 {
        return domain(format!("grid_n = {grid_n} is below 41"));
    }
    let fixed = [slice.p, slice.x, slice.y];
    for (k, v) in fixed.iter().enumerate() {
        if let Some(v) = v {
            if !(0.0..=BOX_HI[k]).contains(v) {
                return domain(format!("fixed coordinate {v} outside the cuboid"));
            }
        }
    }
    let axis = |k: usize| -> Vec<f64> {
        match fixed[k] {
            Some(v) => vec![v],
            None => (0..grid_n).map(|i| BOX_HI[k] * i as f64 / (grid_n - 1) as f64).collect(),
        }
    };
    let (ps, xs, ys) = (axis(0), axis(1), axis(2));
    // strict improvement in lexicographic scan order keeps the smallest argmax
    let mut best = (f64::NEG_INFINITY, [0.0; 3]);
    for &p in &ps {
        for &x in &xs {
            for &y in &ys {
                let v = surrogate(p, x, y);
                if v > best.0 {
                    best = (v, [p, x, y]);
                }
            }
        }
    }
    let mut pt = best.1;
    let mut val = best.0;
    let mut half = [0.0; 3];
    for k in 0..3 {
        half[k] = if fixed[k].is_some() { 0.0 } else { BOX_HI[k] / (grid_n - 1) as f64 };
    }
    for _ in 0..refine_iters {
        for k in 0..3 {
            if fixed[k].is_some() {
                continue;
            }
            let eval = |t: f64| {
                let mut q = pt;
                q[k] = t;
                surrogate(q[0], q[1], q[2])
            };
            let (t, v) = golden_max(eval, (pt[k] - half[k]).max(0.0), (pt[k] + half[k]).min(BOX_HI[k]), 1e-15);
            if v > val {
                val = v;
                pt[k] = t;
            }
            half[k] *= 0.85;
        }
    }
    Ok((val, CuboidPoint { p: pt[0], x: pt[1], y: pt[2] }))
}

/// Functional whose modulus is maximized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Target {
    A4,
    A5,
    FS,
    H2,
    H3,
}

impl Target {
    pub const ALL: [Target; 5] = [Target::A4, Target::A5, Target::FS, Target::H2, Target::H3];

    /// The claimed sharp bound.
    pub fn bound(&self) -> f64 {
        match self {
            Target::A4 => 1.0 / 3.0,
            Target::A5 => 323.0 / 528.0,
            Target::FS => 1.0 / 3.0,
            Target::H2 => 0.25,
            Target::H3 => 1.0 / 9.0,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Target::A4 => "a4",
            Target::A5 => "a5",
            Target::FS => "FS",
            Target::H2 => "H2",
            Target::H3 => "H3",
        }
    }

    pub fn eval(&self, cp: &CaratheodoryPoint) -> f64 {
        let a = coeffs_from_p(&p_from_params(cp));
        match self {
            Target::A4 => a.a4.norm(),
            Target::A5 => a.a5.norm(),
            Target::FS => functionals(&a).fs.norm(),
            Target::H2 => functionals(&a).h2.norm(),
            Target::H3 => functionals(&a).h3.norm(),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Target::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Lookup(format!("unknown target {s}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FunctionalMax {
    pub target: Target,
    pub bound: f64,
    pub value: f64,
    pub point: CaratheodoryPoint,
    pub evaluations: u64,
}

impl FunctionalMax {
    pub fn within_bound(&self, tol: f64) -> bool {
        self.value <= self.bound + tol
    }

    pub fn attains(&self, tol: f64) -> bool {
        self.value >= self.bound - tol
    }
}

const POLAR_LO: [f64; 7] = [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0];
const POLAR_HI: [f64; 7] = [2.0, 1.0, 2.0 * PI, 1.0, 2.0 * PI, 1.0, 2.0 * PI];
const MIN_STEP: f64 = 1e-10;

/// Seeded multistart pattern search over `(p₁, |γ|, arg γ, |η|, arg η, |ρ|, arg ρ)`.
pub fn maximize_functional(target: Target, starts: usize, seed: u64) -> Result<FunctionalMax> {
    if starts == 0 {
        return domain("at least one start is required");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut evaluations = 0u64;
    let mut best: Option<(f64, [f64; 7])> = None;
    for _ in 0..starts {
        let mut v = [0.0; 7];
        for k in 0..7 {
            v[k] = rng.gen_range(POLAR_LO[k]..=POLAR_HI[k]);
        }
        let (val, pt) = pattern_search(target, v, &mut evaluations);
        if best.is_none_or(|(b, _)| val > b) {
            best = Some((val, pt));
        }
    }
    let (value, v) = best.expect("starts >= 1");
    Ok(FunctionalMax {
        target,
        bound: target.bound(),
        value,
        point: CaratheodoryPoint::from_polar(&v),
        evaluations,
    })
}

fn pattern_search(target: Target, mut v: [f64; 7], evaluations: &mut u64) -> (f64, [f64; 7]) {
    let f = |v: &[f64; 7]| target.eval(&CaratheodoryPoint::from_polar(v));
    let mut val = f(&v);
    *evaluations += 1;
    let mut step = 0.25;
    while step > MIN_STEP {
        let mut improved = false;
        for k in 0..7 {
            let width = POLAR_HI[k] - POLAR_LO[k];
            for dir in [1.0, -1.0] {
                let mut w = v;
                w[k] = (w[k] + dir * step * width).clamp(POLAR_LO[k], POLAR_HI[k]);
                if w[k] == v[k] {
                    continue;
                }
                let fw = f(&w);
                *evaluations += 1;
                if fw > val {
                    v = w;
                    val = fw;
                    improved = true;
                    break;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (val, v)
}

/// `max_{0 ≤ t ≤ 4} (At² + Bt + C)` by the three-case formula.
pub fn quadratic_max(a: f64, b: f64, c: f64) -> f64 {
    if b <= 0.0 && a <= -b / 4.0 {
        c
    } else if (b >= 0.0 && a >= -b / 8.0) || (b <= 0.0 && a >= -b / 4.0) {
        16.0 * a + 4.0 * b + c
    } else {
        (4.0 * a * c - b * b) / (4.0 * a)
    }
}

/// Maximum of `At² + Bt + C` over `n + 1` equispaced points of `[0, 4]`.
pub fn quadratic_max_grid(a: f64, b: f64, c: f64, n: usize) -> f64 {
    (0..=n)
        .map(|i| {
            let t = 4.0 * i as f64 / n as f64;
            (a * t + b) * t + c
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

/// `p₁⁴ − 3p₁²p₂ + p₂² + 2p₁p₃ − p₄`.
pub fn p_functional(p: &PCoeffs) -> Complex64 {
    let PCoeffs { p1, p2, p3, p4 } = *p;
    p1.powi(4) - 3.0 * p1 * p1 * p2 + p2 * p2 + 2.0 * p1 * p3 - p4
}

/// `p₃ − 2p₁p₂ + p₁³`.
pub fn q_functional(p: &PCoeffs) -> Complex64 {
    p.p3 - 2.0 * p.p1 * p.p2 + p.p1.powi(3)
}

/// `|p₂ − βp₁²| + β|p₁|²`.
pub fn use_functional(p: &PCoeffs, beta: f64) -> f64 {
    (p.p2 - beta * p.p1 * p.p1).norm() + beta * p.p1.norm_sqr()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaReport {
    pub samples: usize,
    pub max_p: f64,
    pub max_q: f64,
    pub max_use: f64,
    /// Largest `|p_k|` seen, `k = 1..4`.
    pub max_pk: f64,
    pub quadratic_trials: usize,
    /// Largest gap between the three-case formula and the grid maximum.
    pub quadratic_gap: f64,
    pub pass: bool,
}

pub const LEMMA_TOL: f64 = 1e-9;
const QUAD_GRID: usize = 100_000;
const QUAD_TOL: f64 = 1e-6;

/// Random checks of the Carathéodory inequalities and the quadratic-maximum formula.
pub fn lemma_suite(samples: usize, seed: u64) -> Result<LemmaReport> {
    if samples == 0 {
        return domain("at least one sample is required");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut max_p, mut max_q, mut max_use, mut max_pk) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..samples {
        let p = p_from_params(&CaratheodoryPoint::random(&mut rng));
        max_p = max_p.max(p_functional(&p).norm());
        max_q = max_q.max(q_functional(&p).norm());
        let beta = 0.5 * (1.0 - rng.gen::<f64>());
        max_use = max_use.max(use_functional(&p, beta));
        max_pk = [p.p1, p.p2, p.p3, p.p4].iter().map(|v| v.norm()).fold(max_pk, f64::max);
    }
    let quadratic_trials = samples.clamp(1, 200);
    let mut quadratic_gap = 0.0f64;
    for _ in 0..quadratic_trials {
        let (a, b, cc) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        quadratic_gap = quadratic_gap.max((quadratic_max(a, b, cc) - quadratic_max_grid(a, b, cc, QUAD_GRID)).abs());
    }
    let bound = 2.0 + LEMMA_TOL;
    let pass = max_p <= bound && max_q <= bound && max_use <= bound && max_pk <= 2.0 + 1e-12 && quadratic_gap <= QUAD_TOL;
    Ok(LemmaReport { samples, max_p, max_q, max_use, max_pk, quadratic_trials, quadratic_gap, pass })
}
