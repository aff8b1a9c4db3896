//! The map `τ(z) = 1 + arctan z` and its image, the vertical strip
//! `1 − π/4 ≤ Re w ≤ 1 + π/4`.
//!
//! Also hosts the comparison Ma–Minda functions used by the radius module
//! and sampling-based subordination checks.

use std::f64::consts::{E, FRAC_PI_4, PI, SQRT_2};

use num_complex::Complex64;

use crate::error::{domain, Error, Result};

/// Half-width of the strip about `Re w = 1`.
pub const HALF_WIDTH: f64 = FRAC_PI_4;

const I: Complex64 = Complex64::new(0.0, 1.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Principal `arctan z = (1/(2i)) Log((1 + iz)/(1 − iz))`.
///
/// Singular at `z = ±i`; for `|z| < 1` the Möbius image lies in the right
/// half-plane so the principal log never meets its cut.
pub fn arctan(z: Complex64) -> Result<Complex64> {
    let num = ONE + I * z;
    let den = ONE - I * z;
    if num == Complex64::new(0.0, 0.0) || den == Complex64::new(0.0, 0.0) {
        return Err(Error::Singular(format!("arctan has a pole at {z}")));
    }
    Ok((num / den).ln() / (2.0 * I))
}

/// `τ(z) = 1 + arctan z` on the open unit disk.
pub fn tau_eval(z: Complex64) -> Result<Complex64> {
    if z == I || z == -I {
        return Err(Error::Singular(format!("tau is singular at {z}")));
    }
    if z.norm() >= 1.0 {
        return domain(format!("tau_eval needs |z| < 1, got |z| = {}", z.norm()));
    }
    Ok(ONE + arctan(z)?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StripDomain {
    pub center: f64,
    pub half_width: f64,
}

impl Default for StripDomain {
    fn default() -> Self {
        Self {
            center: 1.0,
            half_width: HALF_WIDTH,
        }
    }
}

impl StripDomain {
    pub fn left(&self) -> f64 {
        self.center - self.half_width
    }

    pub fn right(&self) -> f64 {
        self.center + self.half_width
    }

    /// Signed distance to the nearer boundary line; negative outside.
    pub fn margin(&self, w: Complex64) -> f64 {
        self.half_width - (w.re - self.center).abs()
    }

    pub fn contains(&self, w: Complex64, strict: bool) -> bool {
        let d = (w.re - self.center).abs();
        if strict {
            d < self.half_width
        } else {
            d <= self.half_width
        }
    }
}

/// Membership in the strip; `strict` selects the open variant.
pub fn contains_point(w: Complex64, strict: bool) -> bool {
    StripDomain::default().contains(w, strict)
}

/// `(min, max)` of `Re τ` on `|z| = r`, attained at `z = −r` and `z = r`.
pub fn re_range_on_circle(r: f64) -> Result<(f64, f64)> {
    if !(r > 0.0 && r < 1.0) {
        return domain(format!("radius must lie in (0, 1), got {r}"));
    }
    let a = r.atan();
    Ok((1.0 - a, 1.0 + a))
}

/// Sampled `(min, max)` of `Re τ(r e^{iθ})` over `angles` equispaced θ.
pub fn re_range_sampled(r: f64, angles: usize) -> Result<(f64, f64)> {
    if !(r > 0.0 && r < 1.0) {
        return domain(format!("radius must lie in (0, 1), got {r}"));
    }
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for k in 0..angles {
        let theta = 2.0 * PI * k as f64 / angles as f64;
        let re = tau_eval(Complex64::from_polar(r, theta))?.re;
        lo = lo.min(re);
        hi = hi.max(re);
    }
    Ok((lo, hi))
}

/// Whether the disk `|w − a| ≤ r` (real `a`) lies in the closed strip.
pub fn disk_in_strip(a: f64, r: f64) -> Result<bool> {
    if r < 0.0 {
        return domain(format!("disk radius must be non-negative, got {r}"));
    }
    let s = StripDomain::default();
    Ok(s.left() <= a - r && a + r <= s.right())
}

/// Parameters of the Janowski function `(1 + Az)/(1 + Bz)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JanowskiParams {
    a: f64,
    b: f64,
}

impl JanowskiParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if b.abs() >= 1.0 {
            return Err(Error::Degenerate(format!(
                "B = {b}: the Janowski map needs |B| < 1"
            )));
        }
        if a.abs() > 1.0 {
            return domain(format!("A = {a} outside [-1, 1]"));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Center and radius of the image disk.
    pub fn image_disk(&self) -> (f64, f64) {
        let (a, b) = (self.a, self.b);
        let d = 1.0 - b * b;
        ((1.0 - a * b) / d, (a - b).abs() / d)
    }

    /// Endpoints of the real diameter, `(1−A)/(1−B)` and `(1+A)/(1+B)`, sorted.
    pub fn image_endpoints(&self) -> (f64, f64) {
        let u = (1.0 - self.a) / (1.0 - self.b);
        let v = (1.0 + self.a) / (1.0 + self.b);
        (u.min(v), u.max(v))
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        (ONE + z * self.a) / (ONE + z * self.b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JanowskiVerdict {
    /// Endpoint form: both diameter endpoints inside the closed strip.
    pub member: bool,
    /// Disk form via [`disk_in_strip`].
    pub disk_form: bool,
    /// Piecewise linear bound on `A`, selected by the side of `Re w = 1`
    /// on which the image disk is centred.
    pub branch_form: bool,
    pub center: f64,
    pub radius: f64,
}

impl JanowskiVerdict {
    pub fn consistent(&self) -> bool {
        self.member == self.disk_form && self.member == self.branch_form
    }
}

pub fn janowski_member(params: &JanowskiParams) -> Result<JanowskiVerdict> {
    let s = StripDomain::default();
    let (lo, hi) = params.image_endpoints();
    let member = s.left() <= lo && hi <= s.right();
    let (center, radius) = params.image_disk();
    let disk_form = disk_in_strip(center, radius)?;
    let branch_form = janowski_branch(params, center);
    let v = JanowskiVerdict {
        member,
        disk_form,
        branch_form,
        center,
        radius,
    };
    debug_assert!(
        v.consistent() || near_boundary(lo, hi),
        "janowski forms disagree: {v:?}"
    );
    Ok(v)
}

fn near_boundary(lo: f64, hi: f64) -> bool {
    let s = StripDomain::default();
    (lo - s.left()).abs() < 1e-12 || (hi - s.right()).abs() < 1e-12
}

fn janowski_branch(params: &JanowskiParams, center: f64) -> bool {
    let (a, b) = (params.a, params.b);
    let q = HALF_WIDTH;
    if a == b {
        return true;
    }
    if b < a {
        // left endpoint (1−A)/(1−B) binds when the disk sits left of 1
        if center <= 1.0 {
            a <= q + (1.0 - q) * b
        } else {
            a <= q + (1.0 + q) * b
        }
    } else {
        // mirrored: roles of the endpoints swap
        if center <= 1.0 {
            (1.0 + a) / (1.0 + b) >= 1.0 - q
        } else {
            (1.0 - a) / (1.0 - b) <= 1.0 + q
        }
    }
}

/// A Ma–Minda comparison function `ψ` together with its centre-disk radius
/// and its radial deviation `max_{|z|=r} |ψ(z) − 1|`, when known in closed form.
#[derive(Clone, Copy)]
pub struct ClassDescriptor {
    pub id: &'static str,
    pub name: &'static str,
    pub psi: fn(Complex64) -> Complex64,
    pub center_disk_radius: Option<f64>,
    pub radial_deviation: Option<fn(f64) -> f64>,
}

impl std::fmt::Debug for ClassDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ClassDescriptor")
            .field("id", &self.id)
            .field("name", &self.name)
            .field("center_disk_radius", &self.center_disk_radius)
            .finish()
    }
}

impl ClassDescriptor {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        (self.psi)(z)
    }

    /// Sampled `max_θ |ψ(r e^{iθ}) − 1|`.
    pub fn sampled_deviation(&self, r: f64, angles: usize) -> f64 {
        (0..angles)
            .map(|k| {
                let theta = 2.0 * PI * k as f64 / angles as f64;
                (self.eval(Complex64::from_polar(r, theta)) - ONE).norm()
            })
            .fold(0.0, f64::max)
    }

    pub fn lookup(id: &str) -> Result<ClassDescriptor> {
        ALL_CLASSES
            .iter()
            .find(|c| c.id.eq_ignore_ascii_case(id))
            .copied()
            .ok_or_else(|| Error::Lookup(id.to_string()))
    }
}

fn psi_lemniscate(z: Complex64) -> Complex64 {
    (ONE + z).sqrt()
}
fn psi_cardioid(z: Complex64) -> Complex64 {
    ONE + z * (4.0 / 3.0) + z * z * (2.0 / 3.0)
}
fn psi_exponential(z: Complex64) -> Complex64 {
    z.exp()
}
fn psi_crescent(z: Complex64) -> Complex64 {
    z + (ONE + z * z).sqrt()
}
fn psi_wp(z: Complex64) -> Complex64 {
    ONE + z * z.exp()
}
fn psi_sigmoid(z: Complex64) -> Complex64 {
    Complex64::new(2.0, 0.0) / (ONE + (-z).exp())
}
fn psi_tau(z: Complex64) -> Complex64 {
    ONE + arctan(z).unwrap_or(Complex64::new(f64::NAN, f64::NAN))
}
fn psi_table1_first(z: Complex64) -> Complex64 {
    ONE + z * 0.5
}
fn psi_table1_second(z: Complex64) -> Complex64 {
    ONE + z * (z / 17.0).exp() * 0.5
}
fn psi_table1_third(z: Complex64) -> Complex64 {
    ONE + z * z.sin() * 0.25
}

pub const LEMNISCATE: ClassDescriptor = ClassDescriptor {
    id: "L",
    name: "S*_L",
    psi: psi_lemniscate,
    center_disk_radius: None,
    radial_deviation: Some(|r| 1.0 - (1.0 - r).sqrt()),
};

pub const CARDIOID: ClassDescriptor = ClassDescriptor {
    id: "C",
    name: "S*_C",
    psi: psi_cardioid,
    center_disk_radius: Some(2.0 / 3.0),
    radial_deviation: Some(|r| 4.0 * r / 3.0 + 2.0 * r * r / 3.0),
};

pub const EXPONENTIAL: ClassDescriptor = ClassDescriptor {
    id: "e",
    name: "S*_e",
    psi: psi_exponential,
    center_disk_radius: Some(1.0 - 1.0 / E),
    radial_deviation: Some(|r| r.exp() - 1.0),
};

pub const CRESCENT: ClassDescriptor = ClassDescriptor {
    id: "Delta",
    name: "S*_Δ*",
    psi: psi_crescent,
    center_disk_radius: Some(2.0 - SQRT_2),
    radial_deviation: Some(|r| r + (1.0 + r * r).sqrt() - 1.0),
};

pub const CARDIOID_WP: ClassDescriptor = ClassDescriptor {
    id: "wp",
    name: "S*_℘",
    psi: psi_wp,
    center_disk_radius: Some(1.0 / E),
    radial_deviation: Some(|r| r * r.exp()),
};

pub const SIGMOID: ClassDescriptor = ClassDescriptor {
    id: "SG",
    name: "S*_SG",
    psi: psi_sigmoid,
    center_disk_radius: Some((E - 1.0) / (E + 1.0)),
    radial_deviation: None,
};

pub const TAU: ClassDescriptor = ClassDescriptor {
    id: "tau",
    name: "S*_τ",
    psi: psi_tau,
    center_disk_radius: Some(FRAC_PI_4),
    radial_deviation: Some(|r| r.atanh()),
};

pub const TABLE1_PSI: [ClassDescriptor; 3] = [
    ClassDescriptor {
        id: "psi1",
        name: "1+z/2",
        psi: psi_table1_first,
        center_disk_radius: None,
        radial_deviation: Some(|r| r / 2.0),
    },
    ClassDescriptor {
        id: "psi2",
        name: "1+z e^{z/17}/2",
        psi: psi_table1_second,
        center_disk_radius: None,
        radial_deviation: Some(|r| r * (r / 17.0).exp() / 2.0),
    },
    ClassDescriptor {
        id: "psi3",
        name: "1+z sin z/4",
        psi: psi_table1_third,
        center_disk_radius: None,
        radial_deviation: None,
    },
];

pub const ALL_CLASSES: [ClassDescriptor; 7] = [
    LEMNISCATE,
    CARDIOID,
    EXPONENTIAL,
    CRESCENT,
    CARDIOID_WP,
    SIGMOID,
    TAU,
];

/// Default sampling radii for subordination checks.
pub const DEFAULT_RADII: [f64; 4] = [0.5, 0.9, 0.99, 0.999];
pub const DEFAULT_ANGLES: usize = 4096;

#[derive(Debug, Clone, PartialEq)]
pub struct SamplingReport {
    pub pass: bool,
    /// `ψ(0) = 1` to within 1e-12.
    pub normalized: bool,
    /// Smallest strip margin seen; negative means a sample left the strip.
    pub worst_margin: f64,
    pub worst_point: Complex64,
    pub samples: usize,
}

/// Samples `ψ` on circles and checks that every value lies in the strip.
///
/// Since the strip is convex and equals `τ(𝔻)`, image containment together
/// with `ψ(0) = 1` is what subordination to `τ` amounts to here.
pub fn subordination_sample<F>(psi: F, radii: &[f64], angles: usize) -> Result<SamplingReport>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    if let Some(&r) = radii.iter().find(|&&r| !(r > 0.0 && r < 1.0)) {
        return domain(format!("sampling radius {r} outside (0, 1)"));
    }
    let strip = StripDomain::default();
    let normalized = (psi(Complex64::new(0.0, 0.0))? - ONE).norm() <= 1e-12;
    let mut worst_margin = f64::INFINITY;
    let mut worst_point = Complex64::new(0.0, 0.0);
    let mut samples = 0;
    for &r in radii {
        for k in 0..angles {
            let z = Complex64::from_polar(r, 2.0 * PI * k as f64 / angles as f64);
            let w = psi(z)?;
            let m = if w.re.is_finite() {
                strip.margin(w)
            } else {
                f64::NEG_INFINITY
            };
            if m < worst_margin {
                worst_margin = m;
                worst_point = z;
            }
            samples += 1;
        }
    }
    Ok(SamplingReport {
        pass: normalized && worst_margin >= 0.0,
        normalized,
        worst_margin,
        worst_point,
        samples,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetryReport {
    /// `max |Im g(θ) − Im g(π−θ)|` for `g = arctan` on `|z| = r`.
    pub imag_residual: f64,
    /// `max |Re g(θ) + Re g(π−θ)|`.
    pub real_residual: f64,
}

/// Mirror symmetry of the image curve about `Re w = 1`.
pub fn symmetry_diagnostics(r: f64, angles: usize) -> Result<SymmetryReport> {
    if !(r > 0.0 && r < 1.0) {
        return domain(format!("radius must lie in (0, 1), got {r}"));
    }
    let mut imag_residual: f64 = 0.0;
    let mut real_residual: f64 = 0.0;
    for k in 0..angles {
        let theta = 2.0 * PI * k as f64 / angles as f64;
        let g1 = arctan(Complex64::from_polar(r, theta))?;
        let g2 = arctan(Complex64::from_polar(r, PI - theta))?;
        imag_residual = imag_residual.max((g1.im - g2.im).abs());
        real_residual = real_residual.max((g1.re + g2.re).abs());
    }
    Ok(SymmetryReport {
        imag_residual,
        real_residual,
    })
}

/// `1 + z g''(z)/g'(z)` for `g = arctan`, i.e. `(1 − z²)/(1 + z²)`.
pub fn convexity_expression(z: Complex64) -> Complex64 {
    (ONE - z * z) / (ONE + z * z)
}

/// Winding number of the closed curve `θ ↦ curve(θ)`, `θ ∈ [0, 2π]`, about `w`.
///
/// For a univalent map `ψ` sampled on the unit circle this is 1 exactly
/// when `w ∈ ψ(𝔻)`. `samples` must be large enough that consecutive curve
/// points subtend less than π as seen from `w`.
pub fn winding_number<F>(curve: F, w: Complex64, samples: usize) -> i64
where
    F: Fn(f64) -> Complex64,
{
    let mut total = 0.0;
    let mut prev = (curve(0.0) - w).arg();
    for k in 1..=samples {
        let theta = 2.0 * PI * k as f64 / samples as f64;
        let a = (curve(theta) - w).arg();
        let mut d = a - prev;
        if d > PI {
            d -= 2.0 * PI;
        } else if d < -PI {
            d += 2.0 * PI;
        }
        total += d;
        prev = a;
    }
    (total / (2.0 * PI)).round() as i64
}
