//! Radius problems and inclusion constants for the strip class.
//!
//! Two families of sharp radii are computed: the radius below which a
//! comparison class `S*(ψ)` lands inside the strip class (solve
//! `max_{|z|=r} |ψ(z) − 1| = π/4`), and the radius below which the strip
//! class lands inside `S*(ψ)` (solve `arctan r = δ_ψ`, with `δ_ψ` the
//! radius of the largest disk about 1 inside `ψ(𝔻)`).

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::strip_domain::{
    tau_eval, winding_number, ClassDescriptor, StripDomain, CARDIOID, CARDIOID_WP,
    CRESCENT, EXPONENTIAL, LEMNISCATE, SIGMOID,
};

/// Bisection stops once the bracket is this narrow.
pub const BISECTION_TOL: f64 = 1e-13;
/// Residual ceiling and closed-form agreement for every reported radius.
pub const RADIUS_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SharpWitness {
    /// The class member realizing the contact.
    pub function: String,
    /// Real point `z` of contact.
    pub contact_z: f64,
    /// Value of the relevant log-derivative at `contact_z`.
    pub contact_value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadiusResult {
    pub name: String,
    pub closed_form: Option<f64>,
    pub numeric: f64,
    pub residual: f64,
    pub sharp_witness: Option<SharpWitness>,
}

impl RadiusResult {
    pub fn closed_form_gap(&self) -> Option<f64> {
        self.closed_form.map(|c| (c - self.numeric).abs())
    }
}

/// Bisection for `h(x) = target` on a sign-changing bracket.
pub fn solve_monotone<F: Fn(f64) -> f64>(h: F, target: f64, bracket: (f64, f64)) -> Result<f64> {
    let (mut lo, mut hi) = bracket;
    let mut flo = h(lo) - target;
    let fhi = h(hi) - target;
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() || !flo.is_finite() || !fhi.is_finite() {
        return Err(Error::Bracket { lo, hi });
    }
    while hi - lo > BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        let fm = h(mid) - target;
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `1 − arctan r − r/((1 − arctan r)(1 − r⁴))`, the lower bound of
/// `Re(1 + zf''/f')` on `|z| = r`.
pub fn convexity_lower_bound(r: f64) -> f64 {
    let a = 1.0 - r.atan();
    a - r / (a * (1.0 - r.powi(4)))
}

/// Radius of convexity of order `gamma`.
pub fn convexity_radius(gamma: f64) -> Result<RadiusResult> {
    if !(0.0..1.0).contains(&gamma) {
        return domain(format!("convexity order must lie in [0, 1), got {gamma}"));
    }
    let r = solve_monotone(convexity_lower_bound, gamma, (0.0, 1.0 - 1e-12))?;
    let a = 1.0 - r.atan();
    let residual = (a * (1.0 - r.powi(4)) * (a - gamma) - r).abs();
    Ok(RadiusResult {
        name: format!("convexity radius (gamma = {gamma})"),
        closed_form: None,
        numeric: r,
        residual,
        sharp_witness: None,
    })
}

struct TauRadiusEntry {
    closed_form: Option<f64>,
    function: &'static str,
    /// Sign of the contact point on the real axis.
    contact_sign: f64,
}

fn tau_radius_entry(class: &ClassDescriptor) -> Result<TauRadiusEntry> {
    let e = match class.id {
        "L" => TauRadiusEntry {
            closed_form: Some(PI * (8.0 - PI) / 16.0),
            function: "4z/(sqrt(1+z)+1)^2 exp(2(sqrt(1+z)-1))",
            contact_sign: -1.0,
        },
        "C" => TauRadiusEntry {
            closed_form: Some((1.0 + 3.0 * PI / 8.0).sqrt() - 1.0),
            function: "z exp((z^2+4z)/3)",
            contact_sign: 1.0,
        },
        "e" => TauRadiusEntry {
            closed_form: Some((1.0 + FRAC_PI_4).ln()),
            function: "z exp(int_0^z (e^t-1)/t dt)",
            contact_sign: 1.0,
        },
        "Delta" => TauRadiusEntry {
            closed_form: Some(PI * (8.0 + PI) / (8.0 * (4.0 + PI))),
            function: "2z/(sqrt(1+z^2)+1) exp(z+sqrt(1+z^2)-1)",
            contact_sign: 1.0,
        },
        "wp" => TauRadiusEntry {
            closed_form: None,
            function: "z exp(e^z-1)",
            contact_sign: 1.0,
        },
        other => return Err(Error::Lookup(format!("no strip-class radius for {other}"))),
    };
    Ok(e)
}

/// Largest `r` such that `S*(ψ)` restricted to `|z| < r` lies in the strip class.
pub fn tau_radius_of(class: &ClassDescriptor) -> Result<RadiusResult> {
    let entry = tau_radius_entry(class)?;
    let dev = class
        .radial_deviation
        .ok_or_else(|| Error::Lookup(format!("{} has no radial deviation", class.name)))?;
    let r = solve_monotone(dev, FRAC_PI_4, (0.0, 1.0))?;
    let z = entry.contact_sign * r;
    Ok(RadiusResult {
        name: format!("{}→S*_τ", class.name),
        closed_form: entry.closed_form,
        numeric: r,
        residual: (dev(r) - FRAC_PI_4).abs(),
        sharp_witness: Some(SharpWitness {
            function: entry.function.to_string(),
            contact_z: z,
            contact_value: class.eval(Complex64::new(z, 0.0)).re,
        }),
    })
}

/// Largest `r` such that the strip class restricted to `|z| < r` lies in `S*(ψ)`.
pub fn radius_in(class: &ClassDescriptor) -> Result<RadiusResult> {
    if class.id == "tau" {
        return Err(Error::Lookup("radius of the strip class in itself".into()));
    }
    let delta = class
        .center_disk_radius
        .ok_or_else(|| Error::Lookup(format!("{} has no centre-disk radius", class.name)))?;
    if delta >= FRAC_PI_2 {
        return domain(format!("centre-disk radius {delta} must be below π/2"));
    }
    let r = solve_monotone(f64::atan, delta, (0.0, 1.0))?;
    Ok(RadiusResult {
        name: format!("S*_τ→{}", class.name),
        closed_form: Some(delta.tan()),
        numeric: r,
        residual: (r.atan() - delta).abs(),
        sharp_witness: Some(SharpWitness {
            function: "tau_tilde".into(),
            contact_z: -r,
            contact_value: 1.0 - r.atan(),
        }),
    })
}

/// All ten radii, strip-class radii first.
pub fn radius_catalog() -> Result<Vec<RadiusResult>> {
    let mut out = Vec::with_capacity(10);
    for c in [LEMNISCATE, CARDIOID, EXPONENTIAL, CRESCENT, CARDIOID_WP] {
        out.push(tau_radius_of(&c)?);
    }
    for c in [EXPONENTIAL, SIGMOID, CARDIOID, CARDIOID_WP, CRESCENT] {
        out.push(radius_in(&c)?);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy)]
pub enum RadiusProblem {
    /// `S*(ψ)` inside the strip class.
    TauRadiusOf(ClassDescriptor),
    /// The strip class inside `S*(ψ)`.
    RadiusIn(ClassDescriptor),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SharpnessReport {
    pub contact_z: f64,
    /// Distance from the extremal value at `contact_z` to the target boundary.
    pub contact_gap: f64,
    /// The image of `|z| = r*/2` lies strictly inside the target.
    pub inside_at_half: bool,
    /// The extremal value at `1.001 · contact_z` lies outside the target.
    pub fails_beyond: bool,
}

impl SharpnessReport {
    pub fn confirms(&self, tol: f64) -> bool {
        self.contact_gap <= tol && self.inside_at_half && self.fails_beyond
    }
}

const WINDING_SAMPLES: usize = 1 << 16;
const HALF_RADIUS_ANGLES: usize = 64;

fn in_psi_domain(class: &ClassDescriptor, w: Complex64) -> bool {
    winding_number(|t| class.eval(Complex64::from_polar(1.0, t)), w, WINDING_SAMPLES) == 1
}

/// Checks boundary contact at `r_star`, interior at `r_star/2` and failure
/// just beyond `r_star`.
pub fn sharpness_probe(problem: RadiusProblem, r_star: f64) -> Result<SharpnessReport> {
    if !(r_star > 0.0 && r_star < 1.0) {
        return domain(format!("r* must lie in (0, 1), got {r_star}"));
    }
    let strip = StripDomain::default();
    let circle = |r: f64| {
        (0..HALF_RADIUS_ANGLES)
            .map(move |k| Complex64::from_polar(r, 2.0 * PI * k as f64 / HALF_RADIUS_ANGLES as f64))
    };
    match problem {
        RadiusProblem::TauRadiusOf(class) => {
            let sign = tau_radius_entry(&class)?.contact_sign;
            let zc = sign * r_star;
            let w = class.eval(Complex64::new(zc, 0.0));
            let inside_at_half = circle(0.5 * r_star).all(|z| strip.contains(class.eval(z), true));
            let beyond = class.eval(Complex64::new(1.001 * zc, 0.0));
            Ok(SharpnessReport {
                contact_z: zc,
                contact_gap: strip.margin(w).abs(),
                inside_at_half,
                fails_beyond: !strip.contains(beyond, false),
            })
        }
        RadiusProblem::RadiusIn(class) => {
            let zc = -r_star;
            let w = tau_eval(Complex64::new(zc, 0.0))?;
            let boundary = class.eval(Complex64::new(-1.0, 0.0));
            let mut inside_at_half = true;
            for z in circle(0.5 * r_star) {
                inside_at_half &= in_psi_domain(&class, tau_eval(z)?);
            }
            let beyond = tau_eval(Complex64::new(1.001 * zc, 0.0))?;
            Ok(SharpnessReport {
                contact_z: zc,
                contact_gap: (w - boundary).norm(),
                inside_at_half,
                fails_beyond: !in_psi_domain(&class, beyond),
            })
        }
    }
}

/// Whether the sampled image `τ(|z| = r)` lies inside `ψ(𝔻)`, by winding number.
pub fn tau_circle_inside(class: &ClassDescriptor, r: f64, angles: usize) -> Result<bool> {
    let mut ok = true;
    for k in 0..angles {
        let z = Complex64::from_polar(r, 2.0 * PI * k as f64 / angles as f64);
        ok &= in_psi_domain(class, tau_eval(z)?);
    }
    Ok(ok)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InclusionConstants {
    /// Largest `α` with the class inside `S*(α)`: `1 − π/4`.
    pub starlike_order: f64,
    /// `4/(4 + π)`.
    pub reciprocal_order: f64,
    /// `1 + π/4`, the upper bound of `Re zf'/f`.
    pub upper_real_bound: f64,
    /// `k_min(0) = 1 + 4/π`.
    pub kst_threshold_at_zero: f64,
}

/// `k_min(α) = (π + 4(1 − α))/π`.
pub fn kst_threshold(alpha: f64) -> f64 {
    (PI + 4.0 * (1.0 - alpha)) / PI
}

pub fn inclusion_constants() -> InclusionConstants {
    InclusionConstants {
        starlike_order: 1.0 - FRAC_PI_4,
        reciprocal_order: 4.0 / (4.0 + PI),
        upper_real_bound: 1.0 + FRAC_PI_4,
        kst_threshold_at_zero: kst_threshold(0.0),
    }
}

/// Conic `Re w = α + k|w − 1|`, an ellipse for `k > 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EllipseParams {
    pub x0: f64,
    pub y0: f64,
    pub a: f64,
    pub b: f64,
}

impl EllipseParams {
    pub fn new(k: f64, alpha: f64) -> Result<Self> {
        if k <= 1.0 {
            return domain(format!("k = {k}: the boundary is an ellipse only for k > 1"));
        }
        if !(0.0..1.0).contains(&alpha) {
            return domain(format!("alpha must lie in [0, 1), got {alpha}"));
        }
        let d = k * k - 1.0;
        Ok(Self {
            x0: (k * k - alpha) / d,
            y0: 0.0,
            a: (k * (alpha - 1.0) / d).abs(),
            b: ((alpha - 1.0) / d.sqrt()).abs(),
        })
    }

    pub fn right_vertex(&self) -> f64 {
        self.x0 + self.a
    }
}

/// Whether the `(k, α)` ellipse fits in the strip: `x0 + a ≤ 1 + π/4`.
pub fn ellipse_in_strip(k: f64, alpha: f64) -> Result<bool> {
    let e = EllipseParams::new(k, alpha)?;
    Ok(e.right_vertex() <= 1.0 + FRAC_PI_4)
}

/// Sampled check that `ψ` peaks in `|ψ − 1|` on the real axis at radius `r`.
pub fn deviation_is_radial(class: &ClassDescriptor, r: f64, angles: usize) -> Option<f64> {
    let dev = class.radial_deviation?;
    Some(class.sampled_deviation(r, angles) - dev(r))
}

/// `ψ(−1)`, where `τ̃` first touches `∂ψ(𝔻)`.
pub fn left_boundary_point(class: &ClassDescriptor) -> f64 {
    class.eval(Complex64::new(-1.0, 0.0)).re
}
