//! Boundary-curve data: CSV polylines and a single-file SVG overlay.

use std::f64::consts::{FRAC_PI_4, PI};
use std::fmt::Write as _;

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::radius::{radius_in, tau_radius_of};
use crate::strip_domain::{tau_eval, ClassDescriptor};

pub const DEFAULT_POINTS: usize = 721;

#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    pub label: String,
    /// `(parameter, point)` pairs; the parameter is θ for circle images.
    pub points: Vec<(f64, Complex64)>,
}

impl Polyline {
    /// `theta,re,im` rows with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("theta,re,im\n");
        for (t, w) in &self.points {
            let _ = writeln!(out, "{t:.16e},{:.16e},{:.16e}", w.re, w.im);
        }
        out
    }
}

fn thetas(n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |k| 2.0 * PI * k as f64 / (n - 1) as f64)
}

/// `τ(re^{iθ})`.
pub fn tau_curve(r: f64, n: usize) -> Result<Polyline> {
    if !(r > 0.0 && r < 1.0) {
        return domain(format!("radius must lie in (0, 1), got {r}"));
    }
    let points = thetas(n.max(2))
        .map(|t| Ok((t, tau_eval(Complex64::from_polar(r, t))?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Polyline { label: format!("tau(r={r})"), points })
}

/// `ψ(re^{iθ})`, `0 < r ≤ 1`.
pub fn psi_curve(class: &ClassDescriptor, r: f64, n: usize) -> Result<Polyline> {
    if !(r > 0.0 && r <= 1.0) {
        return domain(format!("radius must lie in (0, 1], got {r}"));
    }
    let points = thetas(n.max(2)).map(|t| (t, class.eval(Complex64::from_polar(r, t)))).collect();
    Ok(Polyline { label: format!("{}(r={r})", class.id), points })
}

/// The lines `Re w = 1 ± π/4` over `im_lo ≤ Im w ≤ im_hi`.
pub fn strip_lines(im_lo: f64, im_hi: f64, n: usize) -> [Polyline; 2] {
    let n = n.max(2);
    let line = |x: f64, label: &str| Polyline {
        label: label.into(),
        points: (0..n)
            .map(|k| {
                let s = k as f64 / (n - 1) as f64;
                (s, Complex64::new(x, im_lo + s * (im_hi - im_lo)))
            })
            .collect(),
    };
    [line(1.0 - FRAC_PI_4, "strip_left"), line(1.0 + FRAC_PI_4, "strip_right")]
}

/// Boundary of `D(1, π/4)`.
pub fn inscribed_disk(n: usize) -> Polyline {
    Polyline {
        label: "disk(1,pi/4)".into(),
        points: thetas(n.max(2)).map(|t| (t, Complex64::new(1.0, 0.0) + Complex64::from_polar(FRAC_PI_4, t))).collect(),
    }
}

fn im_extent(lines: &[Polyline]) -> (f64, f64) {
    let (lo, hi) = lines
        .iter()
        .flat_map(|l| l.points.iter())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), (_, w)| (lo.min(w.im), hi.max(w.im)));
    if lo.is_finite() {
        (lo.min(-1.0), hi.max(1.0))
    } else {
        (-2.0, 2.0)
    }
}

/// Curves for a named plot.
///
/// `strip`: the strip lines, the inscribed disk and `τ(|z| = r)` (default
/// `r = 0.99`). `tau-in-<id>`: `τ(|z| = r)` against `ψ(𝔻)`, `r` defaulting
/// to the radius of the strip class in `S*(ψ)`. `<id>-in-tau`: `ψ(|z| = r)`
/// against the strip, `r` defaulting to the strip radius of `S*(ψ)`.
pub fn plot_set(which: &str, r: Option<f64>, n: usize) -> Result<Vec<Polyline>> {
    let mut out = Vec::new();
    if which == "strip" {
        out.push(inscribed_disk(n));
        out.push(tau_curve(r.unwrap_or(0.99), n)?);
    } else if let Some(id) = which.strip_prefix("tau-in-") {
        let class = ClassDescriptor::lookup(id)?;
        let r = match r {
            Some(r) => r,
            None => radius_in(&class)?.numeric,
        };
        out.push(psi_curve(&class, 1.0, n)?);
        out.push(tau_curve(r, n)?);
    } else if let Some(id) = which.strip_suffix("-in-tau") {
        let class = ClassDescriptor::lookup(id)?;
        let r = match r {
            Some(r) => r,
            None => tau_radius_of(&class)?.numeric,
        };
        out.push(psi_curve(&class, r, n)?);
    } else {
        return Err(Error::Lookup(format!("unknown plot {which}")));
    }
    let (lo, hi) = im_extent(&out);
    out.extend(strip_lines(lo, hi, 2));
    Ok(out)
}

const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

/// Overlay on a 1000×1000 viewBox with equal axis scaling and both axes drawn.
pub fn to_svg(lines: &[Polyline]) -> String {
    let pts = lines.iter().flat_map(|l| l.points.iter().map(|p| p.1));
    let (mut x0, mut x1, mut y0, mut y1) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for w in pts {
        x0 = x0.min(w.re);
        x1 = x1.max(w.re);
        y0 = y0.min(w.im);
        y1 = y1.max(w.im);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-9) * 1.1;
    let (cx, cy) = (0.5 * (x0 + x1), 0.5 * (y0 + y1));
    let scale = 1000.0 / span;
    let map = |w: Complex64| (500.0 + (w.re - cx) * scale, 500.0 - (w.im - cy) * scale);

    let mut s = String::from(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\" width=\"1000\" height=\"1000\">\n",
    );
    let (ox, oy) = map(Complex64::new(0.0, 0.0));
    let _ = writeln!(s, "<line x1=\"0\" y1=\"{oy:.3}\" x2=\"1000\" y2=\"{oy:.3}\" stroke=\"#888\" stroke-width=\"1\"/>");
    let _ = writeln!(s, "<line x1=\"{ox:.3}\" y1=\"0\" x2=\"{ox:.3}\" y2=\"1000\" stroke=\"#888\" stroke-width=\"1\"/>");
    for (i, l) in lines.iter().enumerate() {
        let d: Vec<String> = l
            .points
            .iter()
            .map(|(_, w)| {
                let (x, y) = map(*w);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let _ = writeln!(
            s,
            "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"2\" points=\"{}\"><title>{}</title></polyline>",
            COLORS[i % COLORS.len()],
            d.join(" "),
            l.label
        );
    }
    s.push_str("</svg>\n");
    s
}
