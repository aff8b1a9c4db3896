//! Representative members of the class built from the integral
//! representation `f(z) = z exp ∫_0^z (ψ(t) − 1)/t dt`, plus the growth,
//! covering and rotation bounds governed by `τ̃ = f` for `ψ = τ`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::quad::{adaptive_simpson, arctan_integral, DEFAULT_TOL};
use crate::series::PowerSeries;
use crate::strip_domain::{self, SamplingReport};

/// Round-trip tolerance for recomputing `zf'/f` from a built `f`.
pub const LOGDERIV_TOL: f64 = 1e-11;

/// Beyond this radius the growth and rotation routines stop trusting
/// truncated series and integrate along the ray instead.
pub const SERIES_RADIUS_LIMIT: f64 = 0.95;

#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalFunction {
    /// Taylor coefficients of `f`, with `f(0) = 0`, `f'(0) = 1`.
    pub f: PowerSeries,
    /// `zf'(z)/f(z)`, one order lower than `f`.
    pub logderiv: PowerSeries,
    pub label: String,
}

impl ExtremalFunction {
    /// Wraps an explicit normalized `f` and derives `zf'/f`.
    pub fn from_series(f: PowerSeries, label: impl Into<String>) -> Result<Self> {
        if f.order() < 1 || f.coeff(0) != 0.0 || f.coeff(1) != 1.0 {
            return domain("f must satisfy f(0) = 0 and f'(0) = 1");
        }
        let logderiv = log_derivative(&f)?;
        Ok(Self {
            f,
            logderiv,
            label: label.into(),
        })
    }

    pub fn order(&self) -> usize {
        self.f.order()
    }

    /// `a_n`, the coefficient of `z^n`.
    pub fn coeff(&self, n: usize) -> f64 {
        self.f.coeff(n)
    }
}

/// `zf'(z)/f(z)` computed as `f'(z) / (f(z)/z)`.
pub fn log_derivative(f: &PowerSeries) -> Result<PowerSeries> {
    let f_over_z = f.shift_down()?;
    f.derivative().div(&f_over_z)
}

/// `f = z · exp(∫_0^z (ψ(t) − 1)/t dt)` for the given `ψ − 1`.
///
/// The log-derivative is recomputed from `f` and must reproduce `ψ` to
/// within [`LOGDERIV_TOL`] through the available order.
pub fn build_from_psi(psi_minus_one: &PowerSeries, label: impl Into<String>) -> Result<ExtremalFunction> {
    if psi_minus_one.coeff(0) != 0.0 {
        return domain("ψ − 1 must vanish at the origin");
    }
    let n = psi_minus_one.order();
    let g = psi_minus_one.integrate_over_t()?.exp()?;
    // f = z·g, one order higher so the top coefficient of g is kept
    let f = PowerSeries::from_fn(n + 1, |k| if k == 0 { 0.0 } else { g.coeff(k - 1) });
    let ex = ExtremalFunction::from_series(f, label)?;
    for k in 0..=ex.logderiv.order() {
        let want = if k == 0 { 1.0 } else { psi_minus_one.coeff(k) };
        let got = ex.logderiv.coeff(k);
        let scale = want.abs().max(1.0);
        if (got - want).abs() > LOGDERIV_TOL * scale {
            return Err(Error::Domain(format!(
                "log-derivative round trip failed at degree {k}: {got} vs {want}"
            )));
        }
    }
    Ok(ex)
}

/// `f_n(z) = z exp ∫_0^z arctan(t^{n−1})/t dt` truncated at `order`.
pub fn build_f_n(n: usize, order: usize) -> Result<ExtremalFunction> {
    if n < 2 {
        return domain(format!("f_n needs n ≥ 2, got {n}"));
    }
    if order < 2 {
        return domain("order must be at least 2");
    }
    let m = order - 1;
    let inner = PowerSeries::monomial(m, n - 1, 1.0);
    let psi_minus_one = PowerSeries::arctan(m).compose(&inner)?;
    build_from_psi(&psi_minus_one, format!("f_{n}"))
}

/// `τ̃(z) = z exp ∫_0^z arctan(t)/t dt`.
pub fn tau_tilde(order: usize) -> Result<ExtremalFunction> {
    let mut f = build_f_n(2, order)?;
    f.label = "tau_tilde".into();
    Ok(f)
}

/// The three example members of the class: `z e^{z/2}`,
/// `z exp((17/2)(e^{z/17} − 1))` and `z exp((1 − cos z)/4)`.
pub fn table1_function(index: usize, order: usize) -> Result<ExtremalFunction> {
    let m = order.checked_sub(1).ok_or_else(|| Error::Domain("order must be ≥ 1".into()))?;
    let psi_minus_one = match index {
        1 => PowerSeries::monomial(m, 1, 0.5),
        2 => PowerSeries::exp_linear(m, 1.0 / 17.0).shift_up().scale(0.5),
        3 => sin_series(m).shift_up().scale(0.25),
        _ => return Err(Error::Lookup(format!("table function {index}"))),
    };
    build_from_psi(&psi_minus_one, format!("f{index}"))
}

fn sin_series(order: usize) -> PowerSeries {
    let mut coeffs = vec![0.0; order + 1];
    let mut fact = 1.0;
    for (k, c) in coeffs.iter_mut().enumerate() {
        if k > 0 {
            fact *= k as f64;
        }
        if k % 2 == 1 {
            let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
            *c = sign / fact;
        }
    }
    PowerSeries::new(coeffs).expect("non-empty")
}

/// Koebe function `z/(1 − z)^2 = Σ n z^n`.
pub fn koebe(order: usize) -> Result<ExtremalFunction> {
    ExtremalFunction::from_series(PowerSeries::from_fn(order, |n| n as f64), "koebe")
}

/// `∫_0^z arctan(t)/t dt`, i.e. `log(τ̃(z)/z)`, for `|z| < 1`.
pub fn log_tau_tilde_over_z(z: Complex64) -> Result<Complex64> {
    let r = z.norm();
    if r >= 1.0 {
        return domain(format!("need |z| < 1, got {r}"));
    }
    if r <= SERIES_RADIUS_LIMIT {
        // Σ (−1)^k z^{2k+1} / (2k+1)^2
        let z2 = z * z;
        let mut pow = z;
        let mut sum = Complex64::new(0.0, 0.0);
        let mut k = 0u32;
        loop {
            let n = (2 * k + 1) as f64;
            let term = pow / (n * n);
            if k.is_multiple_of(2) {
                sum += term;
            } else {
                sum -= term;
            }
            if term.norm() < 1e-18 {
                break;
            }
            pow *= z2;
            k += 1;
        }
        Ok(sum)
    } else {
        let integrand = |s: f64| -> Complex64 {
            if s == 0.0 {
                z
            } else {
                strip_domain::arctan(z * s).expect("|sz| < 1") / s
            }
        };
        Ok(adaptive_simpson(integrand, 0.0, 1.0, DEFAULT_TOL))
    }
}

/// `τ̃(z)` without series truncation.
pub fn tau_tilde_eval(z: Complex64) -> Result<Complex64> {
    Ok(z * log_tau_tilde_over_z(z)?.exp())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthBounds {
    pub r: f64,
    /// `−τ̃(−r)` by quadrature.
    pub lower: f64,
    /// `τ̃(r)` by quadrature.
    pub upper: f64,
    /// The same pair from the truncated series, when its tail is negligible.
    pub series: Option<(f64, f64)>,
}

impl GrowthBounds {
    /// Disagreement between the two routes, if the series route ran.
    pub fn route_gap(&self) -> Option<f64> {
        self.series
            .map(|(lo, hi)| (lo - self.lower).abs().max((hi - self.upper).abs()))
    }
}

/// Growth bounds `−τ̃(−r) ≤ |f(z)| ≤ τ̃(r)` on `|z| = r`.
pub fn growth_bounds(r: f64, order: usize) -> Result<GrowthBounds> {
    if !(r > 0.0 && r < 1.0) {
        return domain(format!("radius must lie in (0, 1), got {r}"));
    }
    let i = arctan_integral(r);
    let lower = r * (-i).exp();
    let upper = r * i.exp();
    let series = if r <= SERIES_RADIUS_LIMIT {
        let t = tau_tilde(order)?;
        if t.f.tail_estimate(r) < 1e-10 {
            Some((-t.f.eval_real(-r), t.f.eval_real(r)))
        } else {
            None
        }
    } else {
        None
    };
    Ok(GrowthBounds {
        r,
        lower,
        upper,
        series,
    })
}

/// `−τ̃(−1) = exp(−∫_0^1 arctan(t)/t dt)`, the Koebe-type covering radius.
pub fn covering_radius() -> f64 {
    (-arctan_integral(1.0)).exp()
}

/// `max_{|z|=r} |arg(τ̃(z)/z)|`: grid maximum refined by golden section.
///
/// Ties on the grid resolve to the smallest angle.
pub fn rotation_bound(r: f64, angles: usize) -> Result<f64> {
    if !(r > 0.0 && r < 1.0) {
        return domain(format!("radius must lie in (0, 1), got {r}"));
    }
    if angles < 4 {
        return domain("need at least 4 angles");
    }
    let arg_at = |theta: f64| -> Result<f64> {
        Ok(log_tau_tilde_over_z(Complex64::from_polar(r, theta))?.im.abs())
    };
    let step = 2.0 * PI / angles as f64;
    let mut best = (0.0, f64::NEG_INFINITY);
    for k in 0..angles {
        let theta = k as f64 * step;
        let v = arg_at(theta)?;
        if v > best.1 {
            best = (theta, v);
        }
    }
    let (lo, hi) = (best.0 - step, best.0 + step);
    let refined = golden_max(|t| arg_at(t).unwrap_or(f64::NEG_INFINITY), lo, hi, 1e-12);
    Ok(refined.1.max(best.1))
}

/// Golden-section maximization of a unimodal function on `[a, b]`.
pub fn golden_max<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Samples `zf'/f` on circles and checks strip membership.
pub fn membership_check(f: &ExtremalFunction, radii: &[f64], angles: usize) -> Result<SamplingReport> {
    strip_domain::subordination_sample(|z| Ok(f.logderiv.eval(z)), radii, angles)
}
