//! The verification suite: every checked value as a named item with its
//! expected value, computed value, tolerance and status.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_4, PI};
use std::fmt::Write as _;
use std::time::Instant;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

use crate::error::{Error, Result};
use crate::extremal::{self, covering_radius, growth_bounds, membership_check, tau_tilde};
use crate::hankel::{
    self, coeffs_from_p, functionals, h3_direct, maximize_functional, maximize_surrogate,
    maximize_surrogate_slice, p_from_params, surrogate_faces, surrogate_h, CaratheodoryPoint,
    PCoeffs, Slice, Target,
};
use crate::radius::{
    self, convexity_radius, inclusion_constants, radius_catalog, sharpness_probe, RadiusProblem,
};
use crate::series::{PowerSeries, DEFAULT_ORDER};
use crate::strip_domain::{
    self, subordination_sample, symmetry_diagnostics, ClassDescriptor, DEFAULT_ANGLES,
    DEFAULT_RADII, TABLE1_PSI,
};

/// Catalan's constant.
pub const CATALAN: f64 = 0.915_965_594_177_219_015_054_603_514_932_384_110_774;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// How `computed_value` is compared with `paper_value`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// `|claimed − computed| ≤ tolerance`.
    Abs,
    /// `computed ≤ claimed + tolerance`.
    AtMost,
    /// `|claimed − computed| ≤ tolerance` and `computed ≤ claimed + slack`.
    Attained { slack: f64 },
    /// Boolean claim encoded as 1 (holds) or 0.
    Claim,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportItem {
    pub name: String,
    pub section: String,
    #[serde(serialize_with = "sci")]
    pub paper_value: f64,
    #[serde(serialize_with = "sci")]
    pub computed_value: f64,
    #[serde(serialize_with = "sci")]
    pub tolerance: f64,
    pub comparison: Comparison,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ReportItem {
    fn evaluate(&mut self) {
        let gap = (self.paper_value - self.computed_value).abs();
        let ok = match self.comparison {
            Comparison::Abs => gap <= self.tolerance,
            Comparison::AtMost => self.computed_value <= self.paper_value + self.tolerance,
            Comparison::Attained { slack } => {
                gap <= self.tolerance && self.computed_value <= self.paper_value + slack
            }
            Comparison::Claim => self.computed_value == self.paper_value,
        };
        self.status = if ok { Status::Pass } else { Status::Fail };
    }
}

/// A JSON number with 17 significant digits, or `null` when not finite.
pub fn sci_raw(v: f64) -> Box<RawValue> {
    let v = if v == 0.0 { 0.0 } else { v };
    let text = if v.is_finite() { format!("{v:.16e}") } else { "null".to_string() };
    RawValue::from_string(text).expect("formatted float is valid JSON")
}

fn sci<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    sci_raw(*v).serialize(s)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportMeta {
    pub series_order: usize,
    pub grid_n: usize,
    pub seed: u64,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub items: Vec<ReportItem>,
    pub meta: ReportMeta,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.items.iter().all(|i| i.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportItem> {
        self.items.iter().filter(|i| i.status == Status::Fail)
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Domain(e.to_string()))
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let m = &self.meta;
        let _ = writeln!(out, "# Verification report\n");
        let _ = writeln!(
            out,
            "series order {}, grid {}, seed {}, version {}\n",
            m.series_order, m.grid_n, m.seed, m.version
        );
        let mut sections: BTreeMap<&str, Vec<&ReportItem>> = BTreeMap::new();
        for it in &self.items {
            sections.entry(&it.section).or_default().push(it);
        }
        for (section, items) in sections {
            let _ = writeln!(out, "## {section}\n");
            let _ = writeln!(out, "| item | expected | computed | tolerance | status |");
            let _ = writeln!(out, "|---|---|---|---|---|");
            for it in items {
                let _ = writeln!(
                    out,
                    "| {} | {} | {} | {} | {:?} |",
                    it.name,
                    fmt_num(it.paper_value),
                    fmt_num(it.computed_value),
                    fmt_num(it.tolerance),
                    it.status
                );
            }
            out.push('\n');
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("name,section,paper_value,computed_value,tolerance,status\n");
        for it in &self.items {
            let status = match it.status {
                Status::Pass => "pass",
                Status::Fail => "fail",
                Status::Skipped => "skipped",
            };
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                it.name,
                it.section,
                fmt_num(it.paper_value),
                fmt_num(it.computed_value),
                fmt_num(it.tolerance),
                status
            );
        }
        out
    }
}

pub fn fmt_num(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        String::new()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub order: usize,
    pub grid_n: usize,
    pub seed: u64,
    pub starts: usize,
    /// Sample count for the random property checks.
    pub samples: usize,
    /// Tolerance replacements keyed by item name.
    pub tol_overrides: BTreeMap<String, f64>,
    pub timings: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            order: DEFAULT_ORDER,
            grid_n: 101,
            seed: 0,
            starts: 200,
            samples: 100_000,
            tol_overrides: BTreeMap::new(),
            timings: false,
        }
    }
}

impl SuiteConfig {
    /// Parses a JSON object of `name → tolerance`.
    pub fn parse_overrides(json: &str) -> Result<BTreeMap<String, f64>> {
        serde_json::from_str(json).map_err(|e| Error::Domain(format!("tolerance overrides: {e}")))
    }
}

struct Builder<'a> {
    cfg: &'a SuiteConfig,
    items: Vec<ReportItem>,
    section: &'static str,
}

impl<'a> Builder<'a> {
    fn push(&mut self, name: impl Into<String>, claimed: f64, computed: f64, tol: f64, cmp: Comparison) {
        self.items.push(ReportItem {
            name: name.into(),
            section: self.section.to_string(),
            paper_value: claimed,
            computed_value: computed,
            tolerance: tol,
            comparison: cmp,
            status: Status::Fail,
            runtime_ms: None,
            note: None,
        });
    }

    fn abs(&mut self, name: impl Into<String>, claimed: f64, computed: f64, tol: f64) {
        self.push(name, claimed, computed, tol, Comparison::Abs);
    }

    fn claim(&mut self, name: impl Into<String>, holds: bool) {
        self.push(name, 1.0, if holds { 1.0 } else { 0.0 }, 0.0, Comparison::Claim);
    }

    fn skipped(&mut self, name: impl Into<String>, claimed: f64, note: String) {
        self.push(name, claimed, f64::NAN, 0.0, Comparison::Abs);
        let it = self.items.last_mut().expect("just pushed");
        it.status = Status::Skipped;
        it.note = Some(note);
    }

    /// Runs `f`, attributing its wall time to every item it adds.
    fn timed(&mut self, section: &'static str, f: impl FnOnce(&mut Self) -> Result<()>) -> Result<()> {
        self.section = section;
        let start = self.items.len();
        let t = Instant::now();
        f(self)?;
        if self.cfg.timings {
            let ms = t.elapsed().as_secs_f64() * 1e3;
            for it in &mut self.items[start..] {
                it.runtime_ms = Some(ms);
            }
        }
        Ok(())
    }
}

const TAU_TILDE: [f64; 6] = [1.0, 1.0, 0.5, 1.0 / 18.0, -5.0 / 72.0, -13.0 / 1800.0];

/// Runs every check and returns the report sorted by item name.
pub fn run_suite(cfg: &SuiteConfig) -> Result<VerificationReport> {
    let mut b = Builder { cfg, items: Vec::new(), section: "" };

    b.timed("strip domain", |b| {
        for r in [0.5, 0.9] {
            let (lo, hi) = strip_domain::re_range_sampled(r, 10_000)?;
            b.abs(format!("strip.min_re(r={r})"), 1.0 - r.atan(), lo, 1e-9);
            b.abs(format!("strip.max_re(r={r})"), 1.0 + r.atan(), hi, 1e-9);
        }
        let sym = symmetry_diagnostics(0.9, DEFAULT_ANGLES)?;
        b.abs("strip.symmetry_residual(r=0.9)", 0.0, sym.imag_residual.max(sym.real_residual), 1e-12);
        b.claim("strip.inscribed_disk(1,pi/4)", strip_domain::disk_in_strip(1.0, FRAC_PI_4)?);
        for (i, psi) in TABLE1_PSI.iter().enumerate() {
            let rep = subordination_sample(|z| Ok(psi.eval(z)), &DEFAULT_RADII, DEFAULT_ANGLES)?;
            b.claim(format!("strip.table1_psi{}.subordinate", i + 1), rep.pass);
        }
        Ok(())
    })?;

    b.timed("extremal", |b| {
        let order = cfg.order;
        match tau_tilde(order) {
            Ok(f) => {
                for (k, &v) in TAU_TILDE.iter().enumerate() {
                    let deg = k + 1;
                    let name = format!("extremal.tau_tilde.z^{deg}");
                    if deg > order {
                        b.skipped(name, v, format!("needs series order >= {deg}"));
                    } else {
                        b.abs(name, v, f.coeff(deg), 1e-12);
                    }
                }
                let roundtrip = f.logderiv.sub(&PowerSeries::arctan(f.logderiv.order()).add(&PowerSeries::one(f.logderiv.order()))?)?;
                let gap = roundtrip.coeffs().iter().fold(0.0f64, |m, c| m.max(c.abs()));
                b.abs("extremal.tau_tilde.logderiv_roundtrip", 0.0, gap, extremal::LOGDERIV_TOL);
            }
            Err(e) => {
                for (k, &v) in TAU_TILDE.iter().enumerate() {
                    b.skipped(format!("extremal.tau_tilde.z^{}", k + 1), v, e.to_string());
                }
            }
        }
        let cover = covering_radius();
        b.abs("extremal.covering_radius", (-CATALAN).exp(), cover, 1e-10);
        let g = growth_bounds(0.5, order.max(1))?;
        let i = crate::quad::arctan_integral(0.5);
        b.abs("extremal.growth.lower(r=0.5)", 0.5 * (-i).exp(), g.lower, 1e-9);
        b.abs("extremal.growth.upper(r=0.5)", 0.5 * i.exp(), g.upper, 1e-9);
        const GROWTH_SERIES_ORDER: usize = 32;
        let name = "extremal.growth.series_route_gap(r=0.5)";
        if order < GROWTH_SERIES_ORDER {
            b.skipped(name, 0.0, format!("needs series order >= {GROWTH_SERIES_ORDER}"));
        } else {
            b.abs(name, 0.0, g.route_gap().unwrap_or(f64::NAN), 1e-9);
        }
        let rot = extremal::rotation_bound(0.5, 8192)?;
        let rot2 = extremal::rotation_bound(0.5, 16384)?;
        b.abs("extremal.rotation_bound(r=0.5).grid_doubling", rot, rot2, 1e-8);
        let m_order = order.max(8);
        for idx in 1..=3 {
            let f = extremal::table1_function(idx, m_order)?;
            let rep = membership_check(&f, &[0.5, 0.9], 1024)?;
            b.claim(format!("extremal.table1_f{idx}.member"), rep.pass);
        }
        let k = extremal::koebe(m_order)?;
        let rep = membership_check(&k, &[0.5, 0.9], 1024)?;
        b.claim("extremal.koebe.not_member", !rep.pass);
        Ok(())
    })?;

    b.timed("radius", |b| {
        const PRINTED: [(usize, f64); 6] = [
            (4, 0.484035),
            (5, 0.732368),
            (6, 0.498088),
            (7, 0.786843),
            (8, 0.385426),
            (9, 0.66347),
        ];
        let catalog = radius_catalog()?;
        for (i, r) in catalog.iter().enumerate() {
            if let Some(cf) = r.closed_form {
                b.abs(format!("radius.{}", r.name), cf, r.numeric, radius::RADIUS_TOL);
            }
            if let Some(&(_, v)) = PRINTED.iter().find(|(j, _)| *j == i) {
                b.abs(format!("radius.{}.printed", r.name), v, r.numeric, 1e-5);
            }
            b.push(format!("radius.{}.residual", r.name), 0.0, r.residual, radius::RADIUS_TOL, Comparison::AtMost);
            let problem = if i < 5 {
                RadiusProblem::TauRadiusOf(class_for(&r.name, true)?)
            } else {
                RadiusProblem::RadiusIn(class_for(&r.name, false)?)
            };
            let probe = sharpness_probe(problem, r.numeric)?;
            b.claim(format!("radius.{}.sharp", r.name), probe.confirms(1e-9));
        }
        let c0 = convexity_radius(0.0)?;
        b.abs("radius.convexity(gamma=0)", 0.387888, c0.numeric, 1e-5);
        let mut prev = c0.numeric;
        let mut decreasing = true;
        for g in [0.25, 0.5, 0.75] {
            let r = convexity_radius(g)?.numeric;
            decreasing &= r < prev;
            prev = r;
        }
        b.claim("radius.convexity.decreasing_in_gamma", decreasing);
        let ic = inclusion_constants();
        b.abs("radius.inclusion.starlike_order", 1.0 - PI / 4.0, ic.starlike_order, 1e-15);
        b.abs("radius.inclusion.reciprocal_order", 4.0 / (4.0 + PI), ic.reciprocal_order, 1e-15);
        b.abs("radius.inclusion.kst_threshold", 1.0 + 4.0 / PI, ic.kst_threshold_at_zero, 1e-15);
        b.claim("radius.inclusion.kst_ellipse_fits", radius::ellipse_in_strip(ic.kst_threshold_at_zero, 0.0)?);
        Ok(())
    })?;

    b.timed("hankel", |b| {
        let a = coeffs_from_p(&PCoeffs::real(2.0, 2.0, 2.0, 2.0));
        for (name, v, claimed) in [("a2", a.a2, 1.0), ("a3", a.a3, 0.5), ("a4", a.a4, 1.0 / 18.0), ("a5", a.a5, -5.0 / 72.0)] {
            b.abs(format!("hankel.coeffs_from_p(2,2,2,2).{name}"), claimed, v.re, 1e-12);
        }
        let p2 = Complex64::new(-44.0, -(22f64).sqrt()) / 33.0;
        let a = coeffs_from_p(&PCoeffs { p1: 2.0.into(), p2, p3: (-2.0).into(), p4: 2.0.into() });
        b.abs("hankel.a5_at_cited_point", 323.0 / 528.0, a.a5.norm(), 1e-12);
        b.abs("hankel.a5_at_cited_point.imag", 0.0, a.a5.im, 1e-12);

        let (v, pt) = maximize_surrogate(cfg.grid_n.max(41), 60)?;
        b.push("hankel.surrogate.max", 1.0 / 9.0, v, 1e-6, Comparison::Attained { slack: 1e-9 });
        let d = ((pt.p).powi(2) + pt.x.powi(2) + (pt.y - 1.0).powi(2)).sqrt();
        b.push("hankel.surrogate.argmax_distance", 0.0, d, 0.02, Comparison::AtMost);
        let (v2, _) = maximize_surrogate_slice(Slice { p: Some(2.0), ..Slice::default() }, cfg.grid_n.max(41), 20)?;
        b.abs("hankel.surrogate.p2_slice", 49.0 / 1296.0, v2, 1e-9);
        b.abs("hankel.surrogate.H(0,0,1)", 1.0 / 9.0, surrogate_h(&hankel::CuboidPoint { p: 0.0, x: 0.0, y: 1.0 }), 1e-15);
        let faces = surrogate_faces();
        b.abs("hankel.faces.g3_max", 0.102376, faces.g3_max.0, 1e-5);
        b.abs("hankel.faces.g3_argmax", 1.32811, faces.g3_max.1, 1e-4);
        b.abs("hankel.faces.s1_max", 0.0393988, faces.s1_max.0, 1e-6);
        b.abs("hankel.faces.s1_argmax", 1.75123, faces.s1_max.1, 1e-4);
        b.abs("hankel.faces.H(0,x,0)_max", 0.0680413, faces.s5_max.0, 1e-6);
        b.abs("hankel.faces.H(0,1,y)", 1.0 / 16.0, 1.0 / 16.0 + faces.h01y_deviation, 1e-15);
        b.abs("hankel.faces.p0", 1.54572, faces.p0, 1e-5);
        b.claim("hankel.faces.x0_face_no_interior_critical_point", faces.x0_face_disjoint);

        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let n_route = (cfg.samples / 10).max(1);
        let mut route_gap = 0.0f64;
        for _ in 0..n_route {
            let p = p_from_params(&CaratheodoryPoint::random(&mut rng));
            route_gap = route_gap.max((h3_direct(&p) - functionals(&coeffs_from_p(&p)).h3).norm());
        }
        b.abs("hankel.h3_route_equality", 0.0, route_gap, 1e-11);
        let mut domination = f64::NEG_INFINITY;
        for _ in 0..cfg.samples.max(1) {
            let cp = CaratheodoryPoint::random(&mut rng);
            let h3 = functionals(&coeffs_from_p(&p_from_params(&cp))).h3.norm();
            domination = domination.max(h3 - surrogate_h(&cp.cuboid()));
        }
        b.push("hankel.h3_dominated_by_surrogate", 0.0, domination, 1e-9, Comparison::AtMost);
        let lemmas = hankel::lemma_suite(cfg.samples.max(1), cfg.seed)?;
        b.push("hankel.lemma.P", 2.0, lemmas.max_p, hankel::LEMMA_TOL, Comparison::AtMost);
        b.push("hankel.lemma.Q", 2.0, lemmas.max_q, hankel::LEMMA_TOL, Comparison::AtMost);
        b.push("hankel.lemma.use", 2.0, lemmas.max_use, hankel::LEMMA_TOL, Comparison::AtMost);
        b.abs("hankel.lemma.quadratic_max_formula", 0.0, lemmas.quadratic_gap, 1e-6);

        for t in Target::ALL {
            let m = maximize_functional(t, cfg.starts.max(1), cfg.seed)?;
            b.push(format!("hankel.max.{}", t.name()), t.bound(), m.value, 1e-3, Comparison::Attained { slack: 1e-9 });
        }
        Ok(())
    })?;

    let mut items = b.items;
    for it in &mut items {
        if let Some(&tol) = cfg.tol_overrides.get(&it.name) {
            it.tolerance = tol;
        }
        if it.status != Status::Skipped {
            it.evaluate();
        }
    }
    for key in cfg.tol_overrides.keys() {
        if !items.iter().any(|i| &i.name == key) {
            return Err(Error::Lookup(format!("tolerance override for unknown item {key}")));
        }
    }
    items.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(VerificationReport {
        items,
        meta: ReportMeta {
            series_order: cfg.order,
            grid_n: cfg.grid_n,
            seed: cfg.seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
        },
    })
}

fn class_for(name: &str, source: bool) -> Result<ClassDescriptor> {
    let (from, to) = name
        .split_once('→')
        .ok_or_else(|| Error::Lookup(format!("malformed radius name {name}")))?;
    let class_name = if source { from } else { to };
    strip_domain::ALL_CLASSES
        .iter()
        .find(|c| c.name == class_name)
        .copied()
        .ok_or_else(|| Error::Lookup(format!("no class named {class_name}")))
}
