use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::value::RawValue;
use taustar::extremal::{growth_bounds, rotation_bound};
use taustar::hankel::{maximize_functional, Target};
use taustar::plot::{plot_set, to_svg, DEFAULT_POINTS};
use taustar::radius::radius_catalog;
use taustar::report::{fmt_num, run_suite, sci_raw, SuiteConfig};
use taustar::DEFAULT_ORDER;

#[derive(Parser, Debug)]
#[command(name = "taustar", version, about = "Checks for starlike functions with zf'/f subordinate to 1 + arctan z")]
struct Cli {
    /// Series truncation order.
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER)]
    order: usize,
    /// Grid points per axis for the cuboid search.
    #[arg(long, global = true, default_value_t = 101)]
    grid: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Multistart count for coefficient searches.
    #[arg(long, global = true, default_value_t = 200)]
    starts: usize,
    /// Random samples for the property checks in `verify`.
    #[arg(long, global = true, default_value_t = 100_000)]
    samples: usize,
    /// JSON object of item name to tolerance, inline or a file path.
    #[arg(long, global = true)]
    tol_overrides: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output directory; tables go to stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Record per-item wall time in the report.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Md,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the full verification suite; exits 1 if any item fails.
    Verify,
    /// The ten sharp radii.
    RadiusTable,
    /// Searched maxima of |a4|, |a5|, FS, H2(2), H3(1) against their bounds.
    CoeffBounds,
    /// Searched maximum of a single functional.
    HankelMax {
        #[arg(long, default_value = "H3")]
        target: String,
    },
    /// Boundary curves as CSV polylines, optionally with an SVG overlay.
    Plot {
        /// strip, tau-in-<class> or <class>-in-tau.
        #[arg(long, default_value = "strip")]
        which: String,
        #[arg(long)]
        r: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_POINTS)]
        points: usize,
        #[arg(long)]
        svg: bool,
    },
    /// Growth and rotation bounds at a list of radii.
    GrowthTable {
        #[arg(long, value_delimiter = ',', default_values_t = vec![0.1, 0.3, 0.5, 0.7, 0.9, 0.99])]
        radii: Vec<f64>,
    },
}

/// Usage and configuration problems, reported with exit code 2.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn run(cli: &Cli) -> anyhow::Result<bool> {
    match &cli.command {
        Command::Verify => verify(cli),
        Command::RadiusTable => radius_table(cli).map(|_| true),
        Command::CoeffBounds => coeff_bounds(cli).map(|_| true),
        Command::HankelMax { target } => hankel_max(cli, target).map(|_| true),
        Command::Plot { which, r, points, svg } => plot(cli, which, *r, *points, *svg).map(|_| true),
        Command::GrowthTable { radii } => growth_table(cli, radii).map(|_| true),
    }
}

fn emit(cli: &Cli, file_stem: &str, body: &str) -> anyhow::Result<()> {
    match &cli.out {
        Some(dir) => {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            let ext = match cli.format {
                Format::Json => "json",
                Format::Md => "md",
                Format::Csv => "csv",
            };
            write_file(&dir.join(format!("{file_stem}.{ext}")), body)
        }
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn write_file(path: &Path, body: &str) -> anyhow::Result<()> {
    fs::write(path, body).with_context(|| format!("writing {}", path.display()))
}

fn suite_config(cli: &Cli) -> anyhow::Result<SuiteConfig> {
    let tol_overrides = match &cli.tol_overrides {
        None => Default::default(),
        Some(s) => {
            let text = if s.trim_start().starts_with('{') {
                s.clone()
            } else {
                fs::read_to_string(s).map_err(|e| usage(format!("reading {s}: {e}")))?
            };
            SuiteConfig::parse_overrides(&text).map_err(|e| usage(e.to_string()))?
        }
    };
    if cli.grid < 41 {
        return Err(usage(format!("--grid must be at least 41, got {}", cli.grid)));
    }
    Ok(SuiteConfig {
        order: cli.order,
        grid_n: cli.grid,
        seed: cli.seed,
        starts: cli.starts.max(1),
        samples: cli.samples.max(1),
        tol_overrides,
        timings: cli.timings,
    })
}

fn verify(cli: &Cli) -> anyhow::Result<bool> {
    let cfg = suite_config(cli)?;
    let report = run_suite(&cfg).map_err(|e| match e {
        taustar::Error::Lookup(m) => usage(m),
        other => other.into(),
    })?;
    let json = report.to_json()?;
    let md = report.to_markdown();
    let dir = cli.out.clone().unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    write_file(&dir.join("report.json"), &json)?;
    write_file(&dir.join("report.md"), &md)?;
    if cli.format == Format::Csv {
        write_file(&dir.join("report.csv"), &report.to_csv())?;
    }
    let failures: Vec<_> = report.failures().collect();
    for f in &failures {
        println!(
            "FAIL {}: expected {}, computed {}, tolerance {}",
            f.name,
            fmt_num(f.paper_value),
            fmt_num(f.computed_value),
            fmt_num(f.tolerance)
        );
    }
    println!(
        "{} items, {} failed, report in {}",
        report.items.len(),
        failures.len(),
        dir.display()
    );
    Ok(report.all_pass())
}

type Num = Box<RawValue>;

#[derive(Serialize)]
struct WitnessRow<'a> {
    function: &'a str,
    contact_z: Num,
    contact_value: Num,
}

#[derive(Serialize)]
struct RadiusRow<'a> {
    name: &'a str,
    closed_form: Option<Num>,
    numeric: Num,
    residual: Num,
    witness: Option<WitnessRow<'a>>,
}

#[derive(Serialize)]
struct Argmax {
    p1: Num,
    gamma: [Num; 2],
    eta: [Num; 2],
    rho: [Num; 2],
}

#[derive(Serialize)]
struct HankelMaxOut<'a> {
    target: &'a str,
    bound: Num,
    attained: Num,
    argmax: Argmax,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    evaluations: Option<u64>,
}

#[derive(Serialize)]
struct GrowthRow {
    r: Num,
    lower: Num,
    upper: Num,
    series_route_gap: Option<Num>,
    rotation: Num,
}

fn radius_table(cli: &Cli) -> anyhow::Result<()> {
    let rows = radius_catalog()?;
    let body = match cli.format {
        Format::Json => {
            let v: Vec<_> = rows
                .iter()
                .map(|r| RadiusRow {
                    name: &r.name,
                    closed_form: r.closed_form.map(sci_raw),
                    numeric: sci_raw(r.numeric),
                    residual: sci_raw(r.residual),
                    witness: r.sharp_witness.as_ref().map(|w| WitnessRow {
                        function: &w.function,
                        contact_z: sci_raw(w.contact_z),
                        contact_value: sci_raw(w.contact_value),
                    }),
                })
                .collect();
            serde_json::to_string_pretty(&v)? + "\n"
        }
        Format::Csv => {
            let mut s = String::from("name,closed_form,numeric,residual\n");
            for r in &rows {
                let cf = r.closed_form.map(fmt_num).unwrap_or_default();
                let _ = writeln!(s, "{},{},{},{}", r.name, cf, fmt_num(r.numeric), fmt_num(r.residual));
            }
            s
        }
        Format::Md => {
            let mut s = String::from("| radius | closed form | numeric | residual |\n|---|---|---|---|\n");
            for r in &rows {
                let cf = r.closed_form.map(|v| format!("{v:.10}")).unwrap_or_else(|| "-".into());
                let _ = writeln!(s, "| {} | {} | {:.10} | {:.1e} |", r.name, cf, r.numeric, r.residual);
            }
            s
        }
    };
    emit(cli, "radius_table", &body)
}

fn argmax(m: &taustar::FunctionalMax) -> Argmax {
    let c = |z: taustar::Complex64| [sci_raw(z.re), sci_raw(z.im)];
    Argmax {
        p1: sci_raw(m.point.p1),
        gamma: c(m.point.gamma),
        eta: c(m.point.eta),
        rho: c(m.point.rho),
    }
}

fn parse_target(s: &str) -> anyhow::Result<Target> {
    s.parse::<Target>().map_err(|e| usage(e.to_string()))
}

fn hankel_max(cli: &Cli, target: &str) -> anyhow::Result<()> {
    let t = parse_target(target)?;
    let m = maximize_functional(t, cli.starts.max(1), cli.seed)?;
    let v = HankelMaxOut {
        target: t.name(),
        bound: sci_raw(m.bound),
        attained: sci_raw(m.value),
        argmax: argmax(&m),
        seed: Some(cli.seed),
        evaluations: Some(m.evaluations),
    };
    let body = serde_json::to_string_pretty(&v)? + "\n";
    match &cli.out {
        Some(dir) => {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            write_file(&dir.join(format!("hankel_max_{}.json", t.name())), &body)
        }
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn coeff_bounds(cli: &Cli) -> anyhow::Result<()> {
    let results = Target::ALL
        .iter()
        .map(|&t| maximize_functional(t, cli.starts.max(1), cli.seed))
        .collect::<taustar::Result<Vec<_>>>()?;
    let body = match cli.format {
        Format::Json => {
            let v: Vec<_> = results
                .iter()
                .map(|m| HankelMaxOut {
                    target: m.target.name(),
                    bound: sci_raw(m.bound),
                    attained: sci_raw(m.value),
                    argmax: argmax(m),
                    seed: None,
                    evaluations: None,
                })
                .collect();
            serde_json::to_string_pretty(&v)? + "\n"
        }
        Format::Csv => {
            let mut s = String::from("target,bound,attained,gap\n");
            for m in &results {
                let _ = writeln!(s, "{},{},{},{}", m.target, fmt_num(m.bound), fmt_num(m.value), fmt_num(m.bound - m.value));
            }
            s
        }
        Format::Md => {
            let mut s = String::from("| functional | bound | attained | gap |\n|---|---|---|---|\n");
            for m in &results {
                let _ = writeln!(s, "| {} | {:.10} | {:.10} | {:+.3e} |", m.target, m.bound, m.value, m.bound - m.value);
            }
            s
        }
    };
    emit(cli, "coeff_bounds", &body)
}

fn plot(cli: &Cli, which: &str, r: Option<f64>, points: usize, svg: bool) -> anyhow::Result<()> {
    let lines = plot_set(which, r, points.max(2)).map_err(|e| usage(e.to_string()))?;
    let dir = cli.out.clone().unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    for l in &lines {
        let stem: String = l
            .label
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() || c == '.' { c } else { '_' })
            .collect();
        write_file(&dir.join(format!("{which}_{stem}.csv")), &l.to_csv())?;
    }
    if svg {
        write_file(&dir.join(format!("{which}.svg")), &to_svg(&lines))?;
    }
    println!("{} polylines written to {}", lines.len(), dir.display());
    Ok(())
}

fn growth_table(cli: &Cli, radii: &[f64]) -> anyhow::Result<()> {
    if radii.iter().any(|&r| !(r > 0.0 && r < 1.0)) {
        bail!(usage("radii must lie in (0, 1)"));
    }
    let mut rows = Vec::new();
    for &r in radii {
        let g = growth_bounds(r, cli.order.max(1))?;
        let rot = rotation_bound(r, 8192)?;
        rows.push((r, g, rot));
    }
    let body = match cli.format {
        Format::Json => {
            let v: Vec<_> = rows
                .iter()
                .map(|(r, g, rot)| GrowthRow {
                    r: sci_raw(*r),
                    lower: sci_raw(g.lower),
                    upper: sci_raw(g.upper),
                    series_route_gap: g.route_gap().map(sci_raw),
                    rotation: sci_raw(*rot),
                })
                .collect();
            serde_json::to_string_pretty(&v)? + "\n"
        }
        Format::Csv => {
            let mut s = String::from("r,lower,upper,series_route_gap,rotation\n");
            for (r, g, rot) in &rows {
                let gap = g.route_gap().map(fmt_num).unwrap_or_default();
                let _ = writeln!(s, "{},{},{},{},{}", fmt_num(*r), fmt_num(g.lower), fmt_num(g.upper), gap, fmt_num(*rot));
            }
            s
        }
        Format::Md => {
            let mut s = String::from("| r | lower | upper | series gap | rotation |\n|---|---|---|---|---|\n");
            for (r, g, rot) in &rows {
                let gap = g.route_gap().map(|v| format!("{v:.1e}")).unwrap_or_else(|| "-".into());
                let _ = writeln!(s, "| {r} | {:.12} | {:.12} | {gap} | {:.12} |", g.lower, g.upper, rot);
            }
            s
        }
    };
    emit(cli, "growth_table", &body)
}
