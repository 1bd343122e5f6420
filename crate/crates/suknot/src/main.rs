use std::f64::consts::PI;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use suknot::format;
use suknot::knot::Knot;
use suknot::sweep::{self, Branches, SweepSpec};
use suknot::verify::{self, Suite};
use suknot_core::coloring::{self, solve_colorings, SolverWarning};
use suknot_core::longitude::eval_sphere;
use suknot_core::tol;

#[derive(Parser)]
#[command(
    name = "suknot",
    version,
    about = "SU(2) quandle colorings and longitudes of knots"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a numerical verification suite.
    Verify {
        #[arg(value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long)]
        json: bool,
    },
    /// Find the colorings of a knot by the spherical quandle S^2_psi.
    Color {
        #[command(flatten)]
        knot: KnotArgs,
        /// Rotation angle of the spherical quandle.
        #[arg(long, allow_negative_numbers = true)]
        psi: f64,
        /// Read angles in degrees.
        #[arg(long)]
        deg: bool,
        #[arg(long, default_value_t = tol::DEFAULT_GRID)]
        grid: usize,
        #[arg(long)]
        json: bool,
    },
    /// Tabulate the longitude over a range of class angles theta.
    Sweep {
        #[command(flatten)]
        knot: KnotArgs,
        #[arg(long, allow_negative_numbers = true)]
        theta_min: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        theta_max: Option<f64>,
        #[arg(long, default_value_t = 200)]
        steps: usize,
        /// `all` or a comma-separated list of branch numbers.
        #[arg(long, default_value = "all")]
        branches: String,
        #[arg(long)]
        deg: bool,
        #[arg(long, default_value_t = tol::DEFAULT_GRID)]
        grid: usize,
        /// Output file; standard output when omitted.
        #[arg(long, short)]
        out: Option<PathBuf>,
        /// Evaluate angles on all cores. Output order is unchanged.
        #[arg(long)]
        parallel: bool,
        #[arg(long)]
        json: bool,
    },
    /// Print the coloring intervals of T(2,n).
    Intervals {
        n: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct KnotArgs {
    /// `torus:<n>[:+|-]` or `fig8`.
    #[arg(long)]
    knot: Option<Knot>,
    /// Tangle diagram in the text format.
    #[arg(long)]
    file: Option<PathBuf>,
}

/// Failure categories mapped to exit codes.
enum Failure {
    Verification,
    Usage(anyhow::Error),
    Runtime(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Runtime(e)
    }
}

impl KnotArgs {
    fn resolve(&self) -> Result<Knot, Failure> {
        if let Some(k) = &self.knot {
            return Ok(k.clone());
        }
        let path = self.file.as_ref().expect("clap requires one of the two");
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))
            .map_err(Failure::Usage)?;
        let d = format::parse(&text)
            .with_context(|| format!("parsing {}", path.display()))
            .map_err(Failure::Usage)?;
        Ok(Knot::Diagram(d))
    }
}

fn angle(x: f64, deg: bool) -> f64 {
    if deg {
        x.to_radians()
    } else {
        x
    }
}

fn print_json<T: Serialize>(value: &T) -> anyhow::Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn cmd_verify(suite: Suite, json: bool) -> Result<(), Failure> {
    let report = verify::run(suite);
    if json {
        print_json(&report)?;
    } else {
        if !report.torus_table.is_empty() {
            println!("{:>3} {:>3} {:>22} {:>12}", "n", "h", "theta", "error");
            for r in &report.torus_table {
                println!(
                    "{:>3} {:>3} {:>22.16} {:>12.3e}",
                    r.n, r.h, r.theta, r.error
                );
            }
            println!();
        }
        for c in &report.checks {
            println!(
                "{} [{}] {}: max {:.3e} over {} samples (tolerance {:.0e})",
                if c.passed { "PASS" } else { "FAIL" },
                c.suite,
                c.name,
                c.max_deviation,
                c.samples,
                c.tolerance
            );
        }
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

#[derive(Serialize)]
struct SeedOut {
    beta: f64,
    residual: f64,
    colors: Vec<[f64; 3]>,
    longitude: Option<LongitudeOut>,
}

#[derive(Serialize)]
struct LongitudeOut {
    re: f64,
    im: f64,
    phi: f64,
}

#[derive(Serialize)]
struct ColorOut {
    knot: String,
    psi: f64,
    theta: f64,
    seeds: Vec<SeedOut>,
    warnings: Vec<String>,
}

fn cmd_color(knot: Knot, psi: f64, grid: usize, json: bool) -> Result<(), Failure> {
    let d = knot.diagram();
    let report = solve_colorings(&d, psi, grid).context("solving for colorings")?;
    let seeds: Vec<SeedOut> = report
        .seeds
        .iter()
        .map(|s| SeedOut {
            beta: s.seed.beta,
            residual: s.residual,
            colors: s.coloring.colors().iter().map(|u| u.coords()).collect(),
            longitude: eval_sphere(&d, &s.coloring).ok().map(|l| LongitudeOut {
                re: l.q().a(),
                im: l.q().b(),
                phi: l.phi(),
            }),
        })
        .collect();
    let warnings = report
        .warnings
        .iter()
        .map(|w| match w {
            SolverWarning::GridTooCoarse { beta_a, beta_b } => {
                format!("seeds {beta_a:.6} and {beta_b:.6} are within one grid cell; try a finer --grid")
            }
        })
        .collect();
    let out = ColorOut {
        knot: knot.name(),
        psi,
        theta: PI - psi / 2.0,
        seeds,
        warnings,
    };
    if json {
        print_json(&out)?;
        return Ok(());
    }
    println!(
        "{}: psi = {:.12} (theta = {:.12})",
        out.knot, out.psi, out.theta
    );
    println!("{} nontrivial seed(s)", out.seeds.len());
    for (i, s) in out.seeds.iter().enumerate() {
        println!(
            "seed {}: beta = {:.15}  residual = {:.2e}",
            i + 1,
            s.beta,
            s.residual
        );
        if let Some(l) = &s.longitude {
            println!(
                "  longitude = {:.15} {:+.15} i  (phi = {:.15})",
                l.re, l.im, l.phi
            );
        }
        for (arc, [x, y, z]) in s.colors.iter().enumerate() {
            println!("  arc {arc:>2}: ({x:+.15}, {y:+.15}, {z:+.15})");
        }
    }
    for w in &out.warnings {
        eprintln!("warning: {w}");
    }
    Ok(())
}

fn parse_branches(s: &str) -> anyhow::Result<Branches> {
    if s == "all" {
        return Ok(Branches::All);
    }
    let list = s
        .split(',')
        .map(|b| {
            b.trim()
                .parse::<u32>()
                .with_context(|| format!("bad branch {b:?}"))
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    Ok(Branches::Only(list))
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    knot: Knot,
    theta_min: Option<f64>,
    theta_max: Option<f64>,
    steps: usize,
    branches: &str,
    grid: usize,
    out: Option<PathBuf>,
    parallel: bool,
    json: bool,
) -> Result<(), Failure> {
    let (lo, hi) = sweep::default_range(&knot);
    let spec = SweepSpec {
        knot,
        theta_min: theta_min.unwrap_or(lo),
        theta_max: theta_max.unwrap_or(hi),
        steps,
        branches: parse_branches(branches).map_err(Failure::Usage)?,
        grid,
    };
    let rows = sweep::run(&spec, parallel).map_err(|e| match e {
        sweep::SweepError::BadSpec(_) => Failure::Usage(e.into()),
        e => Failure::Runtime(e.into()),
    })?;
    let sink: Box<dyn Write> = match &out {
        Some(path) => {
            Box::new(File::create(path).with_context(|| format!("creating {}", path.display()))?)
        }
        None => Box::new(io::stdout().lock()),
    };
    let mut sink = BufWriter::new(sink);
    if json {
        serde_json::to_writer_pretty(&mut sink, &rows).context("writing JSON")?;
        writeln!(sink).context("writing JSON")?;
    } else {
        sweep::write_csv(&rows, &mut sink).context("writing CSV")?;
    }
    sink.flush().context("writing output")?;
    Ok(())
}

#[derive(Serialize)]
struct IntervalRow {
    h: usize,
    psi: (f64, f64),
    theta: (f64, f64),
}

fn cmd_intervals(n: usize, json: bool) -> Result<(), Failure> {
    let k = (n.max(1) - 1) / 2;
    let rows = (1..=k.max(1))
        .map(|h| {
            Ok(IntervalRow {
                h,
                psi: coloring::torus_interval(n, h)?,
                theta: coloring::torus_theta_interval(n, h)?,
            })
        })
        .collect::<Result<Vec<_>, coloring::ColoringError>>()
        .map_err(|e| Failure::Usage(e.into()))?;
    if json {
        print_json(&rows)?;
        return Ok(());
    }
    println!(
        "{:>3}  {:>33}  {:>33}",
        "h", "psi interval (units of pi)", "theta interval (units of pi)"
    );
    for r in rows {
        println!(
            "{:>3}  ({:>14.12}, {:>14.12})  ({:>14.12}, {:>14.12})",
            r.h,
            r.psi.0 / PI,
            r.psi.1 / PI,
            r.theta.0 / PI,
            r.theta.1 / PI
        );
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Verify { suite, json } => cmd_verify(suite, json),
        Command::Color {
            knot,
            psi,
            deg,
            grid,
            json,
        } => cmd_color(knot.resolve()?, angle(psi, deg), grid, json),
        Command::Sweep {
            knot,
            theta_min,
            theta_max,
            steps,
            branches,
            deg,
            grid,
            out,
            parallel,
            json,
        } => cmd_sweep(
            knot.resolve()?,
            theta_min.map(|t| angle(t, deg)),
            theta_max.map(|t| angle(t, deg)),
            steps,
            &branches,
            grid,
            out,
            parallel,
            json,
        ),
        Command::Intervals { n, json } => cmd_intervals(n, json),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
