//! `hypergon`: inversions, bodies, areas and numerical checks for ideal
//! hyperbolic polygons.
//!
//! Exit codes: 0 success, 1 invalid input, 2 mathematical finding,
//! 3 I/O failure.

use std::fmt;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hypergon::extremal::{
    grid_values, lattice_divisions, property_suite_with, refine_multistart, SuiteOptions,
};
use hypergon::{
    area_upper_bound, euclidean_area, grid_scan, grow_body_with, hyperbolic_area_ideal,
    hyperbolic_area_quadrature, invert_on_circle, GeodesicSide, GrowthLimits, ScanReport, Suite,
};
use serde_json::json;

mod document;
mod render;

use document::{BodyDocument, PolygonDocument};
use render::{render_svg, RenderSpec};

/// A refined start counts as converged within this distance of the regular
/// point.
const CONVERGED_TOL: f64 = 1e-5;

/// A point whose value undercuts the regular one by more than this beats it.
const BEAT_TOL: f64 = 1e-12;

#[derive(Debug)]
pub enum CliError {
    Invalid(String),
    /// A computed result contradicting the statement under test.
    Finding(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 1,
            CliError::Finding(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(m) | CliError::Finding(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

impl From<hypergon::Error> for CliError {
    fn from(e: hypergon::Error) -> Self {
        match e {
            hypergon::Error::NoConvergence { .. } => CliError::Finding(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

fn io_error(path: &Path, e: impl fmt::Display) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

#[derive(Parser)]
#[command(name = "hypergon", version, about = "Ideal hyperbolic polygons in the Poincaré disk")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reflect a boundary point across a geodesic side.
    Invert {
        /// Side as `start,width` in turns.
        #[arg(long, allow_hyphen_values = true)]
        side: String,
        /// Boundary point in turns.
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
    },
    /// Grow the body of all generations up to `--generations`.
    Grow {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        generations: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Euclidean area against its bound; optionally hyperbolic area.
    Area {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        hyperbolic: bool,
        #[arg(long, default_value_t = 1_000_000)]
        cells: usize,
    },
    /// Grid scan and optional refinement of the minimax objective.
    Extremal {
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// Lattice step, as `1/200` or a decimal.
        #[arg(long, default_value = "1/200")]
        grid: String,
        #[arg(long)]
        refine: bool,
        #[arg(long, default_value_t = 100)]
        starts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Write every lattice point and its value as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Run a property suite; one JSON line per case.
    Check {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Side count for the conjecture suites.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Draw a body document as SVG.
    Render {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        spec: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli.command, &mut out).and_then(|()| {
        out.flush()
            .map_err(|e| CliError::Io(format!("stdout: {e}")))
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn run(command: Command, out: &mut impl Write) -> Result<(), CliError> {
    match command {
        Command::Invert { side, beta } => cmd_invert(&side, beta, out),
        Command::Grow {
            input,
            generations,
            out: path,
            svg,
        } => cmd_grow(&input, generations, &path, svg.as_deref()),
        Command::Area {
            input,
            hyperbolic,
            cells,
        } => cmd_area(&input, hyperbolic.then_some(cells), out),
        Command::Extremal {
            n,
            grid,
            refine,
            starts,
            seed,
            tol,
            csv,
        } => cmd_extremal(n, &grid, refine.then_some((starts, seed, tol)), csv.as_deref(), out),
        Command::Check {
            suite,
            samples,
            seed,
            n,
        } => cmd_check(&suite, samples, seed, n, out),
        Command::Render {
            input,
            out: path,
            spec,
        } => cmd_render(&input, &path, spec.as_deref()),
    }
}

fn emit(out: &mut impl Write, line: impl fmt::Display) -> Result<(), CliError> {
    writeln!(out, "{line}").map_err(|e| CliError::Io(format!("stdout: {e}")))
}

/// Fixed 12-decimal rendering without a sign on zero.
fn fixed(x: f64) -> String {
    let s = format!("{x:.12}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

fn fixed_list(xs: &[f64]) -> String {
    xs.iter().map(|&x| fixed(x)).collect::<Vec<_>>().join(",")
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| io_error(path, e))
}

fn parse_side(text: &str) -> Result<GeodesicSide, CliError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let [start, width] = parts[..] else {
        return Err(CliError::Invalid(format!(
            "--side expects `start,width`, got `{text}`"
        )));
    };
    let parse = |s: &str| {
        s.parse::<f64>()
            .map_err(|_| CliError::Invalid(format!("--side: `{s}` is not a number")))
    };
    Ok(GeodesicSide::new(parse(start)?, parse(width)?)?)
}

fn cmd_invert(side: &str, beta: f64, out: &mut impl Write) -> Result<(), CliError> {
    let side = parse_side(side)?;
    let x = invert_on_circle(beta, &side)?;
    emit(out, fixed(x))
}

fn cmd_grow(input: &Path, generations: usize, path: &Path, svg: Option<&Path>) -> Result<(), CliError> {
    let poly = read_json::<PolygonDocument>(input)?.to_polygon()?;
    let body = grow_body_with(&poly, generations, &GrowthLimits::from_env())?;
    let doc = BodyDocument::from_body(&body)?;
    let text = serde_json::to_string_pretty(&doc).expect("body document serializes");
    write_file(path, &(text + "\n"))?;
    if let Some(svg) = svg {
        write_file(svg, &render_svg(&body, &RenderSpec::default())?)?;
    }
    Ok(())
}

fn cmd_area(input: &Path, cells: Option<usize>, out: &mut impl Write) -> Result<(), CliError> {
    let poly = read_json::<PolygonDocument>(input)?.to_polygon()?;
    let n = poly.n();
    let area = euclidean_area(poly.angles())?;
    let bound = area_upper_bound(n)?;
    let slack = bound - area;
    emit(out, format!("n: {n}"))?;
    emit(out, format!("euclidean_area: {}", fixed(area)))?;
    emit(out, format!("bound: {}", fixed(bound)))?;
    emit(out, format!("slack: {}", fixed(slack)))?;
    if let Some(cells) = cells {
        let value = hyperbolic_area_quadrature(&poly, cells)?;
        let exact = hyperbolic_area_ideal(n)?;
        emit(out, format!("hyperbolic_area: {}", fixed(value)))?;
        emit(out, format!("hyperbolic_exact: {}", fixed(exact)))?;
        emit(out, format!("relative_error: {:.3e}", (value - exact).abs() / exact))?;
    }
    if slack < -1e-12 {
        return Err(CliError::Finding(format!(
            "area exceeds the bound by {:e}",
            -slack
        )));
    }
    Ok(())
}

fn parse_step(text: &str) -> Result<f64, CliError> {
    let bad = || CliError::Invalid(format!("--grid: cannot parse `{text}`"));
    match text.split_once('/') {
        Some((num, den)) => {
            let num: f64 = num.trim().parse().map_err(|_| bad())?;
            let den: f64 = den.trim().parse().map_err(|_| bad())?;
            Ok(num / den)
        }
        None => text.trim().parse().map_err(|_| bad()),
    }
}

fn cmd_extremal(
    n: usize,
    grid: &str,
    refine: Option<(usize, u64, f64)>,
    csv: Option<&Path>,
    out: &mut impl Write,
) -> Result<(), CliError> {
    let step = parse_step(grid)?;
    let report = grid_scan(n, step)?;
    let regular = vec![1.0 / n as f64; n];
    let regular_value = hypergon::extremal::minimax_objective(
        &hypergon::SimplexPoint::new(regular.clone())?,
    );

    emit(out, format!("objective: {}", report.objective))?;
    emit(out, format!("evaluated: {}", report.evaluated))?;
    emit(out, format!("best_point: {}", fixed_list(&report.best_point)))?;
    emit(out, format!("best_value: {}", fixed(report.best_value)))?;
    emit(out, format!("regular_value: {}", fixed(regular_value)))?;
    if let Some((point, value)) = &report.runner_up {
        emit(out, format!("runner_up: {}", fixed_list(point)))?;
        emit(out, format!("runner_up_margin: {:.6e}", value - regular_value))?;
    }
    emit(out, format!("violations: {}", report.violations.len()))?;

    if let Some(path) = csv {
        write_csv(path, n, step)?;
    }

    let mut findings = Vec::new();
    if let Some(v) = report.violations.first() {
        findings.push(format!(
            "lattice point {} reaches {:.15} against regular {:.15}",
            fixed_list(&v.input),
            v.observed[0],
            regular_value
        ));
    }

    if let Some((starts, seed, tol)) = refine {
        let runs = refine_multistart(n, starts, seed, tol)?;
        let converged = runs
            .iter()
            .filter(|r| r.point.distance_to_regular() <= CONVERGED_TOL)
            .count();
        let worst = runs
            .iter()
            .map(|r| r.point.distance_to_regular())
            .fold(0.0, f64::max);
        let lowest = runs.iter().map(|r| r.value).fold(f64::INFINITY, f64::min);
        emit(out, format!("seed: {seed}"))?;
        emit(out, format!("starts: {starts}"))?;
        emit(out, format!("converged: {converged}/{starts}"))?;
        emit(out, format!("max_distance: {worst:.3e}"))?;
        emit(out, format!("lowest_refined_value: {}", fixed(lowest)))?;
        if let Some(r) = runs
            .iter()
            .find(|r| r.point.distance_to_regular() > CONVERGED_TOL)
        {
            emit(out, format!("first_unconverged_point: {}", fixed_list(r.point.angles())))?;
            emit(out, format!("first_unconverged_value: {}", fixed(r.value)))?;
        }
        if let Some(r) = runs.iter().find(|r| r.value < regular_value - BEAT_TOL) {
            findings.push(format!(
                "refined point {} reaches {:.15} against regular {:.15}",
                fixed_list(r.point.angles()),
                r.value,
                regular_value
            ));
        }
    }

    match findings.into_iter().next() {
        Some(f) => Err(CliError::Finding(f)),
        None => Ok(()),
    }
}

fn write_csv(path: &Path, n: usize, step: f64) -> Result<(), CliError> {
    let divisions = lattice_divisions(step)? as f64;
    let values = grid_values(n, step)?;
    let mut writer = csv::Writer::from_path(path).map_err(|e| io_error(path, e))?;
    let mut header: Vec<String> = (1..=n).map(|i| format!("alpha{i}")).collect();
    header.push("value".into());
    writer.write_record(&header).map_err(|e| io_error(path, e))?;
    for v in values {
        let mut row: Vec<String> = v
            .point
            .iter()
            .map(|&m| format!("{}", m as f64 / divisions))
            .collect();
        row.push(format!("{:.17e}", v.value));
        writer.write_record(&row).map_err(|e| io_error(path, e))?;
    }
    writer.flush().map_err(|e| io_error(path, e))
}

fn cmd_check(
    name: &str,
    samples: usize,
    seed: u64,
    n: Option<usize>,
    out: &mut impl Write,
) -> Result<(), CliError> {
    let suite: Suite = name.parse()?;
    let report = property_suite_with(suite, &SuiteOptions { samples, seed, n })?;
    write_case_lines(&report, suite, out)?;
    emit(
        out,
        json!({
            "summary": true,
            "suite": suite.name(),
            "objective": report.objective,
            "evaluated": report.evaluated,
            "skipped": report.skipped.len(),
            "violations": report.violations.len(),
            "seed": report.seed,
            "evidence": report.evidence,
            "tightest_margin": report.best_value,
        }),
    )?;
    let kind = if report.evidence { " (evidence, not proof)" } else { "" };
    eprintln!(
        "{}: evaluated {}, skipped {}, violations: {}, seed {}{kind}",
        suite.name(),
        report.evaluated,
        report.skipped.len(),
        report.violations.len(),
        report.seed.map_or("none".into(), |s| s.to_string()),
    );
    match report.violations.first() {
        Some(v) => Err(CliError::Finding(format!(
            "{} violation(s); first witness: case {} input [{}] expected {} observed [{}]",
            report.violations.len(),
            v.case,
            fixed_list(&v.input),
            v.expected,
            fixed_list(&v.observed)
        ))),
        None => Ok(()),
    }
}

fn write_case_lines(report: &ScanReport, suite: Suite, out: &mut impl Write) -> Result<(), CliError> {
    let total = report.evaluated + report.skipped.len();
    let mut violations = report.violations.iter().peekable();
    let mut skipped = report.skipped.iter().peekable();
    for case in 0..total {
        let line = if violations.peek().is_some_and(|v| v.case == case) {
            let v = violations.next().expect("peeked");
            json!({
                "suite": suite.name(),
                "case": case,
                "status": "violation",
                "detail": {"input": v.input, "expected": v.expected, "observed": v.observed},
            })
        } else if skipped.peek().is_some_and(|&&c| c == case) {
            skipped.next();
            json!({"suite": suite.name(), "case": case, "status": "skipped", "detail": null})
        } else {
            json!({"suite": suite.name(), "case": case, "status": "pass", "detail": null})
        };
        emit(out, line)?;
    }
    Ok(())
}

fn cmd_render(input: &Path, path: &Path, spec: Option<&Path>) -> Result<(), CliError> {
    let doc: BodyDocument = read_json(input)?;
    doc.verify()?;
    let spec = match spec {
        Some(p) => read_json(p)?,
        None => RenderSpec::default(),
    };
    let body = grow_body_with(&doc.base_polygon()?, doc.generations, &GrowthLimits::from_env())?;
    if body.boundary_angles() != doc.boundary_angles.as_slice() {
        return Err(CliError::Invalid(
            "body document does not match the regrown body".into(),
        ));
    }
    write_file(path, &render_svg(&body, &spec)?)
}
