//! `polyapprox`: certified polyhedral approximation of convex bodies.
//!
//! Exit codes: 0 success, 1 generic/verification failure, 2 hypothesis
//! violation (grid too coarse, step too large), 3 parse error, 4 numerical
//! failure.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use polyapprox::convexity::{
    self, bound_main, classical_bound, epsilon_of_step, modulus_numeric, ClassicalKind,
};
use polyapprox::{
    chebyshev_ball, external_approx, grid_icosphere_3d, grid_uniform_2d, hausdorff_by_support,
    hausdorff_outer_2d, restrict_body, vertices_2d, ConvexBody, Error, Grid, HPolytope, Vector,
};
use polyapprox_cli::bodyspec::{parse_body, SpecError};
use polyapprox_cli::experiments::{
    convergence_rows, exactness, geomdiff_rows, inner_hull_rows, intersection_rows,
    modulus_for_body, outradius_2d, radius_report, rows_to_csv, sig12, DiffCase, ExperimentRow,
};
use polyapprox_cli::verify::{run_all, VerifyOptions};

#[derive(Parser)]
#[command(
    name = "polyapprox",
    about = "External and inner polyhedral approximation of strictly convex compacta with certified error bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct GridArgs {
    /// Planar grid size (equally spaced directions).
    #[arg(long = "grid-n")]
    grid_n: Option<usize>,
    /// Icosphere frequency for spherical grids.
    #[arg(long = "grid-freq")]
    grid_freq: Option<usize>,
}

impl GridArgs {
    fn build(&self) -> Result<Grid, Error> {
        match (self.grid_n, self.grid_freq) {
            (Some(n), None) => grid_uniform_2d(n),
            (None, Some(f)) => grid_icosphere_3d(f),
            _ => Err(Error::InvalidInput(
                "give exactly one of --grid-n or --grid-freq".into(),
            )),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build a direction grid and print or export it.
    Grid {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// External approximation of a body: H-representation, vertices (2-D),
    /// measured error and bounds.
    Approx {
        #[arg(long)]
        body: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
        /// Output prefix; writes `<prefix>.hrep` and (planar) `<prefix>.vrep`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hausdorff distance between two bodies by support sampling.
    Hausdorff {
        #[arg(long)]
        body: PathBuf,
        #[arg(long)]
        other: PathBuf,
        /// Number of sampled directions.
        #[arg(long, default_value_t = 100_000)]
        dirs: usize,
    },
    /// Modulus of convexity: single value or exported table.
    Modulus {
        #[arg(long)]
        body: PathBuf,
        /// Chord length for a single evaluation.
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long, default_value_t = 720)]
        samples: usize,
        /// Tabulate instead of a single value.
        #[arg(long, default_value_t = false)]
        table: bool,
        #[arg(long, default_value_t = 160)]
        points: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve the step equation for the body's modulus on the given grid.
    Epsilon {
        #[arg(long)]
        body: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
        /// Load the modulus from a two-column table instead of measuring it.
        #[arg(long = "modulus-table")]
        modulus_table: Option<PathBuf>,
    },
    /// Evaluate the approximation bounds for a body/grid pair.
    Bounds {
        #[arg(long)]
        body: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Radial inner-hull algorithm: vertices, measured error, bound.
    Hull {
        #[arg(long)]
        body: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Largest inscribed ball of an external approximation or an H-file.
    Chebyshev {
        #[arg(long)]
        body: Option<PathBuf>,
        #[command(flatten)]
        grid: GridArgs,
        /// Read halfspaces from a `p... b` text file instead.
        #[arg(long)]
        hrep: Option<PathBuf>,
    },
    /// Run a named experiment and emit CSV.
    Experiment {
        #[command(subcommand)]
        kind: ExperimentKind,
    },
    /// Run the acceptance suite.
    Verify {
        /// Only run criteria whose name contains this substring.
        #[arg(long)]
        filter: Option<String>,
        /// Corrupt the grid step inside the decomposition checks (the suite
        /// must then fail); used to validate the harness itself.
        #[arg(long = "inject-grid-fault", default_value_t = false)]
        inject_grid_fault: bool,
    },
}

#[derive(Args, Clone)]
struct ExperimentCommon {
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for independent rows; output is order-stable.
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Emit wall-clock timings into the CSV (off keeps output byte-stable).
    #[arg(long, default_value_t = false)]
    timings: bool,
    /// Deterministic seedless direction sampling (always on; flag kept for
    /// compatibility).
    #[arg(long, default_value_t = true)]
    seedless: bool,
}

#[derive(Subcommand, Clone)]
enum ExperimentKind {
    /// Error decay of the external approximation over grid sizes.
    Convergence {
        #[arg(long)]
        body: Option<PathBuf>,
        #[arg(long = "n-list", value_delimiter = ',', default_values_t = vec![16, 32, 64, 128])]
        n_list: Vec<usize>,
        #[command(flatten)]
        common: ExperimentCommon,
    },
    /// Sharp-order construction for the power cap.
    Exactness {
        #[arg(long, default_value_t = 2.0)]
        s: f64,
        #[arg(long = "eps-list", value_delimiter = ',', default_values_t = vec![0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40])]
        eps_list: Vec<f64>,
        #[command(flatten)]
        common: ExperimentCommon,
    },
    /// Hull gap of the difference presupport against its bound.
    Geomdiff {
        /// `balls` (concentric, exact reference) or `ellipsoid` (fine-grid
        /// reference).
        #[arg(long, default_value = "balls")]
        case: String,
        #[arg(long = "n-list", value_delimiter = ',', default_values_t = vec![32, 64, 128])]
        n_list: Vec<usize>,
        #[arg(long, default_value_t = 1000)]
        dirs: usize,
        #[command(flatten)]
        common: ExperimentCommon,
    },
    /// Hull gap of the min presupport (two unit balls) against its bound.
    Intersection {
        #[arg(long, default_value_t = 0.25)]
        offset: f64,
        #[arg(long = "n-list", value_delimiter = ',', default_values_t = vec![32, 64, 128])]
        n_list: Vec<usize>,
        #[arg(long, default_value_t = 1000)]
        dirs: usize,
        #[command(flatten)]
        common: ExperimentCommon,
    },
    /// Radial inner-hull runs against the algorithm bound.
    Alg {
        #[arg(long)]
        body: Option<PathBuf>,
        #[arg(long = "n-list", value_delimiter = ',', default_values_t = vec![16, 64])]
        n_list: Vec<usize>,
        #[command(flatten)]
        common: ExperimentCommon,
    },
    /// Inradius/outradius measurement against the radius-ratio bound.
    Radius {
        #[arg(long)]
        body: Option<PathBuf>,
        #[arg(long = "fine-n", default_value_t = 1024)]
        fine_n: usize,
        #[command(flatten)]
        common: ExperimentCommon,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

#[derive(Debug)]
enum CliError {
    Spec(SpecError),
    Core(Error),
    Io(std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Spec(e) => write!(f, "{e}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<SpecError> for CliError {
    fn from(e: SpecError) -> Self {
        CliError::Spec(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn exit_code_for(e: &CliError) -> ExitCode {
    match e {
        CliError::Spec(SpecError::Parse(_)) => ExitCode::from(3),
        CliError::Spec(SpecError::Construct(inner)) => exit_code_for_core(inner),
        CliError::Core(inner) => exit_code_for_core(inner),
        CliError::Io(_) => ExitCode::from(1),
    }
}

fn exit_code_for_core(e: &Error) -> ExitCode {
    match e {
        Error::StepTooLarge(_) | Error::GridTooCoarse(_) => ExitCode::from(2),
        Error::InvalidInput(_) | Error::DuplicateDirection(_) => ExitCode::from(3),
        Error::NumericalFailure(_) => ExitCode::from(4),
        _ => ExitCode::from(1),
    }
}

fn load_body(path: &Path) -> Result<ConvexBody, CliError> {
    let text = fs::read_to_string(path)?;
    Ok(parse_body(&text)?)
}

fn write_or_print(out: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => {
            fs::write(path, content)?;
            Ok(())
        }
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn dispatch(cmd: Command) -> Result<ExitCode, CliError> {
    match cmd {
        Command::Grid { grid, out } => {
            let g = grid.build()?;
            let mut buf = Vec::new();
            g.write_text(&mut buf)?;
            write_or_print(&out, &String::from_utf8(buf).expect("utf8"))?;
            eprintln!(
                "grid: dim={} directions={} step={}",
                g.dim(),
                g.len(),
                sig12(g.step())
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Approx { body, grid, out } => cmd_approx(&body, &grid, &out),
        Command::Hausdorff { body, other, dirs } => {
            let a = load_body(&body)?;
            let b = load_body(&other)?;
            let h = hausdorff_by_support(&a, &b, dirs)?;
            println!("hausdorff = {}", sig12(h.value));
            println!("resolution = {}", sig12(h.resolution));
            Ok(ExitCode::SUCCESS)
        }
        Command::Modulus {
            body,
            eps,
            samples,
            table,
            points,
            out,
        } => {
            let b = load_body(&body)?;
            if table {
                let m = convexity::modulus_table(&b, points, samples)?;
                let mut buf = Vec::new();
                convexity::write_modulus_table(&m, points, &mut buf)?;
                write_or_print(&out, &String::from_utf8(buf).expect("utf8"))?;
            } else {
                let eps = eps.ok_or_else(|| {
                    CliError::Core(Error::InvalidInput("give --eps or --table".into()))
                })?;
                let v = modulus_numeric(&b, eps, samples)?;
                println!("modulus({}) = {}", sig12(eps), sig12(v));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Epsilon {
            body,
            grid,
            modulus_table,
        } => {
            let b = load_body(&body)?;
            let g = grid.build()?;
            let m = match modulus_table {
                Some(path) => {
                    let text = fs::read_to_string(path)?;
                    convexity::read_modulus_table(&mut text.as_bytes())?
                }
                None => modulus_for_body(&b)?.ok_or_else(|| {
                    CliError::Core(Error::GridTooCoarse(
                        "body has no positive modulus of convexity".into(),
                    ))
                })?,
            };
            let eps = epsilon_of_step(&m, g.step(), b.diameter()?)?;
            println!("step = {}", sig12(g.step()));
            println!("eps_of_step = {}", sig12(eps));
            Ok(ExitCode::SUCCESS)
        }
        Command::Bounds { body, grid } => cmd_bounds(&body, &grid),
        Command::Hull { body, grid, out } => {
            let b = load_body(&body)?;
            let g = grid.build()?;
            let rows = inner_hull_rows(&b, &[g.len()], 1)?;
            let row = &rows[0];
            let gf = restrict_body(&b, &g)?;
            let (inner, _) = polyapprox::approx_hull_recentered(&gf)?;
            if let Some(prefix) = &out {
                let mut buf = Vec::new();
                inner.write_text(&mut buf)?;
                fs::write(with_ext(prefix, "vrep"), buf)?;
            }
            println!("h_inner = {}", sig12(row.h));
            println!("bound_alg = {}", sig12(row.bound));
            println!("max_vertex_dist = {}", sig12(row.max_vertex_dist));
            Ok(ExitCode::SUCCESS)
        }
        Command::Chebyshev { body, grid, hrep } => {
            let halfspaces = match (body, hrep) {
                (Some(path), None) => {
                    let b = load_body(&path)?;
                    let g = grid.build()?;
                    external_approx(&b, &g)?.halfspaces().to_vec()
                }
                (None, Some(path)) => read_hrep(&path)?,
                _ => {
                    return Err(CliError::Core(Error::InvalidInput(
                        "give exactly one of --body or --hrep".into(),
                    )))
                }
            };
            let (center, radius) = chebyshev_ball(&halfspaces)?;
            println!("center = {center}");
            println!("radius = {}", sig12(radius));
            Ok(ExitCode::SUCCESS)
        }
        Command::Experiment { kind } => cmd_experiment(kind),
        Command::Verify {
            filter,
            inject_grid_fault,
        } => {
            let reports = run_all(filter.as_deref(), VerifyOptions { inject_grid_fault });
            let mut all_ok = !reports.is_empty();
            for r in &reports {
                println!("{}", r.status_line());
                for d in &r.details {
                    println!("  {d}");
                }
                all_ok &= r.passed;
            }
            if all_ok {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
    }
}

fn with_ext(prefix: &Path, ext: &str) -> PathBuf {
    let mut p = prefix.as_os_str().to_owned();
    p.push(".");
    p.push(ext);
    PathBuf::from(p)
}

fn read_hrep(path: &Path) -> Result<Vec<(Vector, f64)>, CliError> {
    let text = fs::read_to_string(path)?;
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let nums: Result<Vec<f64>, _> = line.split_whitespace().map(str::parse).collect();
        let nums = nums.map_err(|_| {
            CliError::Core(Error::InvalidInput(format!(
                "line {}: bad number",
                lineno + 1
            )))
        })?;
        if nums.len() < 3 {
            return Err(CliError::Core(Error::InvalidInput(format!(
                "line {}: expected normal coordinates plus offset",
                lineno + 1
            ))));
        }
        let (coords, off) = nums.split_at(nums.len() - 1);
        rows.push((Vector::from_slice(coords)?, off[0]));
    }
    Ok(rows)
}

fn cmd_approx(
    body_path: &Path,
    grid: &GridArgs,
    out: &Option<PathBuf>,
) -> Result<ExitCode, CliError> {
    let body = load_body(body_path)?;
    let g = grid.build()?;
    let hat: HPolytope = external_approx(&body, &g)?;
    if let Some(prefix) = out {
        let mut buf = Vec::new();
        hat.write_text(&mut buf)?;
        fs::write(with_ext(prefix, "hrep"), buf)?;
        if g.dim() == 2 {
            let verts = vertices_2d(&hat)?;
            let mut buf = Vec::new();
            verts.write_text(&mut buf)?;
            fs::write(with_ext(prefix, "vrep"), buf)?;
        }
    }
    let h = if g.dim() == 2 {
        hausdorff_outer_2d(&hat, &body)?
    } else {
        hausdorff_by_support(&body, &hat, 10_000)?
    };
    println!("h_measured = {}", sig12(h.value));
    println!("h_resolution = {}", sig12(h.resolution));
    let h0 = if g.dim() == 2 {
        outradius_2d(&body)?
    } else {
        // Spherical sweep via the grid directions.
        g.dirs()
            .iter()
            .map(|p| body.support(p).unwrap_or(f64::NEG_INFINITY))
            .fold(0.0f64, f64::max)
    };
    println!(
        "bound_classical_general = {}",
        sig12(classical_bound(h0, g.step(), ClassicalKind::General)?)
    );
    if let ConvexBody::BallIntersection(b) = &body {
        println!(
            "bound_classical_ball_intersection = {}",
            sig12(classical_bound(
                b.radius(),
                g.step(),
                ClassicalKind::BallIntersection
            )?)
        );
    }
    match modulus_for_body(&body)? {
        Some(m) => match bound_main(&m, g.step(), body.diameter()?) {
            Ok(report) => {
                println!("bound_main = {}", sig12(report.value));
                if !report.hypotheses_ok {
                    for reason in &report.reasons {
                        eprintln!("hypothesis violated: {reason}");
                    }
                    return Ok(ExitCode::from(2));
                }
            }
            Err(Error::GridTooCoarse(msg)) => {
                eprintln!("hypothesis violated: {msg}");
                return Ok(ExitCode::from(2));
            }
            Err(e) => return Err(e.into()),
        },
        None => {
            eprintln!("hypothesis violated: body has no positive modulus of convexity");
            return Ok(ExitCode::from(2));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_bounds(body_path: &Path, grid: &GridArgs) -> Result<ExitCode, CliError> {
    let body = load_body(body_path)?;
    let g = grid.build()?;
    let diam = body.diameter()?;
    println!("step = {}", sig12(g.step()));
    println!("diameter = {}", sig12(diam));
    let h0 = outradius_2d(&body)?;
    println!(
        "bound_classical_general = {}",
        sig12(classical_bound(h0, g.step(), ClassicalKind::General)?)
    );
    let mut hypothesis_failed = false;
    match modulus_for_body(&body)? {
        Some(m) => {
            match epsilon_of_step(&m, g.step(), diam) {
                Ok(eps) => println!("eps_of_step = {}", sig12(eps)),
                Err(Error::GridTooCoarse(msg)) => {
                    eprintln!("hypothesis violated: {msg}");
                    hypothesis_failed = true;
                }
                Err(e) => return Err(e.into()),
            }
            if !hypothesis_failed {
                let report = bound_main(&m, g.step(), diam)?;
                println!("bound_main = {}", sig12(report.value));
                for reason in &report.reasons {
                    eprintln!("note: {reason}");
                }
            }
            let rep = radius_report(&body, Some(&m), 512)?;
            println!("measured_r0 = {}", sig12(rep.r0));
            println!("measured_d = {}", sig12(rep.d));
            println!("bound_radius_ratio = {}", sig12(rep.bound));
        }
        None => {
            eprintln!("hypothesis violated: body has no positive modulus of convexity");
            hypothesis_failed = true;
        }
    }
    Ok(if hypothesis_failed {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_experiment(kind: ExperimentKind) -> Result<ExitCode, CliError> {
    let (rows, common, summary): (Vec<ExperimentRow>, ExperimentCommon, Vec<String>) = match kind {
        ExperimentKind::Convergence {
            body,
            n_list,
            common,
        } => {
            let b = match body {
                Some(path) => load_body(&path)?,
                None => ConvexBody::ball(Vector::zero(2), 1.0)?,
            };
            let rows = convergence_rows(&b, None, &n_list, common.threads)?;
            (rows, common, Vec::new())
        }
        ExperimentKind::Exactness {
            s,
            eps_list,
            common,
        } => {
            let run = exactness(s, &eps_list, common.threads)?;
            let summary = vec![format!(
                "slope = {} (target {})",
                sig12(run.slope),
                sig12(s / (s - 1.0))
            )];
            (run.rows, common, summary)
        }
        ExperimentKind::Geomdiff {
            case,
            n_list,
            dirs,
            common,
        } => {
            let case = match case.as_str() {
                "balls" => DiffCase::ConcentricBalls,
                "ellipsoid" => DiffCase::EllipsoidBall,
                other => {
                    return Err(CliError::Core(Error::InvalidInput(format!(
                        "unknown geomdiff case {other:?} (use balls|ellipsoid)"
                    ))))
                }
            };
            let rows = geomdiff_rows(&case, None, &n_list, dirs, common.threads)?;
            let rows = rows.iter().map(|r| r.to_experiment_row()).collect();
            (rows, common, Vec::new())
        }
        ExperimentKind::Intersection {
            offset,
            n_list,
            dirs,
            common,
        } => {
            let rows = intersection_rows(offset, &n_list, dirs, common.threads)?;
            let rows = rows.iter().map(|r| r.to_experiment_row()).collect();
            (rows, common, Vec::new())
        }
        ExperimentKind::Alg {
            body,
            n_list,
            common,
        } => {
            let b = match body {
                Some(path) => load_body(&path)?,
                None => ConvexBody::ball(Vector::zero(2), 1.0)?,
            };
            let rows = inner_hull_rows(&b, &n_list, common.threads)?;
            let rows = rows.iter().map(|r| r.to_experiment_row()).collect();
            (rows, common, Vec::new())
        }
        ExperimentKind::Radius {
            body,
            fine_n,
            common,
        } => {
            let b = match body {
                Some(path) => load_body(&path)?,
                None => ConvexBody::ellipsoid_axes(&[4.0, 1.0])?,
            };
            let rep = radius_report(&b, None, fine_n)?;
            let rows = vec![ExperimentRow {
                n: fine_n,
                delta_step: grid_uniform_2d(fine_n)?.step(),
                h_measured: rep.d,
                h_resolution: 0.0,
                bound_main: rep.bound,
                bound_classical: f64::NAN,
                hyp_ok: true,
                runtime_ms: 0,
            }];
            let summary = vec![format!(
                "r0 = {}, d = {}, bound = {}",
                sig12(rep.r0),
                sig12(rep.d),
                sig12(rep.bound)
            )];
            (rows, common, summary)
        }
    };
    let csv = rows_to_csv(&rows, common.timings);
    match &common.out {
        Some(path) => fs::write(path, &csv)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(csv.as_bytes())?;
        }
    }
    for line in summary {
        eprintln!("{line}");
    }
    let hyp_ok = rows.iter().all(|r| r.hyp_ok);
    // Bound/measured consistency is part of the emitted contract.
    for r in &rows {
        if r.hyp_ok && !r.bound_main.is_nan() && r.h_measured > r.bound_main {
            eprintln!(
                "warning: N={} measured {} exceeds bound {}",
                r.n,
                sig12(r.h_measured),
                sig12(r.bound_main)
            );
        }
    }
    if hyp_ok {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("note: some rows carry hypothesis violations (hyp_ok = false)");
        Ok(ExitCode::SUCCESS)
    }
}
