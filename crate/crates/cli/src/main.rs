//! Command-line front end: star figures, verification suites, critical-point
//! searches, flow experiments, and constrained-problem residual tables, all
//! emitted as deterministic JSON, CSV, or SVG.

mod report;
mod suites;
mod svg;

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use polyarea::polygon::{oriented_area, perimeter, StarSpec};
use polyarea::solver::{gradient_flow, solve_all, FlowDirection, SolverConfig};

use report::{spec_label, ReportBody, RunReport};
use suites::{run_suite, Suite, Tolerances};

#[derive(Parser)]
#[command(name = "polyarea", version, about = "Extremal-area analysis of fixed-perimeter polygons")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct TolArgs {
    /// Stationarity tolerance on chart gradient norms.
    #[arg(long = "tol-gradient", default_value_t = 1e-9)]
    tol_gradient: f64,
    /// Tolerance on 2-jet closed-form discrepancies.
    #[arg(long = "tol-jet", default_value_t = 1e-5)]
    tol_jet: f64,
    /// Relative eigenvalue magnitude below which a Hessian is degenerate.
    #[arg(long = "tol-eigen-zero", default_value_t = 1e-6)]
    tol_eigen_zero: f64,
}

impl TolArgs {
    fn tolerances(&self) -> Tolerances {
        Tolerances {
            gradient: self.tol_gradient,
            jet: self.tol_jet,
            eigen_zero: self.tol_eigen_zero,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Draw a star or fold as SVG, or dump its exact vertices as JSON.
    Stars {
        #[arg(long)]
        n: usize,
        /// Winding number of the star (omit together with --fold).
        #[arg(long, allow_negative_numbers = true, conflicts_with = "fold")]
        w: Option<i32>,
        /// Draw the complete fold instead of a star.
        #[arg(long)]
        fold: bool,
        /// SVG output path, `-` for stdout.
        #[arg(long)]
        svg: Option<String>,
        /// JSON output path, `-` for stdout.
        #[arg(long)]
        json: Option<String>,
        #[arg(long = "max-n", default_value_t = 12)]
        max_n: usize,
    },
    /// Run verification suites over a range of n; exit 0 iff all checks pass.
    Verify {
        /// Inclusive range, e.g. `4..9`, or a single value.
        #[arg(long)]
        n: String,
        /// Comma-separated subset of indices,jets,equilat,clarke,extensions,count.
        #[arg(long, value_delimiter = ',')]
        suite: Vec<Suite>,
        /// Random seeds per n for the count suite.
        #[arg(long, default_value_t = 300)]
        seeds: usize,
        #[command(flatten)]
        tol: TolArgs,
        /// JSON report path, `-` for stdout (default).
        #[arg(long, default_value = "-")]
        out: String,
        /// Also write the Morse index table as CSV to this path.
        #[arg(long)]
        csv: Option<String>,
        #[arg(long = "max-n", default_value_t = 12)]
        max_n: usize,
    },
    /// Search for all critical classes at one n and report them as JSON.
    Solve {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 500)]
        seeds: usize,
        /// RNG seed; identical seeds give identical numeric content.
        #[arg(long, default_value_t = 42)]
        rng: u64,
        #[arg(long, default_value = "-")]
        out: String,
        #[arg(long = "max-n", default_value_t = 12)]
        max_n: usize,
    },
    /// Run gradient flows from random starts and report basin statistics.
    Flow {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        count: usize,
        /// Flow towards larger area (default).
        #[arg(long, conflicts_with = "descend")]
        ascend: bool,
        /// Flow towards smaller area.
        #[arg(long)]
        descend: bool,
        #[arg(long, default_value_t = 42)]
        rng: u64,
        #[arg(long, default_value = "-")]
        out: String,
        /// Optional SVG sheet of the value trajectories.
        #[arg(long)]
        svg: Option<String>,
        #[arg(long = "max-n", default_value_t = 12)]
        max_n: usize,
    },
    /// Residuals of the constrained formulations at every catalogue entry.
    Extensions {
        /// Inclusive range, e.g. `4..10`, or a single value.
        #[arg(long)]
        n: String,
        #[command(flatten)]
        tol: TolArgs,
        #[arg(long, default_value = "-")]
        out: String,
        #[arg(long = "max-n", default_value_t = 12)]
        max_n: usize,
    },
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Stars { n, w, fold, svg, json, max_n } => cmd_stars(n, w, fold, svg, json, max_n),
        Command::Verify { n, suite, seeds, tol, out, csv, max_n } => {
            cmd_verify(&n, &suite, seeds, &tol.tolerances(), &out, csv.as_deref(), max_n)
        }
        Command::Solve { n, seeds, rng, out, max_n } => cmd_solve(n, seeds, rng, &out, max_n),
        Command::Flow { n, count, descend, rng, out, svg, max_n, .. } => {
            cmd_flow(n, count, descend, rng, &out, svg.as_deref(), max_n)
        }
        Command::Extensions { n, tol, out, max_n } => {
            cmd_extensions(&n, &tol.tolerances(), &out, max_n)
        }
    }
}

fn usage_error(message: &str) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}

/// Parses `A..B` (inclusive) or a single `N`.
fn parse_range(text: &str) -> Option<(usize, usize)> {
    if let Some((lo, hi)) = text.split_once("..") {
        let lo = lo.trim().parse().ok()?;
        let hi = hi.trim().parse().ok()?;
        (lo <= hi).then_some((lo, hi))
    } else {
        let n = text.trim().parse().ok()?;
        Some((n, n))
    }
}

fn write_output(path: &str, content: &str) -> ExitCode {
    if path == "-" {
        print!("{content}");
        ExitCode::SUCCESS
    } else if let Err(e) = fs::write(path, content) {
        eprintln!("error: cannot write {path}: {e}");
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}

fn cmd_stars(
    n: usize,
    w: Option<i32>,
    fold: bool,
    svg_path: Option<String>,
    json_path: Option<String>,
    max_n: usize,
) -> ExitCode {
    if n > max_n {
        return usage_error(&format!("n={n} exceeds the cap {max_n}; raise it with --max-n"));
    }
    let spec = match (w, fold) {
        (Some(w), false) => StarSpec::star(n, w),
        (None, true) => StarSpec::fold(n),
        _ => return usage_error("pass exactly one of --w <w> or --fold"),
    };
    let spec = match spec {
        Ok(s) => s,
        Err(e) => return usage_error(&e.to_string()),
    };
    if svg_path.is_none() && json_path.is_none() {
        return usage_error("pass at least one of --svg <path> or --json <path>");
    }
    let poly = spec.build();
    let mut status = ExitCode::SUCCESS;
    if let Some(path) = svg_path {
        let label = match spec.winding() {
            Some(w) => format!("{}  w = {w}", spec_label(&spec)),
            None => format!("{}  {n} edges fold onto one segment", spec_label(&spec)),
        };
        status = write_output(&path, &svg::star_figure(&poly, &label));
        if status != ExitCode::SUCCESS {
            return status;
        }
    }
    if let Some(path) = json_path {
        let body = ReportBody::Stars {
            n,
            label: spec_label(&spec),
            winding: spec.winding(),
            perimeter: perimeter(&poly),
            area: oriented_area(&poly),
            vertices: poly.vertices().iter().map(|v| [v.re, v.im]).collect(),
        };
        let flavour = match spec.winding() {
            Some(w) => format!("--w {w}"),
            None => "--fold".to_string(),
        };
        let report = RunReport::new(format!("stars --n {n} {flavour}"), [n, n], None, body);
        status = write_output(&path, &report.to_json());
    }
    status
}

fn cmd_verify(
    range: &str,
    suites: &[Suite],
    seeds: usize,
    tol: &Tolerances,
    out: &str,
    csv: Option<&str>,
    max_n: usize,
) -> ExitCode {
    let Some((n_lo, n_hi)) = parse_range(range) else {
        return usage_error(&format!("cannot parse range {range:?}; expected e.g. 4..9"));
    };
    if n_lo < 4 || n_hi > max_n {
        return usage_error(&format!("range must satisfy 4 <= n <= {max_n} (see --max-n)"));
    }
    let selected: Vec<Suite> =
        if suites.is_empty() { Suite::ALL.to_vec() } else { suites.to_vec() };
    let reports: Vec<_> = selected
        .iter()
        .map(|&s| run_suite(s, n_lo, n_hi, tol, seeds))
        .collect();
    let all_passed = reports.iter().all(|s| s.passed);
    for suite in &reports {
        for check in &suite.checks {
            let state = if check.pass { "PASS" } else { "FAIL" };
            eprintln!(
                "[{state}] {}/{}: predicted {}, computed {}",
                suite.suite, check.name, check.predicted, check.computed
            );
        }
    }
    let report = RunReport::new(
        format!("verify --n {n_lo}..{n_hi}"),
        [n_lo, n_hi],
        None,
        ReportBody::Verify { suites: reports, all_passed },
    );
    let status = write_output(out, &report.to_json());
    if status != ExitCode::SUCCESS {
        return status;
    }
    if let Some(path) = csv {
        match suites::index_table_csv(n_lo, n_hi) {
            Ok(table) => {
                let status = write_output(path, &table);
                if status != ExitCode::SUCCESS {
                    return status;
                }
            }
            Err(e) => return usage_error(&e.to_string()),
        }
    }
    if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn cmd_solve(n: usize, seeds: usize, rng: u64, out: &str, max_n: usize) -> ExitCode {
    if n < 4 || n > max_n {
        return usage_error(&format!("need 4 <= n <= {max_n} (see --max-n)"));
    }
    let cfg = SolverConfig { seeds_per_n: seeds, rng_seed: rng, ..SolverConfig::default() };
    let outcome = match solve_all(n, &cfg) {
        Ok(o) => o,
        Err(e) => return usage_error(&e.to_string()),
    };
    let report = RunReport::new(
        format!("solve --n {n} --seeds {seeds} --rng {rng}"),
        [n, n],
        Some(cfg),
        ReportBody::Solve { outcome },
    );
    write_output(out, &report.to_json())
}

fn cmd_flow(
    n: usize,
    count: usize,
    descend: bool,
    rng_seed: u64,
    out: &str,
    svg_path: Option<&str>,
    max_n: usize,
) -> ExitCode {
    if n < 4 || n > max_n {
        return usage_error(&format!("need 4 <= n <= {max_n} (see --max-n)"));
    }
    let direction = if descend { FlowDirection::Descend } else { FlowDirection::Ascend };
    let cfg = SolverConfig {
        newton_tol: 1e-9,
        max_iterations: 50_000,
        rng_seed,
        ..SolverConfig::default()
    };
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(rng_seed);
    let mut histogram = std::collections::BTreeMap::<String, usize>::new();
    let mut traces = Vec::new();
    let mut converged = 0usize;
    let mut monotone = 0usize;
    for _ in 0..count {
        let start = suites::random_smooth_word(n, &mut rng);
        let flow = match gradient_flow(&start, direction, &cfg) {
            Ok(f) => f,
            Err(_) => continue,
        };
        converged += 1;
        let ordered = match direction {
            FlowDirection::Ascend => flow.values.windows(2).all(|w| w[1] >= w[0]),
            FlowDirection::Descend => flow.values.windows(2).all(|w| w[1] <= w[0]),
        };
        monotone += usize::from(ordered);
        let label = flow
            .terminal
            .classification
            .as_ref()
            .map_or("unclassified".to_string(), spec_label);
        *histogram.entry(label).or_insert(0) += 1;
        traces.push(flow.values);
    }
    let body = ReportBody::Flow {
        direction: if descend { "descend".into() } else { "ascend".into() },
        count,
        converged,
        failed: count - converged,
        monotone,
        histogram: histogram.into_iter().collect(),
    };
    let report = RunReport::new(
        format!("flow --n {n} --count {count}"),
        [n, n],
        Some(cfg),
        body,
    );
    let status = write_output(out, &report.to_json());
    if status != ExitCode::SUCCESS {
        return status;
    }
    if let Some(path) = svg_path {
        let title = format!("{} flows, n = {n}", if descend { "descending" } else { "ascending" });
        return write_output(path, &svg::flow_sheet(&traces, &title));
    }
    ExitCode::SUCCESS
}

fn cmd_extensions(range: &str, tol: &Tolerances, out: &str, max_n: usize) -> ExitCode {
    let Some((n_lo, n_hi)) = parse_range(range) else {
        return usage_error(&format!("cannot parse range {range:?}; expected e.g. 4..10"));
    };
    if n_lo < 4 || n_hi > max_n {
        return usage_error(&format!("range must satisfy 4 <= n <= {max_n} (see --max-n)"));
    }
    let rows = suites::extension_rows(n_lo, n_hi, tol);
    let all_passed = rows.iter().all(|r| r.pass);
    let report = RunReport::new(
        format!("extensions --n {n_lo}..{n_hi}"),
        [n_lo, n_hi],
        None,
        ReportBody::Extensions { rows },
    );
    let status = write_output(out, &report.to_json());
    if status != ExitCode::SUCCESS {
        return status;
    }
    if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
