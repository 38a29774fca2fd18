//! Command-line driver behind the `voidcrack` binary: flag and JSON config
//! ingestion, one driver per mode, deterministic CSV emission, and the
//! static SVG chart for sweeps.
//!
//! Exit codes: 0 success, 2 configuration or usage error, 3 success with a
//! flagged concentration-factor disagreement, 4 numerical failure. Tables
//! are written to a temporary sibling and renamed into place, so a failed
//! run never leaves a partial file behind. Floats are printed with 12
//! significant digits, '.' decimal point, comma separators, and LF line
//! endings; identical configurations produce byte-identical files.

use crate::crack::{self, CrackProblem, CrackSolution, SweepAxis, SweepRow};
use crate::error::{Error, Result};
use crate::kernel::{KernelConfig, KernelEvaluator};
use crate::material::{derive_groups, DimensionlessGroups, MaterialParams};
use crate::symbol::{linear_remainder, symbol_l, SymbolSpec};
use crate::thermo::{self, FluxProfile, ThermoCrackProblem};
use clap::{Args as ClapArgs, Parser, Subcommand};
use serde::Deserialize;
use std::fs;
use std::path::{Path, PathBuf};

/// Entry point for the binary: returns the process exit code instead of
/// exiting, so tests can drive the full pipeline in process.
pub fn run(args: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests land here too; clap distinguishes
            // them from genuine usage errors through the exit code.
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(false) => 0,
        Ok(true) => 3,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Usage(_)
        | Error::InvalidMaterial(_)
        | Error::CouplingOutOfRange(_)
        | Error::ShearRatioOutOfRange(_)
        | Error::InvalidKernelConfig(_)
        | Error::InvalidGrid(_)
        | Error::InvalidProblem(_)
        | Error::SweepValue { .. } => 2,
        Error::QuadratureFailure { .. }
        | Error::SingularMatrix { .. }
        | Error::ResidualTooLarge { .. }
        | Error::SeparationOutOfRange(_)
        | Error::Io(_) => 4,
    }
}

#[derive(Parser, Debug)]
#[command(name = "voidcrack", about = "Crack openings and stress concentration in porous elastic media")]
struct Cli {
    #[command(subcommand)]
    mode: Mode,
}

#[derive(Subcommand, Debug)]
enum Mode {
    /// Solve one crack problem; emits the opening profile and a summary.
    Solve(Args),
    /// Concentration factor along one swept parameter axis.
    Sweep(Args),
    /// Tabulate the regular kernel and the full kernel on a log-spaced grid.
    KernelDump(Args),
    /// Tabulate the operator symbol and its linear remainder.
    SymbolDump(Args),
    /// Center-opening error against a reference across grid refinements.
    Converge(Args),
    /// Solve with a prescribed crack-face heat flux folded into the load.
    ThermoSolve(Args),
}

#[derive(ClapArgs, Debug, Default)]
struct Args {
    /// Coupling number N in [0, 1); pairs with --c2.
    #[arg(long = "N")]
    coupling: Option<f64>,
    /// Shear ratio c^2 in (0, 1).
    #[arg(long)]
    c2: Option<f64>,
    /// Thermal coupling group B; pairs with --N/--c2.
    #[arg(long = "B")]
    b_group: Option<f64>,
    /// Raw material constants; give all five, XOR the direct groups.
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    mu: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    xi: Option<f64>,
    /// Raw thermal constants; give both or neither.
    #[arg(long)]
    b: Option<f64>,
    #[arg(long)]
    m: Option<f64>,
    /// Dimensionless crack half-length (default 1).
    #[arg(long)]
    a: Option<f64>,
    /// Mechanical load sigma0 / (2 mu) (default 0.5).
    #[arg(long)]
    load: Option<f64>,
    /// Collocation panel count (default 400).
    #[arg(long)]
    n: Option<usize>,
    /// Kernel transform truncation point.
    #[arg(long)]
    s_cut: Option<f64>,
    /// Kernel transform panel tolerance.
    #[arg(long)]
    panel_tol: Option<f64>,
    /// Kernel tail order, 1 or 2.
    #[arg(long)]
    tail_order: Option<u8>,
    /// Sweep axis: N, c2, or a (default N).
    #[arg(long)]
    axis: Option<String>,
    /// Sweep values, comma separated.
    #[arg(long, value_delimiter = ',')]
    values: Option<Vec<f64>>,
    /// Flux: "constant:<value>" or a two-column CSV path (xi, f0).
    #[arg(long)]
    flux: Option<String>,
    /// Lower end of the dump abscissa (kernel-dump x, symbol-dump s).
    #[arg(long)]
    x_min: Option<f64>,
    /// Upper end of the dump abscissa.
    #[arg(long)]
    x_max: Option<f64>,
    /// Number of dump rows (default 50).
    #[arg(long)]
    points: Option<usize>,
    /// Convergence panel counts, comma separated (default 50,100,200,400).
    #[arg(long, value_delimiter = ',')]
    grids: Option<Vec<usize>>,
    /// JSON config file; explicit flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// CSV output path; without it the table goes to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// SVG chart path (sweep mode only).
    #[arg(long)]
    plot: Option<PathBuf>,
}

/// JSON mirror of the flags. Key names match the flag spellings with
/// underscores; unknown keys are rejected by name.
#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    #[serde(rename = "N")]
    coupling: Option<f64>,
    c2: Option<f64>,
    #[serde(rename = "B")]
    b_group: Option<f64>,
    lambda: Option<f64>,
    mu: Option<f64>,
    alpha: Option<f64>,
    beta: Option<f64>,
    xi: Option<f64>,
    b: Option<f64>,
    m: Option<f64>,
    a: Option<f64>,
    load: Option<f64>,
    n: Option<usize>,
    s_cut: Option<f64>,
    panel_tol: Option<f64>,
    tail_order: Option<u8>,
    axis: Option<String>,
    values: Option<Vec<f64>>,
    flux: Option<String>,
    x_min: Option<f64>,
    x_max: Option<f64>,
    points: Option<usize>,
    grids: Option<Vec<usize>>,
    out: Option<PathBuf>,
    plot: Option<PathBuf>,
}

macro_rules! fill_missing {
    ($args:expr, $file:expr, $($field:ident),+ $(,)?) => {
        $( if $args.$field.is_none() { $args.$field = $file.$field; } )+
    };
}

impl Args {
    /// Flags win; the file only fills holes.
    fn fill_from(&mut self, file: FileConfig) {
        fill_missing!(
            self, file, coupling, c2, b_group, lambda, mu, alpha, beta, xi, b, m, a, load, n,
            s_cut, panel_tol, tail_order, axis, values, flux, x_min, x_max, points, grids, out,
            plot,
        );
    }
}

/// Where the thermal coupling came from, when it was given at all.
enum ThermalSource {
    None,
    /// Direct --B alongside direct groups.
    Direct(f64),
    /// Full groups derived from raw constants.
    Groups(DimensionlessGroups),
}

struct Resolved {
    spec: SymbolSpec,
    thermal: ThermalSource,
    a: f64,
    load: f64,
    n: usize,
    cfg: KernelConfig,
    args: Args,
}

fn resolve(mut args: Args) -> Result<Resolved> {
    if let Some(path) = args.config.take() {
        let text = fs::read_to_string(&path).map_err(|e| {
            Error::Usage(format!("cannot read config file {}: {e}", path.display()))
        })?;
        let file: FileConfig = serde_json::from_str(&text)
            .map_err(|e| Error::Usage(format!("config file {}: {e}", path.display())))?;
        args.fill_from(file);
    }

    let raw_given = args.lambda.is_some()
        || args.mu.is_some()
        || args.alpha.is_some()
        || args.beta.is_some()
        || args.xi.is_some()
        || args.b.is_some()
        || args.m.is_some();
    let direct_given = args.coupling.is_some() || args.c2.is_some() || args.b_group.is_some();
    let (spec, thermal) = if raw_given && direct_given {
        return Err(Error::Usage(
            "material over-specified: give raw constants (--lambda --mu --alpha --beta --xi) \
             or direct groups (--N --c2), not both"
                .into(),
        ));
    } else if raw_given {
        let need = |v: Option<f64>, name: &str| {
            v.ok_or_else(|| Error::Usage(format!("raw material needs --{name}")))
        };
        let params = MaterialParams::new(
            need(args.lambda, "lambda")?,
            need(args.mu, "mu")?,
            need(args.alpha, "alpha")?,
            need(args.beta, "beta")?,
            need(args.xi, "xi")?,
        )?;
        let params = match (args.b, args.m) {
            (Some(b), Some(m)) => params.with_thermal(b, m)?,
            (None, None) => params,
            _ => return Err(Error::Usage("thermal constants need both --b and --m".into())),
        };
        let groups = derive_groups(&params)?;
        (SymbolSpec::new(groups.c2, groups.coupling)?, ThermalSource::Groups(groups))
    } else {
        let coupling = args.coupling.ok_or_else(|| {
            Error::Usage("material under-specified: give --N and --c2, or raw constants".into())
        })?;
        let c2 = args
            .c2
            .ok_or_else(|| Error::Usage("direct groups need --c2 alongside --N".into()))?;
        let spec = SymbolSpec::new(c2, coupling)?;
        let thermal = match args.b_group {
            Some(b) => ThermalSource::Direct(b),
            None => ThermalSource::None,
        };
        (spec, thermal)
    };

    let mut cfg = KernelConfig::new(spec);
    if let Some(v) = args.s_cut {
        cfg.s_cut = v;
    }
    if let Some(v) = args.panel_tol {
        cfg.panel_tol = v;
    }
    if let Some(v) = args.tail_order {
        cfg.tail_order = v;
    }
    cfg.validate()?;

    Ok(Resolved {
        spec,
        thermal,
        a: args.a.unwrap_or(1.0),
        load: args.load.unwrap_or(0.5),
        n: args.n.unwrap_or(400),
        cfg,
        args,
    })
}

fn dispatch(cli: Cli) -> Result<bool> {
    let plot_allowed = matches!(cli.mode, Mode::Sweep(_));
    let (args, driver): (Args, fn(Resolved) -> Result<bool>) = match cli.mode {
        Mode::Solve(a) => (a, run_solve),
        Mode::Sweep(a) => (a, run_sweep),
        Mode::KernelDump(a) => (a, run_kernel_dump),
        Mode::SymbolDump(a) => (a, run_symbol_dump),
        Mode::Converge(a) => (a, run_converge),
        Mode::ThermoSolve(a) => (a, run_thermo_solve),
    };
    let resolved = resolve(args)?;
    if !plot_allowed && resolved.args.plot.is_some() {
        return Err(Error::Usage("--plot is only supported in sweep mode".into()));
    }
    driver(resolved)
}

/// 12 significant digits, locale-independent.
fn csv_f(v: f64) -> String {
    format!("{v:.11e}")
}

fn write_atomic(path: &Path, content: &str) -> Result<()> {
    let name = path
        .file_name()
        .ok_or_else(|| Error::Usage(format!("output path {} has no file name", path.display())))?;
    let mut tmp_name = name.to_os_string();
    tmp_name.push(".tmp");
    let tmp = path.with_file_name(tmp_name);
    fs::write(&tmp, content)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Rows go to `--out` when given, to stdout otherwise; per-row summaries
/// print only when the table went to a file, keeping stdout parseable.
fn emit(out: Option<&Path>, header: &str, rows: &[String], summaries: &[String]) -> Result<()> {
    let mut csv = String::with_capacity(header.len() + 1 + rows.iter().map(|r| r.len() + 1).sum::<usize>());
    csv.push_str(header);
    csv.push('\n');
    for row in rows {
        csv.push_str(row);
        csv.push('\n');
    }
    match out {
        Some(path) => {
            write_atomic(path, &csv)?;
            for line in summaries {
                println!("{line}");
            }
            println!("wrote {}", path.display());
        }
        None => print!("{csv}"),
    }
    Ok(())
}

fn profile_rows(solution: &CrackSolution) -> Vec<String> {
    let grid = &solution.solution.grid;
    (0..grid.n())
        .map(|i| format!("{},{}", csv_f(grid.collocation(i)), csv_f(solution.solution.g[i])))
        .collect()
}

fn run_solve(r: Resolved) -> Result<bool> {
    let problem = CrackProblem::new(r.spec, r.a, r.load)?;
    let (solution, scf) = crack::solve_scf(&problem, r.cfg, r.n)?;
    let summary = format!(
        "solve: N={} c2={} a={} load={} n={} k={:.6} ratio={:.6} route_A={:.6} route_B={:.6} residual={:.2e} flagged={}",
        r.spec.coupling,
        r.spec.c2,
        r.a,
        r.load,
        r.n,
        scf.k,
        scf.ratio,
        scf.route_a,
        scf.route_b,
        solution.solution.residual_norm,
        scf.flagged
    );
    emit(r.args.out.as_deref(), "t,opening", &profile_rows(&solution), &[summary])?;
    if scf.flagged {
        eprintln!(
            "warning: extraction routes disagree beyond {:.0}%: route_A={:.6} route_B={:.6}",
            crack::ROUTE_GATE * 100.0,
            scf.route_a,
            scf.route_b
        );
    }
    Ok(scf.flagged)
}

fn run_sweep(r: Resolved) -> Result<bool> {
    let axis: SweepAxis = r.args.axis.as_deref().unwrap_or("N").parse()?;
    let values = match &r.args.values {
        Some(v) if !v.is_empty() => v.clone(),
        _ => return Err(Error::Usage("sweep needs --values v1,v2,...".into())),
    };
    let base = CrackProblem::new(r.spec, r.a, r.load)?;
    let rows = crack::sweep(&base, r.cfg, axis, &values, r.n)?;

    let csv_rows: Vec<String> = rows
        .iter()
        .map(|row| {
            format!(
                "{},{},{},{},{},{},{}",
                csv_f(row.value),
                csv_f(row.k),
                csv_f(row.ratio),
                csv_f(row.route_a),
                csv_f(row.route_b),
                row.n,
                csv_f(row.residual_norm)
            )
        })
        .collect();
    let summaries: Vec<String> = rows
        .iter()
        .map(|row| {
            format!(
                "{}={} k={:.6} ratio={:.6} route_A={:.6} route_B={:.6}{}",
                axis.label(),
                row.value,
                row.k,
                row.ratio,
                row.route_a,
                row.route_b,
                if row.flagged { " FLAGGED" } else { "" }
            )
        })
        .collect();
    emit(
        r.args.out.as_deref(),
        "axis,k,ratio,route_A,route_B,n,residual_norm",
        &csv_rows,
        &summaries,
    )?;
    if let Some(plot) = &r.args.plot {
        write_atomic(plot, &sweep_svg(&rows, axis.label()))?;
    }
    Ok(rows.iter().any(|row| row.flagged))
}

/// Log-spaced abscissas for the dump modes.
fn log_grid(lo: f64, hi: f64, points: usize) -> Result<Vec<f64>> {
    if !(lo.is_finite() && hi.is_finite() && 0.0 < lo && lo < hi) {
        return Err(Error::Usage(format!(
            "dump range needs 0 < x_min < x_max, got [{lo}, {hi}]"
        )));
    }
    if points < 2 {
        return Err(Error::Usage(format!("dump needs at least 2 points, got {points}")));
    }
    let ratio = hi / lo;
    Ok((0..points)
        .map(|i| lo * ratio.powf(i as f64 / (points - 1) as f64))
        .collect())
}

fn run_kernel_dump(r: Resolved) -> Result<bool> {
    let lo = r.args.x_min.unwrap_or(1e-3);
    let hi = r.args.x_max.unwrap_or(10.0);
    let xs = log_grid(lo, hi, r.args.points.unwrap_or(50))?;
    let evaluator = KernelEvaluator::new(r.cfg)?;
    let mut rows = Vec::with_capacity(xs.len());
    for &x in &xs {
        rows.push(format!(
            "{},{},{}",
            csv_f(x),
            csv_f(evaluator.regular(x)?),
            csv_f(evaluator.full(x)?)
        ));
    }
    let summary = format!(
        "kernel-dump: N={} c2={} {} points in [{lo}, {hi}]",
        r.spec.coupling,
        r.spec.c2,
        xs.len()
    );
    emit(r.args.out.as_deref(), "x,regular,full", &rows, &[summary])?;
    Ok(false)
}

fn run_symbol_dump(r: Resolved) -> Result<bool> {
    let lo = r.args.x_min.unwrap_or(1e-2);
    let hi = r.args.x_max.unwrap_or(1e2);
    let ss = log_grid(lo, hi, r.args.points.unwrap_or(50))?;
    let rows: Vec<String> = ss
        .iter()
        .map(|&s| {
            format!(
                "{},{},{}",
                csv_f(s),
                csv_f(symbol_l(&r.spec, s)),
                csv_f(linear_remainder(&r.spec, s))
            )
        })
        .collect();
    let summary = format!(
        "symbol-dump: N={} c2={} {} points in [{lo}, {hi}]",
        r.spec.coupling,
        r.spec.c2,
        ss.len()
    );
    emit(r.args.out.as_deref(), "s,L,remainder", &rows, &[summary])?;
    Ok(false)
}

/// Center opening from the panel values. Even grids straddle t = 0, so the
/// value is interpolated cubically through the four inner midpoints; a
/// two-point average would add an O(h^2) term of its own, masking the
/// scheme's first-order behavior in convergence tables.
fn center_opening(solution: &CrackSolution) -> f64 {
    let g = &solution.solution.g;
    let n = g.len();
    if n % 2 == 1 {
        g[n / 2]
    } else {
        (-g[n / 2 - 2] + 9.0 * (g[n / 2 - 1] + g[n / 2]) - g[n / 2 + 1]) / 16.0
    }
}

fn run_converge(r: Resolved) -> Result<bool> {
    let grids = match &r.args.grids {
        Some(g) if !g.is_empty() => g.clone(),
        Some(_) => return Err(Error::Usage("converge needs at least one grid size".into())),
        None => vec![50, 100, 200, 400],
    };
    let problem = CrackProblem::new(r.spec, r.a, r.load)?;
    // The classical case has a closed-form center opening; anything coupled
    // is referenced against a well-converged spectral solve.
    let reference = if r.spec.coupling == 0.0 {
        problem.load * problem.a / (1.0 - r.spec.c2)
    } else {
        crack::crack_opening_spectral(&problem, r.cfg, 48)?.opening(0.0)
    };
    let mut rows = Vec::with_capacity(grids.len());
    let mut summaries = Vec::with_capacity(grids.len());
    for &n in &grids {
        let solution = crack::crack_opening(&problem, r.cfg, n)?;
        let g0 = center_opening(&solution);
        let error = (g0 - reference).abs();
        rows.push(format!("{},{},{},{}", n, csv_f(g0), csv_f(reference), csv_f(error)));
        summaries.push(format!("n={n} g0={g0:.8} reference={reference:.8} error={error:.2e}"));
    }
    emit(r.args.out.as_deref(), "n,g0,reference,error", &rows, &summaries)?;
    Ok(false)
}

/// Flux argument: "constant:<value>" or a path to a two-column CSV of
/// (xi, f0) knots, interpolated piecewise-linearly. A header row is allowed.
fn parse_flux(arg: &str, a: f64) -> Result<FluxProfile> {
    if let Some(text) = arg.strip_prefix("constant:") {
        let value: f64 = text
            .trim()
            .parse()
            .map_err(|_| Error::Usage(format!("bad constant flux value {text:?}")))?;
        return FluxProfile::constant(a, value);
    }
    let text = fs::read_to_string(arg)
        .map_err(|e| Error::Usage(format!("cannot read flux file {arg}: {e}")))?;
    let mut points = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut cols = line.split(',');
        let (Some(first), Some(second)) = (cols.next(), cols.next()) else {
            return Err(Error::Usage(format!(
                "flux file {arg} line {}: expected two comma-separated columns",
                i + 1
            )));
        };
        match (first.trim().parse::<f64>(), second.trim().parse::<f64>()) {
            (Ok(xi), Ok(v)) => points.push((xi, v)),
            // Only the first line may be a non-numeric header.
            _ if i == 0 => continue,
            _ => {
                return Err(Error::Usage(format!(
                    "flux file {arg} line {}: expected two numbers",
                    i + 1
                )))
            }
        }
    }
    FluxProfile::piecewise_linear(a, points)
}

fn run_thermo_solve(r: Resolved) -> Result<bool> {
    let flux_arg = r.args.flux.as_deref().ok_or_else(|| {
        Error::Usage("thermo-solve needs --flux (constant:<value> or a two-column CSV file)".into())
    })?;
    let flux = parse_flux(flux_arg, r.a)?;
    if !flux.is_balanced() {
        eprintln!(
            "warning: net crack flux {:.6e} is nonzero; the temperature trace is only \
             determined up to an additive constant (reported relative to the crack center)",
            flux.total()
        );
    }
    let base = CrackProblem::new(r.spec, r.a, r.load)?;
    let problem = match r.thermal {
        ThermalSource::Groups(groups) => ThermoCrackProblem::new(base, groups, flux)?,
        ThermalSource::Direct(b) => ThermoCrackProblem::from_coupling(base, b, flux)?,
        ThermalSource::None => {
            return Err(Error::Usage(
                "thermo-solve needs the thermal coupling: give --B with direct groups, or \
                 --b and --m with raw constants"
                    .into(),
            ))
        }
    };
    let (solution, scf) = thermo::thermo_scf(&problem, r.cfg, r.n)?;
    let summary = format!(
        "thermo-solve: N={} c2={} B={} a={} load={} n={} k={:.6} ratio={:.6} route_A={:.6} route_B={:.6} residual={:.2e} flagged={}",
        r.spec.coupling,
        r.spec.c2,
        problem.groups.b.unwrap_or(0.0),
        r.a,
        r.load,
        r.n,
        scf.k,
        scf.ratio,
        scf.route_a,
        scf.route_b,
        solution.solution.residual_norm,
        scf.flagged
    );
    emit(r.args.out.as_deref(), "t,opening", &profile_rows(&solution), &[summary])?;
    if scf.flagged {
        eprintln!(
            "warning: extraction routes disagree beyond {:.0}%: route_A={:.6} route_B={:.6}",
            crack::ROUTE_GATE * 100.0,
            scf.route_a,
            scf.route_b
        );
    }
    Ok(scf.flagged)
}

/// Self-contained static line chart: swept value on x, ratio k/k0 on y.
fn sweep_svg(rows: &[SweepRow], axis_label: &str) -> String {
    let (width, height) = (640.0, 440.0);
    let (left, right, top, bottom) = (70.0, 20.0, 34.0, 50.0);
    let span = |lo: f64, hi: f64| if hi > lo { hi - lo } else { lo.abs().max(1.0) * 1e-3 };

    let x_lo = rows.iter().map(|r| r.value).fold(f64::INFINITY, f64::min);
    let x_hi = rows.iter().map(|r| r.value).fold(f64::NEG_INFINITY, f64::max);
    let y_lo = rows.iter().map(|r| r.ratio).fold(f64::INFINITY, f64::min);
    let y_hi = rows.iter().map(|r| r.ratio).fold(f64::NEG_INFINITY, f64::max);
    let (x_span, y_span) = (span(x_lo, x_hi), span(y_lo, y_hi));
    // 5% headroom keeps markers off the frame.
    let (y_lo, y_span) = (y_lo - 0.05 * y_span, 1.1 * y_span);

    let px = |v: f64| left + (v - x_lo) / x_span * (width - left - right);
    let py = |v: f64| height - bottom - (v - y_lo) / y_span * (height - top - bottom);

    let mut svg = format!(
        concat!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" ",
            "viewBox=\"0 0 {w} {h}\" font-family=\"sans-serif\" font-size=\"13\">\n",
            "<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n",
            "<text x=\"{tx}\" y=\"20\" text-anchor=\"middle\">k/k0 vs {label}</text>\n"
        ),
        w = width,
        h = height,
        tx = width / 2.0,
        label = axis_label
    );
    // Frame and tick labels at the range ends.
    svg.push_str(&format!(
        "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"none\" stroke=\"black\"/>\n",
        left,
        top,
        width - left - right,
        height - top - bottom
    ));
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{:.4}</text>\n",
        px(x_lo),
        height - bottom + 18.0,
        x_lo
    ));
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{:.4}</text>\n",
        px(x_hi),
        height - bottom + 18.0,
        x_hi
    ));
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{:.4}</text>\n",
        left - 6.0,
        py(y_lo + 0.05 / 1.1 * y_span) + 4.0,
        y_lo + 0.05 / 1.1 * y_span
    ));
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{:.4}</text>\n",
        left - 6.0,
        py(y_lo + y_span / 1.1) + 4.0,
        y_lo + y_span / 1.1
    ));
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>\n",
        width / 2.0,
        height - 12.0,
        axis_label
    ));

    let pts: Vec<String> =
        rows.iter().map(|r| format!("{:.2},{:.2}", px(r.value), py(r.ratio))).collect();
    svg.push_str(&format!(
        "<polyline points=\"{}\" fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"2\"/>\n",
        pts.join(" ")
    ));
    for r in rows {
        svg.push_str(&format!(
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"#1f6fb2\"/>\n",
            px(r.value),
            py(r.ratio)
        ));
    }
    svg.push_str("</svg>\n");
    svg
}
