//! Command-line front end for `cv-epr`.
//!
//! Exit codes: 0 on success, 2 when flags fail validation, 1 when a
//! numerical step fails. Failures print a JSON object on standard error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

use cv_epr::chsh::{
    figure_preset, maximize_bell, scan_surface, write_bell_csv, Axis, Branch, MaximizeOptions, Objective, Spacing,
};
use cv_epr::fock::{eigen_residual, parity_expectation_oracle};
use cv_epr::gaussian::{
    eigen_relations, epr_ket, nopa2_ket, nopa3_from_beamsplitters, nopa3_ket, EtaVector, GaussianKetSpec, Regulator,
    SqueezingParam, StateFamily,
};
use cv_epr::wigner::{
    evaluate_slice, fmt_f64, wigner_displaced_parity, wigner_epr2, wigner_epr3_closed, wigner_nopa3_closed,
    wigner_tmsv_closed, write_wigner_csv, PhasePoint, Quadrature, WignerGridRow, WignerSlice, WignerValue,
    WIGNER_CSV_HEADER,
};

#[derive(Debug, Parser)]
#[command(name = "cv-epr", version, about = "Regularised EPR states, Wigner functions and CHSH values")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the ket data of a state as JSON.
    StateInfo(StateInfoArgs),
    /// Evaluate the Wigner function at one phase-space point.
    WignerEval(EvalArgs),
    /// Evaluate the Wigner function on a one- or two-axis slice.
    WignerGrid(GridArgs),
    /// Sample a Bell surface over (s, J).
    ChshScan(ScanArgs),
    /// Maximize a Bell combination.
    ChshMax(MaxArgs),
    /// Compare closed form, Gaussian-integral engine and Fock truncation.
    OracleCompare(OracleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Route {
    Engine,
    Closed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum JSpacing {
    Linear,
    Geometric,
}

#[derive(Debug, Args)]
struct StateArgs {
    /// Number of modes (2 or 3).
    #[arg(long, default_value_t = 3)]
    modes: usize,
    /// Regulator s of the EPR-type state.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "r")]
    s: Option<f64>,
    /// Squeezing parameter r of the NOPA-type state.
    #[arg(long, allow_hyphen_values = true)]
    r: Option<f64>,
    /// Drive η as comma-separated re:im pairs.
    #[arg(long, allow_hyphen_values = true, requires = "s")]
    eta: Option<String>,
    /// Build the three-mode NOPA state from squeezers and beamsplitters.
    #[arg(long, requires = "r")]
    beamsplitter: bool,
}

#[derive(Debug, Args)]
struct Output {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Output file (standard output when absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct StateInfoArgs {
    #[command(flatten)]
    state: StateArgs,
    /// Also list the eigen-relations (three-mode EPR only).
    #[arg(long)]
    relations: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[command(flatten)]
    state: StateArgs,
    /// Quadratures x1,p1,x2,p2,...
    #[arg(long, allow_hyphen_values = true)]
    point: String,
    #[arg(long, value_enum, default_value_t = Route::Engine)]
    route: Route,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct GridArgs {
    #[command(flatten)]
    state: StateArgs,
    /// Base point x1,p1,... (origin when absent).
    #[arg(long, allow_hyphen_values = true)]
    point: Option<String>,
    /// Varied quadrature (x1..x3, p1..p3); give once or twice.
    #[arg(long, required = true, num_args = 1)]
    vary: Vec<String>,
    #[arg(long, allow_hyphen_values = true, default_value_t = -2.0)]
    grid_min: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 2.0)]
    grid_max: f64,
    #[arg(long, default_value_t = 41)]
    steps: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct ScanArgs {
    /// Preset grid for Bell-surface figure 1-4.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
    figure: Option<u8>,
    #[arg(long, required_unless_present = "figure")]
    branch: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    s_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    s_max: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    j_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    j_max: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long, value_enum)]
    j_spacing: Option<JSpacing>,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct MaxArgs {
    #[arg(long)]
    branch: String,
    /// Fixed regulator (alternative to --s-min/--s-max).
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["s_min", "s_max"])]
    s: Option<f64>,
    #[arg(long, allow_hyphen_values = true, requires = "s_max")]
    s_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true, requires = "s_min")]
    s_max: Option<f64>,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    j_min: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
    j_max: f64,
    /// Grid points per axis before simplex refinement.
    #[arg(long, default_value_t = 200)]
    steps: usize,
    /// Bound on each displacement component (general branch).
    #[arg(long, default_value_t = 0.5)]
    amp_max: f64,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[command(flatten)]
    state: StateArgs,
    #[arg(long, allow_hyphen_values = true)]
    point: String,
    #[arg(long, default_value_t = 25)]
    cutoff: usize,
    /// Also report eigen-relation residuals (three-mode EPR only).
    #[arg(long)]
    residuals: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug)]
enum CliError {
    Validation(String),
    Numerical(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Numerical(_) => 1,
        }
    }

    fn to_json(&self) -> serde_json::Value {
        let (kind, msg) = match self {
            CliError::Validation(m) => ("validation", m),
            CliError::Numerical(m) => ("numerical", m),
        };
        json!({ "error": kind, "message": msg })
    }
}

impl From<cv_epr::Error> for CliError {
    fn from(e: cv_epr::Error) -> Self {
        use cv_epr::Error as E;
        match e {
            E::SingularRegulator { s, modes } => {
                let s0 = if modes == 3 { "sqrt(2)" } else { "1" };
                CliError::Validation(format!("regulator s = {s} is singular for {modes} modes (singular value s = {s0})"))
            }
            E::Truncation { .. } | E::SingularIntegral | E::ComplexParity(_) | E::Objective(_) | E::BlockSymmetry => {
                CliError::Numerical(e.to_string())
            }
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Numerical(format!("write failed: {e}"))
    }
}

type CliResult<T> = Result<T, CliError>;

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

fn parse_floats(s: &str) -> CliResult<Vec<f64>> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| invalid(format!("'{t}' is not a finite number")))
        })
        .collect()
}

fn parse_eta(s: &str) -> CliResult<Vec<Complex64>> {
    s.split(',')
        .map(|pair| {
            let mut it = pair.trim().split(':');
            let re = it.next().and_then(|v| v.parse::<f64>().ok());
            let im = it.next().map_or(Some(0.0), |v| v.parse::<f64>().ok());
            match (re, im, it.next()) {
                (Some(re), Some(im), None) if re.is_finite() && im.is_finite() => Ok(Complex64::new(re, im)),
                _ => Err(invalid(format!("bad eta entry '{pair}' (expected re:im)"))),
            }
        })
        .collect()
}

fn build_spec(a: &StateArgs) -> CliResult<GaussianKetSpec> {
    if a.modes != 2 && a.modes != 3 {
        return Err(invalid(format!("--modes must be 2 or 3, got {}", a.modes)));
    }
    match (a.s, a.r) {
        (Some(s), None) => {
            let reg = Regulator::new(s)?;
            let eta = match &a.eta {
                Some(e) => EtaVector(parse_eta(e)?),
                None => EtaVector::zeros(a.modes),
            };
            let spec = epr_ket(a.modes, reg, &eta)?;
            if spec.regime() == cv_epr::gaussian::Regime::Singular {
                return Err(cv_epr::Error::SingularRegulator { s, modes: a.modes }.into());
            }
            Ok(spec)
        }
        (None, Some(r)) => {
            let r = SqueezingParam::new(r)?;
            match (a.modes, a.beamsplitter) {
                (2, false) => Ok(nopa2_ket(r)),
                (2, true) => Err(invalid("--beamsplitter needs --modes 3")),
                (_, false) => Ok(nopa3_ket(r)),
                (_, true) => Ok(nopa3_from_beamsplitters(r)),
            }
        }
        _ => Err(invalid("give exactly one of --s or --r")),
    }
}

fn parse_point(s: &str, modes: usize) -> CliResult<PhasePoint> {
    let v = parse_floats(s)?;
    if v.len() != 2 * modes {
        return Err(invalid(format!("--point needs {} values for {modes} modes, got {}", 2 * modes, v.len())));
    }
    Ok(PhasePoint::from_quadratures(&v)?)
}

/// Opens the destination before any computation so that a bad path is a
/// validation error.
fn open_output<'a>(path: &Option<PathBuf>, stdout: &'a mut dyn Write) -> CliResult<Box<dyn Write + 'a>> {
    match path {
        Some(p) => {
            let f = File::create(p).map_err(|e| invalid(format!("cannot write {}: {e}", p.display())))?;
            Ok(Box::new(BufWriter::new(f)))
        }
        None => Ok(Box::new(stdout)),
    }
}

fn write_json(out: &mut dyn Write, v: &serde_json::Value) -> CliResult<()> {
    serde_json::to_writer_pretty(&mut *out, v).map_err(|e| CliError::Numerical(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

fn only_json(o: &Output) -> CliResult<()> {
    if o.format == Some(Format::Csv) {
        return Err(invalid("this command only produces JSON"));
    }
    Ok(())
}

fn value_json(v: &WignerValue) -> serde_json::Value {
    json!({
        "W": v.w,
        "parity": v.parity,
        "ln_parity": v.ln_parity,
        "regime": v.regime,
        "saturated": v.saturated,
        "exceeds_parity_bound": v.exceeds_parity_bound(),
    })
}

fn closed_route(spec: &GaussianKetSpec, pt: &PhasePoint) -> CliResult<WignerValue> {
    let v = match spec.family() {
        StateFamily::Epr { s, eta } if eta.0.iter().all(|z| z.norm() == 0.0) => {
            let reg = Regulator::new(*s)?;
            if spec.modes() == 3 {
                wigner_epr3_closed(reg, pt)?
            } else {
                wigner_epr2(reg, pt)?
            }
        }
        StateFamily::Nopa2 { r } => wigner_tmsv_closed(SqueezingParam::new(*r)?, pt)?,
        StateFamily::Nopa3 { r } => wigner_nopa3_closed(SqueezingParam::new(*r)?, pt)?,
        _ => return Err(invalid("no closed form for a driven state; use --route engine")),
    };
    Ok(v)
}

fn state_info(a: StateInfoArgs, stdout: &mut dyn Write) -> CliResult<()> {
    only_json(&a.output)?;
    let spec = build_spec(&a.state)?;
    let mut out = open_output(&a.output.out, stdout)?;
    let mut v = spec.to_json();
    if a.relations {
        let StateFamily::Epr { s, eta } = spec.family() else {
            return Err(invalid("--relations needs an EPR state (--s)"));
        };
        let rels = eigen_relations(spec.modes(), Regulator::new(*s)?, eta)?;
        v["relations"] = serde_json::to_value(rels).map_err(|e| CliError::Numerical(e.to_string()))?;
    }
    write_json(&mut *out, &v)?;
    out.flush()?;
    Ok(())
}

fn grid_row(spec: &GaussianKetSpec, pt: &PhasePoint, v: &WignerValue) -> WignerGridRow {
    let (s, r) = match spec.family() {
        StateFamily::Epr { s, .. } => (Some(*s), None),
        StateFamily::Nopa2 { r } | StateFamily::Nopa3 { r } => (None, Some(*r)),
        StateFamily::Custom => (None, None),
    };
    WignerGridRow { s, r, quadratures: pt.quadratures(), w: v.w, regime: v.regime }
}

fn wigner_eval(a: EvalArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let spec = build_spec(&a.state)?;
    let pt = parse_point(&a.point, spec.modes())?;
    let mut out = open_output(&a.output.out, stdout)?;
    let v = match a.route {
        Route::Engine => wigner_displaced_parity(&spec, &pt)?,
        Route::Closed => closed_route(&spec, &pt)?,
    };
    if a.output.format == Some(Format::Csv) {
        write_wigner_csv(&mut out, &[grid_row(&spec, &pt, &v)])?;
    } else {
        write_json(&mut *out, &value_json(&v))?;
    }
    out.flush()?;
    Ok(())
}

fn wigner_grid(a: GridArgs, stdout: &mut dyn Write) -> CliResult<()> {
    if a.output.format == Some(Format::Json) {
        return Err(invalid("wigner-grid only produces CSV"));
    }
    let spec = build_spec(&a.state)?;
    let base = match &a.point {
        Some(p) => parse_point(p, spec.modes())?.quadratures(),
        None => vec![0.0; 2 * spec.modes()],
    };
    if a.vary.len() > 2 {
        return Err(invalid("--vary may be given at most twice"));
    }
    if a.steps == 0 || !(a.grid_min <= a.grid_max) {
        return Err(invalid("grid needs --steps >= 1 and --grid-min <= --grid-max"));
    }
    let values = Axis::linear(a.grid_min, a.grid_max, a.steps).values();
    let mut axes = Vec::new();
    for v in &a.vary {
        let q: Quadrature = v.parse()?;
        if q.index() >= base.len() {
            return Err(invalid(format!("quadrature {q} is out of range for {} modes", spec.modes())));
        }
        axes.push((q, values.clone()));
    }
    let mut out = open_output(&a.output.out, stdout)?;
    let rows = evaluate_slice(&spec, &WignerSlice { base, axes })?;
    write_wigner_csv(&mut out, &rows)?;
    out.flush()?;
    Ok(())
}

fn scan(a: ScanArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let (branch, s_axis, j_axis) = match a.figure {
        Some(k) => {
            if a.branch.is_some() || a.s_min.is_some() || a.s_max.is_some() || a.j_min.is_some() || a.j_max.is_some() {
                return Err(invalid("--figure fixes the grid; drop --branch and the range flags"));
            }
            let p = figure_preset(k)?;
            let (s_axis, j_axis) = match a.steps {
                Some(n) => (Axis { steps: n, ..p.s_axis }, Axis { steps: n, ..p.j_axis }),
                None => (p.s_axis, p.j_axis),
            };
            (p.branch, s_axis, j_axis)
        }
        None => {
            let branch: Branch = a.branch.as_deref().unwrap_or_default().parse()?;
            let steps = a.steps.unwrap_or(200);
            let (Some(s_min), Some(s_max)) = (a.s_min, a.s_max) else {
                return Err(invalid("--s-min and --s-max are required without --figure"));
            };
            let j_min = a.j_min.unwrap_or(0.0);
            let j_max = a.j_max.unwrap_or(1.0);
            let j_axis = match a.j_spacing.unwrap_or(JSpacing::Linear) {
                JSpacing::Linear => Axis::linear(j_min, j_max, steps),
                JSpacing::Geometric => Axis { min: j_min, max: j_max, steps, spacing: Spacing::Geometric },
            };
            (branch, Axis::linear(s_min, s_max, steps), j_axis)
        }
    };
    s_axis.validate()?;
    j_axis.validate()?;
    check_s_range(branch, s_axis.min, s_axis.max)?;
    let mut out = open_output(&a.output.out, stdout)?;
    let surface = scan_surface(branch, &s_axis, &j_axis)?;
    if a.output.format == Some(Format::Json) {
        let rows: Vec<_> = surface
            .rows
            .iter()
            .map(|r| json!({ "s": r.s, "J": r.j, "B": r.b, "regime": r.regime }))
            .collect();
        let (max, si, ji) = surface.max_cell();
        write_json(
            &mut *out,
            &json!({ "branch": branch, "max": max, "argmax": [surface.s_values[si], surface.j_values[ji]], "rows": rows }),
        )?;
    } else {
        write_bell_csv(&mut out, &surface)?;
    }
    out.flush()?;
    Ok(())
}

fn check_s_range(branch: Branch, lo: f64, hi: f64) -> CliResult<()> {
    let mut singular = vec![(1.0, "1")];
    if branch.modes() == 3 {
        singular.push((2f64.sqrt(), "sqrt(2)"));
    }
    if lo <= 1.0 {
        return Err(invalid(format!("s range must lie above the singular value s = 1 (got s-min {lo})")));
    }
    for (s0, name) in singular {
        if lo - 1e-6 < s0 && s0 < hi + 1e-6 {
            return Err(invalid(format!("s range [{lo}, {hi}] touches the singular value s = {name}")));
        }
    }
    Ok(())
}

fn chsh_max(a: MaxArgs, stdout: &mut dyn Write) -> CliResult<()> {
    only_json(&a.output)?;
    let branch: Branch = a.branch.parse()?;
    let (s_min, s_max) = match (a.s, a.s_min, a.s_max) {
        (Some(s), _, _) => (s, s),
        (None, Some(lo), Some(hi)) => (lo, hi),
        _ => return Err(invalid("give --s or both --s-min and --s-max")),
    };
    if a.steps < 2 {
        return Err(invalid("--steps must be at least 2"));
    }
    check_s_range(branch, s_min, s_max)?;
    let s_axis = if s_min == s_max { Axis::fixed(s_min) } else { Axis::linear(s_min, s_max, a.steps.min(41)) };
    let mut opts = MaximizeOptions::default();
    let domain = if branch == Branch::General {
        if !(a.amp_max > 0.0) {
            return Err(invalid("--amp-max must be positive"));
        }
        let mut d = vec![s_axis];
        d.extend((0..6).map(|_| Axis::linear(-a.amp_max, a.amp_max, 3)));
        // Seed with the best real-pair configuration.
        let real = maximize_bell(
            &Objective::new(Branch::RealPair),
            &[s_axis, Axis::geometric(1e-9, 1.0, 200)],
            &MaximizeOptions::default(),
        )?;
        let amp = (real.argmax[1] / 2.0).sqrt().min(a.amp_max);
        opts.extra_seeds.push(vec![real.argmax[0], -amp, 0.0, amp, 0.0, 0.0, 0.0]);
        d
    } else {
        if !(a.j_min >= 0.0 && a.j_min < a.j_max) {
            return Err(invalid("need 0 <= --j-min < --j-max"));
        }
        let lo = if a.j_min > 0.0 { a.j_min } else { a.j_max * 1e-9 };
        vec![s_axis, Axis::geometric(lo, a.j_max, a.steps)]
    };
    let mut out = open_output(&a.output.out, stdout)?;
    let rep = maximize_bell(&Objective::new(branch), &domain, &opts)?;
    write_json(&mut *out, &serde_json::to_value(&rep).map_err(|e| CliError::Numerical(e.to_string()))?)?;
    out.flush()?;
    Ok(())
}

fn oracle_compare(a: OracleArgs, stdout: &mut dyn Write) -> CliResult<()> {
    only_json(&a.output)?;
    let spec = build_spec(&a.state)?;
    let pt = parse_point(&a.point, spec.modes())?;
    let mut out = open_output(&a.output.out, stdout)?;
    let engine = wigner_displaced_parity(&spec, &pt)?;
    let scale = (std::f64::consts::PI / 2.0).powi(spec.modes() as i32);
    let closed = closed_route(&spec, &pt).ok();
    let oracle = parity_expectation_oracle(&spec, &pt, a.cutoff)?;
    let mut v = json!({
        "point": pt.quadratures(),
        "cutoff": a.cutoff,
        "engine_parity": engine.parity,
        "closed_parity": closed.map(|c| c.parity),
        "oracle_parity": oracle.parity,
        "oracle_imag": oracle.imag,
        "tail_estimate": oracle.tail_estimate,
        "abs_diff_engine_oracle": (engine.parity - oracle.parity).abs(),
        "oracle_W": oracle.parity / scale,
        "regime": engine.regime,
    });
    if a.residuals {
        let StateFamily::Epr { s, eta } = spec.family() else {
            return Err(invalid("--residuals needs an EPR state (--s)"));
        };
        let rels = eigen_relations(spec.modes(), Regulator::new(*s)?, eta)?;
        let res: Vec<_> = rels
            .iter()
            .map(|r| eigen_residual(&spec, r, a.cutoff).map(|rep| json!({ "family": r.family, "residual": rep.residual_norm })))
            .collect::<Result<_, _>>()?;
        v["residuals"] = json!(res);
    }
    write_json(&mut *out, &v)?;
    out.flush()?;
    Ok(())
}

fn configure_threads() -> CliResult<()> {
    if let Ok(v) = std::env::var("CV_EPR_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| invalid(format!("CV_EPR_THREADS must be a positive integer, got '{v}'")))?;
        // A pool that is already initialised keeps its size.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> CliResult<()> {
    configure_threads()?;
    match cli.command {
        Command::StateInfo(a) => state_info(a, out),
        Command::WignerEval(a) => wigner_eval(a, out),
        Command::WignerGrid(a) => wigner_grid(a, out),
        Command::ChshScan(a) => scan(a, out),
        Command::ChshMax(a) => chsh_max(a, out),
        Command::OracleCompare(a) => oracle_compare(a, out),
    }
}

/// Runs the CLI on `argv` (including the program name) with the process
/// streams and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let code = run_with(argv, &mut out, &mut io::stderr());
    let _ = out.flush();
    code
}

/// Like [`run`], writing to the given streams instead. Files named by
/// `--out` are still written to disk.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return 2;
            }
            let _ = write!(out, "{}", e.render());
            return 0;
        }
    };
    match dispatch(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "{}", e.to_json());
            e.code()
        }
    }
}

/// CSV header of `wigner-grid` output.
pub const WIGNER_HEADER: &str = WIGNER_CSV_HEADER;

/// Float formatting shared by all CSV outputs.
pub fn format_float(x: f64) -> String {
    fmt_f64(x)
}
