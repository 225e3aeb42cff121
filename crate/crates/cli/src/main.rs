//! `oscint`: boundary-integral and eigenvalue experiments on strictly convex
//! planar curves given by support functions.

// negated comparisons like !(x > 0.0) reject NaN, which x <= 0.0 would admit
#![allow(clippy::neg_cmp_op_on_partial_ord)]


use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use oscint_core::helmholtz::{self, EigenKind, EigenScanConfig};
use oscint_core::opcalc::{self, ExpansionMode};
use oscint_core::planewave::{self, IntegralKind, PlaneWaveParams, ScanOptions};
use oscint_core::quad;
use oscint_core::specfun;
use oscint_core::stphase::{self, BranchSigns, Conventions, L1Signs};

use oscint::config;
use oscint::curvefile;
use oscint::par;
use oscint::report::{Report, Value};

#[derive(Parser)]
#[command(
    name = "oscint",
    version,
    about = "Oscillatory boundary integrals, operator calculus tables, plane-wave rigidity \
             scans and Helmholtz eigen experiments on convex support-function curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Report format (default csv)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// JSON config file supplying defaults for tunable flags
    /// (precedence: flags > config > defaults)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Dirichlet,
    Neumann,
}

impl KindArg {
    fn integral(self) -> IntegralKind {
        match self {
            KindArg::Dirichlet => IntegralKind::Dirichlet,
            KindArg::Neumann => IntegralKind::Neumann,
        }
    }
    fn eigen(self) -> EigenKind {
        match self {
            KindArg::Dirichlet => EigenKind::Dirichlet,
            KindArg::Neumann => EigenKind::Neumann,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Emit the Leibniz-type coefficient table d_k^n as CSV (n, k, d)
    Leibniz {
        #[arg(long)]
        nmax: usize,
        /// Run the brute-force equivalence and identity suite (exit 2 on any
        /// mismatch)
        #[arg(long)]
        check: bool,
    },
    /// Stationary-phase convergence scan over a lambda grid
    Phase(PhaseArgs),
    /// Plane-wave boundary integral scans
    Planewave {
        #[command(subcommand)]
        sub: PlanewaveCmd,
    },
    /// Helmholtz eigen scan with overdetermined deviation metrics
    Eigen(EigenArgs),
    /// Width, symmetry and circle certificate of a curve
    Geometry {
        #[arg(long)]
        curve: PathBuf,
        /// Relative tolerance for the certificate predicates (default 1e-10)
        #[arg(long)]
        tol: Option<f64>,
    },
    /// End-to-end rigidity composition: plane-wave sweep + eigen window scan
    Rigidity(RigidityArgs),
    /// Special-function identity suite
    Selftest,
}

#[derive(Args)]
struct PhaseArgs {
    #[arg(long)]
    curve: PathBuf,
    /// Wave direction xi in radians
    #[arg(long)]
    direction: f64,
    /// Exponential tilt t
    #[arg(long)]
    t: f64,
    /// Grid spec A:B:*K (geometric) or A:B:+K (arithmetic)
    #[arg(long = "lambda-grid")]
    lambda_grid: String,
    /// Uniform-sign L1 bracket (literal reproduction; fails the order test)
    #[arg(long = "paper-signs")]
    paper_signs: bool,
    /// Uniform (2 pi i)^{1/2} branch at both critical points
    #[arg(long = "paper-branch")]
    paper_branch: bool,
    /// Run even when every grid lambda violates e^{2 gamma t} <= sqrt(lambda)
    #[arg(long = "allow-inadmissible")]
    allow_inadmissible: bool,
}

#[derive(Subcommand)]
enum PlanewaveCmd {
    /// Direction sweep of the boundary integral at fixed alpha
    Scan {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Helmholtz eigenvalue alpha = lambda^2 - t^2
        #[arg(long)]
        alpha: f64,
        /// Comma-separated tilt values, e.g. 1,2
        #[arg(long)]
        t: String,
        /// Number of directions on the uniform grid
        #[arg(long)]
        dirs: usize,
        #[arg(long = "allow-inadmissible")]
        allow_inadmissible: bool,
        /// Verdict tolerance (default 1e-6 * perimeter)
        #[arg(long)]
        tol: Option<f64>,
    },
}

#[derive(Args)]
struct EigenArgs {
    #[arg(long)]
    curve: PathBuf,
    #[arg(long, value_enum)]
    kind: KindArg,
    /// Scan window A:B in alpha
    #[arg(long = "alpha-window")]
    alpha_window: String,
    /// Deviation threshold for an overdetermined hit (default 1e-4)
    #[arg(long = "dev-tol")]
    dev_tol: Option<f64>,
    /// Scan step in alpha (default 0.05)
    #[arg(long)]
    step: Option<f64>,
    /// Fourier-Bessel order cutoff (default 25)
    #[arg(long = "basis-order")]
    basis_order: Option<usize>,
    /// RNG seed for the interior regularization points (default 42)
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct RigidityArgs {
    #[arg(long)]
    curve: PathBuf,
    #[arg(long)]
    alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    t: f64,
    /// Directions on the uniform grid (default 16)
    #[arg(long)]
    dirs: Option<usize>,
    /// Deviation threshold for an overdetermined hit (default 1e-4)
    #[arg(long = "dev-tol")]
    dev_tol: Option<f64>,
    /// Half-width of the eigen scan window around alpha (default 1.0)
    #[arg(long)]
    window: Option<f64>,
    /// RNG seed (default 42)
    #[arg(long)]
    seed: Option<u64>,
}

/// Errors carry their process exit code: 1 invalid input, 2 numerical.
struct CmdError {
    code: u8,
    message: String,
}

impl CmdError {
    fn invalid(message: impl Into<String>) -> Self {
        CmdError {
            code: 1,
            message: message.into(),
        }
    }
    fn numerical(message: impl Into<String>) -> Self {
        CmdError {
            code: 2,
            message: message.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // help/version are not errors
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let file_cfg = match &cli.config {
        None => config::ConfigFile::default(),
        Some(path) => match config::load(path) {
            Ok(c) => c,
            Err(msg) => {
                eprintln!("oscint: {msg}");
                return ExitCode::from(1);
            }
        },
    };
    let (report, code) = match run(&cli.command, &file_cfg) {
        Ok(pair) => pair,
        Err(e) => {
            eprintln!("oscint: {}", e.message);
            return ExitCode::from(e.code);
        }
    };
    let format_cfg = file_cfg.format.as_deref().map(|f| match f {
        "json" => Format::Json,
        _ => Format::Csv,
    });
    let text = match config::resolve(cli.format, format_cfg, Format::Csv) {
        Format::Csv => report.emit_csv(),
        Format::Json => report.emit_json(),
    };
    match &cli.output {
        None => print!("{text}"),
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("oscint: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
    }
    ExitCode::from(code)
}

fn run(cmd: &Command, cfg: &config::ConfigFile) -> Result<(Report, u8), CmdError> {
    match cmd {
        Command::Leibniz { nmax, check } => leibniz(*nmax, *check),
        Command::Phase(args) => phase(args),
        Command::Planewave { sub } => match sub {
            PlanewaveCmd::Scan {
                curve,
                kind,
                alpha,
                t,
                dirs,
                allow_inadmissible,
                tol,
            } => planewave_scan(
                curve,
                *kind,
                *alpha,
                t,
                *dirs,
                *allow_inadmissible,
                tol.or(cfg.tol),
            ),
        },
        Command::Eigen(args) => eigen(args, cfg),
        Command::Geometry { curve, tol } => {
            geometry(curve, config::resolve(*tol, cfg.tol, 1e-10))
        }
        Command::Rigidity(args) => rigidity(args, cfg),
        Command::Selftest => selftest(),
    }
}

// ---------------------------------------------------------------------------

fn leibniz(nmax: usize, check: bool) -> Result<(Report, u8), CmdError> {
    if nmax == 0 || nmax > 30 {
        return Err(CmdError::invalid("nmax must be in 1..=30"));
    }
    let table = opcalc::leibniz_table(nmax);
    let mut report = Report::new(&["n", "k", "d"]);
    for (n, k, d) in table.rows() {
        report.push_row(vec![
            Value::Int(n as i64),
            Value::Int(k as i64),
            Value::Int(d),
        ]);
    }
    if !check {
        return Ok((report, 0));
    }
    match leibniz_check(nmax) {
        Ok(()) => {
            report.comment("all checks passed");
            Ok((report, 0))
        }
        Err(msg) => {
            report.comment(format!("CHECK FAILED: {msg}"));
            Ok((report, 2))
        }
    }
}

fn leibniz_check(nmax: usize) -> Result<(), String> {
    let table = opcalc::leibniz_table(nmax.max(5));
    // displayed low-order expansions
    let displayed: [(usize, &[i64]); 3] = [
        (3, &[1, 6, 12, 8]),
        (4, &[1, 8, 24, 32, 16]),
        (5, &[1, 10, 40, 80, 80, 32]),
    ];
    for (n, want) in displayed {
        for (k, w) in want.iter().enumerate() {
            if table.get(k + 1, n) != *w {
                return Err(format!("d_{}^{} = {} != {}", k + 1, n, table.get(k + 1, n), w));
            }
        }
    }
    // identities up to nmax
    for n in 1..=nmax {
        if table.get(2, n) != 2 * n as i64 {
            return Err(format!("d_2^{n} != 2n"));
        }
        if table.get(n + 1, n) != 1i64 << n {
            return Err(format!("d_(n+1)^{n} != 2^n"));
        }
        let mut acc = 0i64;
        for k in 1..=n + 1 {
            acc += table.get(k, n) << (n + 1 - k);
        }
        if acc != 1i64 << (2 * n) {
            return Err(format!("exponential sum identity fails at n = {n}"));
        }
    }
    // formula vs brute force on random rational pairs
    let mut state = 42u64;
    let mut rng = move || {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        ((state >> 11) as f64) / ((1u64 << 53) as f64)
    };
    for n_vars in 1..=3usize {
        for _ in 0..5 {
            let u = random_poly(&mut rng, n_vars);
            let v = random_poly(&mut rng, n_vars);
            let kk = random_curvatures(&mut rng, n_vars);
            for n in 1..=nmax.min(opcalc::MAX_EXPANSION_ORDER) {
                let a = opcalc::expand_box_power(&u, &v, n, &kk, ExpansionMode::Formula)
                    .map_err(|e| e.to_string())?;
                let b = opcalc::expand_box_power(&u, &v, n, &kk, ExpansionMode::BruteForce)
                    .map_err(|e| e.to_string())?;
                if a != b {
                    return Err(format!(
                        "formula/bruteforce mismatch at n = {n}, n_vars = {n_vars}"
                    ));
                }
            }
        }
    }
    Ok(())
}

fn random_poly(rng: &mut impl FnMut() -> f64, n_vars: usize) -> opcalc::MultiPoly {
    let mut p = opcalc::MultiPoly::zero(n_vars).unwrap();
    let terms = 2 + (rng() * 4.0) as usize;
    for _ in 0..terms {
        let mut e = [0u16; 3];
        for slot in e.iter_mut().take(n_vars) {
            *slot = (rng() * 3.0) as u16;
        }
        let num = (rng() * 19.0) as i64 - 9;
        let den = 1 + (rng() * 9.0) as i64;
        p.add_term(e, opcalc::rat(if num == 0 { 1 } else { num }, den));
    }
    if p.is_zero() {
        p.add_term([1, 0, 0], opcalc::rat(1, 1));
    }
    p
}

fn random_curvatures(rng: &mut impl FnMut() -> f64, n_vars: usize) -> opcalc::Curvatures {
    let ks = (0..n_vars)
        .map(|_| {
            let num = (rng() * 11.0) as i64 - 5;
            opcalc::rat(if num == 0 { 3 } else { num }, 1 + (rng() * 4.0) as i64)
        })
        .collect();
    opcalc::Curvatures::new(ks).unwrap()
}

// ---------------------------------------------------------------------------

fn parse_grid(spec: &str) -> Result<Vec<f64>, CmdError> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(CmdError::invalid(format!(
            "grid spec must be A:B:*K or A:B:+K, got {spec}"
        )));
    }
    let a: f64 = parts[0]
        .parse()
        .map_err(|_| CmdError::invalid("bad grid start"))?;
    let b: f64 = parts[1]
        .parse()
        .map_err(|_| CmdError::invalid("bad grid end"))?;
    if !(a > 0.0 && b >= a) {
        return Err(CmdError::invalid("grid needs 0 < A <= B"));
    }
    let step = parts[2];
    let mut grid = Vec::new();
    let mut x = a;
    if let Some(k) = step.strip_prefix('*') {
        let k: f64 = k.parse().map_err(|_| CmdError::invalid("bad grid factor"))?;
        if k <= 1.0 {
            return Err(CmdError::invalid("geometric factor must exceed 1"));
        }
        while x <= b * (1.0 + 1e-12) {
            grid.push(x);
            x *= k;
        }
    } else if let Some(k) = step.strip_prefix('+') {
        let k: f64 = k.parse().map_err(|_| CmdError::invalid("bad grid step"))?;
        if k <= 0.0 {
            return Err(CmdError::invalid("arithmetic step must be positive"));
        }
        while x <= b * (1.0 + 1e-12) {
            grid.push(x);
            x += k;
        }
    } else {
        return Err(CmdError::invalid("grid step must start with '*' or '+'"));
    }
    if grid.len() < 4 {
        return Err(CmdError::invalid("lambda grid needs at least 4 points"));
    }
    Ok(grid)
}

fn phase(args: &PhaseArgs) -> Result<(Report, u8), CmdError> {
    let curve = curvefile::load_curve(&args.curve).map_err(CmdError::invalid)?;
    let grid = parse_grid(&args.lambda_grid)?;
    let conv = Conventions {
        l1: if args.paper_signs {
            L1Signs::Uniform
        } else {
            L1Signs::Alternating
        },
        branch: if args.paper_branch {
            BranchSigns::Uniform
        } else {
            BranchSigns::PerPoint
        },
    };
    let gamma = planewave::gamma_of(&curve);
    let any_ok = grid
        .iter()
        .any(|&l| (2.0 * gamma * args.t).exp() <= l.sqrt());
    if !any_ok && !args.allow_inadmissible {
        return Err(CmdError::invalid(format!(
            "every grid lambda violates e^(2 gamma t) <= sqrt(lambda) (gamma = {gamma}); \
             pass --allow-inadmissible to force"
        )));
    }

    struct RowOut {
        lambda: f64,
        abs_integral: f64,
        resid_l0: f64,
        resid_l01: f64,
        err: Option<String>,
    }
    let rows = par::parallel_map(grid.len(), |i| {
        let lambda = grid[i];
        let go = || -> Result<RowOut, String> {
            let params = PlaneWaveParams::from_lambda_direction(lambda, args.t, args.direction)
                .map_err(|e| e.to_string())?;
            let integral =
                planewave::boundary_integral(&curve, &params, IntegralKind::Dirichlet, 64)
                    .map_err(|e| e.to_string())?;
            let l0 = stphase::two_point_leading(&curve, &params, conv).map_err(|e| e.to_string())?;
            let l01 = stphase::two_point_surrogate_with(&curve, &params, conv)
                .map_err(|e| e.to_string())?;
            Ok(RowOut {
                lambda,
                abs_integral: integral.norm(),
                resid_l0: (integral - l0).norm(),
                resid_l01: (integral - l01).norm(),
                err: None,
            })
        };
        go().unwrap_or_else(|e| RowOut {
            lambda,
            abs_integral: f64::NAN,
            resid_l0: f64::NAN,
            resid_l01: f64::NAN,
            err: Some(e),
        })
    });
    if let Some(bad) = rows.iter().find_map(|r| r.err.clone()) {
        return Err(CmdError::numerical(bad));
    }

    let mut report = Report::new(&["lambda", "abs_integral", "resid_L0", "resid_L01"]);
    for r in &rows {
        report.push_row(vec![
            Value::F64(r.lambda),
            Value::F64(r.abs_integral),
            Value::F64(r.resid_l0),
            Value::F64(r.resid_l01),
        ]);
    }
    let pts0: Vec<(f64, f64)> = rows.iter().map(|r| (r.lambda, r.resid_l0)).collect();
    let pts1: Vec<(f64, f64)> = rows.iter().map(|r| (r.lambda, r.resid_l01)).collect();
    let s0 = quad::loglog_slope(&pts0, stphase::SLOPE_FIT_SKIP);
    let s1 = quad::loglog_slope(&pts1, stphase::SLOPE_FIT_SKIP);
    report.comment(format!("slope_L0 = {s0:?}"));
    report.comment(format!("slope_L01 = {s1:?}"));
    report.comment(format!("gamma = {gamma:?}"));
    if args.paper_signs {
        report.comment("conventions: uniform-sign L1 bracket (reproduction mode)");
    }
    if args.paper_branch {
        report.comment("conventions: uniform branch factor (reproduction mode)");
    }
    Ok((report, 0))
}

// ---------------------------------------------------------------------------

fn planewave_scan(
    curve_path: &Path,
    kind: KindArg,
    alpha: f64,
    t_list: &str,
    dirs: usize,
    allow_inadmissible: bool,
    tol: Option<f64>,
) -> Result<(Report, u8), CmdError> {
    let curve = curvefile::load_curve(curve_path).map_err(CmdError::invalid)?;
    if !(alpha > 0.0) {
        return Err(CmdError::invalid("alpha must be positive"));
    }
    if dirs == 0 {
        return Err(CmdError::invalid("dirs must be positive"));
    }
    let mut params_grid = Vec::new();
    for part in t_list.split(',') {
        let t: f64 = part
            .trim()
            .parse()
            .map_err(|_| CmdError::invalid(format!("bad t value {part}")))?;
        params_grid.push(((alpha + t * t).sqrt(), t));
    }
    let report_core = planewave::rigidity_scan(
        &curve,
        kind.integral(),
        &params_grid,
        dirs,
        ScanOptions {
            allow_inadmissible,
            tol,
        },
    )
    .map_err(|e| match e {
        planewave::PlanewaveError::InadmissibleParams { .. } => CmdError::invalid(e.to_string()),
        planewave::PlanewaveError::InvalidParams { .. }
        | planewave::PlanewaveError::InvalidOrder { .. } => CmdError::invalid(e.to_string()),
        other => CmdError::numerical(other.to_string()),
    })?;

    let mut report = Report::new(&[
        "dir_rad",
        "lambda",
        "t",
        "re_int",
        "im_int",
        "abs_int",
        "abs_surrogate",
        "abs_resid",
        "resid_times_lambda",
        "admissible",
    ]);
    for row in &report_core.rows {
        report.push_row(vec![
            Value::F64(row.dir_rad),
            Value::F64(row.lambda),
            Value::F64(row.t),
            Value::F64(row.integral.re),
            Value::F64(row.integral.im),
            Value::F64(row.integral.norm()),
            Value::F64(row.abs_surrogate),
            Value::F64(row.abs_resid),
            Value::F64(row.resid_times_lambda),
            Value::Bool(row.admissible),
        ]);
    }
    report.comment(format!(
        "verdict = {} (tol = {:?}, max_abs_integral = {:?})",
        report_core.verdict.as_str(),
        report_core.tol,
        report_core.max_abs_integral
    ));
    if let Some(w) = report_core.witness_dir {
        report.comment(format!("witness_dir_rad = {w:?}"));
    }
    report.comment(format!("gamma = {:?}", report_core.gamma));
    Ok((report, 0))
}

// ---------------------------------------------------------------------------

fn parse_window(spec: &str) -> Result<(f64, f64), CmdError> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 2 {
        return Err(CmdError::invalid("alpha window must be A:B"));
    }
    let a: f64 = parts[0]
        .parse()
        .map_err(|_| CmdError::invalid("bad window start"))?;
    let b: f64 = parts[1]
        .parse()
        .map_err(|_| CmdError::invalid("bad window end"))?;
    if !(a > 0.0 && b > a) {
        return Err(CmdError::invalid("window needs 0 < A < B"));
    }
    Ok((a, b))
}

fn eigen(args: &EigenArgs, file_cfg: &config::ConfigFile) -> Result<(Report, u8), CmdError> {
    let curve = curvefile::load_curve(&args.curve).map_err(CmdError::invalid)?;
    let (a, b) = parse_window(&args.alpha_window)?;
    let dev_tol = config::resolve(args.dev_tol, file_cfg.dev_tol, 1e-4);
    let basis_order = config::resolve(args.basis_order, file_cfg.basis_order, 25);
    let seed = config::resolve(args.seed, file_cfg.seed, 42);
    let mut cfg = EigenScanConfig::window(a, b);
    cfg.scan_step = config::resolve(args.step, file_cfg.step, 0.05);
    cfg.basis_order = basis_order;
    cfg.boundary_nodes = 4 * basis_order;
    cfg.interior_points = 2 * basis_order;
    cfg.seed = seed;
    let modes = helmholtz::eigen_scan(&curve, args.kind.eigen(), &cfg).map_err(|e| match e {
        helmholtz::HelmholtzError::BadConfig { .. } => CmdError::invalid(e.to_string()),
        other => CmdError::numerical(other.to_string()),
    })?;
    let mut report = Report::new(&["alpha", "multiplicity", "deviation"]);
    for m in &modes {
        report.push_row(vec![
            Value::F64(m.alpha),
            Value::Int(m.multiplicity as i64),
            Value::F64(m.deviation),
        ]);
    }
    let verdict = helmholtz::verdict_for_modes(&curve, args.kind.eigen(), modes, dev_tol)
        .map_err(|e| CmdError::numerical(e.to_string()))?;
    for hit in &verdict.hits {
        report.comment(format!(
            "hit: alpha = {:?}, deviation = {:?}, cross_max_integral = {:?}, cross_ok = {}",
            hit.alpha, hit.deviation, hit.cross_max_integral, hit.cross_ok
        ));
    }
    report.comment(format!("verdict = {}", verdict.verdict.as_str()));
    if let Some(d) = verdict.min_deviation {
        report.comment(format!("min_deviation = {d:?}"));
    }
    report.comment(format!("seed = {seed}"));
    Ok((report, 0))
}

// ---------------------------------------------------------------------------

fn geometry(curve_path: &Path, tol: f64) -> Result<(Report, u8), CmdError> {
    let curve = curvefile::load_curve(curve_path).map_err(CmdError::invalid)?;
    let cert = curve.symmetry_and_circle_certificate(tol);
    let width = curve.width_profile(1024, tol);
    let mut report = Report::new(&[
        "centrally_symmetric",
        "constant_width",
        "is_circle",
        "center_x",
        "center_y",
        "w_min",
        "w_max",
        "breadth",
        "perimeter",
    ]);
    report.push_row(vec![
        Value::Bool(cert.centrally_symmetric),
        Value::Bool(cert.constant_width),
        Value::Bool(cert.is_circle),
        Value::F64(cert.center.x),
        Value::F64(cert.center.y),
        Value::F64(width.w_min),
        Value::F64(width.w_max),
        Value::F64(width.breadth),
        Value::F64(curve.perimeter()),
    ]);
    report.comment(format!(
        "certificate: centrally_symmetric={} constant_width={} is_circle={}",
        cert.centrally_symmetric, cert.constant_width, cert.is_circle
    ));
    report.comment(format!(
        "max_odd_harmonic = {:?}, max_even_harmonic = {:?}, tol = {tol:?}",
        cert.max_odd_harmonic, cert.max_even_harmonic
    ));
    Ok((report, 0))
}

// ---------------------------------------------------------------------------

fn rigidity(args: &RigidityArgs, file_cfg: &config::ConfigFile) -> Result<(Report, u8), CmdError> {
    let curve = curvefile::load_curve(&args.curve).map_err(CmdError::invalid)?;
    if !(args.alpha > 0.0) {
        return Err(CmdError::invalid("alpha must be positive"));
    }
    let dirs = config::resolve(args.dirs, file_cfg.dirs, 16);
    let dev_tol = config::resolve(args.dev_tol, file_cfg.dev_tol, 1e-4);
    let window = config::resolve(args.window, file_cfg.window, 1.0);
    let seed = config::resolve(args.seed, file_cfg.seed, 42);
    let lambda = (args.alpha + args.t * args.t).sqrt();
    let pw = planewave::rigidity_scan(
        &curve,
        IntegralKind::Dirichlet,
        &[(lambda, args.t)],
        dirs,
        ScanOptions {
            allow_inadmissible: true,
            tol: file_cfg.tol,
        },
    )
    .map_err(|e| CmdError::numerical(e.to_string()))?;

    let lo = (args.alpha - window).max(0.25 * args.alpha);
    let hi = args.alpha + window;
    let mut cfg = EigenScanConfig::window(lo, hi);
    cfg.seed = seed;
    let modes = match helmholtz::eigen_scan(&curve, EigenKind::Dirichlet, &cfg) {
        Ok(m) => m,
        Err(helmholtz::HelmholtzError::NoDipFound)
        | Err(helmholtz::HelmholtzError::IllConditioned { .. }) => Vec::new(),
        Err(e) => return Err(CmdError::numerical(e.to_string())),
    };

    let mut report = Report::new(&[
        "dir_rad",
        "lambda",
        "t",
        "re_int",
        "im_int",
        "abs_int",
        "abs_surrogate",
        "abs_resid",
        "resid_times_lambda",
        "admissible",
    ]);
    for row in &pw.rows {
        report.push_row(vec![
            Value::F64(row.dir_rad),
            Value::F64(row.lambda),
            Value::F64(row.t),
            Value::F64(row.integral.re),
            Value::F64(row.integral.im),
            Value::F64(row.integral.norm()),
            Value::F64(row.abs_surrogate),
            Value::F64(row.abs_resid),
            Value::F64(row.resid_times_lambda),
            Value::Bool(row.admissible),
        ]);
    }
    report.comment(format!(
        "planewave: verdict = {}, max_abs_integral = {:?}, tol = {:?}",
        pw.verdict.as_str(),
        pw.max_abs_integral,
        pw.tol
    ));
    let mut best_hit: Option<(f64, f64)> = None;
    let mut min_dev: Option<f64> = None;
    for m in &modes {
        report.comment(format!(
            "eigen mode: alpha = {:?}, multiplicity = {}, deviation = {:?}",
            m.alpha, m.multiplicity, m.deviation
        ));
        min_dev = Some(min_dev.map_or(m.deviation, |d: f64| d.min(m.deviation)));
        if m.deviation < dev_tol && best_hit.is_none() {
            best_hit = Some((m.alpha, m.deviation));
        }
    }
    if modes.is_empty() {
        report.comment("eigen: no modes found in window");
    }
    let verdict = if pw.verdict != planewave::Verdict::DiskConsistent {
        "NOT-DISK"
    } else if best_hit.is_some() {
        "DISK-CONSISTENT"
    } else {
        "NO-OVERDETERMINED-MODE-IN-WINDOW"
    };
    if let Some((a, d)) = best_hit {
        report.comment(format!(
            "overdetermined hit: alpha = {a:?}, deviation = {d:?}"
        ));
    }
    if let Some(d) = min_dev {
        report.comment(format!("min_deviation = {d:?}"));
    }
    report.comment(format!("seed = {seed}"));
    report.comment(format!("verdict = {verdict}"));
    Ok((report, 0))
}

// ---------------------------------------------------------------------------

fn selftest() -> Result<(Report, u8), CmdError> {
    let checks = specfun::selftest();
    let mut report = Report::new(&["name", "worst", "tolerance", "pass"]);
    let mut all_ok = true;
    for c in &checks {
        all_ok &= c.pass;
        report.push_row(vec![
            Value::Str(c.name.clone()),
            Value::F64(c.worst),
            Value::F64(c.tolerance),
            Value::Bool(c.pass),
        ]);
    }
    if all_ok {
        report.comment("all identities passed");
        Ok((report, 0))
    } else {
        report.comment("IDENTITY SUITE FAILED");
        Ok((report, 2))
    }
}
