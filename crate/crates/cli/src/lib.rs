//! Command-line front end: `approx`, `carrier`, `chain`, `integrate`,
//! `verify` and `wind`.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 refusal (containment or
//! clearance not certified), 3 failed check (deviation, certificate or
//! quadrature tolerance).

pub mod builtin;
pub mod output;
pub mod spec;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path as FsPath, PathBuf};
use std::sync::Arc;

use cauchy_chain::{
    build_chain, carrier_of_path, contour_integral, dist_to_carrier, inflate_contains, parse_function,
    polygonal_approximation, quantize_winding, star_null_homotopy, verify_homotopy_invariance, verify_null_homotopic,
    winding_integral, AnalyticFunction, DomainDescriptor, Error, PiecewisePath,
};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use builtin::{parse_domain, parse_path, parse_point, parse_point_list, SyntaxError};
use output::{chain_csv, complex_json, fmt_complex, path_csv, points_csv};
use spec::{ResolvedHomotopy, ResolvedSpec, SpecDocument};

pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Parser)]
#[command(
    name = "cauchy-chain",
    version,
    about = "Certified homotopy chains and contour integrals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Polygonal approximation of a closed path
    Approx(ApproxArgs),
    /// Finite net of a path's carrier
    Carrier(CarrierArgs),
    /// Build a certified chain along a homotopy
    Chain(ChainArgs),
    /// Contour integral of f along a path
    Integrate(IntegrateArgs),
    /// Check that integrals agree along a certified chain
    Verify(VerifyArgs),
    /// Winding number of a closed path about a point
    Wind(WindArgs),
}

#[derive(Debug, Args)]
struct Source {
    /// TOML spec document
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Built-in path, or the name of a path in the spec
    #[arg(long)]
    path: Option<String>,
}

#[derive(Debug, Args)]
struct Outputs {
    /// Write CSV to this file
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print a JSON summary instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct FunctionArgs {
    /// Expression in z
    #[arg(long = "f")]
    f: Option<String>,
    /// Comma-separated singularities of f
    #[arg(long, allow_hyphen_values = true)]
    poles: Option<String>,
    /// Quadrature tolerance
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Debug, Args)]
struct HomotopyArgs {
    /// Contract --path onto this point instead of using the spec's homotopy
    #[arg(long, allow_hyphen_values = true)]
    center: Option<String>,
    /// Domain such as annulus(0, 0.25, 3)
    #[arg(long)]
    domain: Option<String>,
}

#[derive(Debug, Args)]
struct ApproxArgs {
    #[command(flatten)]
    source: Source,
    /// Target sup distance; the polyline is certified within 2/3 of it
    #[arg(long)]
    eps: Option<f64>,
    #[command(flatten)]
    outputs: Outputs,
}

#[derive(Debug, Args)]
struct CarrierArgs {
    #[command(flatten)]
    source: Source,
    /// Net resolution
    #[arg(long)]
    eta: f64,
    /// Report distance bounds from this point
    #[arg(long, allow_hyphen_values = true)]
    at: Option<String>,
    /// With --at, test membership in the r-inflation of the carrier
    #[arg(long)]
    inflate: Option<f64>,
    #[command(flatten)]
    outputs: Outputs,
}

#[derive(Debug, Args)]
struct ChainArgs {
    #[command(flatten)]
    source: Source,
    #[command(flatten)]
    homotopy: HomotopyArgs,
    #[command(flatten)]
    outputs: Outputs,
}

#[derive(Debug, Args)]
struct IntegrateArgs {
    #[command(flatten)]
    source: Source,
    #[command(flatten)]
    function: FunctionArgs,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    source: Source,
    #[command(flatten)]
    homotopy: HomotopyArgs,
    #[command(flatten)]
    function: FunctionArgs,
    #[command(flatten)]
    outputs: Outputs,
}

#[derive(Debug, Args)]
struct WindArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, allow_hyphen_values = true)]
    at: String,
    /// Quadrature tolerance
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    json: bool,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Core(Error),
    /// A check ran to completion and did not hold.
    Failed,
}

impl From<SyntaxError> for Failure {
    fn from(e: SyntaxError) -> Self {
        Failure::Usage(e.0)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_refusal() {
        return 2;
    }
    match e {
        Error::CertificateViolation { .. } | Error::ToleranceNotReached { .. } | Error::NonIntegerWinding { .. } => 3,
        Error::ChainMember { source, .. } => exit_code(source),
        _ => 1,
    }
}

type Outcome = Result<(), Failure>;

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let target: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let json = match &cli.command {
        Command::Approx(a) => a.outputs.json,
        Command::Carrier(a) => a.outputs.json,
        Command::Chain(a) => a.outputs.json,
        Command::Integrate(a) => a.json,
        Command::Verify(a) => a.outputs.json,
        Command::Wind(a) => a.json,
    };
    let result = match cli.command {
        Command::Approx(a) => approx(a, stdout),
        Command::Carrier(a) => carrier(a, stdout),
        Command::Chain(a) => chain(a, stdout),
        Command::Integrate(a) => integrate(a, stdout),
        Command::Verify(a) => verify(a, stdout),
        Command::Wind(a) => wind(a, stdout),
    };
    match result {
        Ok(()) => 0,
        Err(Failure::Failed) => 3,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            1
        }
        Err(Failure::Core(e)) => {
            let code = exit_code(&e);
            if json && code != 1 {
                let verdict = if code == 2 { "refused" } else { "fail" };
                let _ = writeln!(stdout, "{}", json!({ "verdict": verdict, "error": e.to_string() }));
            }
            let _ = writeln!(stderr, "error: {e}");
            code
        }
    }
}

fn load_spec(source: &Source) -> Result<Option<ResolvedSpec>, Failure> {
    let Some(file) = &source.spec else { return Ok(None) };
    let text = std::fs::read_to_string(file).map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
    Ok(Some(SpecDocument::parse(&text)?.resolve()?))
}

/// `--path` names a spec path or is built-in syntax; without it, a spec with
/// exactly one path (or a homotopy) supplies the start path.
fn select_path(source: &Source, spec: Option<&ResolvedSpec>) -> Result<Arc<PiecewisePath>, Failure> {
    if let Some(text) = &source.path {
        if let Some(p) = spec.and_then(|s| s.paths.get(text)) {
            return Ok(p.clone());
        }
        return Ok(Arc::new(parse_path(text)?));
    }
    if let Some(spec) = spec {
        if let Some(h) = &spec.homotopy {
            return Ok(h.start.clone());
        }
        if spec.paths.len() == 1 {
            return Ok(spec.paths.values().next().unwrap().clone());
        }
    }
    Err(Failure::Usage("no path given (use --path)".into()))
}

fn select_function(args: &FunctionArgs, spec: Option<&ResolvedSpec>) -> Result<AnalyticFunction, Failure> {
    let poles = args.poles.as_deref().map(parse_point_list).transpose()?;
    match (&args.f, spec.and_then(|s| s.function.as_ref())) {
        (Some(text), _) => Ok(parse_function(text, poles.unwrap_or_default())?),
        (None, Some(f)) => Ok(match poles {
            Some(p) => AnalyticFunction::new(f.expr().clone(), p),
            None => f.clone(),
        }),
        (None, None) => Err(Failure::Usage("no function given (use --f)".into())),
    }
}

fn select_tol(flag: Option<f64>, spec: Option<&ResolvedSpec>) -> f64 {
    flag.or_else(|| spec.and_then(|s| s.tolerances.tol))
        .unwrap_or(DEFAULT_TOL)
}

fn select_domain(args: &HomotopyArgs, spec: Option<&ResolvedSpec>) -> Result<DomainDescriptor, Failure> {
    match (&args.domain, spec.and_then(|s| s.domain.clone())) {
        (Some(text), _) => Ok(parse_domain(text)?),
        (None, Some(d)) => Ok(d),
        (None, None) => Err(Failure::Usage("no domain given (use --domain)".into())),
    }
}

fn select_homotopy(
    source: &Source,
    args: &HomotopyArgs,
    spec: Option<ResolvedSpec>,
) -> Result<(ResolvedHomotopy, DomainDescriptor), Failure> {
    let domain = select_domain(args, spec.as_ref())?;
    if let Some(center) = &args.center {
        let center = parse_point(center)?;
        let start = select_path(source, spec.as_ref())?;
        let sigma = star_null_homotopy(start.clone(), center)?;
        let end = Arc::new(PiecewisePath::constant(center));
        let h = ResolvedHomotopy {
            sigma,
            start,
            end,
            center: Some(center),
        };
        return Ok((h, domain));
    }
    match spec.and_then(|s| s.homotopy) {
        Some(h) => Ok((h, domain)),
        None => Err(Failure::Usage("no homotopy given (use --spec or --center)".into())),
    }
}

fn write_file(path: &FsPath, contents: &str) -> Outcome {
    std::fs::write(path, contents).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn approx(args: ApproxArgs, out: &mut dyn Write) -> Outcome {
    let spec = load_spec(&args.source)?;
    let path = select_path(&args.source, spec.as_ref())?;
    let eps = args
        .eps
        .or_else(|| spec.as_ref().and_then(|s| s.tolerances.eps))
        .ok_or_else(|| Failure::Usage("no tolerance given (use --eps)".into()))?;
    let unit = path.to_unit_interval();
    let a = polygonal_approximation(&unit, eps)?;
    if let Some(file) = &args.outputs.out {
        write_file(file, &path_csv(&a.polyline))?;
    }
    if args.outputs.json {
        let summary = json!({ "eps": eps, "segments": a.segment_count(), "delta": a.delta, "bound": a.bound });
        writeln!(out, "{summary}")?;
    } else {
        writeln!(out, "segments  {}", a.segment_count())?;
        writeln!(out, "delta     {:.16e}", a.delta)?;
        writeln!(out, "bound     {:.16e}", a.bound)?;
    }
    Ok(())
}

fn carrier(args: CarrierArgs, out: &mut dyn Write) -> Outcome {
    let spec = load_spec(&args.source)?;
    let path = select_path(&args.source, spec.as_ref())?;
    let k = carrier_of_path(&*path, args.eta)?;
    if let Some(file) = &args.outputs.out {
        write_file(file, &points_csv(k.net()))?;
    }
    let at = args.at.as_deref().map(parse_point).transpose()?;
    let bounds = at.map(|z| dist_to_carrier(z, &k));
    let membership = match (at, args.inflate) {
        (Some(z), Some(r)) => Some(format!("{:?}", inflate_contains(&k, r, z)).to_lowercase()),
        (None, Some(_)) => return Err(Failure::Usage("--inflate needs --at".into())),
        _ => None,
    };
    if args.outputs.json {
        let mut summary = json!({ "points": k.net().len(), "resolution": k.resolution() });
        if let Some(b) = bounds {
            summary["distance"] = json!({ "lo": b.lo, "hi": b.hi });
        }
        if let Some(m) = &membership {
            summary["membership"] = json!(m);
        }
        writeln!(out, "{summary}")?;
    } else {
        writeln!(out, "points      {}", k.net().len())?;
        writeln!(out, "resolution  {:.16e}", k.resolution())?;
        if let Some(b) = bounds {
            writeln!(out, "distance    [{:.16e}, {:.16e}]", b.lo, b.hi)?;
        }
        if let Some(m) = membership {
            writeln!(out, "membership  {m}")?;
        }
    }
    Ok(())
}

fn chain(args: ChainArgs, out: &mut dyn Write) -> Outcome {
    let spec = load_spec(&args.source)?;
    let (h, domain) = select_homotopy(&args.source, &args.homotopy, spec)?;
    let chain = build_chain(&h.sigma, h.start, h.end, &domain)?;
    if let Some(file) = &args.outputs.out {
        write_file(file, &chain_csv(chain.members()))?;
    }
    let c = chain.containment();
    if args.outputs.json {
        let links: Vec<_> = chain
            .links()
            .iter()
            .map(|l| json!({ "bound": l.bound, "lo": l.sampled.lo, "hi": l.sampled.hi }))
            .collect();
        let summary = json!({
            "members": chain.len(),
            "epsilon": chain.epsilon(),
            "margin": c.margin,
            "net_resolution": c.net_resolution,
            "min_clearance": c.min_clearance,
            "links": links,
        });
        writeln!(out, "{summary}")?;
    } else {
        writeln!(out, "members         {}", chain.len())?;
        writeln!(out, "epsilon         {:.16e}", chain.epsilon())?;
        writeln!(out, "margin          {:.16e}", c.margin)?;
        writeln!(out, "net resolution  {:.16e}", c.net_resolution)?;
        writeln!(out, "min clearance   {:.16e}", c.min_clearance)?;
        let widest = chain.links().iter().map(|l| l.sampled.lo).fold(0.0, f64::max);
        writeln!(out, "largest link    {widest:.17e}")?;
    }
    Ok(())
}

fn integrate(args: IntegrateArgs, out: &mut dyn Write) -> Outcome {
    let spec = load_spec(&args.source)?;
    let path = select_path(&args.source, spec.as_ref())?;
    let f = select_function(&args.function, spec.as_ref())?;
    let tol = select_tol(args.function.tol, spec.as_ref());
    let r = contour_integral(&f, &path, tol)?;
    if args.json {
        let summary = json!({
            "value": complex_json(r.value),
            "error_estimate": r.error_estimate,
            "evaluations": r.evaluations,
            "tol": tol,
        });
        writeln!(out, "{summary}")?;
    } else {
        writeln!(out, "value        {}", fmt_complex(r.value))?;
        writeln!(out, "error        {:.3e}", r.error_estimate)?;
        writeln!(out, "evaluations  {}", r.evaluations)?;
    }
    Ok(())
}

fn verify(args: VerifyArgs, out: &mut dyn Write) -> Outcome {
    let spec = load_spec(&args.source)?;
    let f = select_function(&args.function, spec.as_ref())?;
    let tol = select_tol(args.function.tol, spec.as_ref());
    let (h, domain) = select_homotopy(&args.source, &args.homotopy, spec)?;
    let report = match h.center {
        Some(center) => verify_null_homotopic(&f, h.start, center, &domain, tol)?,
        None => verify_homotopy_invariance(&f, h.start, h.end, &h.sigma, &domain, tol)?,
    };
    if let Some(file) = &args.outputs.out {
        write_file(file, &output::integrals_csv(&report.integrals))?;
    }
    if args.outputs.json {
        writeln!(out, "{}", output::report_json(&report))?;
    } else {
        writeln!(out, "{report}")?;
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Failed)
    }
}

fn wind(args: WindArgs, out: &mut dyn Write) -> Outcome {
    let spec = load_spec(&args.source)?;
    let path = select_path(&args.source, spec.as_ref())?;
    let a = parse_point(&args.at)?;
    let tol = select_tol(args.tol, spec.as_ref());
    let w = winding_integral(&path, a, tol)?;
    let n = quantize_winding(w)?;
    if args.json {
        writeln!(out, "{}", json!({ "winding": n, "value": complex_json(w) }))?;
    } else {
        writeln!(out, "winding  {n}")?;
        writeln!(out, "value    {}", fmt_complex(w))?;
    }
    Ok(())
}
