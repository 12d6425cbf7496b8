mod expr;
mod record;
mod spec;
mod svg;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use minkowski_curves::caustic::{caustic, CausticBranch, CausticConfig};
use minkowski_curves::families::model::ParamFamily;
use minkowski_curves::families::sweep::{census_sweep, region_consistency, SweepConfig};
use minkowski_curves::families::trace::{trace_all, trace_strata, TraceConfig};
use minkowski_curves::mink::Vec2;
use minkowski_curves::multilocal::{census, CensusConfig};
use minkowski_curves::strata::StratumId;
use minkowski_curves::verify::{run_suite, Suite, VerifyConfig};
use record::CensusRecord;
use serde::{Deserialize, Serialize};
use spec::{CurveSpec, FamilySpec, Params, SpecError};
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Minkowski-plane curves: special points, caustics and deformation strata.
#[derive(Parser, Debug)]
#[command(name = "mkcurve", version)]
struct Cli {
    /// JSON file overriding any configuration value.
    #[arg(long, global = true, value_name = "FILE")]
    seed_config: Option<PathBuf>,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Census of special points and self-intersections as JSON.
    Analyze(CurveArgs),
    /// Caustic polylines as CSV, optionally drawn as SVG.
    Caustic(CausticArgs),
    /// Trace bifurcation strata of a family and fit power laws.
    Strata(StrataArgs),
    /// Feature strings over a grid of parameters.
    Sweep(SweepArgs),
    /// Run the acceptance checks; exit status 0 iff all pass.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct CurveArgs {
    /// CurveSpec JSON file, or - for stdin.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["model", "x", "y"])]
    spec: Option<PathBuf>,
    /// Built-in model: I2, I3, LI, LI2, C, LC, RC, V2.
    #[arg(long, conflicts_with_all = ["x", "y"])]
    model: Option<String>,
    /// x(t) as a polynomial expression in t, s1, s2.
    #[arg(long, requires = "y", allow_hyphen_values = true)]
    x: Option<String>,
    /// y(t) as a polynomial expression in t, s1, s2.
    #[arg(long, requires = "x", allow_hyphen_values = true)]
    y: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    s1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    s2: Option<f64>,
    /// Parameter interval [tmin, tmax].
    #[arg(long, num_args = 2, value_names = ["TMIN", "TMAX"], allow_negative_numbers = true)]
    window: Option<Vec<f64>>,
    /// Jet order used to classify orders of contact.
    #[arg(long)]
    jet_order: Option<usize>,
    /// |⟨γ′,γ′⟩| ≤ tol·‖γ′‖² counts as lightlike.
    #[arg(long)]
    lightlike_tol: Option<f64>,
}

#[derive(Args, Debug)]
struct CausticArgs {
    #[command(flatten)]
    curve: CurveArgs,
    /// Also draw the curve, caustic and special points here.
    #[arg(long, value_name = "FILE")]
    svg: Option<PathBuf>,
    /// Caustic samples outside this half-width box are flagged asymptotic.
    #[arg(long)]
    bbox_half: Option<f64>,
    /// Initial samples per smooth interval.
    #[arg(long)]
    samples: Option<usize>,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    /// Built-in model: I2, I3, LI, LI2, C, LC, RC, V2.
    #[arg(long, conflicts_with = "family")]
    model: Option<String>,
    /// Family JSON file ({"x", "y", "window", "name"}), or - for stdin.
    #[arg(long, value_name = "FILE")]
    family: Option<PathBuf>,
    /// Parameter interval [tmin, tmax] for special points.
    #[arg(long, num_args = 2, value_names = ["TMIN", "TMAX"], allow_negative_numbers = true)]
    window: Option<Vec<f64>>,
}

#[derive(Args, Debug)]
struct StrataArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Stratum to trace (C, I2, LI, V2, IT, LT, VT, Tc, ...); repeatable, all by default.
    #[arg(long)]
    stratum: Vec<String>,
    /// Write the traced polylines as CSV here.
    #[arg(long, value_name = "FILE")]
    polylines: Option<PathBuf>,
    /// Half-width of the traced parameter box.
    #[arg(long)]
    box_half: Option<f64>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Grid points per axis.
    #[arg(long)]
    n: Option<usize>,
    /// Grid covers [−half, half]^m.
    #[arg(long)]
    half: Option<f64>,
    /// Also trace all strata and write the region-consistency report (JSON) here.
    #[arg(long, value_name = "FILE")]
    report: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// all, 1..10, or a name such as li-subset-v, lc-strata, regions.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Largest order for the lightlike-inflection identity.
    #[arg(long)]
    kmax: Option<u32>,
    /// Seed for the random-curve property checks.
    #[arg(long)]
    seed: Option<u64>,
    /// Emit outcomes as JSON instead of text lines.
    #[arg(long)]
    json: bool,
}

/// Everything `--seed-config` can override.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct Settings {
    census: CensusConfig,
    caustic: CausticConfig,
    trace: TraceConfig,
    sweep: SweepConfig,
    verify: VerifyConfig,
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        return Ok(s);
    }
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// Write via a temporary file so readers never see partial output.
fn write_file(path: &Path, data: &str) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    std::fs::write(&tmp, data).with_context(|| format!("writing {}", tmp.display()))?;
    std::fs::rename(&tmp, path).with_context(|| format!("renaming to {}", path.display()))
}

fn emit(out: &Option<PathBuf>, data: &str) -> Result<()> {
    match out {
        Some(p) => write_file(p, data),
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(data.as_bytes())?;
            so.flush()?;
            Ok(())
        }
    }
}

fn window_arg(w: &Option<Vec<f64>>) -> Option<[f64; 2]> {
    w.as_ref().map(|v| [v[0], v[1]])
}

impl CurveArgs {
    fn spec(&self) -> Result<CurveSpec> {
        let mut spec = match &self.spec {
            Some(p) => serde_json::from_str(&read_input(p)?).context("parsing CurveSpec")?,
            None => CurveSpec {
                x: self.x.clone(),
                y: self.y.clone(),
                model: self.model.clone(),
                params: Params::default(),
                ..CurveSpec::default()
            },
        };
        if let Some(v) = self.s1 {
            spec.params.s1 = v;
        }
        if let Some(v) = self.s2 {
            spec.params.s2 = v;
        }
        if let Some(w) = window_arg(&self.window) {
            spec.window = Some(w);
        }
        if self.jet_order.is_some() {
            spec.jet_order = self.jet_order;
        }
        if self.lightlike_tol.is_some() {
            spec.tolerances.lightlike = self.lightlike_tol;
        }
        if spec.model.is_none() && spec.x.is_none() {
            bail!(SpecError::Shape);
        }
        Ok(spec)
    }
}

impl FamilyArgs {
    fn family(&self) -> Result<ParamFamily> {
        let mut fs: FamilySpec = match (&self.model, &self.family) {
            (Some(m), None) => FamilySpec {
                name: None,
                model: Some(m.clone()),
                x: None,
                y: None,
                window: None,
            },
            (None, Some(p)) => serde_json::from_str(&read_input(p)?).context("parsing family JSON")?,
            _ => bail!(SpecError::Shape),
        };
        if let Some(w) = window_arg(&self.window) {
            fs.window = Some(w);
        }
        Ok(fs.resolve()?)
    }
}

fn cmd_analyze(a: &CurveArgs, s: &Settings, out: &Option<PathBuf>) -> Result<()> {
    let spec = a.spec()?;
    let r = spec.resolve()?;
    let cfg = spec.census_config(&s.census);
    let c = census(&r.curve, r.window.0, r.window.1, &cfg)?;
    emit(out, &CensusRecord::new(&spec, r.window, &c).to_json())
}

fn csv_string(f: impl FnOnce(&mut csv::Writer<Vec<u8>>) -> Result<()>) -> Result<String> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    f(&mut w)?;
    Ok(String::from_utf8(w.into_inner().map_err(|e| anyhow::anyhow!("{e}"))?)?)
}

fn cmd_caustic(a: &CausticArgs, s: &Settings, out: &Option<PathBuf>) -> Result<()> {
    let spec = a.curve.spec()?;
    let r = spec.resolve()?;
    let mut cfg = s.caustic;
    if let Some(v) = a.bbox_half {
        cfg.bbox_half = v;
    }
    if let Some(v) = a.samples {
        cfg.initial_samples = v;
    }
    let (t0, t1) = r.window;
    let cau = caustic(&r.curve, t0, t1, &cfg)?;
    let curve: Vec<Vec2> = (0..=512).map(|i| r.curve.point(t0 + (t1 - t0) * i as f64 / 512.0)).collect();
    let extent = curve.iter().fold(0.0f64, |m, p| m.max(p.x.abs()).max(p.y.abs())).max(1e-6);
    let mut polylines: Vec<Vec<Vec2>> = Vec::new();
    let body = csv_string(|w| {
        w.write_record(["branch_id", "t", "x", "y", "kind"])?;
        for (id, b) in cau.branches.iter().enumerate() {
            match b {
                CausticBranch::Parametrized { samples, .. } => {
                    let mut run = Vec::new();
                    for p in samples {
                        let kind = if p.asymptotic { "asymptotic" } else { "caustic" };
                        w.write_record(&[id.to_string(), p.t.to_string(), p.point.x.to_string(), p.point.y.to_string(), kind.into()])?;
                        if p.asymptotic {
                            if run.len() > 1 {
                                polylines.push(std::mem::take(&mut run));
                            }
                            run.clear();
                        } else {
                            run.push(p.point);
                        }
                    }
                    if run.len() > 1 {
                        polylines.push(run);
                    }
                }
                CausticBranch::Line { t0, point, direction } => {
                    let k = extent / direction.norm();
                    let d = Vec2::new(direction.x * k, direction.y * k);
                    let ends = [*point - d, *point + d];
                    for e in ends {
                        w.write_record(&[id.to_string(), t0.to_string(), e.x.to_string(), e.y.to_string(), "line".into()])?;
                    }
                    polylines.push(ends.to_vec());
                }
            }
        }
        Ok(())
    })?;
    if let Some(path) = &a.svg {
        let k = census(&r.curve, t0, t1, &spec.census_config(&s.census))?;
        let pts: Vec<(Vec2, &_)> = k.points.iter().map(|p| (r.curve.point(p.t), p)).collect();
        let drawing = svg::Drawing {
            curve: &curve,
            caustic: &polylines,
            points: &pts,
        };
        write_file(path, &svg::render(&drawing))?;
    }
    emit(out, &body)
}

fn parse_strata(names: &[String]) -> Result<Vec<StratumId>> {
    if names.is_empty() || names.iter().any(|n| n == "all") {
        return Ok(StratumId::traced().to_vec());
    }
    names
        .iter()
        .map(|n| n.parse::<StratumId>().map_err(|e| anyhow::anyhow!("{e}")))
        .collect()
}

fn opt(v: Option<f64>) -> String {
    v.map_or(String::new(), |x| x.to_string())
}

fn cmd_strata(a: &StrataArgs, s: &Settings, out: &Option<PathBuf>) -> Result<()> {
    let fam = a.family.family()?;
    let ids = parse_strata(&a.stratum)?;
    let mut cfg = s.trace;
    if let Some(v) = a.box_half {
        cfg.box_half = v;
    }
    let traces = trace_strata(&fam, &ids, &cfg);
    let fits = csv_string(|w| {
        w.write_record(["family", "stratum", "branch", "side", "points", "indep", "exponent", "coefficient", "residual"])?;
        for tr in &traces {
            for (i, b) in tr.branches.iter().enumerate() {
                let f = b.fit;
                w.write_record(&[
                    fam.name.clone(),
                    tr.stratum.to_string(),
                    i.to_string(),
                    b.side.clone(),
                    b.points.len().to_string(),
                    f.map_or(String::new(), |f| format!("s{}", f.indep)),
                    opt(f.map(|f| f.exponent)),
                    opt(f.map(|f| f.coefficient)),
                    opt(f.map(|f| f.residual)),
                ])?;
            }
        }
        Ok(())
    })?;
    if let Some(path) = &a.polylines {
        let body = csv_string(|w| {
            w.write_record(["family", "stratum", "branch", "s1", "s2"])?;
            for tr in &traces {
                for (i, b) in tr.branches.iter().enumerate() {
                    for p in &b.points {
                        w.write_record(&[
                            fam.name.clone(),
                            tr.stratum.to_string(),
                            i.to_string(),
                            p.s[0].to_string(),
                            p.s.get(1).map_or(String::new(), |v| v.to_string()),
                        ])?;
                    }
                }
                // one-parameter events are isolated points
                for p in &tr.points {
                    w.write_record(&[fam.name.clone(), tr.stratum.to_string(), "event".into(), p.s[0].to_string(), String::new()])?;
                }
            }
            Ok(())
        })?;
        write_file(path, &body)?;
    }
    emit(out, &fits)
}

fn cmd_sweep(a: &SweepArgs, s: &Settings, out: &Option<PathBuf>) -> Result<()> {
    let fam = a.family.family()?;
    let mut cfg = s.sweep;
    cfg.census = s.census;
    if let Some(n) = a.n {
        cfg.n = n;
    }
    if let Some(h) = a.half {
        cfg.half = h;
    }
    let cells = census_sweep(&fam, &cfg.grid(fam.arity), &cfg.census);
    let body = csv_string(|w| {
        w.write_record(["s1", "s2", "features"])?;
        for c in &cells {
            w.write_record(&[c.s[0].to_string(), c.s.get(1).map_or(String::new(), |v| v.to_string()), c.features.clone()])?;
        }
        Ok(())
    })?;
    if let Some(path) = &a.report {
        let traces = trace_all(&fam, &s.trace);
        let report = region_consistency(&fam, &cells, &traces, &cfg);
        write_file(path, &(serde_json::to_string_pretty(&report)? + "\n"))?;
    }
    emit(out, &body)
}

fn cmd_verify(a: &VerifyArgs, s: &Settings, out: &Option<PathBuf>) -> Result<bool> {
    let suite: Suite = a.suite.parse()?;
    let mut cfg = s.verify.clone();
    if let Some(k) = a.kmax {
        cfg.kmax = k;
    }
    if let Some(seed) = a.seed {
        cfg.seed = seed;
    }
    let outcomes = run_suite(suite, &cfg);
    let body = if a.json {
        serde_json::to_string_pretty(&outcomes)? + "\n"
    } else {
        outcomes.iter().map(|o| format!("{o}\n")).collect()
    };
    emit(out, &body)?;
    Ok(outcomes.iter().all(|o| o.pass))
}

#[derive(Serialize)]
struct ErrorBody {
    kind: &'static str,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    offset: Option<usize>,
}

fn error_json(e: &anyhow::Error) -> String {
    let mut body = ErrorBody {
        kind: "error",
        message: format!("{e:#}"),
        offset: None,
    };
    for cause in e.chain() {
        if let Some(p) = cause.downcast_ref::<expr::ParseError>() {
            body.kind = "parse";
            body.offset = Some(p.offset);
            break;
        }
        if let Some(SpecError::Parse { source, .. }) = cause.downcast_ref::<SpecError>() {
            body.kind = "parse";
            body.offset = Some(source.offset);
            break;
        }
        if cause.is::<SpecError>() {
            body.kind = "spec";
        } else if cause.is::<serde_json::Error>() {
            body.kind = "json";
        } else if cause.is::<std::io::Error>() {
            body.kind = "io";
        } else if cause.is::<clap::Error>() {
            body.kind = "usage";
        }
    }
    serde_json::json!({ "error": body }).to_string()
}

fn run(cli: Cli) -> Result<bool> {
    let settings: Settings = match &cli.seed_config {
        Some(p) => serde_json::from_str(&read_input(p)?).context("parsing --seed-config")?,
        None => Settings::default(),
    };
    match &cli.cmd {
        Command::Analyze(a) => cmd_analyze(a, &settings, &cli.out).map(|_| true),
        Command::Caustic(a) => cmd_caustic(a, &settings, &cli.out).map(|_| true),
        Command::Strata(a) => cmd_strata(a, &settings, &cli.out).map(|_| true),
        Command::Sweep(a) => cmd_sweep(a, &settings, &cli.out).map(|_| true),
        Command::Verify(a) => cmd_verify(a, &settings, &cli.out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => e.exit(),
        Err(e) => {
            eprintln!("{}", error_json(&anyhow::Error::new(e)));
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("{}", error_json(&e));
            ExitCode::from(2)
        }
    }
}
