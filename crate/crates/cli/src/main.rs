//! `minkval`: multiplier tables, area measures, valuation evaluation and the
//! Monte-Carlo integral-geometry checks.
//!
//! Every command prints a JSON report (or CSV with `--format csv`) and exits
//! with 0 when its declared checks pass, 1 when one fails and 2 on bad input.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use minkval::convex::{area_measure, steiner_area_measure};
use minkval::corpus;
use minkval::harmonics::{regularity_probe, AmbientDim, ZonalProfile};
use minkval::integral_geom::{
    c_nk_exact, crofton_intrinsic, crofton_minkowski, kinematic_check, kinematic_valuation, q_nij_exact, McConfig,
    PiRational, Window, DEFAULT_SHARDS,
};
use minkval::valuation::{builtin_spec, evaluate_tol, valuation_identity_check, EvalMode, MinkowskiValuationSpec};
use minkval::zonal::{berg, berg_multiplier_exact, box_multiplier, box_multiplier_exact, builtin, DEFAULT_BERG_TERMS};
use minkval::{Error, Vec3};

#[derive(Parser)]
#[command(name = "minkval", version, about = "Minkowski valuations and integral-geometry checks on polytopes")]
struct Cli {
    /// TOML file with defaults; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Also write the CSV table here.
    #[arg(long, global = true)]
    csv: Option<PathBuf>,
    /// What to print on stdout when `--out` is absent.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Funk-Hecke multiplier tables.
    Multipliers(MultipliersArgs),
    /// Summary of the area measures of a polytope.
    AreaMeasure(AreaMeasureArgs),
    /// Support function of a Minkowski valuation of a body.
    Evaluate(EvaluateArgs),
    /// Valuation property on random cuts of random hulls.
    CheckValuation(CheckValuationArgs),
    /// Classical Crofton formula by sampling flats.
    Crofton(CroftonArgs),
    /// Kinematic formula by sampling rigid motions.
    Kinematic(KinematicArgs),
    /// Crofton formula for Minkowski valuations, degree by degree.
    CroftonMv(CroftonMvArgs),
    /// Regularity probe for the box operator.
    Lemma52(Lemma52Args),
    /// Write the standard body corpus as JSON files.
    Corpus(CorpusArgs),
}

#[derive(Args)]
struct Mc {
    /// Number of samples.
    #[arg(long = "N", visible_alias = "samples")]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    shards: Option<usize>,
    /// Pass when within this many standard errors.
    #[arg(long)]
    sigmas: Option<f64>,
}

#[derive(Args)]
struct MultipliersArgs {
    #[arg(long, default_value_t = 3)]
    n: usize,
    #[arg(long)]
    kmax: Option<usize>,
    /// Berg function of this dimension.
    #[arg(long, conflicts_with_all = ["box_op", "object"])]
    berg: Option<usize>,
    /// The box operator (the default table).
    #[arg(long = "box", conflicts_with = "object")]
    box_op: bool,
    /// A named zonal object.
    #[arg(long)]
    object: Option<String>,
}

#[derive(Args)]
struct AreaMeasureArgs {
    #[arg(long)]
    body: String,
    #[arg(long)]
    degree: Option<usize>,
    /// Area measures of the parallel body at this distance.
    #[arg(long)]
    steiner: Option<f64>,
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Auto,
    Pointwise,
    Spectral,
}

#[derive(Args)]
struct EvaluateArgs {
    /// Builtin name or JSON file.
    #[arg(long)]
    spec: String,
    #[arg(long)]
    body: String,
    /// Direction `x,y,z`; repeatable. Defaults to 50 spread directions.
    #[arg(long = "dir", value_parser = parse_vec3)]
    dirs: Vec<Vec3>,
    #[arg(long, value_enum, default_value_t = Mode::Auto)]
    mode: Mode,
    #[arg(long)]
    band: Option<usize>,
    #[arg(long)]
    kmax: Option<usize>,
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(Args)]
struct CheckValuationArgs {
    /// Builtin name or JSON file; random specs when absent.
    #[arg(long)]
    spec: Option<String>,
    /// Body to cut; random hulls when absent.
    #[arg(long)]
    body: Option<String>,
    #[arg(long, default_value_t = 100)]
    cases: usize,
    #[arg(long, default_value_t = 50)]
    directions: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    kmax: Option<usize>,
    /// Largest accepted residual.
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(Args)]
struct CroftonArgs {
    #[arg(long)]
    body: String,
    /// Codimension of the flats.
    #[arg(long)]
    i: usize,
    /// Degree of the intrinsic volume.
    #[arg(long)]
    j: usize,
    /// Ambient dimension 3 (the only one sampled).
    #[arg(long)]
    n3: bool,
    #[command(flatten)]
    mc: Mc,
    /// Fail when the standard error exceeds this.
    #[arg(long)]
    max_stderr: Option<f64>,
}

#[derive(Args)]
struct KinematicArgs {
    #[arg(long)]
    body: String,
    /// The moving body; defaults to `--body`.
    #[arg(long)]
    other: Option<String>,
    #[arg(long, default_value_t = 0)]
    j: usize,
    /// Cube translation window of this side; per-rotation boxes when absent.
    #[arg(long)]
    window_side: Option<f64>,
    /// Also check the formula for the support function of this valuation.
    #[arg(long)]
    spec: Option<String>,
    #[arg(long = "dir", value_parser = parse_vec3)]
    dir: Option<Vec3>,
    #[arg(long)]
    kmax: Option<usize>,
    #[command(flatten)]
    mc: Mc,
}

#[derive(Args)]
struct CroftonMvArgs {
    #[arg(long)]
    body: String,
    /// Zonal builtin or JSON file for the generating measure.
    #[arg(long, default_value = "dirac_pole")]
    mu: String,
    #[arg(long, default_value_t = 1)]
    i: usize,
    #[arg(long, default_value_t = 1)]
    j: usize,
    #[arg(long, value_delimiter = ',', default_value = "0,2,3,4")]
    degrees: Vec<usize>,
    #[arg(long, value_parser = parse_vec3, default_value = "1,2,3")]
    axis: Vec3,
    #[arg(long)]
    kmax: Option<usize>,
    #[command(flatten)]
    mc: Mc,
}

#[derive(Args)]
struct Lemma52Args {
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Number of random profiles.
    #[arg(long, default_value_t = 50)]
    samples: usize,
    /// Highest Legendre degree of the profiles.
    #[arg(long, default_value_t = 8)]
    degree: usize,
    /// Shift of `D_q`; defaults to `n - 1`, the box operator.
    #[arg(long)]
    q: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Largest accepted boundary flux.
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(Args)]
struct CorpusArgs {
    /// Target directory; defaults to `$MINKVAL_DATA` or the shipped data directory.
    #[arg(long)]
    dir: Option<PathBuf>,
}

/// Defaults read from `--config`.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    seed: Option<u64>,
    samples: Option<usize>,
    shards: Option<usize>,
    band: Option<usize>,
    kmax: Option<usize>,
    tolerance: Option<f64>,
    sigmas: Option<f64>,
    out: Option<PathBuf>,
    csv: Option<PathBuf>,
}

/// Resolved settings, recorded in every report.
#[derive(Debug, Clone, Serialize)]
struct RunConfig {
    command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    shards: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    band: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    kmax: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sigmas: Option<f64>,
}

const DEFAULT_SAMPLES: usize = 200_000;
const DEFAULT_SIGMAS: f64 = 3.0;
const DEFAULT_KMAX: usize = 32;

enum Failure {
    Input(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

struct Outcome {
    report: Value,
    csv: String,
    pass: bool,
}

fn parse_vec3(s: &str) -> Result<Vec3, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|e| format!("{x:?}: {e}")))
        .collect::<Result<_, _>>()?;
    match v.as_slice() {
        [x, y, z] => Ok(Vec3::new(*x, *y, *z)),
        _ => Err(format!("expected three comma-separated numbers, got {s:?}")),
    }
}

fn positive(name: &str, v: f64) -> Result<f64, Failure> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Error::InvalidArgument(format!("{name} must be positive, got {v}")).into())
    }
}

fn dim(n: usize) -> Result<AmbientDim, Failure> {
    Ok(AmbientDim::new(n)?)
}

fn load_spec(name: &str, kmax: usize) -> Result<MinkowskiValuationSpec, Failure> {
    let path = Path::new(name);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{name}: {e}")))?;
        return Ok(MinkowskiValuationSpec::from_json(&text)?);
    }
    Ok(builtin_spec(name, AmbientDim::THREE, kmax)?)
}

fn load_zonal(name: &str, kmax: usize) -> Result<minkval::zonal::ZonalObject, Failure> {
    let path = Path::new(name);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{name}: {e}")))?;
        return serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{name}: {e}")).into());
    }
    Ok(builtin(name, AmbientDim::THREE, kmax)?)
}

/// Spread directions on the sphere (Fibonacci lattice).
fn fibonacci_directions(m: usize) -> Vec<Vec3> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..m)
        .map(|i| {
            let z = 1.0 - (2 * i + 1) as f64 / m as f64;
            let r = (1.0 - z * z).sqrt();
            let phi = golden * i as f64;
            Vec3::new(r * phi.cos(), r * phi.sin(), z)
        })
        .collect()
}

fn pi_rational(x: PiRational) -> String {
    let (r, e) = x;
    match e {
        0 => r.to_string(),
        1 => format!("{r} pi"),
        _ => format!("{r} pi^{e}"),
    }
}

struct Ctx {
    file: FileConfig,
}

impl Ctx {
    fn mc(&self, mc: &Mc, command: &'static str) -> Result<(McConfig, RunConfig, f64), Failure> {
        let seed = mc.seed.or(self.file.seed).ok_or_else(|| {
            Failure::Input(Error::InvalidArgument(format!("{command} is stochastic and needs --seed")))
        })?;
        let samples = mc.samples.or(self.file.samples).unwrap_or(DEFAULT_SAMPLES);
        let shards = mc.shards.or(self.file.shards).unwrap_or(DEFAULT_SHARDS);
        let sigmas = positive("sigmas", mc.sigmas.or(self.file.sigmas).unwrap_or(DEFAULT_SIGMAS))?;
        let run = RunConfig {
            command,
            seed: Some(seed),
            samples: Some(samples),
            shards: Some(shards),
            band: None,
            kmax: None,
            tolerance: None,
            sigmas: Some(sigmas),
        };
        Ok((McConfig::new(samples, seed).with_shards(shards), run, sigmas))
    }

    fn base(&self, command: &'static str) -> RunConfig {
        RunConfig {
            command,
            seed: None,
            samples: None,
            shards: None,
            band: None,
            kmax: None,
            tolerance: None,
            sigmas: None,
        }
    }

    fn kmax(&self, flag: Option<usize>) -> usize {
        flag.or(self.file.kmax).unwrap_or(DEFAULT_KMAX)
    }

    fn tolerance(&self, flag: Option<f64>, default: f64) -> Result<f64, Failure> {
        positive("tolerance", flag.or(self.file.tolerance).unwrap_or(default))
    }

    fn seed(&self, flag: Option<u64>, command: &str) -> Result<u64, Failure> {
        flag.or(self.file.seed).ok_or_else(|| {
            Failure::Input(Error::InvalidArgument(format!("{command} is stochastic and needs --seed")))
        })
    }
}

fn multipliers(ctx: &Ctx, a: &MultipliersArgs) -> Result<Outcome, Failure> {
    let n = dim(a.n)?;
    let kmax = ctx.kmax(a.kmax);
    let mut run = ctx.base("multipliers");
    run.kmax = Some(kmax);
    let (series, values, errors, exact): (String, Vec<f64>, Vec<f64>, Vec<Option<String>>) =
        match (&a.berg, &a.object) {
            (Some(j), _) => {
                let g = berg(*j, kmax, n, DEFAULT_BERG_TERMS)?;
                let exact = (0..=kmax)
                    .map(|k| (*j == a.n).then(|| berg_multiplier_exact(*j, k).to_string()))
                    .collect();
                (format!("berg:{j}"), g.ambient.values, g.ambient.errors, exact)
            }
            (None, Some(name)) => {
                let o = builtin(name, n, kmax)?;
                let m = o.multipliers().clone();
                (name.clone(), m.values, m.errors, vec![None; kmax + 1])
            }
            (None, None) => (
                "box".into(),
                (0..=kmax).map(|k| box_multiplier(a.n, k)).collect(),
                vec![0.0; kmax + 1],
                (0..=kmax).map(|k| Some(box_multiplier_exact(a.n, k).to_string())).collect(),
            ),
        };
    let mut csv = String::from("k,value,error,exact\n");
    let mut rows = Vec::new();
    for k in 0..values.len() {
        let ex = exact[k].clone().unwrap_or_default();
        let _ = writeln!(csv, "{k},{},{},{ex}", values[k], errors[k]);
        rows.push(json!({"k": k, "value": values[k], "error": errors[k], "exact": exact[k]}));
    }
    let report = json!({"config": run, "n": a.n, "series": series, "rows": rows});
    Ok(Outcome { report, csv, pass: true })
}

fn area_measure_cmd(ctx: &Ctx, a: &AreaMeasureArgs) -> Result<Outcome, Failure> {
    let body = corpus::load_body(&a.body)?;
    let tol = ctx.tolerance(a.tolerance, 1e-9)?;
    let mut run = ctx.base("area-measure");
    run.tolerance = Some(tol);
    let degrees: Vec<usize> = match a.degree {
        Some(d) if d > 2 => return Err(Error::InvalidArgument(format!("degree {d} exceeds 2")).into()),
        Some(d) => vec![d],
        None => vec![0, 1, 2],
    };
    let t = a.steiner.unwrap_or(0.0);
    if t < 0.0 {
        return Err(Error::InvalidArgument("Steiner distance must be nonnegative".into()).into());
    }
    let iv = body.intrinsic_volumes();
    let mut csv = String::from("degree,total_mass,expected,atoms,arcs,regions\n");
    let mut measures = Vec::new();
    let mut pass = true;
    for &i in &degrees {
        let m = if t > 0.0 { steiner_area_measure(&body, i, t)? } else { area_measure(&body, i)? };
        // S_i(K + tB) = sum_j C(i, j) t^(i-j) S_j(K)
        let expected: f64 = (0..=i)
            .map(|j| {
                let c = [[1.0, 0.0, 0.0], [1.0, 1.0, 0.0], [1.0, 2.0, 1.0]][i][j];
                c * t.powi((i - j) as i32) * iv.area_measure_mass(j)
            })
            .sum();
        let total = m.total_mass();
        let ok = (total - expected).abs() <= tol * expected.abs().max(1.0);
        pass &= ok;
        let _ = writeln!(csv, "{i},{total},{expected},{},{},{}", m.atoms.len(), m.arcs.len(), m.regions.len());
        measures.push(json!({"degree": i, "total_mass": total, "expected": expected, "pass": ok, "measure": m}));
    }
    let report = json!({
        "config": run,
        "body": a.body,
        "steiner": t,
        "intrinsic_volumes": iv.v,
        "measures": measures,
        "pass": pass,
    });
    Ok(Outcome { report, csv, pass })
}

fn eval_mode(mode: Mode, band: usize) -> EvalMode {
    match mode {
        Mode::Auto => EvalMode::Auto,
        Mode::Pointwise => EvalMode::Pointwise,
        Mode::Spectral => EvalMode::Spectral { band },
    }
}

fn evaluate_cmd(ctx: &Ctx, a: &EvaluateArgs) -> Result<Outcome, Failure> {
    let kmax = ctx.kmax(a.kmax);
    let band = a.band.or(ctx.file.band).unwrap_or(minkval::valuation::DEFAULT_BAND);
    let tol = ctx.tolerance(a.tolerance, minkval::valuation::DEFAULT_EVAL_TOL)?;
    let mut run = ctx.base("evaluate");
    run.kmax = Some(kmax);
    run.band = Some(band);
    run.tolerance = Some(tol);
    let spec = load_spec(&a.spec, kmax)?;
    spec.validate()?;
    let body = corpus::load_body(&a.body)?;
    let dirs = if a.dirs.is_empty() { fibonacci_directions(50) } else { a.dirs.clone() };
    let res = evaluate_tol(&spec, &body, &dirs, eval_mode(a.mode, band), tol)?;
    let mut csv = String::from("x,y,z,value,error\n");
    for s in &res.samples {
        let [x, y, z] = s.direction;
        let _ = writeln!(csv, "{x},{y},{z},{},{}", s.value, s.error);
    }
    let report = json!({"config": run, "spec": a.spec, "body": a.body, "result": res});
    Ok(Outcome { report, csv, pass: true })
}

fn check_valuation(ctx: &Ctx, a: &CheckValuationArgs) -> Result<Outcome, Failure> {
    let seed = ctx.seed(a.seed, "check-valuation")?;
    let kmax = ctx.kmax(a.kmax);
    let tol = ctx.tolerance(a.tolerance, 1e-6)?;
    let mut run = ctx.base("check-valuation");
    run.seed = Some(seed);
    run.kmax = Some(kmax);
    run.tolerance = Some(tol);
    if a.cases == 0 || a.directions == 0 {
        return Err(Error::InvalidArgument("cases and directions must be positive".into()).into());
    }
    let fixed_spec = a.spec.as_deref().map(|s| load_spec(s, kmax)).transpose()?;
    let fixed_body = a.body.as_deref().map(corpus::load_body).transpose()?;
    let dirs = fibonacci_directions(a.directions);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut csv = String::from("case,residual,degenerate\n");
    let mut cases = Vec::new();
    let mut worst: f64 = 0.0;
    for c in 0..a.cases {
        let body = match &fixed_body {
            Some(b) => b.clone(),
            None => corpus::random_hull(seed.wrapping_mul(1000).wrapping_add(c as u64), 10)?,
        };
        let spec = match &fixed_spec {
            Some(s) => s.clone(),
            None => corpus::random_spec(&mut rng, kmax)?,
        };
        let plane = corpus::random_cutting_plane(&mut rng, &body)?;
        let r = valuation_identity_check(&spec, &body, &plane, &dirs, EvalMode::Auto)?;
        worst = worst.max(r.residual);
        let _ = writeln!(csv, "{c},{},{}", r.residual, r.degenerate);
        cases.push(r);
    }
    let pass = worst <= tol;
    let report = json!({"config": run, "max_residual": worst, "pass": pass, "cases": cases});
    Ok(Outcome { report, csv, pass })
}

fn crofton_cmd(ctx: &Ctx, a: &CroftonArgs) -> Result<Outcome, Failure> {
    let (mut cfg, run, sigmas) = ctx.mc(&a.mc, "crofton")?;
    if let Some(m) = a.max_stderr {
        cfg = cfg.with_max_stderr(positive("max-stderr", m)?);
    }
    let _ = a.n3;
    let body = corpus::load_body(&a.body)?;
    let r = match crofton_intrinsic(&body, a.i, a.j, &cfg) {
        Err(Error::InsufficientSamples { stderr, requested }) => {
            let report = json!({
                "config": run,
                "error": format!("standard error {stderr:.3e} above requested {requested:.3e}"),
                "pass": false,
            });
            return Ok(Outcome { report, csv: String::new(), pass: false });
        }
        other => other?,
    };
    let pass = r.within(sigmas);
    let csv = format!("estimate,stderr,target,z,N,seed\n{},{},{},{},{},{}\n", r.estimate, r.stderr, r.target, r.z, r.n, r.seed);
    let mut report = serde_json::to_value(&r).map_err(|e| Failure::Io(e.to_string()))?;
    report["config"] = json!(run);
    report["i"] = json!(a.i);
    report["j"] = json!(a.j);
    report["pass"] = json!(pass);
    Ok(Outcome { report, csv, pass })
}

fn kinematic_cmd(ctx: &Ctx, a: &KinematicArgs) -> Result<Outcome, Failure> {
    let (cfg, mut run, sigmas) = ctx.mc(&a.mc, "kinematic")?;
    let k = corpus::load_body(&a.body)?;
    let l = match &a.other {
        Some(o) => corpus::load_body(o)?,
        None => k.clone(),
    };
    let window = match a.window_side {
        Some(side) => Window::Cube { side: positive("window side", side)? },
        None => Window::Adaptive,
    };
    let r = match kinematic_check(&k, &l, a.j, window, &cfg) {
        Err(Error::WindowTooSmall { hits }) => {
            let report = json!({"config": run, "error": format!("window too small: {hits} boundary hits"), "pass": false});
            return Ok(Outcome { report, csv: String::new(), pass: false });
        }
        other => other?,
    };
    let mut pass = r.direct.within(sigmas) && r.consistency.within(sigmas);
    let mut csv = String::from("quantity,estimate,stderr,target,z\n");
    let d = &r.direct;
    let _ = writeln!(csv, "direct,{},{},{},{}", d.estimate, d.stderr, d.target, d.z);
    for t in &r.hadwiger {
        let c = &t.crofton;
        let _ = writeln!(csv, "crofton_codim_{},{},{},{},{}", t.codim, c.estimate, c.stderr, c.target, c.z);
    }
    let c = &r.consistency;
    let _ = writeln!(csv, "hadwiger,{},{},{},{}", c.rhs, c.rhs_stderr, d.target, minkval_z(c.rhs, d.target, c.rhs_stderr));
    let mut report = json!({"config": run, "j": a.j, "window": window, "kinematic": r});
    if let Some(name) = &a.spec {
        let kmax = ctx.kmax(a.kmax);
        run.kmax = Some(kmax);
        report["config"] = json!(run);
        let spec = load_spec(name, kmax)?;
        let u = a.dir.unwrap_or_else(|| Vec3::new(1.0, 2.0, 3.0));
        let v = kinematic_valuation(&k, &l, &spec, &u, EvalMode::Auto, window, &cfg.derived(99))?;
        pass &= v.consistency.within(sigmas);
        let c = &v.consistency;
        let _ = writeln!(csv, "valuation,{},{},{},{}", c.lhs, c.lhs_stderr, c.rhs, c.z);
        report["valuation"] = json!({"spec": name, "report": v});
    }
    report["pass"] = json!(pass);
    Ok(Outcome { report, csv, pass })
}

fn minkval_z(a: f64, b: f64, s: f64) -> f64 {
    if a == b {
        0.0
    } else {
        ((a - b) / s).clamp(-1e300, 1e300)
    }
}

fn crofton_mv(ctx: &Ctx, a: &CroftonMvArgs) -> Result<Outcome, Failure> {
    let (cfg, mut run, _) = ctx.mc(&a.mc, "crofton-mv")?;
    let kmax = ctx.kmax(a.kmax);
    run.kmax = Some(kmax);
    let body = corpus::load_body(&a.body)?;
    let mu = load_zonal(&a.mu, kmax)?;
    let r = crofton_minkowski(&body, &mu, a.i, a.j, &a.degrees, &a.axis, &cfg)?;
    let mut csv = String::from("k,lhs,rhs,stderr\n");
    for row in &r.rows {
        let _ = writeln!(csv, "{},{},{},{}", row.k, row.lhs, row.rhs, row.stderr);
    }
    let pass = r.passes();
    let report = json!({
        "config": run,
        "mu": a.mu,
        "c_exact": pi_rational(c_nk_exact(3, a.j)?),
        "q_exact": pi_rational(q_nij_exact(3, a.i, a.j)?),
        "report": r,
        "pass": pass,
    });
    Ok(Outcome { report, csv, pass })
}

fn lemma52(ctx: &Ctx, a: &Lemma52Args) -> Result<Outcome, Failure> {
    let seed = ctx.seed(a.seed, "lemma52")?;
    let tol = ctx.tolerance(a.tolerance, 1e-8)?;
    let n = dim(a.n)?;
    let q = a.q.unwrap_or((a.n - 1) as f64);
    let mut run = ctx.base("lemma52");
    run.seed = Some(seed);
    run.tolerance = Some(tol);
    if a.samples == 0 {
        return Err(Error::InvalidArgument("need at least one profile".into()).into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let centered = (q - (a.n - 1) as f64).abs() < 1e-12;
    let family: Vec<_> = (0..a.samples).map(|_| corpus::random_zonal_series(&mut rng, n, a.degree, centered)).collect();
    let refs: Vec<&dyn ZonalProfile> = family.iter().map(|f| f as &dyn ZonalProfile).collect();
    let r = regularity_probe(&refs, q, 2 * a.degree + 8)?;
    let mut csv = String::from("index,c2_norm,dq_norm,box_norm,ratio_dq,ratio_box,flux\n");
    for (i, s) in r.samples.iter().enumerate() {
        let _ = writeln!(csv, "{i},{},{},{},{},{},{}", s.c2_norm, s.dq_norm, s.box_norm, s.ratio_dq, s.ratio_box, s.flux);
    }
    let pass = r.max_abs_flux <= tol && r.sup_ratio_box.is_finite() && r.sup_ratio_dq.is_finite();
    let report = json!({"config": run, "probe": r, "pass": pass});
    Ok(Outcome { report, csv, pass })
}

fn corpus_cmd(ctx: &Ctx, a: &CorpusArgs) -> Result<Outcome, Failure> {
    let dir = a.dir.clone().unwrap_or_else(corpus::data_dir);
    let files = corpus::write_corpus(&dir)?;
    let mut csv = String::from("file\n");
    for f in &files {
        let _ = writeln!(csv, "{}", f.display());
    }
    let report = json!({"config": ctx.base("corpus"), "dir": dir, "files": files});
    Ok(Outcome { report, csv, pass: true })
}

fn dispatch(cli: &Cli, ctx: &Ctx) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Multipliers(a) => multipliers(ctx, a),
        Command::AreaMeasure(a) => area_measure_cmd(ctx, a),
        Command::Evaluate(a) => evaluate_cmd(ctx, a),
        Command::CheckValuation(a) => check_valuation(ctx, a),
        Command::Crofton(a) => crofton_cmd(ctx, a),
        Command::Kinematic(a) => kinematic_cmd(ctx, a),
        Command::CroftonMv(a) => crofton_mv(ctx, a),
        Command::Lemma52(a) => lemma52(ctx, a),
        Command::Corpus(a) => corpus_cmd(ctx, a),
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidArgument(_) => "invalid_argument",
        Error::DimensionMismatch { .. } => "dimension_mismatch",
        Error::DegreeOutOfRange { .. } => "degree_out_of_range",
        Error::InsufficientQuadrature { .. } => "insufficient_quadrature",
        Error::QuadratureBudget { .. } => "quadrature_budget",
        Error::Truncation { .. } => "truncation",
        Error::SingularMultiplier { .. } => "singular_multiplier",
        Error::NotCentered(_) => "not_centered",
        Error::NotPointwise(_) => "not_pointwise",
        Error::Unsupported(_) => "unsupported",
        Error::EmptyPolytope => "empty_polytope",
        Error::DegenerateSplit(_) => "degenerate_split",
        Error::InsufficientSamples { .. } => "insufficient_samples",
        Error::WindowTooSmall { .. } => "window_too_small",
        Error::Parse(_) => "parse",
    }
}

fn fail(kind: &str, message: String) -> ExitCode {
    eprintln!("{}", json!({"error": kind, "message": message}));
    ExitCode::from(2)
}

fn write_file(path: &Path, text: &str) -> Result<(), String> {
    std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail("usage", e.to_string()),
    };
    let file = match &cli.config {
        Some(p) => match std::fs::read_to_string(p) {
            Ok(text) => match toml::from_str::<FileConfig>(&text) {
                Ok(c) => c,
                Err(e) => return fail("config", format!("{}: {e}", p.display())),
            },
            Err(e) => return fail("io", format!("{}: {e}", p.display())),
        },
        None => FileConfig::default(),
    };
    let out_path = cli.out.clone().or_else(|| file.out.clone());
    let csv_path = cli.csv.clone().or_else(|| file.csv.clone());
    let ctx = Ctx { file };
    let outcome = match dispatch(&cli, &ctx) {
        Ok(o) => o,
        Err(Failure::Input(e)) => return fail(error_kind(&e), e.to_string()),
        Err(Failure::Io(m)) => return fail("io", m),
    };
    let json_text = match serde_json::to_string_pretty(&outcome.report) {
        Ok(t) => t + "\n",
        Err(e) => return fail("serialize", e.to_string()),
    };
    if let Some(p) = &csv_path {
        if let Err(m) = write_file(p, &outcome.csv) {
            return fail("io", m);
        }
    }
    match &out_path {
        Some(p) => {
            if let Err(m) = write_file(p, &json_text) {
                return fail("io", m);
            }
        }
        None if cli.format == Format::Csv => print!("{}", outcome.csv),
        None => print!("{json_text}"),
    }
    if outcome.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
