//! The `abharm` command line.
//!
//! [`run`] does all the work and returns the exit code together with the
//! exact bytes for stdout and stderr, so the binary is a thin wrapper and
//! tests can drive it in-process. Output is only produced once the whole
//! result has been computed; failures print a single JSON error object
//! `{code, message, path}` on stderr.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::dual::{dual_group, CharacterJson, LaurentCharacter};
use crate::error::Error;
use crate::function::{GroupFunction, SpectrumFunction};
use crate::group::{GroupSpec, GroupSpecJson, DEFAULT_SIZE_CAP};
use crate::haar::{check_invariance, integrate, linearity_residual, uniqueness_oracle, HaarWeight};
use crate::io::{complex_pairs, read_csv_values, round_sig, FunctionJson, SupportJson, ValuesReport};
use crate::profinite::{CylinderFunction, CylinderJson};
use crate::transform::{
    convolve, convolve_direct, convolve_spectral, fourier_fast, fourier_laplace_integers_with_cap, fourier_naive,
    inverse_fourier, translate,
};

/// Environment variable overriding the point cap.
pub const SIZE_CAP_ENV: &str = "ABHARM_SIZE_CAP";

#[derive(Debug, Parser)]
#[command(name = "abharm", version, about = "Harmonic analysis on finite and profinite abelian groups")]
pub struct RunConfig {
    /// Significant digits for printed numbers.
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u8).range(6..=17))]
    pub precision: u8,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Seed for randomized self-checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HaarMode {
    /// Total mass one, h = 1/N.
    Normalized,
    /// Counting measure, h = 1.
    Counting,
}

impl HaarMode {
    fn weight(self, spec: &GroupSpec) -> HaarWeight {
        match self {
            HaarMode::Normalized => HaarWeight::normalized(spec),
            HaarMode::Counting => HaarWeight::counting(spec),
        }
    }

    fn name(self) -> &'static str {
        match self {
            HaarMode::Normalized => "normalized",
            HaarMode::Counting => "counting",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConvolutionMethod {
    Auto,
    Direct,
    Spectral,
}

#[derive(Debug, Args)]
pub struct GroupArg {
    /// Group spec: a JSON file or inline JSON such as '{"cyclic_orders":[2,3]}'.
    #[arg(long)]
    pub group: String,
}

#[derive(Debug, Args)]
pub struct FunctionArgs {
    #[command(flatten)]
    pub group: GroupArg,
    /// Function file `{"values": [[re, im], ...]}`.
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = HaarMode::Normalized)]
    pub haar: HaarMode,
    /// Read input files as two-column re,im CSV.
    #[arg(long)]
    pub csv: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Forward Fourier transform.
    Transform {
        #[command(flatten)]
        args: FunctionArgs,
        /// Use the O(N^2) reference evaluator.
        #[arg(long)]
        naive: bool,
    },
    /// Inverse Fourier transform.
    Itransform {
        #[command(flatten)]
        args: FunctionArgs,
    },
    /// Convolution of two functions.
    Convolve {
        #[command(flatten)]
        args: FunctionArgs,
        #[arg(long = "in2")]
        input2: PathBuf,
        #[arg(long, value_enum, default_value_t = ConvolutionMethod::Auto)]
        method: ConvolutionMethod,
    },
    /// Translate a function: x -> f(x - a).
    Translate {
        #[command(flatten)]
        args: FunctionArgs,
        /// Shift as a JSON array, e.g. "[1,0]".
        #[arg(long)]
        by: String,
    },
    /// Fourier-Laplace transform of a finitely supported function on the integers.
    Laplace {
        /// File `{"support": [{"index": k, "value": [re, im]}, ...]}`.
        #[arg(long)]
        support: PathBuf,
        /// Character base z as "re,im".
        #[arg(long, allow_hyphen_values = true)]
        base: String,
    },
    /// List the characters of a group.
    Characters {
        #[command(flatten)]
        group: GroupArg,
        /// Also evaluate every character at this element, e.g. "[1,2]".
        #[arg(long)]
        at: Option<String>,
    },
    /// Haar integral checks.
    #[command(subcommand)]
    Haar(HaarCommand),
    #[command(name = "haar-check", hide = true)]
    HaarCheck(HaarCheckArgs),
    #[command(name = "haar-unique", hide = true)]
    HaarUnique(GroupArg),
    /// Cylinder functions on the base-n sequence group.
    #[command(subcommand)]
    Cantor(CantorCommand),
    #[command(name = "cantor-transform", hide = true)]
    CantorTransform(CylinderArgs),
    #[command(name = "cantor-integrate", hide = true)]
    CantorIntegrate(CylinderArgs),
    #[command(name = "cantor-refine", hide = true)]
    CantorRefine(RefineArgs),
}

#[derive(Debug, Subcommand)]
pub enum HaarCommand {
    /// Invariance, positivity and linearity of the integral on a function.
    Check(HaarCheckArgs),
    /// Dimension of the space of invariant integrals.
    Unique(GroupArg),
}

#[derive(Debug, Args)]
pub struct HaarCheckArgs {
    #[command(flatten)]
    pub group: GroupArg,
    #[arg(long)]
    pub function: PathBuf,
    /// Number of random translations to test.
    #[arg(long, default_value_t = 16)]
    pub shifts: usize,
    #[arg(long, value_enum, default_value_t = HaarMode::Normalized)]
    pub haar: HaarMode,
    #[arg(long)]
    pub csv: bool,
}

#[derive(Debug, Subcommand)]
pub enum CantorCommand {
    /// Transform of a cylinder function over the depth-l characters.
    Transform(CylinderArgs),
    /// Mass-one Haar integral of a cylinder function.
    Integrate(CylinderArgs),
    /// Lift a cylinder function to a deeper truncation.
    Refine(RefineArgs),
}

#[derive(Debug, Args)]
pub struct CylinderArgs {
    /// Cylinder file `{"base": n, "depth": l, "values": [...]}`; base and depth
    /// may instead come from the flags.
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub base: Option<i64>,
    #[arg(long)]
    pub depth: Option<usize>,
}

#[derive(Debug, Args)]
pub struct RefineArgs {
    #[command(flatten)]
    pub cylinder: CylinderArgs,
    #[arg(long)]
    pub to: usize,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
struct Failure {
    code: String,
    message: String,
    path: Option<String>,
    exit: i32,
}

impl Failure {
    fn lib(err: Error, path: Option<&Path>) -> Self {
        Failure {
            code: err.code().to_string(),
            message: err.to_string(),
            path: path.map(|p| p.display().to_string()),
            exit: 1,
        }
    }

    fn schema(message: impl ToString, path: Option<&Path>) -> Self {
        Failure {
            code: "SchemaViolation".into(),
            message: message.to_string(),
            path: path.map(|p| p.display().to_string()),
            exit: 1,
        }
    }

    fn io(err: std::io::Error, path: &Path) -> Self {
        Failure {
            code: "Io".into(),
            message: err.to_string(),
            path: Some(path.display().to_string()),
            exit: 2,
        }
    }

    fn render(&self) -> String {
        let mut s = serde_json::to_string(&json!({
            "code": self.code,
            "message": self.message,
            "path": self.path,
        }))
        .expect("error object serializes");
        s.push('\n');
        s
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

trait Located<T> {
    fn at(self, path: Option<&Path>) -> CliResult<T>;
}

impl<T> Located<T> for crate::error::Result<T> {
    fn at(self, path: Option<&Path>) -> CliResult<T> {
        self.map_err(|e| Failure::lib(e, path))
    }
}

struct Context {
    cap: usize,
    digits: usize,
    seed: u64,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: e.to_string(),
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: Failure {
                        code: "Usage".into(),
                        message: e.to_string().trim().to_string(),
                        path: None,
                        exit: 1,
                    }
                    .render(),
                },
            };
        }
    };
    run_config(&config)
}

pub fn run_config(config: &RunConfig) -> Outcome {
    let result = size_cap_from_env().and_then(|cap| {
        let ctx = Context {
            cap,
            digits: config.precision as usize,
            seed: config.seed,
        };
        let report = dispatch(&ctx, &config.command)?;
        let mut text = serde_json::to_string(&report).expect("report serializes");
        text.push('\n');
        match &config.out {
            Some(path) => {
                fs::write(path, &text).map_err(|e| Failure::io(e, path))?;
                Ok(String::new())
            }
            None => Ok(text),
        }
    });
    match result {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(f) => Outcome {
            code: f.exit,
            stdout: String::new(),
            stderr: f.render(),
        },
    }
}

fn size_cap_from_env() -> CliResult<usize> {
    match std::env::var(SIZE_CAP_ENV) {
        Ok(v) => v.trim().parse::<usize>().ok().filter(|&c| c >= 1).ok_or_else(|| {
            Failure::schema(format!("{SIZE_CAP_ENV} must be a positive integer, got {v:?}"), None)
        }),
        Err(_) => Ok(DEFAULT_SIZE_CAP),
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

fn dispatch(ctx: &Context, command: &Command) -> CliResult<Value> {
    match command {
        Command::Transform { args, naive } => {
            let (spec, f) = load_function(ctx, args)?;
            let w = args.haar.weight(&spec);
            let s = if *naive { fourier_naive(&w, &f) } else { fourier_fast(&w, &f) }.at(None)?;
            Ok(values_report(ctx, &spec, Some(args.haar), s.values()))
        }
        Command::Itransform { args } => {
            let (spec, f) = load_function(ctx, args)?;
            let s = SpectrumFunction::new(&spec, f.into_values()).at(Some(&args.input))?;
            let w = args.haar.weight(&spec);
            let g = inverse_fourier(&w, &s).at(None)?;
            Ok(values_report(ctx, &spec, Some(args.haar), g.values()))
        }
        Command::Convolve { args, input2, method } => {
            let (spec, f) = load_function(ctx, args)?;
            let g = GroupFunction::new(&spec, load_values(input2, args.csv)?).at(Some(input2))?;
            let w = args.haar.weight(&spec);
            let out = match method {
                ConvolutionMethod::Auto => convolve(&w, &f, &g),
                ConvolutionMethod::Direct => convolve_direct(&w, &f, &g),
                ConvolutionMethod::Spectral => convolve_spectral(&w, &f, &g),
            }
            .at(None)?;
            Ok(values_report(ctx, &spec, Some(args.haar), out.values()))
        }
        Command::Translate { args, by } => {
            let (spec, f) = load_function(ctx, args)?;
            let raw: Vec<i64> =
                serde_json::from_str(by).map_err(|e| Failure::schema(format!("--by: {e}"), None))?;
            let a = spec.element(&raw).at(None)?;
            let out = translate(&f, &a).at(None)?;
            Ok(values_report(ctx, &spec, None, out.values()))
        }
        Command::Laplace { support, base } => {
            let s: SupportJson = load_json(support)?;
            let z = parse_complex(base)?;
            let phi = LaurentCharacter::new(z).at(None)?;
            let v = fourier_laplace_integers_with_cap(&s.terms(), &phi, crate::dual::DEFAULT_EXPONENT_CAP)
                .at(Some(support))?;
            Ok(json!({
                "base": [round_sig(z.re, ctx.digits), round_sig(z.im, ctx.digits)],
                "classification": to_value(&phi.classify()),
                "value": complex_pairs(&[v], ctx.digits)[0],
            }))
        }
        Command::Characters { group, at } => {
            let spec = load_group(ctx, &group.group)?;
            let dual = dual_group(&spec, ctx.cap).at(None)?;
            let point = match at {
                Some(raw) => {
                    let r: Vec<i64> =
                        serde_json::from_str(raw).map_err(|e| Failure::schema(format!("--at: {e}"), None))?;
                    Some(spec.element(&r).at(None)?)
                }
                None => None,
            };
            let mut chars = Vec::with_capacity(dual.len());
            for chi in dual.iter() {
                let mut entry = to_value(&CharacterJson::from(&chi));
                if let Some(a) = &point {
                    let v = chi.eval(a).at(None)?;
                    entry["value"] = to_value(&complex_pairs(&[v], ctx.digits)[0]);
                }
                chars.push(entry);
            }
            Ok(json!({
                "group": GroupSpecJson::from(&spec),
                "count": chars.len(),
                "characters": chars,
            }))
        }
        Command::Haar(HaarCommand::Check(a)) | Command::HaarCheck(a) => haar_check(ctx, a),
        Command::Haar(HaarCommand::Unique(g)) | Command::HaarUnique(g) => {
            let spec = load_group(ctx, &g.group)?;
            Ok(json!({ "dimension": uniqueness_oracle(&spec).at(None)? }))
        }
        Command::Cantor(CantorCommand::Transform(a)) | Command::CantorTransform(a) => {
            let cf = load_cylinder(ctx, a)?;
            let s = cf.transform();
            Ok(cylinder_report(ctx, &cf, s.values()))
        }
        Command::Cantor(CantorCommand::Integrate(a)) | Command::CantorIntegrate(a) => {
            let cf = load_cylinder(ctx, a)?;
            Ok(json!({
                "base": cf.spec().base(),
                "depth": cf.depth(),
                "integral": complex_pairs(&[cf.integrate()], ctx.digits)[0],
            }))
        }
        Command::Cantor(CantorCommand::Refine(a)) | Command::CantorRefine(a) => {
            let cf = load_cylinder(ctx, &a.cylinder)?;
            let r = cf.refine_with_cap(a.to, ctx.cap).at(Some(&a.cylinder.input))?;
            Ok(cylinder_report(ctx, &r, r.table().values()))
        }
    }
}

fn haar_check(ctx: &Context, a: &HaarCheckArgs) -> CliResult<Value> {
    let spec = load_group(ctx, &a.group.group)?;
    let f = GroupFunction::new(&spec, load_values(&a.function, a.csv)?).at(Some(&a.function))?;
    let w = a.haar.weight(&spec);
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);

    let mut invariance: f64 = 0.0;
    for _ in 0..a.shifts {
        let shift = spec.unrank(rng.random_range(0..spec.order())).at(None)?;
        invariance = invariance.max(check_invariance(&w, &f, &shift).at(None)?);
    }

    // |f| integrates to a nonnegative real, positive unless f vanishes; real
    // parts integrate to reals.
    let abs_integral = integrate(&w, &f.abs()).at(None)?;
    let nonzero = f.values().iter().any(|v| v.norm() > 0.0);
    let re_part = GroupFunction::new(&spec, f.values().iter().map(|v| Complex64::new(v.re, 0.0)).collect())
        .at(None)?;
    let positivity_ok = abs_integral.im == 0.0
        && abs_integral.re >= 0.0
        && (abs_integral.re > 0.0) == nonzero
        && integrate(&w, &re_part).at(None)?.im == 0.0;

    let mut linearity: f64 = 0.0;
    for _ in 0..4 {
        let g = GroupFunction::from_fn(&spec, |_| {
            Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        })
        .at(None)?;
        let alpha = Complex64::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
        let beta = Complex64::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
        linearity = linearity.max(linearity_residual(&w, &f, &g, alpha, beta).at(None)?);
    }

    Ok(json!({
        "group": GroupSpecJson::from(&spec),
        "haar": a.haar.name(),
        "shifts": a.shifts,
        "invariance_max_residual": round_sig(invariance, ctx.digits),
        "positivity_ok": positivity_ok,
        "linearity_max_residual": round_sig(linearity, ctx.digits),
    }))
}

fn values_report(ctx: &Context, spec: &GroupSpec, haar: Option<HaarMode>, values: &[Complex64]) -> Value {
    to_value(&ValuesReport {
        group: GroupSpecJson::from(spec),
        haar: haar.map(HaarMode::name),
        values: complex_pairs(values, ctx.digits),
    })
}

fn cylinder_report(ctx: &Context, cf: &CylinderFunction, values: &[Complex64]) -> Value {
    json!({
        "base": cf.spec().base(),
        "depth": cf.depth(),
        "values": complex_pairs(values, ctx.digits),
    })
}

fn read_file(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::io(e, path))
}

fn load_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = read_file(path)?;
    serde_json::from_str(&text).map_err(|e| Failure::schema(e, Some(path)))
}

fn load_group(ctx: &Context, arg: &str) -> CliResult<GroupSpec> {
    let trimmed = arg.trim_start();
    let (spec, path): (GroupSpecJson, Option<&Path>) = if trimmed.starts_with('{') {
        let s = serde_json::from_str(trimmed).map_err(|e| Failure::schema(format!("--group: {e}"), None))?;
        (s, None)
    } else {
        let p = Path::new(arg);
        (load_json(p)?, Some(p))
    };
    spec.build(ctx.cap).at(path)
}

fn load_values(path: &Path, csv: bool) -> CliResult<Vec<Complex64>> {
    if csv {
        let file = fs::File::open(path).map_err(|e| Failure::io(e, path))?;
        read_csv_values(file).map_err(|e| Failure::schema(e, Some(path)))
    } else {
        Ok(load_json::<FunctionJson>(path)?.complex_values())
    }
}

fn load_function(ctx: &Context, args: &FunctionArgs) -> CliResult<(GroupSpec, GroupFunction)> {
    let spec = load_group(ctx, &args.group.group)?;
    let values = load_values(&args.input, args.csv)?;
    let f = GroupFunction::new(&spec, values).at(Some(&args.input))?;
    Ok((spec, f))
}

fn load_cylinder(ctx: &Context, a: &CylinderArgs) -> CliResult<CylinderFunction> {
    let path = a.input.as_path();
    let raw: Value = load_json(path)?;
    let base = match (raw.get("base").and_then(Value::as_i64), a.base) {
        (Some(b), Some(flag)) if b != flag => {
            return Err(Failure::schema(format!("--base {flag} disagrees with file base {b}"), Some(path)))
        }
        (Some(b), _) | (None, Some(b)) => b,
        (None, None) => return Err(Failure::schema("missing base (file or --base)", Some(path))),
    };
    let depth = match (raw.get("depth").and_then(Value::as_u64), a.depth) {
        (Some(d), Some(flag)) if d as usize != flag => {
            return Err(Failure::schema(format!("--depth {flag} disagrees with file depth {d}"), Some(path)))
        }
        (Some(d), _) => d as usize,
        (None, Some(d)) => d,
        (None, None) => return Err(Failure::schema("missing depth (file or --depth)", Some(path))),
    };
    let values: FunctionJson = serde_json::from_value(raw).map_err(|e| Failure::schema(e, Some(path)))?;
    let cj = CylinderJson {
        base,
        depth,
        values: values
            .complex_values()
            .into_iter()
            .map(|v| [v.re, v.im])
            .collect(),
    };
    cj.build(ctx.cap).at(Some(path))
}

fn parse_complex(s: &str) -> CliResult<Complex64> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let parse = |t: &str| {
        t.parse::<f64>()
            .map_err(|e| Failure::schema(format!("--base {s:?}: {e}"), None))
    };
    match parts.as_slice() {
        [re] => Ok(Complex64::new(parse(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(parse(re)?, parse(im)?)),
        _ => Err(Failure::schema(format!("--base expects \"re,im\", got {s:?}"), None)),
    }
}
