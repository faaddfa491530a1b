use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use vertex_rsf::identities::{run_all, run_suite, SuiteConfig, SUITES};
use vertex_rsf::lattice::{izergin_determinant, partition_f, partition_g, partition_h, zn_limit};
use vertex_rsf::scalar::{rat_format, rat_parse};
use vertex_rsf::strings::{enumerate_nstrings, enumerate_two_perm};
use vertex_rsf::symmetrize::symmetrized_f;
use vertex_rsf::twisted::twisted_partition_f;
use vertex_rsf::{CompositionVector, Model, NString, Rational, VerificationReport, WeightTable};

const THREADS_VAR: &str = "IK_LATTICE_THREADS";

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Library(#[from] vertex_rsf::Error),
}

type CliResult<T> = Result<T, CliError>;

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

#[derive(Parser)]
#[command(
    name = "rsf",
    version,
    about = "Exact rational symmetric functions of vertex models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one function at one parameter point.
    Eval(EvalArgs),
    /// Run a verification suite, or `all`.
    Verify(VerifyArgs),
    /// List strings or 2-permutation matrices.
    Enumerate(EnumerateArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
enum ModelArg {
    #[value(name = "6v")]
    #[serde(rename = "6v")]
    SixVertex,
    #[serde(rename = "ik")]
    Ik,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Model {
        match m {
            ModelArg::SixVertex => Model::SixVertex,
            ModelArg::Ik => Model::IzerginKorepin,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
enum Form {
    #[value(name = "F")]
    #[serde(rename = "F")]
    F,
    #[value(name = "F_I")]
    #[serde(rename = "F_I")]
    FI,
    #[value(name = "G")]
    #[serde(rename = "G")]
    G,
    #[value(name = "Gdot")]
    #[serde(rename = "Gdot")]
    Gdot,
    #[value(name = "H")]
    #[serde(rename = "H")]
    H,
    #[serde(rename = "symmetrized")]
    Symmetrized,
    #[serde(rename = "twisted")]
    Twisted,
    #[serde(rename = "izergin")]
    Izergin,
    #[serde(rename = "zlimit")]
    Zlimit,
}

/// Parameter file layout; every field may also be given as a flag, and flags win.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    model: Option<ModelArg>,
    form: Option<Form>,
    string: Option<String>,
    left: Option<String>,
    q: Option<String>,
    xs: Option<Vec<String>>,
    ys: Option<Vec<String>>,
    zs: Option<Vec<String>>,
    #[serde(rename = "N")]
    big_n: Option<usize>,
    seed: Option<u64>,
    max_width: Option<usize>,
    tolerance: Option<String>,
    points: Option<usize>,
}

impl ConfigFile {
    fn load(path: &Option<PathBuf>) -> CliResult<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = fs::read_to_string(path)
            .map_err(|e| input(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| input(format!("bad config {}: {e}", path.display())))
    }
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long, value_enum)]
    model: Option<ModelArg>,
    #[arg(long, value_enum)]
    form: Option<Form>,
    /// Comma-separated string entries, e.g. `1,0,2`.
    #[arg(long)]
    string: Option<String>,
    /// Left boundary for `F_I`, comma-separated.
    #[arg(long)]
    left: Option<String>,
    /// Primary alphabet, comma-separated rationals.
    #[arg(long)]
    x: Option<String>,
    /// Dual alphabet for `G` and `Gdot`.
    #[arg(long)]
    y: Option<String>,
    /// Column parameters.
    #[arg(long)]
    z: Option<String>,
    #[arg(long)]
    q: Option<String>,
    /// Number of paths for `G`/`Gdot`, size for `zlimit`.
    #[arg(long = "N")]
    big_n: Option<usize>,
    /// Print a JSON envelope instead of the bare value.
    #[arg(long)]
    json: bool,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name or `all`.
    suite: String,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    max_width: Option<usize>,
    #[arg(long)]
    tolerance: Option<String>,
    /// Random points per suite (each suite has its own default).
    #[arg(long)]
    points: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Set {
    Strings,
    Twoperm,
}

#[derive(Args)]
struct EnumerateArgs {
    set: Set,
    #[arg(long)]
    n: usize,
    #[arg(long = "N")]
    big_n: Option<usize>,
    #[arg(long)]
    string: Option<String>,
    #[arg(long)]
    weight: Option<usize>,
    #[arg(long)]
    width: Option<usize>,
}

fn parse_list(text: &str) -> CliResult<Vec<Rational>> {
    text.split(',')
        .map(|t| rat_parse(t.trim()).map_err(|e| input(format!("{e}"))))
        .collect()
}

fn parse_strs(list: &[String]) -> CliResult<Vec<Rational>> {
    list.iter()
        .map(|t| rat_parse(t.trim()).map_err(|e| input(format!("{e}"))))
        .collect()
}

fn parse_usizes(text: &str) -> CliResult<Vec<usize>> {
    text.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| input(format!("bad entry {t:?} in {text:?}")))
        })
        .collect()
}

/// Flag value if given, else the config list, else empty.
fn alphabet(flag: &Option<String>, file: &Option<Vec<String>>) -> CliResult<Vec<Rational>> {
    match (flag, file) {
        (Some(t), _) => parse_list(t),
        (None, Some(v)) => parse_strs(v),
        (None, None) => Ok(Vec::new()),
    }
}

fn require<'a, T>(v: &'a [T], what: &str, form: Form) -> CliResult<&'a [T]> {
    if v.is_empty() {
        Err(input(format!("form {form:?} needs --{what}")))
    } else {
        Ok(v)
    }
}

#[derive(Serialize)]
struct Envelope {
    model: Option<ModelArg>,
    form: Form,
    string: Option<String>,
    q: String,
    xs: Vec<String>,
    ys: Vec<String>,
    zs: Vec<String>,
    value: String,
}

fn eval(args: EvalArgs) -> CliResult<()> {
    let file = ConfigFile::load(&args.config)?;
    let form = args
        .form
        .or(file.form)
        .ok_or_else(|| input("--form is required"))?;
    let model_arg = args.model.or(file.model);
    let q = match args.q.as_ref().or(file.q.as_ref()) {
        Some(t) => rat_parse(t).map_err(|e| input(format!("{e}")))?,
        None => return Err(input("--q is required")),
    };
    let xs = alphabet(&args.x, &file.xs)?;
    let ys = alphabet(&args.y, &file.ys)?;
    let zs = alphabet(&args.z, &file.zs)?;
    let big_n = args.big_n.or(file.big_n);
    let string_text = args.string.clone().or(file.string.clone());

    let model = || -> CliResult<Model> {
        model_arg
            .map(Model::from)
            .ok_or_else(|| input(format!("form {form:?} needs --model")))
    };
    let string = |m: Model| -> CliResult<NString> {
        match &string_text {
            Some(t) if !t.trim().is_empty() => Ok(NString::parse(m.n(), t)?),
            _ => Ok(NString::empty(m.n())),
        }
    };

    let value = match form {
        Form::F | Form::FI | Form::H | Form::Symmetrized => {
            let m = model()?;
            let s = string(m)?;
            let xs = require(&xs, "x", form)?;
            let table = WeightTable::plain(m, q.clone());
            match form {
                Form::F => partition_f(&table, xs, &zs, &s, None)?,
                Form::FI => {
                    let text = args
                        .left
                        .as_ref()
                        .or(file.left.as_ref())
                        .ok_or_else(|| input("form F_I needs --left"))?;
                    let left = CompositionVector::new(m.n(), parse_usizes(text)?)?;
                    partition_f(&table, xs, &zs, &s, Some(&left))?
                }
                Form::H => partition_h(&table, xs, &zs, &s)?,
                _ => symmetrized_f(m, &s, &q, xs, &zs)?,
            }
        }
        Form::G | Form::Gdot => {
            let m = model()?;
            let s = string(m)?;
            let ys = require(&ys, "y", form)?;
            let big_n = big_n.unwrap_or(s.weight() / m.n());
            let table = WeightTable::plain(m, q.clone());
            partition_g(&table, ys, &zs, &s, big_n, form == Form::Gdot)?
        }
        Form::Twisted => {
            if model_arg.is_some_and(|m| m != ModelArg::Ik) {
                return Err(input("twisted columns exist for the ik model only"));
            }
            let s = string(Model::IzerginKorepin)?;
            twisted_partition_f(&s, &q, require(&xs, "x", form)?, &zs)?
        }
        Form::Izergin => izergin_determinant(&q, require(&xs, "x", form)?, &zs)?,
        Form::Zlimit => zn_limit(&q, big_n.ok_or_else(|| input("form zlimit needs --N"))?)?,
    };

    if args.json {
        let fmt = |v: &[Rational]| v.iter().map(rat_format).collect();
        let env = Envelope {
            model: model_arg,
            form,
            string: string_text,
            q: rat_format(&q),
            xs: fmt(&xs),
            ys: fmt(&ys),
            zs: fmt(&zs),
            value: rat_format(&value),
        };
        println!(
            "{}",
            serde_json::to_string_pretty(&env).expect("plain data serializes")
        );
    } else {
        println!("{}", rat_format(&value));
    }
    Ok(())
}

fn verify(args: VerifyArgs) -> CliResult<bool> {
    let file = ConfigFile::load(&args.config)?;
    let mut cfg = SuiteConfig::default();
    if let Some(seed) = args.seed.or(file.seed) {
        cfg.seed = seed;
    }
    if let Some(w) = args.max_width.or(file.max_width) {
        if w == 0 {
            return Err(input("--max-width must be positive"));
        }
        cfg.max_width = w;
    }
    if let Some(t) = args.tolerance.as_ref().or(file.tolerance.as_ref()) {
        cfg.tolerance = rat_parse(t).map_err(|e| input(format!("{e}")))?;
    }
    cfg.points = args.points.or(file.points);
    let reports: Vec<VerificationReport> = if args.suite == "all" {
        run_all(&cfg)
    } else if SUITES.contains(&args.suite.as_str()) {
        vec![run_suite(&args.suite, &cfg)?]
    } else {
        return Err(input(format!(
            "unknown suite {:?}; expected all or one of {}",
            args.suite,
            SUITES.join(", ")
        )));
    };
    match args.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&reports).expect("reports serialize")
        ),
        Format::Csv => {
            println!("series,width,partial,rhs,gap,gap_approx");
            for rep in &reports {
                for t in &rep.trace {
                    println!(
                        "{},{},{},{},{},{:e}",
                        t.series, t.width, t.partial, t.rhs, t.gap, t.gap_approx
                    );
                }
            }
        }
    }
    let mut ok = true;
    for rep in &reports {
        if !rep.pass {
            ok = false;
            eprintln!("FAIL {}: {} defects", rep.suite, rep.defects.len());
            for d in rep.defects.iter().take(10) {
                eprintln!("  {}: {}", d.location, d.defect);
            }
        }
    }
    Ok(ok)
}

fn enumerate(args: EnumerateArgs) -> CliResult<()> {
    match args.set {
        Set::Strings => {
            let weight = args
                .weight
                .ok_or_else(|| input("enumerate strings needs --weight"))?;
            let width = args
                .width
                .ok_or_else(|| input("enumerate strings needs --width"))?;
            for s in enumerate_nstrings(args.n, weight, width)? {
                println!("{s}");
            }
        }
        Set::Twoperm => {
            let big_n = args
                .big_n
                .ok_or_else(|| input("enumerate twoperm needs --N"))?;
            let text = args
                .string
                .ok_or_else(|| input("enumerate twoperm needs --string"))?;
            let s = NString::parse(args.n, &text)?;
            let all = enumerate_two_perm(args.n, big_n, &s, args.width)?;
            for (i, m) in all.iter().enumerate() {
                if i > 0 {
                    println!();
                }
                println!("{m}");
            }
        }
    }
    Ok(())
}

fn configure_threads() -> CliResult<()> {
    let Ok(text) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = text.trim().parse().ok().filter(|&t| t > 0).ok_or_else(|| {
        input(format!(
            "{THREADS_VAR} must be a positive integer, got {text:?}"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| input(format!("thread pool: {e}")))
}

fn run(cli: Cli) -> CliResult<bool> {
    configure_threads()?;
    match cli.command {
        Command::Eval(a) => eval(a).map(|()| true),
        Command::Verify(a) => verify(a),
        Command::Enumerate(a) => enumerate(a).map(|()| true),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
