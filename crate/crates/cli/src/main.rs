use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fakemu::classify::{classify, ZeroBiasParams};
use fakemu::empirics::{export_figure_data, validate, Tolerances};
use fakemu::euler::{extremal_constants, tanaka_bias, AccelerationPlan, ProductCase};
use fakemu::numeric::{format_significant, ApproxReal};
use fakemu::sieve::{sieve_summatory, SieveConfig, SieveReport, DEFAULT_SEGMENT_SIZE};
use fakemu::{accelerated_product, construct_zero_bias, zeta, EpsilonSpec, Error, ExactReal, Expansion, SpecDocument};

#[derive(Parser)]
#[command(name = "fakemu", version, about = "Bias of summatory functions of fake Möbius functions")]
struct Cli {
    /// Significant digits in printed numbers.
    #[arg(long, global = true, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..=17))]
    digits: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SpecSource {
    /// Builtin function, e.g. mu, lambda, fake_min, fake_Max, mu_r(3).
    #[arg(long)]
    builtin: Option<String>,
    /// Spec document (JSON).
    #[arg(long)]
    spec: Option<PathBuf>,
}

#[derive(Args)]
struct SieveArgs {
    #[command(flatten)]
    source: SpecSource,
    /// Sieve up to N.
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    limit: u64,
    /// Ratio between consecutive checkpoints.
    #[arg(long, default_value_t = 0.01f64.exp())]
    ratio: f64,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    workers: u64,
    /// Numbers per sieve segment.
    #[arg(long, default_value_t = DEFAULT_SEGMENT_SIZE)]
    segment: usize,
    /// Output path; sieve writes PATH.csv and PATH.json.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Bias verdict with the coefficients a and b.
    Classify {
        #[command(flatten)]
        source: SpecSource,
    },
    /// The Euler product behind b, with its error bound.
    Bias {
        #[command(flatten)]
        source: SpecSource,
    },
    /// 1/zeta(1/2), b_3 and the extremal constants A1, B1, A2, B2.
    Constants,
    /// Closed-form bias of mu_r.
    Tanaka {
        #[arg(long, value_parser = clap::value_parser!(u64).range(3..))]
        r: u64,
    },
    /// Spec document for a zero-bias function from exact alpha and beta.
    ConstructZeroBias {
        #[arg(allow_hyphen_values = true)]
        alpha: String,
        #[arg(allow_hyphen_values = true)]
        beta: String,
        /// Digits in {-1, 0, 1}: needs 2 alpha + sqrt2 beta = 2 - 3 sqrt2.
        #[arg(long)]
        signed: bool,
        /// Use the non-terminating binary expansion of dyadic values.
        #[arg(long)]
        nonterminating: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Summatory function at checkpoints, as CSV plus a JSON summary.
    Sieve(SieveArgs),
    /// Sieve and check the measurement against the predicted bias.
    Verify(SieveArgs),
    /// Sieve and write the checkpoint CSV only.
    Figure(SieveArgs),
}

enum Failure {
    /// Bad input: exit status 2.
    Input(String),
    /// Computation or validation failed: exit status 1.
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidEpsilon(_)
            | Error::InvalidSpec(_)
            | Error::UnknownBuiltin(_)
            | Error::InvalidReal(_)
            | Error::ZeroBiasConstraint(_)
            | Error::Json(_) => Failure::Input(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn load(source: &SpecSource) -> Result<EpsilonSpec, Failure> {
    match (&source.builtin, &source.spec) {
        (Some(name), None) => Ok(fakemu::builtin(name)?),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
            Ok(SpecDocument::from_json(&text)?.to_spec()?)
        }
        _ => Err(Failure::Input("give exactly one of --builtin and --spec".into())),
    }
}

struct Printer {
    digits: usize,
}

impl Printer {
    fn num(&self, v: &ApproxReal) -> String {
        let value = format_significant(v.value, self.digits);
        if v.err_bound == 0.0 {
            value
        } else {
            format!("{value} (±{:.1e})", v.err_bound)
        }
    }
}

fn sieve(args: &SieveArgs) -> Result<(EpsilonSpec, SieveReport), Failure> {
    if !(args.ratio > 1.0 && args.ratio.is_finite()) {
        return Err(Failure::Input(format!("--ratio must be > 1, got {}", args.ratio)));
    }
    if args.segment < 2 {
        return Err(Failure::Input("--segment must be >= 2".into()));
    }
    let spec = load(&args.source)?;
    let config = SieveConfig::new(args.limit)
        .with_ratio(args.ratio)
        .with_workers(args.workers as usize)
        .with_segment_size(args.segment);
    let report = sieve_summatory(&spec, &config)?;
    Ok((spec, report))
}

fn io_error(e: std::io::Error) -> Failure {
    Failure::Compute(e.to_string())
}

fn run(cli: Cli) -> Outcome {
    let p = Printer { digits: cli.digits as usize };
    match &cli.command {
        Command::Classify { source } => {
            let c = classify(&load(source)?)?;
            println!("{} a={} b={}", c.verdict, p.num(&c.a), p.num(&c.b));
        }
        Command::Bias { source } => {
            let spec = load(source)?;
            let plan = AccelerationPlan::default();
            let case = match (spec.eps1().get(), spec.eps2().get()) {
                (-1, 1) => ProductCase::Apparent,
                (0, 1) => ProductCase::Persistent,
                (e1, e2) => {
                    return Err(Failure::Compute(format!("(eps1, eps2) = ({e1}, {e2}) has no bias at the sqrt(x) scale")))
                }
            };
            let product = accelerated_product(&spec, case, &plan)?;
            let b = if case == ProductCase::Apparent { product.div(&zeta::zeta(0.5)?) } else { product };
            println!("U(1/2) = {}", p.num(&product));
            println!("b = {}", p.num(&b));
        }
        Command::Constants => {
            let k = extremal_constants()?;
            println!("1/zeta(1/2) = {}", p.num(&zeta::zeta(0.5)?.recip()));
            println!("b3 = {}", p.num(&tanaka_bias(3)?));
            println!("A1 = {}", p.num(&k.a1));
            println!("B1 = {}", p.num(&k.b1));
            println!("A2 = {}", p.num(&k.a2));
            println!("B2 = {}", p.num(&k.b2));
        }
        Command::Tanaka { r } => println!("b_{r} = {}", p.num(&tanaka_bias(*r)?)),
        Command::ConstructZeroBias { alpha, beta, signed, nonterminating, out } => {
            let parse = |s: &str| s.parse::<ExactReal>().map_err(Failure::from);
            let (alpha, beta) = (parse(alpha)?, parse(beta)?);
            let params = if *signed { ZeroBiasParams::signed(alpha, beta) } else { ZeroBiasParams::unsigned(alpha, beta) };
            let expansion = if *nonterminating { Expansion::NonTerminating } else { Expansion::Terminating };
            let spec = construct_zero_bias(&params.with_expansion(expansion))?;
            let text = SpecDocument::from(&spec).to_json_pretty() + "\n";
            match out {
                Some(path) => std::fs::write(path, text).map_err(io_error)?,
                None => print!("{text}"),
            }
        }
        Command::Sieve(args) => {
            let (_, report) = sieve(args)?;
            match &args.out {
                Some(path) => {
                    report.write_files(path.with_extension("csv"), path.with_extension("json"))?;
                    println!("wrote {} and {}", path.with_extension("csv").display(), path.with_extension("json").display());
                }
                None => println!("{}", report.summary_json()),
            }
        }
        Command::Verify(args) => {
            let (spec, report) = sieve(args)?;
            let verdict = validate(&report, &classify(&spec)?, &Tolerances::default())?;
            println!("{verdict}");
            if let Some(path) = &args.out {
                report.write_files(path.with_extension("csv"), path.with_extension("json"))?;
            }
            if !verdict.passed {
                return Err(Failure::Compute("validation failed".into()));
            }
        }
        Command::Figure(args) => {
            let (_, report) = sieve(args)?;
            match &args.out {
                Some(path) => export_figure_data(&report, path)?,
                None => print!("{}", report.csv_string()),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
