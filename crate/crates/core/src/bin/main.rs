use std::io::Write;
use std::ops::RangeInclusive;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use unimodular_moments::basis::{disproofs_in, MomentPolynomial};
use unimodular_moments::enumerator::{count_brute, count_ddcg_partitions, CountOptions, FRow};
use unimodular_moments::montecarlo::{estimate_moment, exact_moment, z_score, SamplingOptions};
use unimodular_moments::output::{self, Format, Payload};
use unimodular_moments::Error;

#[derive(Parser, Debug)]
#[command(name = "unimodular-moments", version, about = "Exact and sampled moments of the squared unimodular random matrix")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count balanced quotients F(2k, j) of the alternating 2k-cycle.
    Count(CountArgs),
    /// Moment polynomial Q_k in the falling-factorial and monomial bases.
    Poly(PolyArgs),
    /// Compare the counts against the Borel-triangle formula.
    Conjecture(ConjectureArgs),
    /// Monte Carlo estimate of E[tr rho^k] with a z-score against the exact value.
    Mc(McArgs),
    /// Print the JSON Schema of a command's output.
    Schema { command: String },
}

#[derive(Args, Debug, Clone, Copy)]
struct Common {
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Worker threads; 0 picks the available parallelism.
    #[arg(long, env = "MOMENTS_WORKERS", default_value_t = 0)]
    workers: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("range").required(true).args(["k", "k_range"]))]
struct CountArgs {
    #[arg(long)]
    k: Option<usize>,
    /// Inclusive range such as `1..6`.
    #[arg(long, value_parser = parse_range)]
    k_range: Option<RangeInclusive<usize>>,
    #[arg(long)]
    no_prune: bool,
    /// Use the unpruned enumerate-and-test oracle.
    #[arg(long)]
    brute: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct PolyArgs {
    #[arg(long)]
    k: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct ConjectureArgs {
    #[arg(long)]
    k_max: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct McArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    common: Common,
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected `a..b`, got `{s}`"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: usize = a.trim().parse().map_err(|e| format!("bad range start: {e}"))?;
    let b: usize = b.trim().parse().map_err(|e| format!("bad range end: {e}"))?;
    if a == 0 || a > b {
        return Err(format!("range `{s}` must satisfy 1 <= a <= b"));
    }
    Ok(a..=b)
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::InvalidArgument(_) => 2,
        Error::ScaleLimit { .. } => 3,
        Error::Numerical(_) => 4,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let started = Instant::now();

    let outcome = match &cli.command {
        Command::Schema { command } => {
            return match output::schema(command) {
                Some(s) => {
                    print!("{s}");
                    ExitCode::SUCCESS
                }
                None => {
                    eprintln!("error: no schema for command `{command}`");
                    ExitCode::from(2)
                }
            };
        }
        Command::Count(args) => run_count(args),
        Command::Poly(args) => run_poly(args),
        Command::Conjecture(args) => run_conjecture(args),
        Command::Mc(args) => run_mc(args),
    };

    match outcome {
        Ok((name, params, payload, format)) => {
            let runtime_ms = started.elapsed().as_millis() as u64;
            let text = match format {
                Format::Json => output::render_json(&payload.into_record(name, params, runtime_ms)),
                Format::Csv => output::render_csv(&payload.table),
            };
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            log::info!("{name} finished in {runtime_ms} ms");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}

type Outcome = Result<(&'static str, Map<String, Value>, Payload, Format), Error>;

fn format_of(c: &Common) -> Format {
    match c.format {
        FormatArg::Json => Format::Json,
        FormatArg::Csv => Format::Csv,
    }
}

fn params(pairs: Value) -> Map<String, Value> {
    match pairs {
        Value::Object(m) => m,
        _ => Map::new(),
    }
}

fn count_options(c: &Common, prune: bool) -> CountOptions {
    CountOptions { workers: c.workers, prune, ..CountOptions::default() }
}

fn run_count(args: &CountArgs) -> Outcome {
    let ks = match (&args.k, &args.k_range) {
        (Some(k), _) => *k..=*k,
        (None, Some(r)) => r.clone(),
        (None, None) => unreachable!("clap enforces the group"),
    };
    let opts = count_options(&args.common, !args.no_prune);
    let rows = ks
        .clone()
        .map(|k| if args.brute { count_brute(k) } else { count_ddcg_partitions(k, &opts) })
        .collect::<Result<Vec<FRow>, _>>()?;
    let p = params(json!({
        "k_min": ks.start(),
        "k_max": ks.end(),
        "prune": !args.no_prune,
        "brute": args.brute,
    }));
    Ok(("count", p, output::count_payload(&rows), format_of(&args.common)))
}

fn run_poly(args: &PolyArgs) -> Outcome {
    let row = count_ddcg_partitions(args.k, &count_options(&args.common, true))?;
    let poly = MomentPolynomial::from_row(&row);
    if !poly.bases_agree() {
        return Err(Error::Numerical("falling-factorial and monomial forms disagree".into()));
    }
    Ok(("poly", params(json!({ "k": args.k })), output::poly_payload(&[poly]), format_of(&args.common)))
}

fn run_conjecture(args: &ConjectureArgs) -> Outcome {
    let opts = count_options(&args.common, true);
    let rows = (1..=args.k_max)
        .map(|k| count_ddcg_partitions(k, &opts))
        .collect::<Result<Vec<FRow>, _>>()?;
    let disproofs = disproofs_in(&rows);
    Ok((
        "conjecture",
        params(json!({ "k_max": args.k_max })),
        output::conjecture_payload(&rows, &disproofs),
        format_of(&args.common),
    ))
}

fn run_mc(args: &McArgs) -> Outcome {
    let opts = SamplingOptions {
        samples: args.samples,
        seed: args.seed,
        workers: args.common.workers,
        ..SamplingOptions::default()
    };
    let estimate = estimate_moment(args.n, args.k, &opts)?;
    let row = count_ddcg_partitions(args.k, &count_options(&args.common, true))?;
    let exact = exact_moment(&MomentPolynomial::from_row(&row), args.n);
    let z = z_score(estimate.mean, exact, estimate.std_error);
    let p = params(json!({ "n": args.n, "k": args.k, "samples": args.samples, "seed": args.seed }));
    Ok(("mc", p, output::mc_payload(&estimate, exact, z), format_of(&args.common)))
}
