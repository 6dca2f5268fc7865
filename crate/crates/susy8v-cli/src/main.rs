//! Command-line front end for the verification suites.
//!
//! Every subcommand prints its payload (a JSON report, a spectrum table, or
//! a single number) to stdout or to `--out`, and reserves stderr for
//! one-line diagnostics. Exit codes: 0 when every check passed, 1 when a
//! check failed, 2 for a malformed invocation or configuration.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use susy8v::harness::{
    run_suite, transfer_spectrum, Suite, SuiteConfig, WeightSource, DEFAULT_SEED,
};
use susy8v::spectral::DENSE_GENERAL_LIMIT;
use susy8v::tolerance;
use susy8v::vertex::{solve_d, word_sum, VertexWeights};

#[derive(Parser)]
#[command(
    name = "susy8v",
    version,
    about = "Verification suites for the supersymmetric eight-vertex model"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and print its JSON report.
    Verify {
        /// Suite to run; `all` runs every suite at the lengths it admits.
        #[arg(long, value_parser = parse_suite, default_value = "all")]
        suite: Suite,
        #[command(flatten)]
        args: VerifyArgs,
    },
    /// Clustered transfer-matrix spectrum at fixed weights.
    Spectrum {
        /// Chain length.
        #[arg(long = "L")]
        length: usize,
        /// Weights a,b,c (d solved from the constraint) or a,b,c,d.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weights: Vec<f64>,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
        /// Largest dense dimension the eigensolver may be asked for.
        #[arg(long, default_value_t = DENSE_GENERAL_LIMIT)]
        dense_limit: usize,
        /// Accept quadruples off the constraint manifold.
        #[arg(long)]
        allow_unconstrained: bool,
        /// Write the payload here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Θₙ containment and the zero-energy pair (the `stroganov` suite).
    Stroganov {
        #[command(flatten)]
        args: VerifyArgs,
    },
    /// Supercharge algebra checks (the `nilpotency` suite).
    Susy {
        #[command(flatten)]
        args: VerifyArgs,
    },
    /// Weight-map identities of the elliptic parametrisation.
    Elliptic {
        #[command(flatten)]
        args: VerifyArgs,
    },
    /// Braid relation of the elliptic R-matrix family.
    Yangbaxter {
        #[command(flatten)]
        args: VerifyArgs,
    },
    /// Sum the gap words of (a+b)^(2n+1) and print the total.
    WordSum {
        #[arg(long)]
        n: usize,
        /// The two letter values a,b.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weights: Vec<f64>,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Chain lengths, comma-separated or repeated.
    #[arg(long = "L", value_delimiter = ',')]
    lengths: Vec<usize>,
    /// Weights a,b,c (d solved from the constraint) or a,b,c,d.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    weights: Option<Vec<f64>>,
    /// Weight source; inferred from the weight count when omitted.
    #[arg(long, value_parser = parse_source)]
    source: Option<WeightSource>,
    /// Crossing parameter, radians or multiples of π such as `pi/3`.
    #[arg(long, value_parser = parse_angle, allow_negative_numbers = true)]
    eta: Option<f64>,
    #[arg(long)]
    nome: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    u: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    v: Option<f64>,
    /// Normalisation of the elliptic weight map.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    rho: f64,
    /// Anisotropy for the supersymmetry suites.
    #[arg(long, allow_negative_numbers = true)]
    zeta: Option<f64>,
    /// Parameter draws for sampled sources.
    #[arg(long, default_value_t = 1)]
    samples: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Tolerance override `key=value`; may be repeated.
    #[arg(long = "tol", value_parser = parse_override)]
    tol: Vec<(String, f64)>,
    /// Accept explicit quadruples off the constraint manifold.
    #[arg(long)]
    allow_unconstrained: bool,
    /// Write the payload here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

fn parse_suite(text: &str) -> Result<Suite, String> {
    text.parse::<Suite>().map_err(|error| error.to_string())
}

fn parse_source(text: &str) -> Result<WeightSource, String> {
    match text {
        "explicit" => Ok(WeightSource::Explicit),
        "solve-d" => Ok(WeightSource::SolveD),
        "elliptic" => Ok(WeightSource::Elliptic),
        other => Err(format!(
            "unknown weight source `{other}` (expected explicit, solve-d, or elliptic)"
        )),
    }
}

/// Either plain radians or `[c]pi[/d]`: `pi/3`, `2pi/3`, `0.5pi`.
fn parse_angle(text: &str) -> Result<f64, String> {
    let trimmed = text.trim();
    if let Some(position) = trimmed.find("pi") {
        let coefficient = match &trimmed[..position] {
            "" => 1.0,
            "-" => -1.0,
            head => head
                .parse::<f64>()
                .map_err(|_| format!("invalid π coefficient `{head}`"))?,
        };
        let denominator = match &trimmed[position + 2..] {
            "" => 1.0,
            tail => tail
                .strip_prefix('/')
                .ok_or_else(|| format!("expected `/denominator` after π, got `{tail}`"))?
                .parse::<f64>()
                .map_err(|_| format!("invalid π denominator `{tail}`"))?,
        };
        return Ok(coefficient * PI / denominator);
    }
    trimmed
        .parse::<f64>()
        .map_err(|_| format!("invalid angle `{trimmed}` (radians or `pi/3` style)"))
}

fn parse_override(text: &str) -> Result<(String, f64), String> {
    let (key, value) = text
        .split_once('=')
        .ok_or_else(|| format!("expected key=value, got `{text}`"))?;
    let value = value
        .parse::<f64>()
        .map_err(|_| format!("invalid tolerance value `{value}` for `{key}`"))?;
    Ok((key.to_owned(), value))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Verify { suite, args } => run_verify(suite, args, &[2, 3, 4, 5]),
        Command::Stroganov { args } => run_verify(Suite::Stroganov, args, &[3, 5]),
        Command::Susy { mut args } => {
            if args.zeta.is_none() && args.weights.is_none() {
                args.zeta = Some(1.0);
            }
            run_verify(Suite::Nilpotency, args, &[2, 3, 4])
        }
        Command::Elliptic { args } => run_verify(Suite::Elliptic, args, &[2, 3]),
        Command::Yangbaxter { mut args } => {
            // The braid checks live on three local spaces; the chain length
            // is irrelevant but the config requires one.
            if args.lengths.is_empty() {
                args.lengths = vec![2];
            }
            if args.weights.is_none() && args.samples == 1 && args.nome.is_none() {
                args.samples = 5;
            }
            run_verify(Suite::YangBaxter, args, &[2])
        }
        Command::WordSum { n, weights } => run_word_sum(n, &weights),
        Command::Spectrum {
            length,
            weights,
            format,
            dense_limit,
            allow_unconstrained,
            out,
        } => run_spectrum(length, &weights, format, dense_limit, allow_unconstrained, out),
    }
}

fn run_verify(
    suite: Suite,
    args: VerifyArgs,
    default_lengths: &[usize],
) -> Result<ExitCode, String> {
    let (config, out) = build_config(suite, args, default_lengths);
    let report = run_suite(&config).map_err(|error| error.to_string())?;
    let payload =
        serde_json::to_string_pretty(&report).map_err(|error| error.to_string())?;
    emit(&payload, out.as_ref())?;
    Ok(if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn build_config(
    suite: Suite,
    args: VerifyArgs,
    default_lengths: &[usize],
) -> (SuiteConfig, Option<PathBuf>) {
    let VerifyArgs {
        lengths,
        weights,
        source,
        eta,
        nome,
        u,
        v,
        rho,
        zeta,
        samples,
        seed,
        tol,
        allow_unconstrained,
        out,
    } = args;
    let lengths = if lengths.is_empty() {
        default_lengths.to_vec()
    } else {
        lengths
    };
    // A triple leaves d to the constraint; anything else names the full
    // quadruple and is validated downstream.
    let source = source.unwrap_or(match weights.as_deref().map(<[f64]>::len) {
        None | Some(3) => WeightSource::SolveD,
        Some(_) => WeightSource::Explicit,
    });
    let mut config = SuiteConfig::new(suite, lengths);
    config.source = source;
    config.weights = weights;
    config.eta = eta;
    config.nome = nome;
    config.u = u;
    config.v = v;
    config.rho = rho;
    config.zeta = zeta;
    config.samples = samples;
    config.seed = seed;
    config.allow_unconstrained = allow_unconstrained;
    config.tolerance_overrides = tol.into_iter().collect::<BTreeMap<String, f64>>();
    (config, out)
}

fn run_word_sum(n: usize, weights: &[f64]) -> Result<ExitCode, String> {
    if weights.len() != 2 {
        return Err(format!(
            "word-sum takes exactly two weight values a,b; got {}",
            weights.len()
        ));
    }
    if !(1..=12).contains(&n) {
        return Err(format!("n must be between 1 and 12, got {n}"));
    }
    let report = word_sum(weights[0], weights[1], n);
    emit(&report.tuple_sum.to_string(), None)?;
    Ok(if report.relative_error <= tolerance::WORD_SUM {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run_spectrum(
    length: usize,
    weights: &[f64],
    format: OutputFormat,
    dense_limit: usize,
    allow_unconstrained: bool,
    out: Option<PathBuf>,
) -> Result<ExitCode, String> {
    let dim = 1usize
        .checked_shl(length as u32)
        .ok_or_else(|| format!("chain length {length} is far too large"))?;
    if dim > dense_limit {
        return Err(format!(
            "chain length {length} needs a {dim}-dimensional dense solve, \
             above the dense limit {dense_limit}"
        ));
    }
    let w = build_weights(weights, allow_unconstrained)?;
    let export = transfer_spectrum(&w, length).map_err(|error| error.to_string())?;
    let payload = match format {
        OutputFormat::Json => {
            serde_json::to_string_pretty(&export).map_err(|error| error.to_string())?
        }
        OutputFormat::Csv => export.to_csv().trim_end().to_owned(),
    };
    emit(&payload, out.as_ref())?;
    Ok(ExitCode::SUCCESS)
}

fn build_weights(values: &[f64], allow_unconstrained: bool) -> Result<VertexWeights, String> {
    match values.len() {
        3 => solve_d(values[0], values[1], values[2]).map_err(|error| error.to_string()),
        4 if allow_unconstrained => Ok(VertexWeights::unchecked(
            values[0], values[1], values[2], values[3],
        )),
        4 => VertexWeights::new(values[0], values[1], values[2], values[3])
            .map_err(|error| error.to_string()),
        got => Err(format!(
            "expected three (a, b, c) or four (a, b, c, d) weight values, got {got}"
        )),
    }
}

fn emit(payload: &str, out: Option<&PathBuf>) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, format!("{payload}\n"))
            .map_err(|error| format!("cannot write {}: {error}", path.display())),
        None => match writeln!(io::stdout(), "{payload}") {
            Ok(()) => Ok(()),
            // A closed pipe (e.g. `susy8v ... | head`) is not our error.
            Err(error) if error.kind() == io::ErrorKind::BrokenPipe => Ok(()),
            Err(error) => Err(format!("cannot write to stdout: {error}")),
        },
    }
}
