//! Argument handling for the `advgrad` binary.
//!
//! Exit statuses: 0 on success, 2 for malformed flags, 1 for bad input files
//! or configurations, 3 when the run hits a numerical failure.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use advgrad::{load_matrix, run, write_trace, Error, InitialPoint, Method, RewardMatrix, SimplexVector, SolverConfig};
use clap::{ArgGroup, CommandFactory, Parser};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "advgrad",
    version,
    about = "Run adversarial gradient schemes on a zero-sum matrix game and write a CSV trace"
)]
#[command(group(ArgGroup::new("source").required(true).args(["game", "matrix"])))]
pub struct Args {
    /// Built-in game (only "rps")
    #[arg(long)]
    pub game: Option<String>,

    /// Matrix file: one row per line, comma or whitespace separated
    #[arg(long)]
    pub matrix: Option<PathBuf>,

    /// cg, euclid or kl
    #[arg(long)]
    pub method: String,

    /// Step size in [0, 1]
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,

    /// Penalty strength (euclid and kl only)
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,

    #[arg(long, default_value_t = 1000)]
    pub iters: usize,

    /// Comma-separated initial strategy for x (default uniform)
    #[arg(long, allow_hyphen_values = true)]
    pub init_x: Option<String>,

    /// Comma-separated initial strategy for y (default uniform)
    #[arg(long, allow_hyphen_values = true)]
    pub init_y: Option<String>,

    #[arg(long, default_value_t = 1)]
    pub record_every: usize,

    /// Trace output path
    #[arg(long)]
    pub out: PathBuf,
}

/// Parses `args` (including the program name), runs the solver and writes
/// the trace. Returns the process exit status.
pub fn run_command<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(args) => args,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{rendered}");
                return EXIT_OK;
            }
            let _ = write!(stderr, "{rendered}");
            if !rendered.contains("Usage:") {
                let _ = writeln!(stderr, "\n{}", Args::command().render_usage());
            }
            return EXIT_USAGE;
        }
    };
    match execute(&args, stdout) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Numeric(_) => EXIT_NUMERIC,
        _ => EXIT_INPUT,
    }
}

fn execute(args: &Args, stdout: &mut dyn Write) -> advgrad::Result<()> {
    let game = resolve_game(args)?;
    let config = build_config(args)?;
    let result = run(&game, &config)?;

    let file = File::create(&args.out)
        .map_err(|e| Error::InvalidInput(format!("cannot create {}: {e}", args.out.display())))?;
    write_trace(BufWriter::new(file), &result)?;

    let last = result.records.last().expect("runs always record iteration 0");
    writeln!(
        stdout,
        "method={} iters={} reward={} gap={}",
        config.method, last.k, last.reward, last.gap
    )?;
    Ok(())
}

fn resolve_game(args: &Args) -> advgrad::Result<RewardMatrix> {
    match (&args.game, &args.matrix) {
        (Some(name), None) => match name.as_str() {
            "rps" => Ok(RewardMatrix::rps()),
            other => Err(Error::Config(format!("unknown built-in game {other:?} (available: rps)"))),
        },
        (None, Some(path)) => load_matrix(path).map_err(|e| match e {
            Error::Io(io) => Error::InvalidInput(format!("cannot read {}: {io}", path.display())),
            Error::Format { line, column, message } => Error::Format {
                line,
                column,
                message: format!("{}: {message}", path.display()),
            },
            other => other,
        }),
        _ => unreachable!("clap enforces exactly one game source"),
    }
}

fn build_config(args: &Args) -> advgrad::Result<SolverConfig> {
    let method: Method = args.method.parse()?;
    let mut config = SolverConfig::new(method, args.alpha)
        .with_iterations(args.iters)
        .with_record_every(args.record_every)
        .with_init(
            parse_init(args.init_x.as_deref(), "--init-x")?,
            parse_init(args.init_y.as_deref(), "--init-y")?,
        );
    config.beta = args.beta;
    config.validate()?;
    Ok(config)
}

fn parse_init(raw: Option<&str>, flag: &str) -> advgrad::Result<InitialPoint> {
    let Some(raw) = raw else {
        return Ok(InitialPoint::Uniform);
    };
    let coords = raw
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidInput(format!("{flag}: cannot parse {tok:?} as a number")))
        })
        .collect::<advgrad::Result<Vec<f64>>>()?;
    SimplexVector::new(coords)
        .map(InitialPoint::Given)
        .map_err(|e| Error::InvalidInput(format!("{flag}: {e}")))
}
