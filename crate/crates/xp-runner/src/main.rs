use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use bosonsim_xp::{
    fit_scaling, format_g12, read_csv, rows_to_csv, run, write_csv, Backend, Column, FileConfig, RunConfig, XpError,
};
use clap::{Args, Parser, Subcommand};

/// Time-bin boson scattering experiments.
///
/// Every `run` option can also be given through a `BOSONSIM_*` environment
/// variable or a TOML file passed with `--config`. Flags take precedence over
/// the environment, which takes precedence over the file.
#[derive(Parser)]
#[command(name = "bosonsim", version, about, long_about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a circuit and write a CSV report.
    Run(RunArgs),
    /// Fit a power law `column ~ n^slope` to a CSV report.
    Fit(FitArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Circuit file.
    #[arg(long, env = "BOSONSIM_CIRCUIT")]
    circuit: Option<PathBuf>,
    /// Back-end: `ideal` (exact, unbinned) or `binned`.
    #[arg(long, env = "BOSONSIM_BACKEND", value_parser = clap::builder::ValueParser::new(str::parse::<Backend>))]
    backend: Option<Backend>,
    /// Strictly ascending bin counts, comma-separated.
    #[arg(long, env = "BOSONSIM_N", value_delimiter = ',')]
    n: Option<Vec<usize>>,
    /// Probability that a coincident bin scatters (1 = hard model).
    #[arg(long, env = "BOSONSIM_P_SCATTER")]
    p_scatter: Option<f64>,
    /// Output CSV path; standard output if omitted.
    #[arg(long, env = "BOSONSIM_OUT")]
    out: Option<PathBuf>,
    /// Recorded but unused: runs are deterministic.
    #[arg(long, env = "BOSONSIM_SEED")]
    seed: Option<u64>,
    /// Write 0 in the wall_time_ms column, making output byte-reproducible.
    #[arg(long, env = "BOSONSIM_NO_TIMING")]
    no_timing: bool,
    /// TOML file with keys circuit, backend, n, p_scatter, out, seed, timing.
    #[arg(long, env = "BOSONSIM_CONFIG")]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct FitArgs {
    /// CSV report produced by `run`.
    #[arg(long = "in", env = "BOSONSIM_FIT_IN")]
    input: PathBuf,
    /// Column to fit against n.
    #[arg(long, env = "BOSONSIM_FIT_COLUMN", default_value = "scattered", value_parser = clap::builder::ValueParser::new(str::parse::<Column>))]
    column: Column,
}

fn resolve(args: RunArgs) -> Result<RunConfig, XpError> {
    let file = match &args.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let circuit_path = args.circuit.or(file.circuit).ok_or_else(|| XpError::Config("no circuit given (--circuit)".into()))?;
    let backend = args.backend.or(file.backend).ok_or_else(|| XpError::Config("no backend given (--backend)".into()))?;
    Ok(RunConfig {
        circuit_path,
        backend,
        n_list: args.n.or(file.n).unwrap_or_default(),
        p_scatter: args.p_scatter.or(file.p_scatter).unwrap_or(1.0),
        output_path: args.out.or(file.out),
        seed: args.seed.or(file.seed).unwrap_or(0),
        timing: !args.no_timing && file.timing.unwrap_or(true),
    })
}

fn run_command(args: RunArgs) -> Result<(), XpError> {
    let config = resolve(args)?;
    let rows = run(&config)?;
    match &config.output_path {
        Some(path) => write_csv(&rows, path),
        None => {
            print!("{}", rows_to_csv(&rows));
            Ok(())
        }
    }
}

fn fit_command(args: FitArgs) -> Result<(), XpError> {
    let rows = read_csv(&args.input)?;
    let fit = fit_scaling(&rows, args.column)?;
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "column,slope,intercept,r_squared");
    let _ = writeln!(out, "{},{},{},{}", args.column.name(), format_g12(fit.slope), format_g12(fit.intercept), format_g12(fit.r_squared));
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => run_command(args),
        Command::Fit(args) => fit_command(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
