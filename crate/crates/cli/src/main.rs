use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use ensemble_parity::ensemble::DEFAULT_THRESHOLD;
use ensemble_parity_cli::bench::render_bench;
use ensemble_parity_cli::{bench, run_experiment, CliError, ExperimentConfig, Format, FunctionSource};

/// Decide the parity of a Boolean function with the spin-ensemble protocol.
///
/// Exit status: 0 on success, 1 on bad input, 2 when --verify disagrees.
#[derive(Debug, Parser)]
#[command(name = "ensemble-parity", version)]
struct Args {
    /// Number of work qubits (taken from the file for file sources).
    #[arg(long)]
    n: Option<usize>,

    /// const-plus | const-minus | random | single:<x> | file:<path> | <path>
    #[arg(long)]
    function: Option<String>,

    /// Seed for `random`.
    #[arg(long)]
    seed: Option<u64>,

    /// Probability that `random` marks an input.
    #[arg(long, default_value_t = 0.5)]
    density: f64,

    /// Polarisation factors: one value for all spins or a comma-separated list.
    #[arg(long, value_delimiter = ',')]
    epsilon: Option<Vec<f64>>,

    /// Amplitudes at or below this magnitude count as zero.
    #[arg(long, default_value_t = DEFAULT_THRESHOLD)]
    threshold: f64,

    /// Scale amplitudes by 2/N as a finite-sensitivity spectrometer would.
    #[arg(long)]
    snr: bool,

    /// Compare the result with a brute-force parity count.
    #[arg(long)]
    verify: bool,

    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,

    /// json or csv (trace rows only).
    #[arg(long, default_value = "json")]
    format: Format,

    /// Time one oracle run for each listed n, e.g. `--bench 2,4,6,8`.
    #[arg(long, value_delimiter = ',')]
    bench: Option<Vec<usize>>,
}

fn config(args: &Args) -> Result<ExperimentConfig, CliError> {
    let source = match (&args.function, &args.bench) {
        (Some(spec), _) => FunctionSource::parse(spec, args.seed, args.density)?,
        (None, Some(_)) => FunctionSource::Single(0),
        (None, None) => return Err(CliError::Config("--function is required".into())),
    };
    if args.seed.is_some() && !source.is_random() {
        return Err(CliError::Config("--seed only applies to random functions".into()));
    }
    Ok(ExperimentConfig {
        n: args.n,
        source,
        epsilon: args.epsilon.clone(),
        threshold: args.threshold,
        snr: args.snr,
        verify: args.verify,
        out: args.out.clone(),
        format: args.format,
    })
}

fn run(args: &Args) -> Result<u8, CliError> {
    let config = config(args)?;
    if let Some(sizes) = &args.bench {
        let report = bench(&config, sizes)?;
        if config.out.is_none() {
            print!("{}", render_bench(&report, config.format)?);
        }
        return Ok(0);
    }
    let outcome = run_experiment(&config)?;
    if config.out.is_none() {
        print!("{}", outcome.rendered);
    }
    if outcome.status.code() != 0 {
        eprintln!(
            "error: simulated parity {} disagrees with brute-force parity {}",
            outcome.report.parity,
            outcome.report.g_parity_reference.unwrap_or_default()
        );
    }
    Ok(outcome.status.code())
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(&args) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
