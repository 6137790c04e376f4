use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use irs_noma::experiments::{DeploymentCase, SweepVariable};
use irs_noma::solvers::Method;
use irs_noma_cli::{run, Command, Overrides, RunManifest};

/// Discrete IRS phase-shift design for two-user NOMA, FDMA and TDMA.
#[derive(Debug, Parser)]
#[command(name = "irs-noma", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Scenario file (TOML). Defaults to the preset of --case.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Output directory.
    #[arg(long, global = true, value_name = "DIR", default_value = "results")]
    out: PathBuf,

    #[arg(long, global = true, value_name = "U64")]
    seed: Option<u64>,

    #[arg(long, global = true, value_name = "N")]
    trials: Option<usize>,

    /// Comma-separated subset of brute, la-ao, rps-ao.
    #[arg(long, global = true, value_delimiter = ',', value_parser = parse_method)]
    methods: Option<Vec<Method>>,

    /// Deployment case; replaces the geometry of --config.
    #[arg(long, global = true, value_enum)]
    case: Option<CaseArg>,

    /// Sweep variable; picks its default grid unless the config sweeps it.
    #[arg(long, global = true, value_enum)]
    sweep: Option<SweepArg>,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Run the rate sweep and write a CSV summary.
    Sweep,
    /// Check FDMA >= TDMA and FDMA >= NOMA on every brute-force instance.
    Validate,
    /// Print every scheme's solution for one realization.
    SolveOne {
        #[arg(long, default_value_t = 0)]
        trial: u64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CaseArg {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SweepArg {
    CommonRate,
    SplitRate,
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: irs_noma::Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let manifest = RunManifest {
        config: cli.config,
        out: cli.out,
        command: match cli.command {
            Cmd::Sweep => Command::Sweep,
            Cmd::Validate => Command::Validate,
            Cmd::SolveOne { trial } => Command::SolveOne { trial },
        },
        overrides: Overrides {
            seed: cli.seed,
            trials: cli.trials,
            methods: cli.methods,
            case: cli.case.map(|c| match c {
                CaseArg::One => DeploymentCase::Case1,
                CaseArg::Two => DeploymentCase::Case2,
            }),
            sweep: cli.sweep.map(|s| match s {
                SweepArg::CommonRate => SweepVariable::CommonRate,
                SweepArg::SplitRate => SweepVariable::SplitRate,
            }),
        },
    };
    match run(&manifest, &mut std::io::stdout().lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("irs-noma: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
