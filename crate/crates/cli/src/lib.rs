//! Command-line driver: loads a scenario file, runs sweeps, proposition
//! checks or a single-realization dump, and writes the results.

mod config;

use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use thiserror::Error;

use irs_noma::experiments::{
    build_case, compare_realization, run_sweep, run_trials, sweep_rows, validate_propositions,
    write_csv, Access, DeploymentCase, SweepSpec, SweepVariable,
};
use irs_noma::schemes::watts_to_dbm;
use irs_noma::solvers::Method;

pub use config::{parse_config, preset, ExperimentConfig};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error in {field}: {reason}")]
    Config { field: String, reason: String },

    #[error("solver error: {0}")]
    Solver(#[from] irs_noma::Error),

    #[error("proposition violation: {0}")]
    Violation(String),

    #[error("i/o error on {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
}

impl CliError {
    /// 3 for configuration, 4 for solver, 5 for violations, 6 for I/O.
    /// Command-line misuse exits with 2 before any of these can occur.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config { .. } => 3,
            CliError::Solver(_) => 4,
            CliError::Violation(_) => 5,
            CliError::Io { .. } => 6,
        }
    }
}

fn io_error(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_owned(),
        source,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Sweep,
    Validate,
    SolveOne { trial: u64 },
}

/// Command-line values that take precedence over the configuration file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub trials: Option<usize>,
    pub methods: Option<Vec<Method>>,
    pub case: Option<DeploymentCase>,
    pub sweep: Option<SweepVariable>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunManifest {
    /// Without a file, the preset of `overrides.case` (or case 1) is used.
    pub config: Option<PathBuf>,
    pub out: PathBuf,
    pub command: Command,
    pub overrides: Overrides,
}

impl RunManifest {
    fn methods(&self) -> Vec<Method> {
        self.overrides
            .methods
            .clone()
            .unwrap_or_else(|| Method::ALL.to_vec())
    }
}

/// Reads the configuration and applies the overrides.
pub fn load(manifest: &RunManifest) -> Result<ExperimentConfig, CliError> {
    let o = &manifest.overrides;
    let mut cfg = match &manifest.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(io_error(path))?;
            parse_config(&text)?
        }
        None => parse_config(preset(o.case.unwrap_or(DeploymentCase::Case1)))?,
    };
    if let Some(case) = o.case {
        cfg.scenario.geometry = build_case(case);
    }
    if let Some(seed) = o.seed {
        cfg.scenario.seed = seed;
    }
    if let Some(trials) = o.trials {
        cfg.scenario.trials = trials;
    }
    if let Some(variable) = o.sweep {
        if variable != cfg.sweep.variable {
            cfg.sweep = SweepSpec::default_for(variable);
        }
    }
    if matches!(&o.methods, Some(m) if m.is_empty()) {
        return Err(CliError::Config {
            field: "--methods".into(),
            reason: "at least one method is required".into(),
        });
    }
    cfg.scenario.validate().map_err(|e| CliError::Config {
        field: "overrides".into(),
        reason: e.to_string(),
    })?;
    Ok(cfg)
}

/// Writes `contents` to `path` through a temporary file in the same
/// directory, so readers never see a partial file.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    let dir = path.parent().unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_error(dir))?;
    tmp.write_all(contents).map_err(io_error(path))?;
    tmp.as_file().sync_all().map_err(io_error(path))?;
    tmp.persist(path).map_err(|e| CliError::Io {
        path: path.to_owned(),
        source: e.error,
    })?;
    Ok(())
}

fn prepare_out(out: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(out).map_err(io_error(out))
}

/// Runs the manifest. Progress and results go to `stdout`; files go under
/// `manifest.out`.
pub fn run(manifest: &RunManifest, stdout: &mut dyn Write) -> Result<(), CliError> {
    let cfg = load(manifest)?;
    let stdout_error = |e: io::Error| CliError::Io {
        path: PathBuf::from("<stdout>"),
        source: e,
    };
    match manifest.command {
        Command::Sweep => {
            prepare_out(&manifest.out)?;
            let points = run_sweep(&cfg.scenario, &cfg.sweep, &manifest.methods())?;
            let rows = sweep_rows(&points, cfg.scenario.seed)?;
            let mut csv = Vec::new();
            write_csv(&rows, &mut csv)?;
            let path = manifest
                .out
                .join(format!("sweep-{}.csv", cfg.sweep.variable));
            write_atomic(&path, &csv)?;
            writeln!(stdout, "wrote {} rows to {}", rows.len(), path.display())
                .map_err(stdout_error)?;
        }
        Command::Validate => {
            prepare_out(&manifest.out)?;
            let mut text = String::new();
            let mut failed = Vec::new();
            for &value in &cfg.sweep.values {
                let rates = cfg.sweep.rates_at(value)?;
                let records = run_trials(&cfg.scenario, rates, &[Method::BruteForce])?;
                let report = validate_propositions(&records, Method::BruteForce);
                let _ = writeln!(
                    text,
                    "== {} = {value} (gamma1 {}, gamma2 {})",
                    cfg.sweep.variable, rates.gamma1, rates.gamma2
                );
                text.push_str(&report.render());
                if !report.passed() {
                    failed.push(format!("{value}: {}", report.summary_line()));
                }
            }
            let path = manifest.out.join("validation.txt");
            write_atomic(&path, text.as_bytes())?;
            let status = if failed.is_empty() { "PASS" } else { "FAIL" };
            writeln!(
                stdout,
                "{status} points={} trials={} report={}",
                cfg.sweep.values.len(),
                cfg.scenario.trials,
                path.display()
            )
            .map_err(stdout_error)?;
            if !failed.is_empty() {
                return Err(CliError::Violation(failed.join("; ")));
            }
        }
        Command::SolveOne { trial } => {
            let s = &cfg.scenario;
            let record =
                compare_realization(s, trial, s.realization(trial), s.rates, &manifest.methods())?;
            let mut text = format!(
                "trial {trial} seed {} gamma1 {} gamma2 {} M {} L {}\n",
                s.seed,
                s.rates.gamma1,
                s.rates.gamma2,
                s.irs.num_subsurfaces(),
                s.irs.phase_levels()
            );
            for (method, results) in &record.methods {
                for access in Access::ALL {
                    let r = results.get(access);
                    let _ = writeln!(
                        text,
                        "{:<7} {:<5} {:.6e} W ({:.3} dBm) theta {}{} evaluations {}",
                        method.name(),
                        access.name(),
                        r.total_power,
                        watts_to_dbm(r.total_power),
                        r.theta,
                        r.decoding_order
                            .map_or(String::new(), |o| format!(" order {o}")),
                        r.evaluations
                    );
                }
            }
            for access in Access::ALL {
                let p = record.no_irs.power(access);
                let _ = writeln!(
                    text,
                    "{:<7} {:<5} {p:.6e} W ({:.3} dBm)",
                    "no-irs",
                    access.name(),
                    watts_to_dbm(p)
                );
            }
            stdout.write_all(text.as_bytes()).map_err(stdout_error)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn manifest(command: Command, out: &Path) -> RunManifest {
        RunManifest {
            config: None,
            out: out.to_owned(),
            command,
            overrides: Overrides {
                trials: Some(3),
                ..Overrides::default()
            },
        }
    }

    #[test]
    fn exit_codes_are_distinct() {
        let codes = [
            CliError::Config {
                field: "x".into(),
                reason: "y".into(),
            }
            .exit_code(),
            CliError::Solver(irs_noma::Error::EmptyRecords).exit_code(),
            CliError::Violation(String::new()).exit_code(),
            CliError::Io {
                path: PathBuf::new(),
                source: io::Error::other("x"),
            }
            .exit_code(),
        ];
        assert_eq!(codes, [3, 4, 5, 6]);
    }

    #[test]
    fn overrides_apply() {
        let dir = tempfile::tempdir().unwrap();
        let mut m = manifest(Command::Sweep, dir.path());
        m.overrides.case = Some(DeploymentCase::Case2);
        m.overrides.seed = Some(9);
        m.overrides.sweep = Some(SweepVariable::SplitRate);
        let cfg = load(&m).unwrap();
        assert_eq!(cfg.scenario.geometry, build_case(DeploymentCase::Case2));
        assert_eq!((cfg.scenario.seed, cfg.scenario.trials), (9, 3));
        assert_eq!(cfg.sweep, SweepSpec::split_rate_default());
    }

    #[test]
    fn zero_trials_is_a_config_error() {
        let dir = tempfile::tempdir().unwrap();
        let mut m = manifest(Command::Sweep, dir.path());
        m.overrides.trials = Some(0);
        assert_eq!(load(&m).unwrap_err().exit_code(), 3);
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("a.csv");
        write_atomic(&path, b"one").unwrap();
        write_atomic(&path, b"two").unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), b"two");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }

    #[test]
    fn solve_one_lists_every_scheme_and_method() {
        let dir = tempfile::tempdir().unwrap();
        let mut m = manifest(Command::SolveOne { trial: 2 }, dir.path());
        m.overrides.methods = Some(vec![Method::LaAo, Method::RpsAo]);
        let mut out = Vec::new();
        run(&m, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.starts_with("trial 2 seed 2020"));
        assert_eq!(text.lines().count(), 1 + 2 * 3 + 3);
        assert!(text.contains("order noma-order"));
    }
}
