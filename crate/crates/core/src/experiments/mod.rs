//! Monte Carlo comparison of NOMA, FDMA and TDMA over the two deployment
//! cases, with proposition checks, summaries and CSV output.

mod report;
mod run;
mod scenario;
mod summary;
mod validate;

pub use report::{read_csv, sweep_rows, write_csv, ReportRow, CSV_HEADER};
pub use run::{
    compare_realization, run_sweep, run_trials, Access, BaselinePowers, ComparisonRecord,
    SchemeResults, SweepPoint,
};
pub use scenario::{
    build_case, DeploymentCase, Scenario, SweepSpec, SweepVariable, AP_IRS_DISTANCE,
    FAR_USER_DISTANCE, NEAR_USER_DISTANCE,
};
pub use summary::{summarize, MethodLabel, SchemeSummary, Summary};
pub use validate::{
    validate_propositions, EqualityCase, Proposition, ValidationReport, Violation,
    PROPOSITION_TOLERANCE,
};
