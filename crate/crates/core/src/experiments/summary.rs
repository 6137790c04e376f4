use std::fmt;

use crate::error::{Error, Result};
use crate::schemes::watts_to_dbm;
use crate::solvers::Method;

use super::run::{Access, ComparisonRecord};

/// A solver method, or the IRS-free baseline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MethodLabel {
    Solver(Method),
    NoIrs,
}

impl MethodLabel {
    pub fn name(self) -> &'static str {
        match self {
            MethodLabel::Solver(m) => m.name(),
            MethodLabel::NoIrs => "no-irs",
        }
    }
}

impl fmt::Display for MethodLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Statistics of one (scheme, method) pair over a set of trials.
#[derive(Debug, Clone, PartialEq)]
pub struct SchemeSummary {
    pub access: Access,
    pub method: MethodLabel,
    pub trials: usize,
    /// Arithmetic mean in watts.
    pub mean_power: f64,
    /// Mean power expressed in dBm (`-inf` when it is zero).
    pub mean_power_dbm: f64,
    /// Population standard deviation of the per-trial dBm values. Zero when
    /// every trial needs zero power, NaN when only some do.
    pub std_dbm: f64,
    /// 10th, 50th and 90th percentiles in watts.
    pub percentiles: [f64; 3],
    /// Fraction of trials where this scheme needs strictly less power than
    /// TDMA under the same method.
    pub win_rate_vs_tdma: f64,
    /// Mean and largest per-trial ratio to the brute-force power, in dB.
    /// `None` when brute force was not run.
    pub gap_vs_bruteforce_db: Option<f64>,
    pub max_gap_vs_bruteforce_db: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    /// Ordered by scheme, then by method in the order the records list them,
    /// with the baseline last.
    pub rows: Vec<SchemeSummary>,
}

impl Summary {
    pub fn get(&self, access: Access, method: MethodLabel) -> Option<&SchemeSummary> {
        self.rows
            .iter()
            .find(|r| r.access == access && r.method == method)
    }
}

fn power(record: &ComparisonRecord, access: Access, method: MethodLabel) -> Option<f64> {
    match method {
        MethodLabel::Solver(m) => record.results(m).map(|r| r.power(access)),
        MethodLabel::NoIrs => Some(record.no_irs.power(access)),
    }
}

/// Power ratio in dB with `0/0` read as no gap.
fn gap_db(p: f64, reference: f64) -> f64 {
    if p == reference {
        0.0
    } else {
        10.0 * (p / reference).log10()
    }
}

/// Linear-interpolation percentile of sorted data, `q` in `[0, 1]`.
fn percentile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

fn std_dbm(powers: &[f64]) -> f64 {
    let zeros = powers.iter().filter(|&&p| p == 0.0).count();
    if zeros == powers.len() {
        return 0.0;
    }
    if zeros > 0 {
        return f64::NAN;
    }
    let db: Vec<f64> = powers.iter().map(|&p| watts_to_dbm(p)).collect();
    let n = db.len() as f64;
    let mean = db.iter().sum::<f64>() / n;
    (db.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n).sqrt()
}

/// Summarizes the records of one sweep point. Records must all carry the
/// same methods.
pub fn summarize(records: &[ComparisonRecord]) -> Result<Summary> {
    let first = records.first().ok_or(Error::EmptyRecords)?;
    let mut labels: Vec<MethodLabel> = first
        .methods
        .iter()
        .map(|(m, _)| MethodLabel::Solver(*m))
        .collect();
    labels.push(MethodLabel::NoIrs);
    let has_brute = first.results(Method::BruteForce).is_some();

    let mut rows = Vec::new();
    for access in Access::ALL {
        for &method in &labels {
            let mut powers = Vec::with_capacity(records.len());
            let mut wins = 0usize;
            let mut gaps = Vec::new();
            for r in records {
                let missing = || {
                    crate::error::invalid(
                        "records",
                        format!("trial {} lacks method {method}", r.trial_index),
                    )
                };
                let p = power(r, access, method).ok_or_else(missing)?;
                let t = power(r, Access::Tdma, method).ok_or_else(missing)?;
                powers.push(p);
                if p < t {
                    wins += 1;
                }
                if has_brute {
                    let bf = power(r, access, MethodLabel::Solver(Method::BruteForce))
                        .ok_or_else(missing)?;
                    gaps.push(gap_db(p, bf));
                }
            }
            let n = powers.len();
            let mean_power = powers.iter().sum::<f64>() / n as f64;
            let mut sorted = powers.clone();
            sorted.sort_by(f64::total_cmp);
            rows.push(SchemeSummary {
                access,
                method,
                trials: n,
                mean_power,
                mean_power_dbm: watts_to_dbm(mean_power),
                std_dbm: std_dbm(&powers),
                percentiles: [0.1, 0.5, 0.9].map(|q| percentile(&sorted, q)),
                win_rate_vs_tdma: wins as f64 / n as f64,
                gap_vs_bruteforce_db: has_brute.then(|| gaps.iter().sum::<f64>() / n as f64),
                max_gap_vs_bruteforce_db: has_brute
                    .then(|| gaps.iter().copied().fold(f64::NEG_INFINITY, f64::max)),
            });
        }
    }
    Ok(Summary { rows })
}
