//! Per-realization checks of `P_F ≥ P_T` and `P_F ≥ P_N` on exact
//! (brute-force) minima.

use std::fmt::Write as _;

use crate::channel::User;
use crate::solvers::Method;

use super::run::{Access, ComparisonRecord};

/// Relative slack for comparing two exact minima built from identical gains.
pub const PROPOSITION_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Proposition {
    /// FDMA never beats TDMA.
    FdmaVsTdma,
    /// FDMA never beats NOMA.
    FdmaVsNoma,
}

impl Proposition {
    fn label(self) -> &'static str {
        match self {
            Proposition::FdmaVsTdma => "P_F >= P_T",
            Proposition::FdmaVsNoma => "P_F >= P_N",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub trial_index: u64,
    pub proposition: Proposition,
    pub fdma: f64,
    pub other: f64,
    /// Debug dump of the offending instance.
    pub instance: String,
}

/// Outcome of the `P_F = P_N` equality conditions on one record where the
/// two powers coincide.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EqualityCase {
    pub trial_index: u64,
    pub same_theta: bool,
    pub equal_gains: bool,
    pub equal_rates: bool,
}

impl EqualityCase {
    pub fn all_conditions_hold(&self) -> bool {
        self.same_theta && self.equal_gains && self.equal_rates
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub checked: usize,
    /// Records that had no results for the requested method.
    pub skipped: usize,
    pub violations: Vec<Violation>,
    pub equality_cases: Vec<EqualityCase>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.skipped == 0
    }

    /// One machine-readable line.
    pub fn summary_line(&self) -> String {
        format!(
            "{} checked={} skipped={} violations={} equality_cases={}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.checked,
            self.skipped,
            self.violations.len(),
            self.equality_cases.len()
        )
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "proposition check over {} realizations", self.checked);
        for v in &self.violations {
            let _ = writeln!(
                out,
                "VIOLATION trial {}: {} fails, P_F = {:e} W vs {:e} W\n  instance: {}",
                v.trial_index,
                v.proposition.label(),
                v.fdma,
                v.other,
                v.instance
            );
        }
        for e in &self.equality_cases {
            let _ = writeln!(
                out,
                "equality P_F = P_N at trial {}: same theta {}, equal gains {}, equal rates {}",
                e.trial_index, e.same_theta, e.equal_gains, e.equal_rates
            );
        }
        if self.skipped > 0 {
            let _ = writeln!(
                out,
                "{} records had no results for the method",
                self.skipped
            );
        }
        let _ = writeln!(out, "{}", self.summary_line());
        out
    }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= PROPOSITION_TOLERANCE * a.abs().max(b.abs())
}

/// Checks both propositions on every record. Meant for brute-force results;
/// with a heuristic method a violation indicates a suboptimal solution.
pub fn validate_propositions(records: &[ComparisonRecord], method: Method) -> ValidationReport {
    let mut report = ValidationReport::default();
    for record in records {
        let Some(res) = record.results(method) else {
            report.skipped += 1;
            continue;
        };
        report.checked += 1;
        let fdma = res.power(Access::Fdma);
        for (prop, access) in [
            (Proposition::FdmaVsTdma, Access::Tdma),
            (Proposition::FdmaVsNoma, Access::Noma),
        ] {
            let other = res.power(access);
            if other - fdma > PROPOSITION_TOLERANCE * fdma.abs().max(other.abs()) {
                report.violations.push(Violation {
                    trial_index: record.trial_index,
                    proposition: prop,
                    fdma,
                    other,
                    instance: format!(
                        "rates {:?}, realization {:?}, {access} theta {}, fdma theta {}",
                        record.rates,
                        record.realization,
                        res.get(access).theta,
                        res.fdma.theta
                    ),
                });
            }
        }

        let noma = res.power(Access::Noma);
        if fdma > 0.0 && close(fdma, noma) {
            let theta_f = res.fdma.theta.for_user(User::One);
            let theta_n = res.noma.theta.for_user(User::One);
            let gain = |u| {
                record
                    .realization
                    .channel_gain(theta_f, u)
                    .unwrap_or(f64::NAN)
            };
            report.equality_cases.push(EqualityCase {
                trial_index: record.trial_index,
                same_theta: theta_f == theta_n,
                equal_gains: close(gain(User::One), gain(User::Two)),
                equal_rates: record.rates.gamma1 == record.rates.gamma2,
            });
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{ChannelRealization, IrsConfig};
    use crate::experiments::run::compare_realization;
    use crate::experiments::scenario::{DeploymentCase, Scenario};
    use crate::schemes::TargetRates;

    fn scenario() -> Scenario {
        let mut s = Scenario::defaults(DeploymentCase::Case1);
        s.irs = IrsConfig::new(12, 3, 4).unwrap();
        s
    }

    fn symmetric_record(g1: f64, g2: f64) -> ComparisonRecord {
        let s = scenario();
        let r = s.realization(0);
        let sym =
            ChannelRealization::symmetric(r.cascaded(User::One).to_vec(), r.direct(User::One))
                .unwrap();
        compare_realization(
            &s,
            0,
            sym,
            TargetRates::new(g1, g2).unwrap(),
            &[Method::BruteForce],
        )
        .unwrap()
    }

    #[test]
    fn identical_users_equal_rates_all_equal() {
        let rec = symmetric_record(1.5, 1.5);
        let res = rec.results(Method::BruteForce).unwrap();
        let f = res.power(Access::Fdma);
        assert!(close(f, res.power(Access::Noma)));
        assert!(close(f, res.power(Access::Tdma)));
        let report = validate_propositions(&[rec], Method::BruteForce);
        assert!(report.passed());
        assert_eq!(report.equality_cases.len(), 1);
        assert!(report.equality_cases[0].all_conditions_hold());
    }

    #[test]
    fn unequal_rates_make_noma_strictly_better() {
        let rec = symmetric_record(1.0, 2.5);
        let res = rec.results(Method::BruteForce).unwrap();
        assert!(res.power(Access::Fdma) > res.power(Access::Noma) * (1.0 + 1e-6));
        let report = validate_propositions(&[rec], Method::BruteForce);
        assert!(report.passed());
        assert!(report.equality_cases.is_empty());
    }

    #[test]
    fn violation_is_reported_with_instance() {
        let mut rec = symmetric_record(1.0, 1.0);
        rec.methods[0].1.tdma.total_power = rec.methods[0].1.fdma.total_power * 2.0;
        let report = validate_propositions(&[rec], Method::BruteForce);
        assert!(!report.passed());
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].proposition, Proposition::FdmaVsTdma);
        assert!(report.render().contains("VIOLATION trial 0"));
        assert!(report.summary_line().starts_with("FAIL"));
    }

    #[test]
    fn random_instances_have_no_violations() {
        let mut s = scenario();
        s.trials = 100;
        let recs = super::super::run::run_trials(
            &s,
            TargetRates::new(1.0, 2.0).unwrap(),
            &[Method::BruteForce],
        )
        .unwrap();
        let report = validate_propositions(&recs, Method::BruteForce);
        assert!(report.passed(), "{}", report.render());
        assert_eq!(report.checked, 100);
    }

    #[test]
    fn missing_method_is_not_a_pass() {
        let rec = symmetric_record(1.0, 1.0);
        let report = validate_propositions(&[rec], Method::LaAo);
        assert_eq!(report.skipped, 1);
        assert!(!report.passed());
    }
}
