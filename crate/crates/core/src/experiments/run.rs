use std::fmt;

use rayon::prelude::*;

use crate::channel::{ChannelRealization, User};
use crate::error::Result;
use crate::rng::{self, StreamId};
use crate::schemes::{fdma_power, noma_power, tdma_power_terms, SchemeKind, TargetRates};
use crate::solvers::{solve_scheme, Instance, Method, SchemeRequest, SolverResult};

use super::scenario::{Scenario, SweepSpec};

/// The three multiple-access schemes being compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Access {
    Noma,
    Fdma,
    Tdma,
}

impl Access {
    pub const ALL: [Access; 3] = [Access::Noma, Access::Fdma, Access::Tdma];

    pub fn name(self) -> &'static str {
        match self {
            Access::Noma => "noma",
            Access::Fdma => "fdma",
            Access::Tdma => "tdma",
        }
    }

    fn request(self) -> SchemeRequest {
        match self {
            Access::Noma => SchemeRequest::NomaAuto,
            Access::Fdma => SchemeKind::Fdma.into(),
            Access::Tdma => SchemeKind::Tdma.into(),
        }
    }
}

impl fmt::Display for Access {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Minimum power of each scheme for one trial under one method.
#[derive(Debug, Clone, PartialEq)]
pub struct SchemeResults {
    pub noma: SolverResult,
    pub fdma: SolverResult,
    pub tdma: SolverResult,
}

impl SchemeResults {
    pub fn get(&self, access: Access) -> &SolverResult {
        match access {
            Access::Noma => &self.noma,
            Access::Fdma => &self.fdma,
            Access::Tdma => &self.tdma,
        }
    }

    pub fn power(&self, access: Access) -> f64 {
        self.get(access).total_power
    }
}

/// Powers with the IRS absent (`λ_k = |h_{d,k}|²`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaselinePowers {
    pub noma: f64,
    pub noma_order: SchemeKind,
    pub fdma: f64,
    pub tdma: f64,
}

impl BaselinePowers {
    pub fn compute(
        realization: &ChannelRealization,
        scenario: &Scenario,
        rates: TargetRates,
    ) -> Result<Self> {
        let l1 = realization.direct_gain(User::One);
        let l2 = realization.direct_gain(User::Two);
        let (noma, noma_order) = noma_power(l1, l2, rates, scenario.noise)?;
        let (t1, t2) = tdma_power_terms(l1, l2, rates, scenario.noise)?;
        Ok(Self {
            noma,
            noma_order,
            fdma: fdma_power(l1, l2, rates, scenario.noise)?,
            tdma: t1 + t2,
        })
    }

    pub fn power(&self, access: Access) -> f64 {
        match access {
            Access::Noma => self.noma,
            Access::Fdma => self.fdma,
            Access::Tdma => self.tdma,
        }
    }
}

/// Everything computed for one fading realization at one rate pair.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRecord {
    pub trial_index: u64,
    pub rates: TargetRates,
    pub realization: ChannelRealization,
    /// One entry per requested method, in the order requested.
    pub methods: Vec<(Method, SchemeResults)>,
    pub no_irs: BaselinePowers,
}

impl ComparisonRecord {
    pub fn results(&self, method: Method) -> Option<&SchemeResults> {
        self.methods
            .iter()
            .find(|(m, _)| *m == method)
            .map(|(_, r)| r)
    }

    /// NOMA decoding order chosen by `method`.
    pub fn noma_order(&self, method: Method) -> Option<SchemeKind> {
        self.results(method).and_then(|r| r.noma.decoding_order)
    }
}

/// Per-trial solver configuration: only the random-start seed varies.
fn trial_solver(scenario: &Scenario, trial: u64) -> crate::solvers::SolverConfig {
    let mut cfg = scenario.solver;
    cfg.rps_seed = rng::derive_seed(scenario.seed, trial, StreamId::TrialSeed as u64);
    cfg
}

/// Solves every scheme with every method for one realization.
pub fn compare_realization(
    scenario: &Scenario,
    trial_index: u64,
    realization: ChannelRealization,
    rates: TargetRates,
    methods: &[Method],
) -> Result<ComparisonRecord> {
    let cfg = trial_solver(scenario, trial_index);
    let instance = Instance::new(
        &realization,
        scenario.irs.phase_levels(),
        rates,
        scenario.noise,
    );
    let mut per_method = Vec::with_capacity(methods.len());
    for &method in methods {
        let solve = |a: Access| solve_scheme(&instance, a.request(), method, &cfg);
        per_method.push((
            method,
            SchemeResults {
                noma: solve(Access::Noma)?,
                fdma: solve(Access::Fdma)?,
                tdma: solve(Access::Tdma)?,
            },
        ));
    }
    let no_irs = BaselinePowers::compute(&realization, scenario, rates)?;
    Ok(ComparisonRecord {
        trial_index,
        rates,
        realization,
        methods: per_method,
        no_irs,
    })
}

/// Runs `scenario.trials` trials at `rates`. Trials run in parallel; the
/// output is in trial order.
pub fn run_trials(
    scenario: &Scenario,
    rates: TargetRates,
    methods: &[Method],
) -> Result<Vec<ComparisonRecord>> {
    scenario.validate()?;
    let realizations = realizations(scenario);
    run_on(scenario, &realizations, rates, methods)
}

fn realizations(scenario: &Scenario) -> Vec<ChannelRealization> {
    (0..scenario.trials as u64)
        .into_par_iter()
        .map(|t| scenario.realization(t))
        .collect()
}

fn run_on(
    scenario: &Scenario,
    realizations: &[ChannelRealization],
    rates: TargetRates,
    methods: &[Method],
) -> Result<Vec<ComparisonRecord>> {
    realizations
        .par_iter()
        .enumerate()
        .map(|(t, r)| compare_realization(scenario, t as u64, r.clone(), rates, methods))
        .collect()
}

/// One grid point of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub value: f64,
    pub rates: TargetRates,
    pub records: Vec<ComparisonRecord>,
}

/// Runs every sweep point on the same channel draws, so points are paired.
/// Fails as a whole if any trial fails.
pub fn run_sweep(
    scenario: &Scenario,
    spec: &SweepSpec,
    methods: &[Method],
) -> Result<Vec<SweepPoint>> {
    scenario.validate()?;
    spec.validate()?;
    let realizations = realizations(scenario);
    spec.values
        .iter()
        .map(|&value| {
            let rates = spec.rates_at(value)?;
            Ok(SweepPoint {
                value,
                rates,
                records: run_on(scenario, &realizations, rates, methods)?,
            })
        })
        .collect()
}
