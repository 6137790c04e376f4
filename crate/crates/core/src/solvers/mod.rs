//! Discrete phase-shift optimizers.
//!
//! [`brute_force`] is the exact oracle. The low-complexity path is
//! [`la_initialize`] (quantized convex combinations of the two users'
//! continuous optima) followed by [`alternating_optimize`] (cyclic
//! one-element lattice search). [`rps_initialize`] provides the random start
//! baseline. [`solve_scheme`] dispatches a whole multiple-access problem.

mod ao;
mod brute;
mod la;
mod quantize;
mod rps;
mod tdma;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::channel::{phase_step, ChannelRealization, PhaseShiftVector, User};
use crate::error::{invalid, Error, Result};
use crate::schemes::{NoisePower, SchemeKind, TargetRates, WeightedInverseObjective};

pub use ao::{alternating_optimize, Refinement};
pub use brute::{brute_force, count_candidates};
pub use la::{la_candidates, la_initialize, LaOutcome};
pub use quantize::{quantize_phase, quantize_to_lattice};
pub use rps::rps_initialize;
pub use tdma::{solve_tdma, solve_tdma_with};

/// Something that maps a discrete phase vector to a value to be minimized.
pub trait Objective {
    fn evaluate(&self, theta: &PhaseShiftVector) -> Result<f64>;
}

impl<F> Objective for F
where
    F: Fn(&PhaseShiftVector) -> Result<f64>,
{
    fn evaluate(&self, theta: &PhaseShiftVector) -> Result<f64> {
        self(theta)
    }
}

/// `a1/λ1(θ) + a2/λ2(θ)` on a fixed channel realization.
#[derive(Debug, Clone)]
pub struct GainObjective<'a> {
    pub realization: &'a ChannelRealization,
    pub weights: WeightedInverseObjective,
    /// `conj(q_{k,m})·e^{jlΔφ}` per user, indexed `m·L + l`, for the first
    /// lattice size evaluated.
    terms: OnceLock<(usize, [Vec<Complex64>; 2])>,
}

impl<'a> GainObjective<'a> {
    pub fn new(realization: &'a ChannelRealization, weights: WeightedInverseObjective) -> Self {
        Self {
            realization,
            weights,
            terms: OnceLock::new(),
        }
    }

    /// `a1/λ1(u1) + a2/λ2(u2)`: no phase vector can go below this.
    pub fn lower_bound(&self) -> Result<f64> {
        let r = self.realization;
        self.weights
            .evaluate(r.gain_upper_bound(User::One), r.gain_upper_bound(User::Two))
    }

    fn build_terms(&self, levels: usize) -> (usize, [Vec<Complex64>; 2]) {
        let step = phase_step(levels);
        let table = |user| {
            self.realization
                .cascaded(user)
                .iter()
                .flat_map(|qm| {
                    (0..levels)
                        .map(move |l| qm.conj() * Complex64::from_polar(1.0, l as f64 * step))
                })
                .collect()
        };
        (levels, [table(User::One), table(User::Two)])
    }

    /// Same arithmetic as [`ChannelRealization::channel_gain`], with the
    /// per-element products looked up.
    fn gain(&self, theta: &PhaseShiftVector, user: User) -> Result<f64> {
        let levels = theta.phase_levels();
        let (cached, terms) = self.terms.get_or_init(|| self.build_terms(levels));
        if *cached != levels || theta.len() != self.realization.num_subsurfaces() {
            return self.realization.channel_gain(theta, user);
        }
        let terms = &terms[user.index()];
        let mut acc = self.realization.direct(user);
        for (m, &l) in theta.levels().iter().enumerate() {
            acc += terms[m * levels + l];
        }
        Ok(acc.norm_sqr())
    }
}

impl Objective for GainObjective<'_> {
    fn evaluate(&self, theta: &PhaseShiftVector) -> Result<f64> {
        let gain = |weight: f64, user| {
            if weight == 0.0 {
                Ok(0.0)
            } else {
                self.gain(theta, user)
            }
        };
        let l1 = gain(self.weights.a1, User::One)?;
        let l2 = gain(self.weights.a2, User::Two)?;
        self.weights.evaluate(l1, l2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// `B`: the LA search uses `B + 1` combination weights.
    pub eta_levels: usize,
    /// AO sweeps after an LA (or quantized) start.
    pub ao_iterations: usize,
    /// AO sweeps after a random start.
    pub rps_ao_iterations: usize,
    /// Stop once a sweep's relative decrease is at most this.
    pub ao_convergence: f64,
    /// Largest `L^M` brute force will enumerate.
    pub enumeration_budget: u64,
    /// Seed for random phase starts.
    pub rps_seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            eta_levels: 8,
            ao_iterations: 2,
            rps_ao_iterations: 10,
            ao_convergence: 0.0,
            enumeration_budget: 10_000_000,
            rps_seed: 0,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if self.eta_levels == 0 {
            return Err(invalid("solver.eta_levels", "B must be at least 1"));
        }
        if !(self.ao_convergence.is_finite() && self.ao_convergence >= 0.0) {
            return Err(invalid("solver.ao_convergence", "must be finite and >= 0"));
        }
        Ok(())
    }
}

/// Phase configuration returned by a solver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    /// One vector for both users (NOMA, FDMA).
    Shared(PhaseShiftVector),
    /// One vector per TDMA slot.
    PerUser([PhaseShiftVector; 2]),
}

impl Solution {
    pub fn for_user(&self, user: User) -> &PhaseShiftVector {
        match self {
            Solution::Shared(t) => t,
            Solution::PerUser(ts) => &ts[user.index()],
        }
    }
}

impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Solution::Shared(t) => write!(f, "{t}"),
            Solution::PerUser([a, b]) => write!(f, "slot1 {a} slot2 {b}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverResult {
    /// Linear power in watts, or the raw objective value for generic objectives.
    pub total_power: f64,
    pub theta: Solution,
    pub decoding_order: Option<SchemeKind>,
    /// Objective after each AO sweep.
    pub objective_trace: Vec<f64>,
    pub evaluations: u64,
}

impl SolverResult {
    pub fn shared_theta(&self) -> Option<&PhaseShiftVector> {
        match &self.theta {
            Solution::Shared(t) => Some(t),
            Solution::PerUser(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    BruteForce,
    LaAo,
    RpsAo,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::BruteForce, Method::LaAo, Method::RpsAo];

    pub fn name(self) -> &'static str {
        match self {
            Method::BruteForce => "brute",
            Method::LaAo => "la-ao",
            Method::RpsAo => "rps-ao",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "brute" | "brute-force" => Ok(Method::BruteForce),
            "la-ao" | "la" => Ok(Method::LaAo),
            "rps-ao" | "rps" => Ok(Method::RpsAo),
            other => Err(invalid("method", format!("unknown method '{other}'"))),
        }
    }
}

/// Which problem [`solve_scheme`] should solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemeRequest {
    /// Solve both decoding orders and keep the cheaper one.
    NomaAuto,
    Kind(SchemeKind),
}

impl From<SchemeKind> for SchemeRequest {
    fn from(kind: SchemeKind) -> Self {
        SchemeRequest::Kind(kind)
    }
}

/// A channel draw together with the lattice and the service requirements.
#[derive(Debug, Clone, Copy)]
pub struct Instance<'a> {
    pub realization: &'a ChannelRealization,
    pub phase_levels: usize,
    pub rates: TargetRates,
    pub noise: NoisePower,
}

impl<'a> Instance<'a> {
    pub fn new(
        realization: &'a ChannelRealization,
        phase_levels: usize,
        rates: TargetRates,
        noise: NoisePower,
    ) -> Self {
        Self {
            realization,
            phase_levels,
            rates,
            noise,
        }
    }

    pub fn num_subsurfaces(&self) -> usize {
        self.realization.num_subsurfaces()
    }

    pub fn objective(&self, kind: SchemeKind) -> GainObjective<'a> {
        GainObjective::new(self.realization, kind.weights(self.rates, self.noise))
    }
}

pub fn solve_scheme(
    instance: &Instance<'_>,
    scheme: impl Into<SchemeRequest>,
    method: Method,
    config: &SolverConfig,
) -> Result<SolverResult> {
    config.validate()?;
    match scheme.into() {
        SchemeRequest::NomaAuto => {
            let first = solve_shared(instance, SchemeKind::NomaOrder1, method, config, 1)?;
            let second = solve_shared(instance, SchemeKind::NomaOrder2, method, config, 2)?;
            let evaluations = first.evaluations + second.evaluations;
            let mut best = if first.total_power <= second.total_power {
                first
            } else {
                second
            };
            best.evaluations = evaluations;
            Ok(best)
        }
        SchemeRequest::Kind(SchemeKind::Tdma) => solve_tdma_with(instance, method, config),
        SchemeRequest::Kind(kind) => solve_shared(instance, kind, method, config, 0),
    }
}

/// One shared phase vector minimizing the weighted objective of `kind`.
fn solve_shared(
    instance: &Instance<'_>,
    kind: SchemeKind,
    method: Method,
    config: &SolverConfig,
    rps_substream: u64,
) -> Result<SolverResult> {
    let objective = instance.objective(kind);
    let m = instance.num_subsurfaces();
    let levels = instance.phase_levels;
    let mut result = match method {
        Method::BruteForce => brute_force(&objective, m, levels, config.enumeration_budget)?,
        Method::LaAo => {
            let la = la_initialize(instance.realization, objective.weights, levels, config)?;
            let refined = ao::refine(
                la.theta,
                la.objective,
                &objective,
                config.ao_iterations,
                config.ao_convergence,
            )?;
            refined.into_result(la.evaluations)
        }
        Method::RpsAo => {
            let start = rps::draw(m, levels, config.rps_seed, rps_substream);
            let mut cfg = *config;
            cfg.ao_iterations = config.rps_ao_iterations;
            alternating_optimize(start, &objective, &cfg)?
        }
    };
    result.decoding_order = match kind {
        SchemeKind::NomaOrder1 | SchemeKind::NomaOrder2 => Some(kind),
        _ => None,
    };
    Ok(result)
}
