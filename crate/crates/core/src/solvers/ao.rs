use crate::channel::PhaseShiftVector;
use crate::error::Result;

use super::{Objective, Solution, SolverConfig, SolverResult};

/// Outcome of a run of AO sweeps.
#[derive(Debug, Clone, PartialEq)]
pub struct Refinement {
    pub theta: PhaseShiftVector,
    pub value: f64,
    /// Value after each completed sweep.
    pub trace: Vec<f64>,
    pub evaluations: u64,
}

impl Refinement {
    pub(crate) fn into_result(self, extra_evaluations: u64) -> SolverResult {
        SolverResult {
            total_power: self.value,
            theta: Solution::Shared(self.theta),
            decoding_order: None,
            objective_trace: self.trace,
            evaluations: self.evaluations + extra_evaluations,
        }
    }
}

/// Cyclic coordinate descent over the lattice, starting from a point whose
/// objective value is already known.
///
/// Each sweep visits `m = 0..M` in order and evaluates all `L` levels of
/// element `m` with the others held fixed (`M·L` evaluations per sweep). The
/// incumbent level is kept unless another level is strictly better. Stops
/// after `max_sweeps` sweeps, or after a sweep whose relative decrease is at
/// most `convergence` (with `0`, only a sweep that changes nothing).
pub(crate) fn refine<O: Objective + ?Sized>(
    start: PhaseShiftVector,
    start_value: f64,
    objective: &O,
    max_sweeps: usize,
    convergence: f64,
) -> Result<Refinement> {
    let mut theta = start;
    let mut value = start_value;
    let mut trace = Vec::with_capacity(max_sweeps);
    let mut evaluations = 0u64;
    let levels = theta.phase_levels();

    for _ in 0..max_sweeps {
        let before = value;
        for m in 0..theta.len() {
            let incumbent = theta.levels()[m];
            let mut best_level = incumbent;
            for level in 0..levels {
                theta.set(m, level);
                let v = objective.evaluate(&theta)?;
                evaluations += 1;
                if v < value {
                    value = v;
                    best_level = level;
                }
            }
            theta.set(m, best_level);
        }
        trace.push(value);
        let decrease = before - value;
        if decrease <= convergence * before.abs() {
            break;
        }
    }
    Ok(Refinement {
        theta,
        value,
        trace,
        evaluations,
    })
}

/// Runs up to `config.ao_iterations` AO sweeps from `start`.
///
/// Evaluation count is `1 + sweeps·M·L`: one evaluation of the start point
/// plus the sweeps.
pub fn alternating_optimize<O: Objective + ?Sized>(
    start: PhaseShiftVector,
    objective: &O,
    config: &SolverConfig,
) -> Result<SolverResult> {
    let start_value = objective.evaluate(&start)?;
    let refined = refine(
        start,
        start_value,
        objective,
        config.ao_iterations,
        config.ao_convergence,
    )?;
    Ok(refined.into_result(1))
}
