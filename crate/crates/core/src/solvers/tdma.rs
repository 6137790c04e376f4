use crate::channel::User;
use crate::error::Result;
use crate::schemes::SchemeKind;

use super::{
    ao, brute_force, quantize_to_lattice, rps, GainObjective, Instance, Method, Objective,
    Solution, SolverConfig, SolverResult,
};

/// TDMA with the low-complexity path: quantize each `u_k`, then run AO on
/// that slot's single-user objective.
pub fn solve_tdma(instance: &Instance<'_>, config: &SolverConfig) -> Result<SolverResult> {
    solve_tdma_with(instance, Method::LaAo, config)
}

/// TDMA slots are decoupled, so each user's phase vector is optimized on its
/// own term `(2^{2γ_k}−1)σ²/(2λ_k)` and the powers are summed.
pub fn solve_tdma_with(
    instance: &Instance<'_>,
    method: Method,
    config: &SolverConfig,
) -> Result<SolverResult> {
    let weights = instance.objective(SchemeKind::Tdma).weights;
    let m = instance.num_subsurfaces();
    let levels = instance.phase_levels;

    let mut slots = Vec::with_capacity(2);
    for user in User::BOTH {
        let objective = GainObjective::new(instance.realization, weights.single_user(user));
        let slot = match method {
            Method::BruteForce => brute_force(&objective, m, levels, config.enumeration_budget)?,
            Method::LaAo => {
                let start =
                    quantize_to_lattice(&instance.realization.best_continuous_phases(user), levels);
                let start_value = objective.evaluate(&start)?;
                ao::refine(
                    start,
                    start_value,
                    &objective,
                    config.ao_iterations,
                    config.ao_convergence,
                )?
                .into_result(1)
            }
            Method::RpsAo => {
                let start = rps::draw(m, levels, config.rps_seed, 3 + user.index() as u64);
                let mut cfg = *config;
                cfg.ao_iterations = config.rps_ao_iterations;
                super::alternating_optimize(start, &objective, &cfg)?
            }
        };
        slots.push(slot);
    }
    let second = slots.pop().expect("two slots");
    let first = slots.pop().expect("two slots");

    let sweeps = first
        .objective_trace
        .len()
        .max(second.objective_trace.len());
    let at = |trace: &[f64], i: usize, fallback: f64| {
        trace.get(i).or(trace.last()).copied().unwrap_or(fallback)
    };
    let objective_trace = (0..sweeps)
        .map(|i| {
            at(&first.objective_trace, i, first.total_power)
                + at(&second.objective_trace, i, second.total_power)
        })
        .collect();

    let theta1 = first.shared_theta().expect("single-slot result").clone();
    let theta2 = second.shared_theta().expect("single-slot result").clone();
    Ok(SolverResult {
        total_power: first.total_power + second.total_power,
        theta: Solution::PerUser([theta1, theta2]),
        decoding_order: None,
        objective_trace,
        evaluations: first.evaluations + second.evaluations,
    })
}
