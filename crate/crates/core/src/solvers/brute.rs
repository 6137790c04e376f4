use crate::channel::PhaseShiftVector;
use crate::error::{Error, Result};

use super::{Objective, Solution, SolverResult};

/// `L^M`, or `None` if it overflows `u64`.
pub fn count_candidates(num_subsurfaces: usize, phase_levels: usize) -> Option<u64> {
    let exp = u32::try_from(num_subsurfaces).ok()?;
    (phase_levels as u64).checked_pow(exp)
}

/// Exhaustive search over all `L^M` phase vectors.
///
/// Candidates are visited in lexicographic order of their level vectors and
/// only a strictly smaller value replaces the incumbent, so ties resolve to
/// the lexicographically smallest minimizer.
pub fn brute_force<O: Objective + ?Sized>(
    objective: &O,
    num_subsurfaces: usize,
    phase_levels: usize,
    budget: u64,
) -> Result<SolverResult> {
    let candidates = count_candidates(num_subsurfaces, phase_levels);
    match candidates {
        Some(n) if n <= budget => {}
        _ => {
            return Err(Error::EnumerationBudget {
                candidates: candidates.map_or_else(
                    || format!("{phase_levels}^{num_subsurfaces}"),
                    |n| n.to_string(),
                ),
                budget,
            })
        }
    }

    let mut theta = PhaseShiftVector::zeros(num_subsurfaces, phase_levels);
    let mut best_theta = theta.clone();
    let mut best = f64::INFINITY;
    let mut evaluations = 0u64;
    loop {
        let value = objective.evaluate(&theta)?;
        evaluations += 1;
        if value < best {
            best = value;
            best_theta.clone_from(&theta);
        }
        // Odometer increment, last element fastest.
        let mut pos = num_subsurfaces;
        loop {
            if pos == 0 {
                return Ok(SolverResult {
                    total_power: best,
                    theta: Solution::Shared(best_theta),
                    decoding_order: None,
                    objective_trace: Vec::new(),
                    evaluations,
                });
            }
            pos -= 1;
            let next = theta.levels()[pos] + 1;
            if next < phase_levels {
                theta.set(pos, next);
                break;
            }
            theta.set(pos, 0);
        }
    }
}
