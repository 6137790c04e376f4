use num_complex::Complex64;

use crate::channel::{angle, ChannelRealization, PhaseShiftVector, User};
use crate::error::{invalid, Result};
use crate::schemes::WeightedInverseObjective;

use super::{quantize_to_lattice, GainObjective, Objective, SolverConfig};

#[derive(Debug, Clone, PartialEq)]
pub struct LaOutcome {
    pub theta: PhaseShiftVector,
    pub objective: f64,
    /// Winning combination weight `η*`.
    pub eta: f64,
    pub evaluations: u64,
}

/// The `B + 1` quantized candidates `θ^[η]` for `η ∈ {0, 1/B, …, 1}`.
///
/// `ū = η·u1 + (1−η)·u2` is projected back to unit modulus by keeping its
/// phase only (`∠0 = 0`), then each element is snapped to the lattice.
pub fn la_candidates(
    realization: &ChannelRealization,
    phase_levels: usize,
    eta_levels: usize,
) -> Result<Vec<(f64, PhaseShiftVector)>> {
    if eta_levels == 0 {
        return Err(invalid("solver.eta_levels", "B must be at least 1"));
    }
    let u1 = realization.best_continuous_phases(User::One);
    let u2 = realization.best_continuous_phases(User::Two);
    let mut projected = vec![Complex64::new(0.0, 0.0); u1.len()];
    Ok((0..=eta_levels)
        .map(|i| {
            let eta = i as f64 / eta_levels as f64;
            for (p, (a, b)) in projected.iter_mut().zip(u1.iter().zip(&u2)) {
                let mix = a * eta + b * (1.0 - eta);
                *p = Complex64::from_polar(1.0, angle(mix));
            }
            (eta, quantize_to_lattice(&projected, phase_levels))
        })
        .collect())
}

/// Picks the candidate with the lowest weighted objective. Exactly `B + 1`
/// objective evaluations; ties keep the smallest `η`.
pub fn la_initialize(
    realization: &ChannelRealization,
    weights: WeightedInverseObjective,
    phase_levels: usize,
    config: &SolverConfig,
) -> Result<LaOutcome> {
    let objective = GainObjective::new(realization, weights);
    let mut best: Option<LaOutcome> = None;
    let mut evaluations = 0;
    for (eta, theta) in la_candidates(realization, phase_levels, config.eta_levels)? {
        let value = objective.evaluate(&theta)?;
        evaluations += 1;
        if best.as_ref().is_none_or(|b| value < b.objective) {
            best = Some(LaOutcome {
                theta,
                objective: value,
                eta,
                evaluations: 0,
            });
        }
    }
    let mut best = best.expect("at least two candidates");
    best.evaluations = evaluations;
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::tests::random_realization;
    use std::f64::consts::PI;

    #[test]
    fn identical_users_collapse_to_one_candidate() {
        let r = random_realization(1, 5);
        let sym =
            ChannelRealization::symmetric(r.cascaded(User::One).to_vec(), r.direct(User::One))
                .unwrap();
        let expected = quantize_to_lattice(&sym.best_continuous_phases(User::One), 8);
        for (_, theta) in la_candidates(&sym, 8, 8).unwrap() {
            assert_eq!(theta, expected);
        }
    }

    #[test]
    fn endpoints_are_single_user_quantizations() {
        for seed in 0..10 {
            let r = random_realization(seed, 5);
            let cands = la_candidates(&r, 8, 8).unwrap();
            assert_eq!(cands.len(), 9);
            let q1 = quantize_to_lattice(&r.best_continuous_phases(User::One), 8);
            let q2 = quantize_to_lattice(&r.best_continuous_phases(User::Two), 8);
            assert_eq!(cands[8].1, q1);
            assert_eq!(cands[0].1, q2);
            // Each element of q1 is within π/L of u1, so every reflected path
            // keeps at least cos(π/L) of its aligned contribution.
            let g1 = r.channel_gain(&q1, User::One).unwrap();
            let reflected: f64 = r.cascaded(User::One).iter().map(|z| z.norm()).sum();
            let floor = (r.direct(User::One).norm() + (PI / 8.0).cos() * reflected).powi(2);
            assert!(g1 >= floor * (1.0 - 1e-12));
            assert!(g1 <= r.gain_upper_bound(User::One) * (1.0 + 1e-12));
        }
    }

    #[test]
    fn selection_is_candidate_scan_minimum() {
        let cfg = SolverConfig::default();
        for seed in 0..20 {
            let r = random_realization(seed, 5);
            let w = WeightedInverseObjective::new(1.0, 3.0).unwrap();
            let out = la_initialize(&r, w, 8, &cfg).unwrap();
            assert_eq!(out.evaluations, 9);
            let obj = GainObjective::new(&r, w);
            let scan = la_candidates(&r, 8, 8)
                .unwrap()
                .iter()
                .map(|(_, t)| obj.evaluate(t).unwrap())
                .fold(f64::INFINITY, f64::min);
            assert_eq!(out.objective, scan);
            let cands = la_candidates(&r, 8, 8).unwrap();
            assert!(out.objective <= obj.evaluate(&cands[0].1).unwrap());
            assert!(out.objective <= obj.evaluate(&cands[8].1).unwrap());
        }
    }
}
