use num_complex::Complex64;

use crate::channel::{angle, phase_step, PhaseShiftVector};

/// Nearest lattice level to `phase` (radians) on `{0, Δφ, …, (L−1)Δφ}`.
///
/// Nearest in angle is the same as nearest in chordal distance `|θ − e^{jφ}|²`.
/// A phase sitting on the midpoint between two levels (up to a few ulps of
/// rounding) goes to the lower of the two indices.
pub fn quantize_phase(phase: f64, phase_levels: usize) -> usize {
    let l = phase_levels;
    if l <= 1 || !phase.is_finite() {
        return 0;
    }
    let t = (phase / phase_step(l)).rem_euclid(l as f64);
    let below = t.floor();
    let frac = t - below;
    let below = (below as usize) % l;
    let above = (below + 1) % l;
    let tol = 8.0 * f64::EPSILON * t.max(1.0);
    if (frac - 0.5).abs() <= tol {
        below.min(above)
    } else if frac > 0.5 {
        above
    } else {
        below
    }
}

/// Element-wise [`quantize_phase`] of a unit-modulus vector.
pub fn quantize_to_lattice(continuous: &[Complex64], phase_levels: usize) -> PhaseShiftVector {
    let levels = continuous
        .iter()
        .map(|z| quantize_phase(angle(*z), phase_levels))
        .collect();
    PhaseShiftVector::new(levels, phase_levels.max(1)).expect("quantized levels are in range")
}
