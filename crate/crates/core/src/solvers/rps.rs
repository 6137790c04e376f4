use rand::Rng;

use crate::channel::PhaseShiftVector;
use crate::rng::{self, StreamId};

/// Independent uniform level per element, reproducible from `seed`.
pub fn rps_initialize(num_subsurfaces: usize, phase_levels: usize, seed: u64) -> PhaseShiftVector {
    draw(num_subsurfaces, phase_levels, seed, 0)
}

/// `substream` separates the random starts of different sub-problems that
/// share one seed.
pub(crate) fn draw(
    num_subsurfaces: usize,
    phase_levels: usize,
    seed: u64,
    substream: u64,
) -> PhaseShiftVector {
    let levels = phase_levels.max(1);
    let mut rng = rng::stream(seed, substream, StreamId::RandomPhase as u64);
    let v = (0..num_subsurfaces)
        .map(|_| rng.random_range(0..levels))
        .collect();
    PhaseShiftVector::new(v, levels).expect("levels drawn in range")
}
