//! Seeded random states: `2N` independent standard normals as real and
//! imaginary parts, then normalized, which is uniform on the complex sphere.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::state::TargetState;

pub type StateRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> StateRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream for trial `trial` at width `n`, so trials can be
/// generated in any order.
pub fn trial_rng(seed: u64, n: usize, trial: usize) -> StateRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((n as u64) << 32) | trial as u64);
    rng
}

pub fn random_state<R: Rng + ?Sized>(n: usize, rng: &mut R) -> TargetState {
    let amps: Vec<Complex64> = (0..1usize << n)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    TargetState::new(amps, true).expect("gaussian vector is nonzero")
}

/// Same distribution restricted to real amplitudes.
pub fn random_real_state<R: Rng + ?Sized>(n: usize, rng: &mut R) -> TargetState {
    let amps: Vec<f64> = (0..1usize << n)
        .map(|_| rng.sample(StandardNormal))
        .collect();
    TargetState::from_real(&amps, true).expect("gaussian vector is nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_state() {
        let a = random_state(4, &mut seeded_rng(7));
        let b = random_state(4, &mut seeded_rng(7));
        assert_eq!(a, b);
        assert_ne!(a, random_state(4, &mut seeded_rng(8)));
        assert!(a.is_nowhere_zero());
        assert!(random_real_state(3, &mut seeded_rng(1)).is_real());
    }
}
