//! Inputs shared by the criterion benches.

use qinit_core::random::{random_state, seeded_rng};
use qinit_core::{lower_circuit, optimize, synthesize, Circuit, TargetState};

pub const SEED: u64 = 0x5eed;

pub fn state(n: usize) -> TargetState {
    random_state(n, &mut seeded_rng(SEED ^ n as u64))
}

pub fn optimized(n: usize) -> Circuit {
    optimize(&synthesize(&state(n))).0
}

pub fn lowered(n: usize) -> Circuit {
    lower_circuit(&optimized(n)).expect("synthesized gates are unitary")
}
