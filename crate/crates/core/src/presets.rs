//! Generators for the uniform, GHZ and Grover-initialization states.

use std::f64::consts::FRAC_1_SQRT_2;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::{Bits, TargetState};

/// `Σᵢ |i⟩ / √N`.
pub fn uniform(n: usize) -> Result<TargetState> {
    let dim = 1usize << n;
    let a = 1.0 / (dim as f64).sqrt();
    TargetState::new(vec![Complex64::new(a, 0.0); dim], false)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl FromStr for Sign {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "+" | "plus" => Ok(Sign::Plus),
            "-" | "minus" => Ok(Sign::Minus),
            other => Err(format!("expected + or -, got {other:?}")),
        }
    }
}

/// `(|0…0⟩ ± |1…1⟩) / √2` for `n ≥ 2`.
pub fn ghz(n: usize, sign: Sign) -> Result<TargetState> {
    if n < 2 {
        return Err(Error::GhzTooSmall(n));
    }
    let dim = 1usize << n;
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    amps[0] = Complex64::new(FRAC_1_SQRT_2, 0.0);
    amps[dim - 1] = Complex64::new(
        match sign {
            Sign::Plus => FRAC_1_SQRT_2,
            Sign::Minus => -FRAC_1_SQRT_2,
        },
        0.0,
    );
    TargetState::new(amps, false)
}

/// `sinθ|τ⟩ + cosθ|c⟩`, where `|c⟩` is the uniform superposition of every
/// basis state except the marked `τ`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroverSpec {
    pub n: usize,
    pub marked: Bits,
    pub theta: f64,
}

impl GroverSpec {
    pub fn new(marked: Bits, theta: f64) -> Self {
        GroverSpec {
            n: marked.len(),
            marked,
            theta,
        }
    }
}

pub fn grover_state(spec: &GroverSpec) -> Result<TargetState> {
    if spec.marked.len() != spec.n || spec.n == 0 {
        return Err(Error::MarkedLength {
            len: spec.marked.len(),
            n: spec.n,
        });
    }
    if !spec.theta.is_finite() {
        return Err(Error::NonFiniteParameter);
    }
    let dim = 1usize << spec.n;
    let (s, c) = spec.theta.sin_cos();
    let rest = c / ((dim - 1) as f64).sqrt();
    let mut amps = vec![Complex64::new(rest, 0.0); dim];
    amps[spec.marked.value()] = Complex64::new(s, 0.0);
    TargetState::new(amps, false)
}

/// `Ω_k = √(((N − 2^k)cos²θ + 2^k(N − 1)sin²θ) / (N cos²θ))`.
///
/// At layer `k` the rotation controlled on the marked prefix `τ₁…τ_{k−1}` has
/// angle `arctan Ω_k` when `τ_k = 1` and `arctan(1/Ω_k)` when `τ_k = 0`.
pub fn grover_omega(n: usize, k: usize, theta: f64) -> Result<f64> {
    if k == 0 || k > n {
        return Err(Error::LayerOutOfRange { layer: k, max: n });
    }
    let (s, c) = theta.sin_cos();
    // cos(π/2) evaluates to ~6e-17 rather than zero.
    if c.abs() < 1e-15 {
        return Err(Error::OmegaUndefined);
    }
    let big_n = (1u64 << n) as f64;
    let two_k = (1u64 << k) as f64;
    let c2 = c * c;
    Ok((((big_n - two_k) * c2 + two_k * (big_n - 1.0) * s * s) / (big_n * c2)).sqrt())
}
