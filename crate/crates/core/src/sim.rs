//! Dense statevector simulation, used as the reference for every other pass.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gate::{Circuit, ControlledGate, NamedGate};
use crate::matrix::{Mat2, ONE, ZERO};
use crate::state::{bit_position, TargetState};

pub const DEFAULT_MAX_QUBITS: usize = 24;
pub const MAX_OPERATOR_QUBITS: usize = 10;
pub const MAX_QUBITS_ENV: &str = "QINIT_MAX_QUBITS";

/// Width limits for simulation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimConfig {
    pub max_qubits: usize,
    pub max_operator_qubits: usize,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            max_qubits: DEFAULT_MAX_QUBITS,
            max_operator_qubits: MAX_OPERATOR_QUBITS,
        }
    }
}

impl SimConfig {
    /// Default limits, with `QINIT_MAX_QUBITS` overriding the statevector cap.
    pub fn from_env() -> Self {
        let mut cfg = SimConfig::default();
        if let Some(max) = std::env::var(MAX_QUBITS_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
        {
            cfg.max_qubits = max;
        }
        cfg
    }

    pub fn run(&self, circuit: &Circuit, initial: Option<SimState>) -> Result<SimState> {
        let n = circuit.n();
        if n > self.max_qubits {
            return Err(Error::WidthLimit {
                n,
                max: self.max_qubits,
            });
        }
        let mut state = match initial {
            Some(s) if s.n != n => {
                return Err(Error::SizeMismatch {
                    left: s.n,
                    right: n,
                })
            }
            Some(s) => s,
            None => SimState::zero(n),
        };
        for g in circuit {
            state.apply(g)?;
        }
        Ok(state)
    }

    /// The full `2^n × 2^n` operator; column `i` is the circuit applied to `|i⟩`.
    pub fn operator_of(&self, circuit: &Circuit) -> Result<Operator> {
        let n = circuit.n();
        if n > self.max_operator_qubits {
            return Err(Error::WidthLimit {
                n,
                max: self.max_operator_qubits,
            });
        }
        let dim = 1usize << n;
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            let s = self.run(circuit, Some(SimState::basis(n, i)))?;
            data.extend_from_slice(&s.vector);
        }
        Ok(Operator { dim, data })
    }
}

/// A pure state during simulation.
#[derive(Clone, Debug, PartialEq)]
pub struct SimState {
    n: usize,
    vector: Vec<Complex64>,
}

impl SimState {
    /// `|0…0⟩`.
    pub fn zero(n: usize) -> Self {
        Self::basis(n, 0)
    }

    pub fn basis(n: usize, index: usize) -> Self {
        let mut vector = vec![ZERO; 1 << n];
        vector[index] = ONE;
        SimState { n, vector }
    }

    pub fn from_target(t: &TargetState) -> Self {
        SimState {
            n: t.n(),
            vector: t.amplitudes().to_vec(),
        }
    }

    /// Wraps an arbitrary vector of length `2^n`; no normalization check.
    pub fn from_vec(vector: Vec<Complex64>) -> Result<Self> {
        let len = vector.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(len));
        }
        Ok(SimState {
            n: len.trailing_zeros() as usize,
            vector,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.vector
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.vector
    }

    pub fn norm(&self) -> f64 {
        self.vector.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Applies `g` in place. Only basis indices whose control bits match the
    /// required polarities are touched.
    pub fn apply(&mut self, g: &ControlledGate) -> Result<()> {
        let top = g.max_qubit();
        if top > self.n {
            return Err(Error::QubitOutOfRange {
                qubit: top,
                n: self.n,
            });
        }
        let m = g.gate().matrix()?;
        let (care, ones) = g.control_masks(self.n);
        apply_kernel(
            &mut self.vector,
            &m,
            bit_position(g.target(), self.n),
            care,
            ones,
        );
        Ok(())
    }

    pub fn applied(mut self, g: &ControlledGate) -> Result<Self> {
        self.apply(g)?;
        Ok(self)
    }
}

/// Mixes each amplitude pair `(i, i | 1 << tbit)` with `i & care == ones`.
///
/// Matching `i` are exactly `ones | x` for the submasks `x` of the free bits
/// (neither target nor control), visited in increasing order with
/// `x ← (x − free) & free`.
fn apply_kernel(v: &mut [Complex64], m: &Mat2, tbit: usize, care: usize, ones: usize) {
    let stride = 1usize << tbit;
    let free = (v.len() - 1) & !care & !stride;
    let pairs = v.len() >> (1 + care.count_ones());
    let mut x = 0usize;
    debug_assert!(ones & !care == 0 && (care | stride) < v.len());
    if *m == NamedGate::X.matrix() {
        for _ in 0..pairs {
            let i0 = x | ones;
            v.swap(i0, i0 | stride);
            x = x.wrapping_sub(free) & free;
        }
    } else {
        let p = v.as_mut_ptr();
        for _ in 0..pairs {
            let i0 = x | ones;
            // SAFETY: `x`, `ones` and `stride` are disjoint submasks of
            // `v.len() - 1`, so both indices are in bounds and distinct.
            unsafe {
                let (a, b) = (p.add(i0), p.add(i0 | stride));
                (*a, *b) = m.apply(*a, *b);
            }
            x = x.wrapping_sub(free) & free;
        }
    }
}

/// Runs `circuit` from `|0…0⟩` under the default limits.
pub fn run(circuit: &Circuit) -> Result<SimState> {
    SimConfig::default().run(circuit, None)
}

pub fn run_from(circuit: &Circuit, initial: SimState) -> Result<SimState> {
    SimConfig::default().run(circuit, Some(initial))
}

pub fn operator_of(circuit: &Circuit) -> Result<Operator> {
    SimConfig::default().operator_of(circuit)
}

/// Dense column-major operator.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    dim: usize,
    data: Vec<Complex64>,
}

impl Operator {
    pub fn identity(n: usize) -> Self {
        let dim = 1usize << n;
        let mut data = vec![ZERO; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = ONE;
        }
        Operator { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[col * self.dim + row]
    }

    pub fn column(&self, col: usize) -> &[Complex64] {
        &self.data[col * self.dim..(col + 1) * self.dim]
    }

    /// Largest entrywise `|Δ|`; no global-phase normalization.
    pub fn max_deviation(&self, other: &Operator) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Distance between a prepared state and its target.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Deviation {
    /// `max_i |prepared_i − target_i|`.
    pub max_abs: f64,
    /// `⟨target|prepared⟩`.
    pub overlap: Complex64,
}

impl Deviation {
    /// Exact preparation: amplitudes agree including global phase.
    pub fn is_exact(&self, tol: f64) -> bool {
        self.max_abs <= tol
    }

    /// Agreement up to a global phase, `|overlap| ≈ 1`.
    pub fn is_equal_up_to_phase(&self, tol: f64) -> bool {
        (self.overlap.norm() - 1.0).abs() <= tol
    }
}

pub fn deviation(prepared: &SimState, target: &TargetState) -> Result<Deviation> {
    if prepared.n != target.n() {
        return Err(Error::SizeMismatch {
            left: prepared.n,
            right: target.n(),
        });
    }
    let mut max_abs = 0.0f64;
    let mut overlap = ZERO;
    for (a, b) in prepared.vector.iter().zip(target.amplitudes()) {
        max_abs = max_abs.max((a - b).norm());
        overlap += b.conj() * a;
    }
    Ok(Deviation { max_abs, overlap })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gate::{Control, Gate};
    use std::f64::consts::FRAC_1_SQRT_2;

    fn close(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).norm() <= tol)
    }

    #[test]
    fn hadamard_on_zero() {
        let s = SimState::zero(1)
            .applied(&ControlledGate::single(Gate::H, 1).unwrap())
            .unwrap();
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        assert!(close(s.amplitudes(), &[h, h], 1e-15));
    }

    #[test]
    fn cnot_makes_bell_state() {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let start = SimState::from_vec(vec![h, ZERO, h, ZERO]).unwrap();
        let cx = ControlledGate::new(Gate::X, 2, vec![Control::on(1)]).unwrap();
        let s = start.applied(&cx).unwrap();
        assert!(close(s.amplitudes(), &[h, ZERO, ZERO, h], 1e-15));
    }

    #[test]
    fn rotation_zero_flips_sign_of_one() {
        let g = ControlledGate::single(Gate::Rotation { theta: 0.0 }, 1).unwrap();
        let s = SimState::basis(1, 1).applied(&g).unwrap();
        assert!(close(s.amplitudes(), &[ZERO, -ONE], 0.0));
    }

    #[test]
    fn negative_control_fires_on_zero() {
        let g = ControlledGate::new(Gate::X, 1, vec![Control::off(2)]).unwrap();
        assert_eq!(
            SimState::basis(2, 0b00).applied(&g).unwrap(),
            SimState::basis(2, 0b10)
        );
        assert_eq!(
            SimState::basis(2, 0b01).applied(&g).unwrap(),
            SimState::basis(2, 0b01)
        );
    }

    #[test]
    fn empty_circuit_returns_initial() {
        let c = Circuit::new(3);
        let init = SimState::basis(3, 5);
        assert_eq!(run_from(&c, init.clone()).unwrap(), init);
    }

    #[test]
    fn operator_of_single_h() {
        let c = Circuit::from_gates(1, vec![ControlledGate::single(Gate::H, 1).unwrap()]).unwrap();
        let op = operator_of(&c).unwrap();
        let h = Gate::H.matrix().unwrap();
        for r in 0..2 {
            for col in 0..2 {
                assert!((op.get(r, col) - h.get(r, col)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn width_limits() {
        let cfg = SimConfig {
            max_qubits: 3,
            max_operator_qubits: 2,
        };
        assert!(matches!(
            cfg.run(&Circuit::new(4), None),
            Err(Error::WidthLimit { n: 4, max: 3 })
        ));
        assert!(matches!(
            cfg.operator_of(&Circuit::new(3)),
            Err(Error::WidthLimit { .. })
        ));
        let g = ControlledGate::single(Gate::X, 3).unwrap();
        assert!(matches!(
            SimState::zero(2).apply(&g),
            Err(Error::QubitOutOfRange { .. })
        ));
    }

    #[test]
    fn deviation_detects_global_phase() {
        let t = TargetState::from_real(&[0.6, 0.8], false).unwrap();
        let same = SimState::from_target(&t);
        let d = deviation(&same, &t).unwrap();
        assert_eq!(d.max_abs, 0.0);
        assert!((d.overlap - ONE).norm() < 1e-15);

        let phase = Complex64::from_polar(1.0, std::f64::consts::PI / 3.0);
        let rotated =
            SimState::from_vec(t.amplitudes().iter().map(|a| a * phase).collect()).unwrap();
        let d = deviation(&rotated, &t).unwrap();
        assert!(d.max_abs > 0.5);
        assert!(d.is_equal_up_to_phase(1e-12));
        assert!(!d.is_exact(1e-9));

        assert!(deviation(&SimState::zero(2), &t).is_err());
    }
}
