//! Layered synthesis: angle tree and circuit emission.
//!
//! Qubit `j < n` receives one rotation per prefix `p = i₁…i_{j−1}`, controlled
//! on qubits `1..j−1` holding `p`, with angle
//! `atan2(√w(p·1), √w(p·0))` where `w` is the subtree weight (sum of `|a|²`
//! over all indices starting with the prefix). The last qubit receives the
//! two-level unitaries that place the actual complex amplitudes `(a_{p0},
//! a_{p1})`. After layers `1..j`, the register holds `√w(p)` on `|p0…0⟩` for
//! every length-`j` prefix `p`, so phases enter only in the last layer.
//!
//! Because each layer's target qubit is still `|0⟩` when its gates fire, a
//! zero-angle rotation acts as the identity on the prepared state and is not
//! emitted, just like a degenerate (zero-weight) prefix.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gate::{Circuit, Control, ControlledGate, Gate};
use crate::state::{Bits, TargetState};

/// Subtree weights for every prefix, built bottom-up by pairwise sums.
#[derive(Clone, Debug)]
pub struct WeightTree {
    /// `levels[j][p]` is the weight of the length-`j` prefix with value `p`.
    levels: Vec<Vec<f64>>,
}

impl WeightTree {
    pub fn new(state: &TargetState) -> Self {
        let n = state.n();
        let mut levels = vec![Vec::new(); n + 1];
        levels[n] = state.amplitudes().iter().map(|a| a.norm_sqr()).collect();
        for j in (0..n).rev() {
            levels[j] = levels[j + 1].chunks_exact(2).map(|p| p[0] + p[1]).collect();
        }
        WeightTree { levels }
    }

    pub fn n(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn weight(&self, prefix: &Bits) -> f64 {
        self.levels[prefix.len()][prefix.value()]
    }

    fn weight_at(&self, len: usize, value: usize) -> f64 {
        self.levels[len][value]
    }

    fn rotation_at(&self, len: usize, value: usize) -> RotationEntry {
        if self.weight_at(len, value) == 0.0 {
            return RotationEntry::Degenerate;
        }
        let w0 = self.weight_at(len + 1, value << 1);
        let w1 = self.weight_at(len + 1, (value << 1) | 1);
        RotationEntry::Angle(f64::atan2(w1.sqrt(), w0.sqrt()))
    }

    /// Angle for layer `j` (`1 ≤ j < n`) and a prefix of length `j − 1`.
    pub fn rotation_angle(&self, j: usize, prefix: &Bits) -> Result<RotationEntry> {
        let n = self.n();
        if j == 0 || j >= n {
            return Err(Error::LayerOutOfRange {
                layer: j,
                max: n.saturating_sub(1),
            });
        }
        if prefix.len() != j - 1 {
            return Err(Error::PrefixLength {
                got: prefix.len(),
                expected: j - 1,
            });
        }
        Ok(self.rotation_at(j - 1, prefix.value()))
    }
}

/// One slot of a rotation layer.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RotationEntry {
    Angle(f64),
    /// The prefix carries no weight (the `0/0` case); no gate is emitted.
    Degenerate,
}

impl RotationEntry {
    pub fn angle(&self) -> Option<f64> {
        match *self {
            RotationEntry::Angle(a) => Some(a),
            RotationEntry::Degenerate => None,
        }
    }
}

/// One slot of the last layer.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FinalEntry {
    Amplitudes { a0: Complex64, a1: Complex64 },
    Skip,
}

impl FinalEntry {
    /// Gate realizing the entry: a plain rotation when both amplitudes are
    /// real, the general two-level unitary otherwise.
    pub fn gate(&self) -> Option<Gate> {
        match *self {
            FinalEntry::Skip => None,
            FinalEntry::Amplitudes { a0, a1 } if a0.im == 0.0 && a1.im == 0.0 => {
                Some(Gate::Rotation {
                    theta: f64::atan2(a1.re, a0.re),
                })
            }
            FinalEntry::Amplitudes { a0, a1 } => Some(Gate::Unitary2 { a0, a1 }),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AngleTree {
    n: usize,
    rotations: Vec<Vec<RotationEntry>>,
    finals: Vec<FinalEntry>,
}

impl AngleTree {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Rotation layer `j ∈ [1, n−1]`, indexed by prefix value.
    pub fn layer(&self, j: usize) -> &[RotationEntry] {
        &self.rotations[j - 1]
    }

    /// Last layer, indexed by the value of the `n−1`-bit prefix.
    pub fn final_layer(&self) -> &[FinalEntry] {
        &self.finals
    }

    /// Entries that emit a gate: neither degenerate nor a zero-angle rotation.
    pub fn gate_count(&self) -> usize {
        self.rotations
            .iter()
            .flatten()
            .filter_map(RotationEntry::angle)
            .filter(|&a| a != 0.0)
            .count()
            + self
                .finals
                .iter()
                .filter_map(FinalEntry::gate)
                .filter(|g| !is_zero_rotation(g))
                .count()
    }

    /// One real parameter per rotation, three per final-layer unitary.
    pub fn free_parameters(&self) -> usize {
        self.rotations
            .iter()
            .flatten()
            .filter(|e| e.angle().is_some())
            .count()
            + 3 * self
                .finals
                .iter()
                .filter(|e| **e != FinalEntry::Skip)
                .count()
    }
}

pub fn subtree_weight(state: &TargetState, prefix: &Bits) -> f64 {
    assert!(prefix.len() <= state.n(), "prefix longer than register");
    let shift = state.n() - prefix.len();
    let start = prefix.value() << shift;
    state.amplitudes()[start..start + (1 << shift)]
        .iter()
        .map(|a| a.norm_sqr())
        .sum()
}

pub fn rotation_angle(state: &TargetState, j: usize, prefix: &Bits) -> Result<RotationEntry> {
    WeightTree::new(state).rotation_angle(j, prefix)
}

pub fn final_entry(state: &TargetState, prefix: &Bits) -> Result<FinalEntry> {
    let expected = state.n() - 1;
    if prefix.len() != expected {
        return Err(Error::PrefixLength {
            got: prefix.len(),
            expected,
        });
    }
    Ok(final_at(state, prefix.value()))
}

fn final_at(state: &TargetState, value: usize) -> FinalEntry {
    let a0 = state.amplitudes()[value << 1];
    let a1 = state.amplitudes()[(value << 1) | 1];
    if a0.norm_sqr() + a1.norm_sqr() == 0.0 {
        FinalEntry::Skip
    } else {
        FinalEntry::Amplitudes { a0, a1 }
    }
}

pub fn build_angle_tree(state: &TargetState) -> AngleTree {
    let n = state.n();
    let weights = WeightTree::new(state);
    let rotations = (1..n)
        .map(|j| {
            (0..1usize << (j - 1))
                .map(|p| weights.rotation_at(j - 1, p))
                .collect()
        })
        .collect();
    let finals = (0..1usize << (n - 1)).map(|p| final_at(state, p)).collect();
    AngleTree {
        n,
        rotations,
        finals,
    }
}

fn is_zero_rotation(g: &Gate) -> bool {
    matches!(g, Gate::Rotation { theta } if *theta == 0.0)
}

fn prefix_controls(value: usize, len: usize) -> Vec<Control> {
    Bits::from_value(value, len)
        .as_slice()
        .iter()
        .enumerate()
        .map(|(k, &bit)| Control {
            qubit: k + 1,
            polarity: bit,
        })
        .collect()
}

/// Emits the layered circuit, layer by layer, prefixes ascending.
pub fn circuit_from_tree(tree: &AngleTree) -> Circuit {
    let n = tree.n;
    let mut gates = Vec::with_capacity(tree.gate_count());
    for j in 1..n {
        for (p, entry) in tree.layer(j).iter().enumerate() {
            if let Some(theta) = entry.angle().filter(|&a| a != 0.0) {
                gates.push(
                    ControlledGate::new(Gate::Rotation { theta }, j, prefix_controls(p, j - 1))
                        .expect("synthesized rotation is valid"),
                );
            }
        }
    }
    for (p, entry) in tree.final_layer().iter().enumerate() {
        if let Some(gate) = entry.gate().filter(|g| !is_zero_rotation(g)) {
            gates.push(
                ControlledGate::new(gate, n, prefix_controls(p, n - 1))
                    .expect("synthesized final gate is valid"),
            );
        }
    }
    Circuit::from_parts_unchecked(n, gates)
}

/// Circuit preparing `state` exactly from `|0…0⟩`.
pub fn synthesize(state: &TargetState) -> Circuit {
    circuit_from_tree(&build_angle_tree(state))
}
