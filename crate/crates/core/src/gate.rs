//! Gate-level IR: single-qubit gates, controlled gates and circuits.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{Mat2, ONE, ZERO};
use crate::state::bit_position;

/// Tolerance for gate unitarity.
pub const UNITARY_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedGate {
    I,
    H,
    X,
}

impl NamedGate {
    pub fn matrix(self) -> Mat2 {
        match self {
            NamedGate::I => Mat2::IDENTITY,
            NamedGate::H => Mat2::real(FRAC_1_SQRT_2, FRAC_1_SQRT_2, FRAC_1_SQRT_2, -FRAC_1_SQRT_2),
            NamedGate::X => Mat2::new(ZERO, ONE, ONE, ZERO),
        }
    }
}

/// A single-qubit operation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Gate {
    /// The reflection-type rotation `[[cosθ, sinθ], [sinθ, −cosθ]]`.
    Rotation {
        theta: f64,
    },
    /// Maps `|0⟩ ↦ (a0|0⟩ + a1|1⟩)/r` and `|1⟩ ↦ (a1*|0⟩ − a0*|1⟩)/r`,
    /// `r = √(|a0|² + |a1|²)`. The amplitudes need not be normalized.
    Unitary2 {
        a0: Complex64,
        a1: Complex64,
    },
    Named(NamedGate),
    /// Arbitrary unitary, produced by lowering.
    Matrix(Mat2),
}

impl Gate {
    pub const H: Gate = Gate::Named(NamedGate::H);
    pub const X: Gate = Gate::Named(NamedGate::X);
    pub const I: Gate = Gate::Named(NamedGate::I);

    pub fn rotation(theta: f64) -> Result<Gate> {
        if !theta.is_finite() {
            return Err(Error::NonFiniteParameter);
        }
        Ok(Gate::Rotation { theta })
    }

    pub fn unitary2(a0: Complex64, a1: Complex64) -> Result<Gate> {
        let g = Gate::Unitary2 { a0, a1 };
        g.validate()?;
        Ok(g)
    }

    pub fn from_matrix(m: Mat2) -> Result<Gate> {
        let g = Gate::Matrix(m);
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Gate::Rotation { theta } if !theta.is_finite() => Err(Error::NonFiniteParameter),
            Gate::Unitary2 { a0, a1 } => {
                if ![a0.re, a0.im, a1.re, a1.im].iter().all(|x| x.is_finite()) {
                    return Err(Error::NonFiniteParameter);
                }
                if a0.norm_sqr() + a1.norm_sqr() == 0.0 {
                    return Err(Error::DegenerateGate);
                }
                Ok(())
            }
            Gate::Matrix(m) => {
                if !m.is_finite() {
                    return Err(Error::NonFiniteParameter);
                }
                let dev = m.unitarity_deviation();
                if dev > UNITARY_TOLERANCE {
                    return Err(Error::NonUnitary(dev));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Operator matrix, columns are the images of `|0⟩` and `|1⟩`.
    pub fn matrix(&self) -> Result<Mat2> {
        match *self {
            Gate::Rotation { theta } => {
                let (s, c) = theta.sin_cos();
                Ok(Mat2::real(c, s, s, -c))
            }
            Gate::Unitary2 { a0, a1 } => {
                let r = (a0.norm_sqr() + a1.norm_sqr()).sqrt();
                if r == 0.0 {
                    return Err(Error::DegenerateGate);
                }
                let (b0, b1) = (a0 / r, a1 / r);
                Ok(Mat2::new(b0, b1.conj(), b1, -b0.conj()))
            }
            Gate::Named(named) => Ok(named.matrix()),
            Gate::Matrix(m) => Ok(m),
        }
    }

    /// Real parameters the gate carries.
    pub fn free_parameters(&self) -> usize {
        match self {
            Gate::Rotation { .. } => 1,
            Gate::Unitary2 { .. } => 3,
            Gate::Named(_) => 0,
            Gate::Matrix(_) => 4,
        }
    }

    /// Rotation angle for gates that are rotations, named ones included.
    pub fn rotation_angle(&self) -> Option<f64> {
        match *self {
            Gate::Rotation { theta } => Some(theta),
            Gate::Named(NamedGate::H) => Some(FRAC_PI_4),
            Gate::Named(NamedGate::X) => Some(FRAC_PI_2),
            _ => None,
        }
    }

    /// Entrywise matrix comparison.
    pub fn approx_eq(&self, other: &Gate, tol: f64) -> bool {
        match (self.matrix(), other.matrix()) {
            (Ok(a), Ok(b)) => a.approx_eq(&b, tol),
            _ => false,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Gate::Rotation { .. } => "ROT",
            Gate::Unitary2 { .. } => "U2",
            Gate::Named(NamedGate::H) => "H",
            Gate::Named(NamedGate::X) => "X",
            Gate::Named(NamedGate::I) => "I",
            Gate::Matrix(_) => "MAT",
        }
    }
}

/// A control on `qubit`; `polarity = false` activates on `|0⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Control {
    pub qubit: usize,
    pub polarity: bool,
}

impl Control {
    pub fn on(qubit: usize) -> Self {
        Control {
            qubit,
            polarity: true,
        }
    }

    pub fn off(qubit: usize) -> Self {
        Control {
            qubit,
            polarity: false,
        }
    }
}

/// A gate on `target` that fires when every control holds its polarity.
/// Controls are kept sorted by qubit.
#[derive(Clone, Debug, PartialEq)]
pub struct ControlledGate {
    controls: Vec<Control>,
    target: usize,
    gate: Gate,
}

impl ControlledGate {
    pub fn new(gate: Gate, target: usize, mut controls: Vec<Control>) -> Result<Self> {
        if target == 0 {
            return Err(Error::QubitOutOfRange { qubit: 0, n: 0 });
        }
        controls.sort();
        for (i, c) in controls.iter().enumerate() {
            if c.qubit == 0 {
                return Err(Error::QubitOutOfRange { qubit: 0, n: 0 });
            }
            if c.qubit == target || controls.get(i + 1).is_some_and(|d| d.qubit == c.qubit) {
                return Err(Error::DuplicateQubit(c.qubit));
            }
        }
        gate.validate()?;
        Ok(ControlledGate {
            controls,
            target,
            gate,
        })
    }

    /// For callers that build sorted, distinct, valid controls themselves.
    pub(crate) fn from_parts_unchecked(gate: Gate, target: usize, controls: Vec<Control>) -> Self {
        ControlledGate {
            controls,
            target,
            gate,
        }
    }

    pub fn single(gate: Gate, target: usize) -> Result<Self> {
        Self::new(gate, target, Vec::new())
    }

    pub fn controls(&self) -> &[Control] {
        &self.controls
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn gate(&self) -> &Gate {
        &self.gate
    }

    pub fn arity(&self) -> usize {
        self.controls.len()
    }

    pub fn with_gate(&self, gate: Gate) -> Self {
        ControlledGate {
            gate,
            ..self.clone()
        }
    }

    /// Same gate with the control on `qubit` removed.
    pub fn without_control(&self, qubit: usize) -> Self {
        ControlledGate {
            controls: self
                .controls
                .iter()
                .copied()
                .filter(|c| c.qubit != qubit)
                .collect(),
            ..self.clone()
        }
    }

    pub fn polarity_of(&self, qubit: usize) -> Option<bool> {
        self.controls
            .iter()
            .find(|c| c.qubit == qubit)
            .map(|c| c.polarity)
    }

    pub fn max_qubit(&self) -> usize {
        self.controls
            .iter()
            .map(|c| c.qubit)
            .fold(self.target, usize::max)
    }

    /// `(care, ones)` bitmasks: a basis index activates the gate iff
    /// `index & care == ones`.
    pub fn control_masks(&self, n: usize) -> (usize, usize) {
        self.controls.iter().fold((0, 0), |(care, ones), c| {
            let bit = 1usize << bit_position(c.qubit, n);
            (care | bit, if c.polarity { ones | bit } else { ones })
        })
    }

    /// True when some qubit is controlled with opposite polarities, so the
    /// two gates act on orthogonal subspaces and commute.
    pub fn disjoint_from(&self, other: &ControlledGate) -> bool {
        self.controls
            .iter()
            .any(|c| other.polarity_of(c.qubit) == Some(!c.polarity))
    }
}

impl fmt::Display for ControlledGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.gate.kind())?;
        if let Some(theta) = match self.gate {
            Gate::Rotation { theta } => Some(theta),
            _ => None,
        } {
            write!(f, "({theta:.6})")?;
        }
        write!(f, " q{}", self.target)?;
        if !self.controls.is_empty() {
            f.write_str(" if ")?;
            for (i, c) in self.controls.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}q{}", if c.polarity { '+' } else { '-' }, c.qubit)?;
            }
        }
        Ok(())
    }
}

/// An ordered gate sequence over `n` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    n: usize,
    gates: Vec<ControlledGate>,
}

impl Circuit {
    pub fn new(n: usize) -> Self {
        Circuit {
            n,
            gates: Vec::new(),
        }
    }

    pub fn from_gates(n: usize, gates: Vec<ControlledGate>) -> Result<Self> {
        let mut c = Circuit::new(n);
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn push(&mut self, g: ControlledGate) -> Result<()> {
        let top = g.max_qubit();
        if top > self.n {
            return Err(Error::QubitOutOfRange {
                qubit: top,
                n: self.n,
            });
        }
        self.gates.push(g);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[ControlledGate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ControlledGate> {
        self.gates.iter()
    }

    pub fn max_arity(&self) -> usize {
        self.gates
            .iter()
            .map(ControlledGate::arity)
            .max()
            .unwrap_or(0)
    }

    pub(crate) fn from_parts_unchecked(n: usize, gates: Vec<ControlledGate>) -> Self {
        Circuit { n, gates }
    }
}

impl<'a> IntoIterator for &'a Circuit {
    type Item = &'a ControlledGate;
    type IntoIter = std::slice::Iter<'a, ControlledGate>;

    fn into_iter(self) -> Self::IntoIter {
        self.gates.iter()
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "circuit on {} qubits, {} gates",
            self.n,
            self.gates.len()
        )?;
        for g in &self.gates {
            writeln!(f, "  {g}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn rotation_special_cases() {
        let z = Gate::Rotation { theta: 0.0 }.matrix().unwrap();
        assert!(z.approx_eq(&Mat2::real(1.0, 0.0, 0.0, -1.0), 1e-15));
        let h = Gate::Rotation { theta: FRAC_PI_4 }.matrix().unwrap();
        assert!(h.approx_eq(&NamedGate::H.matrix(), 1e-15));
        let x = Gate::Rotation { theta: FRAC_PI_2 }.matrix().unwrap();
        assert!(x.approx_eq(&NamedGate::X.matrix(), 1e-15));
    }

    #[test]
    fn unitary2_uses_column_convention() {
        let m = Gate::Unitary2 { a0: ONE, a1: ZERO }.matrix().unwrap();
        assert_eq!(m, Mat2::real(1.0, 0.0, 0.0, -1.0));

        let a0 = Complex64::new(0.3, -0.4);
        let a1 = Complex64::new(-0.1, 0.5);
        let r = (a0.norm_sqr() + a1.norm_sqr()).sqrt();
        let m = Gate::Unitary2 { a0, a1 }.matrix().unwrap();
        // |0⟩ ↦ (a0, a1)/r and |1⟩ ↦ (a1*, −a0*)/r
        assert_eq!(m.apply(ONE, ZERO), (a0 / r, a1 / r));
        let (u, v) = m.apply(ZERO, ONE);
        assert!((u - a1.conj() / r).norm() < 1e-15 && (v + a0.conj() / r).norm() < 1e-15);
        assert!(m.unitarity_deviation() < 1e-15);
    }

    #[test]
    fn degenerate_unitary2_is_rejected() {
        assert!(matches!(
            Gate::unitary2(ZERO, ZERO),
            Err(Error::DegenerateGate)
        ));
        assert!(matches!(
            Gate::Unitary2 { a0: ZERO, a1: ZERO }.matrix(),
            Err(Error::DegenerateGate)
        ));
    }

    #[test]
    fn real_unitary2_matches_rotation() {
        // Final-layer entries with real amplitudes are ordinary rotations.
        for &(a0, a1) in &[(0.6, 0.8), (-0.6, 0.8), (0.0, -1.0), (-0.3, -0.2)] {
            let u = Gate::Unitary2 {
                a0: a0.into(),
                a1: a1.into(),
            }
            .matrix()
            .unwrap();
            let r = Gate::Rotation {
                theta: f64::atan2(a1, a0),
            }
            .matrix()
            .unwrap();
            assert!(u.approx_eq(&r, 1e-15), "{a0} {a1}");
        }
    }

    #[test]
    fn controlled_gate_validation() {
        assert!(matches!(
            ControlledGate::new(Gate::X, 2, vec![Control::on(2)]),
            Err(Error::DuplicateQubit(2))
        ));
        assert!(matches!(
            ControlledGate::new(Gate::X, 3, vec![Control::on(1), Control::off(1)]),
            Err(Error::DuplicateQubit(1))
        ));
        let g = ControlledGate::new(Gate::X, 4, vec![Control::on(3), Control::off(1)]).unwrap();
        assert_eq!(g.controls()[0], Control::off(1));
        let mut c = Circuit::new(3);
        assert!(matches!(
            c.push(g),
            Err(Error::QubitOutOfRange { qubit: 4, n: 3 })
        ));
        assert!(Gate::rotation(f64::INFINITY).is_err());
        assert!(Gate::from_matrix(Mat2::real(1.0, 1.0, 0.0, 1.0)).is_err());
        assert_eq!(Gate::rotation(PI).unwrap().free_parameters(), 1);
    }

    #[test]
    fn masks_and_disjointness() {
        let a = ControlledGate::new(Gate::H, 3, vec![Control::on(1), Control::off(2)]).unwrap();
        let b = ControlledGate::new(Gate::H, 3, vec![Control::on(1), Control::on(2)]).unwrap();
        let c = ControlledGate::new(Gate::H, 3, vec![Control::on(1)]).unwrap();
        assert_eq!(a.control_masks(3), (0b110, 0b100));
        assert!(a.disjoint_from(&b));
        assert!(!a.disjoint_from(&c));
    }
}
