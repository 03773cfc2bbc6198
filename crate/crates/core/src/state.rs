//! Target amplitude vectors and the big-endian basis convention.
//!
//! Basis index `i` encodes the bitstring `i₁i₂…iₙ` with qubit 1 as the most
//! significant bit, so for four qubits `0010` is index 2. Qubits are numbered
//! from 1 in every public API.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on `Σ|aᵢ|² = 1` for accepted input states.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// A bitstring over qubits `1..=len`, stored in qubit order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bits(Vec<bool>);

impl Bits {
    pub fn new(bits: Vec<bool>) -> Self {
        Bits(bits)
    }

    pub fn empty() -> Self {
        Bits(Vec::new())
    }

    /// The `len`-bit big-endian encoding of `value`.
    pub fn from_value(value: usize, len: usize) -> Self {
        Bits(
            (0..len)
                .map(|k| (value >> (len - 1 - k)) & 1 == 1)
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Bit held by qubit `q` (1-based).
    pub fn bit(&self, q: usize) -> bool {
        self.0[q - 1]
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.0
    }

    /// Big-endian value, first bit most significant.
    pub fn value(&self) -> usize {
        basis_index(&self.0)
    }

    pub fn pushed(&self, bit: bool) -> Bits {
        let mut v = self.0.clone();
        v.push(bit);
        Bits(v)
    }

    /// The first `len` bits.
    pub fn prefix(&self, len: usize) -> Bits {
        Bits(self.0[..len].to_vec())
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Bits {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::InvalidBits(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()
            .map(Bits)
    }
}

/// Big-endian value of a bitstring: qubit 1 is the most significant bit.
pub fn basis_index(bits: &[bool]) -> usize {
    bits.iter()
        .fold(0usize, |acc, &b| (acc << 1) | usize::from(b))
}

/// Bit position of qubit `q` inside a basis index of an `n`-qubit register.
#[inline]
pub fn bit_position(q: usize, n: usize) -> usize {
    n - q
}

/// A normalized amplitude vector over `n ≥ 1` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct TargetState {
    n: usize,
    amplitudes: Vec<Complex64>,
}

impl TargetState {
    /// Validates raw amplitudes. With `rescale`, a nonzero vector of any norm is
    /// scaled to unit norm instead of being rejected.
    pub fn new(amplitudes: Vec<Complex64>, rescale: bool) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(len));
        }
        if let Some(index) = amplitudes
            .iter()
            .position(|a| !a.re.is_finite() || !a.im.is_finite())
        {
            return Err(Error::NonFinite { index });
        }
        let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if norm_sqr == 0.0 {
            return Err(Error::ZeroVector);
        }
        let n = len.trailing_zeros() as usize;
        let deviation = (norm_sqr - 1.0).abs();
        if deviation <= NORM_TOLERANCE {
            return Ok(TargetState { n, amplitudes });
        }
        if !rescale {
            return Err(Error::NotNormalized {
                norm: norm_sqr.sqrt(),
                deviation,
            });
        }
        let inv = 1.0 / norm_sqr.sqrt();
        Ok(TargetState {
            n,
            amplitudes: amplitudes.into_iter().map(|a| a * inv).collect(),
        })
    }

    /// Real amplitudes; imaginary parts are zero.
    pub fn from_real(amplitudes: &[f64], rescale: bool) -> Result<Self> {
        Self::new(
            amplitudes.iter().map(|&a| Complex64::new(a, 0.0)).collect(),
            rescale,
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `N = 2^n`.
    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, bits: &Bits) -> Complex64 {
        self.amplitudes[bits.value()]
    }

    /// True when every amplitude is nonzero.
    pub fn is_nowhere_zero(&self) -> bool {
        self.amplitudes.iter().all(|a| a.norm_sqr() > 0.0)
    }

    /// True when every imaginary part is exactly zero.
    pub fn is_real(&self) -> bool {
        self.amplitudes.iter().all(|a| a.im == 0.0)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_json_with(text, false)
    }

    /// Reads `{"n": .., "amplitudes": [[re, im], ..]}`, a document whose
    /// amplitudes are plain reals, or a bare flat array of reals.
    pub fn from_json_with(text: &str, rescale: bool) -> Result<Self> {
        let doc: StateDoc = serde_json::from_str(text)?;
        let (declared, amps) = match doc {
            StateDoc::Flat(values) => (None, values.into_iter().map(Amp::into_complex).collect()),
            StateDoc::Full { n, amplitudes } => (
                n,
                amplitudes
                    .into_iter()
                    .map(Amp::into_complex)
                    .collect::<Vec<_>>(),
            ),
        };
        if let Some(n) = declared {
            if n >= usize::BITS as usize || 1usize << n != amps.len() {
                return Err(Error::LengthMismatch {
                    declared: n,
                    len: amps.len(),
                });
            }
        }
        Self::new(amps, rescale)
    }

    pub fn to_json(&self) -> String {
        let doc = StateFile {
            n: self.n,
            amplitudes: self.amplitudes.iter().map(|a| [a.re, a.im]).collect(),
        };
        serde_json::to_string_pretty(&doc).expect("state serializes")
    }
}

#[derive(Serialize)]
struct StateFile {
    n: usize,
    amplitudes: Vec<[f64; 2]>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum StateDoc {
    Full {
        n: Option<usize>,
        amplitudes: Vec<Amp>,
    },
    Flat(Vec<Amp>),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Amp {
    Pair([f64; 2]),
    Real(f64),
}

impl Amp {
    fn into_complex(self) -> Complex64 {
        match self {
            Amp::Pair([re, im]) => Complex64::new(re, im),
            Amp::Real(re) => Complex64::new(re, 0.0),
        }
    }
}
