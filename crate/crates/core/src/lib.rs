//! Compiler from amplitude vectors to state-preparation circuits.
//!
//! The pipeline is [`synthesize`] → [`optimize`] → [`lower_circuit`], with the
//! dense simulator in [`sim`] as the reference for every stage.

pub mod circio;
pub mod error;
pub mod gate;
pub mod lower;
pub mod matrix;
pub mod optimize;
pub mod presets;
pub mod random;
pub mod sim;
pub mod state;
pub mod synth;

pub use num_complex::Complex64;

pub use error::{Error, Result};
pub use gate::{Circuit, Control, ControlledGate, Gate, NamedGate};
pub use lower::{lower_circuit, lower_controlled, unitary_sqrt};
pub use matrix::Mat2;
pub use optimize::{optimize, EquivalenceLevel, Report};
pub use sim::{deviation, Deviation, SimConfig, SimState};
pub use state::{basis_index, Bits, TargetState};
pub use synth::{build_angle_tree, synthesize, AngleTree};
