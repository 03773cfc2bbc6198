//! OpenQASM 2.0 export for lowered circuits.
//!
//! Generic single-qubit unitaries become `u3`. A controlled unitary
//! `C(e^{iγ}·u3)` is emitted as `u1(γ)` on the control followed by `cu3`, so
//! controlled gates keep their exact phase; the phase of uncontrolled gates
//! is global and dropped. Controls firing on `|0⟩` are wrapped in `x`.

use std::f64::consts::PI;
use std::fmt::Write;

use num_complex::Complex64;

use super::fmt_real;
use crate::error::{Error, Result};
use crate::gate::{Circuit, Gate, NamedGate};
use crate::matrix::Mat2;

/// `M = e^{iγ}·u3(θ, φ, λ)` with
/// `u3 = [[cos θ/2, −e^{iλ} sin θ/2], [e^{iφ} sin θ/2, e^{i(φ+λ)} cos θ/2]]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZyzAngles {
    pub gamma: f64,
    pub theta: f64,
    pub phi: f64,
    pub lambda: f64,
}

impl ZyzAngles {
    pub fn u3_matrix(&self) -> Mat2 {
        let (s, c) = (self.theta / 2.0).sin_cos();
        let e = |a: f64| Complex64::from_polar(1.0, a);
        Mat2::new(
            Complex64::new(c, 0.0),
            -e(self.lambda) * s,
            e(self.phi) * s,
            e(self.phi + self.lambda) * c,
        )
    }

    pub fn matrix(&self) -> Mat2 {
        self.u3_matrix()
            .scale(Complex64::from_polar(1.0, self.gamma))
    }
}

const EPS: f64 = 1e-14;

pub fn zyz_decompose(m: &Mat2) -> ZyzAngles {
    let [[m00, m01], [m10, m11]] = m.0;
    let theta = 2.0 * f64::atan2(m10.norm(), m00.norm());
    let (gamma, phi, lambda) = if m00.norm() > EPS {
        let gamma = m00.arg();
        if m10.norm() > EPS {
            (gamma, m10.arg() - gamma, (-m01).arg() - gamma)
        } else {
            (gamma, 0.0, m11.arg() - gamma)
        }
    } else {
        let gamma = (-m01).arg();
        (gamma, m10.arg() - gamma, 0.0)
    };
    ZyzAngles {
        gamma: wrap(gamma),
        theta,
        phi: wrap(phi),
        lambda: wrap(lambda),
    }
}

fn wrap(a: f64) -> f64 {
    let w = a.rem_euclid(2.0 * PI);
    if w > PI {
        w - 2.0 * PI
    } else {
        w
    }
}

pub fn export_qasm(circuit: &Circuit) -> Result<String> {
    let mut out = String::new();
    out.push_str("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    writeln!(out, "qreg q[{}];", circuit.n()).expect("string write");
    for (index, g) in circuit.iter().enumerate() {
        if g.arity() > 1 {
            return Err(Error::NotLowered {
                index,
                controls: g.arity(),
            });
        }
        let t = g.target() - 1;
        let control = g.controls().first().copied();
        let flip = control.filter(|c| !c.polarity).map(|c| c.qubit - 1);
        if let Some(c) = flip {
            writeln!(out, "x q[{c}];").expect("string write");
        }
        match (g.gate(), control.map(|c| c.qubit - 1)) {
            (Gate::Named(NamedGate::I), _) => writeln!(out, "id q[{t}];"),
            (Gate::Named(NamedGate::H), None) => writeln!(out, "h q[{t}];"),
            (Gate::Named(NamedGate::H), Some(c)) => writeln!(out, "ch q[{c}],q[{t}];"),
            (Gate::Named(NamedGate::X), None) => writeln!(out, "x q[{t}];"),
            (Gate::Named(NamedGate::X), Some(c)) => writeln!(out, "cx q[{c}],q[{t}];"),
            (gate, c) => {
                let z = zyz_decompose(&gate.matrix()?);
                let args = format!(
                    "{},{},{}",
                    fmt_real(z.theta),
                    fmt_real(z.phi),
                    fmt_real(z.lambda)
                );
                match c {
                    None => writeln!(out, "u3({args}) q[{t}];"),
                    Some(c) => {
                        if z.gamma != 0.0 {
                            writeln!(out, "u1({}) q[{c}];", fmt_real(z.gamma))
                                .expect("string write");
                        }
                        writeln!(out, "cu3({args}) q[{c}],q[{t}];")
                    }
                }
            }
        }
        .expect("string write");
        if let Some(c) = flip {
            writeln!(out, "x q[{c}];").expect("string write");
        }
    }
    Ok(out)
}
