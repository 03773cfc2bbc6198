mod common;

use common::*;
use qinit_core::circio::export_qasm;
use qinit_core::random::{random_state, seeded_rng};
use qinit_core::{
    lower_circuit, optimize, synthesize, Circuit, Complex64, Control, ControlledGate, Gate, Mat2,
};

fn u3(theta: f64, phi: f64, lambda: f64) -> Mat2 {
    let (s, c) = (theta / 2.0).sin_cos();
    let e = |a: f64| Complex64::from_polar(1.0, a);
    Mat2::new(
        Complex64::new(c, 0.0),
        -e(lambda) * s,
        e(phi) * s,
        e(phi + lambda) * c,
    )
}

/// Reads the subset of OpenQASM 2.0 the exporter writes back into a circuit.
fn parse_qasm(text: &str) -> Circuit {
    let mut circuit = None;
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        let line = line.strip_suffix(';').expect("statement ends with ;");
        if line.starts_with("OPENQASM") || line.starts_with("include") {
            continue;
        }
        let (head, operands) = line.split_once(' ').unwrap();
        let qubits: Vec<usize> = operands
            .split(',')
            .map(|q| {
                q.trim_start_matches("q[")
                    .trim_end_matches(']')
                    .parse::<usize>()
                    .unwrap()
                    + 1
            })
            .collect();
        if head == "qreg" {
            circuit = Some(Circuit::new(qubits[0] - 1));
            continue;
        }
        let (name, args) = match head.split_once('(') {
            Some((name, rest)) => {
                let args: Vec<f64> = rest
                    .trim_end_matches(')')
                    .split(',')
                    .map(|a| a.parse().unwrap())
                    .collect();
                (name, args)
            }
            None => (head, Vec::new()),
        };
        let h = Gate::H.matrix().unwrap();
        let x = Gate::X.matrix().unwrap();
        let (m, controlled) = match name {
            "id" => (Mat2::IDENTITY, false),
            "h" => (h, false),
            "ch" => (h, true),
            "x" => (x, false),
            "cx" => (x, true),
            "u1" => (u3(0.0, 0.0, args[0]), false),
            "u3" => (u3(args[0], args[1], args[2]), false),
            "cu3" => (u3(args[0], args[1], args[2]), true),
            other => panic!("unexpected gate {other}"),
        };
        let g = if controlled {
            ControlledGate::new(Gate::Matrix(m), qubits[1], vec![Control::on(qubits[0])])
        } else {
            ControlledGate::new(Gate::Matrix(m), qubits[0], Vec::new())
        };
        circuit.as_mut().unwrap().push(g.unwrap()).unwrap();
    }
    circuit.unwrap()
}

#[test]
fn exported_circuit_prepares_the_state() {
    let mut rng = seeded_rng(21);
    for n in 1..=4 {
        let t = random_state(n, &mut rng);
        let (opt, _) = optimize(&synthesize(&t));
        let lowered = lower_circuit(&opt).unwrap();
        let qasm = export_qasm(&lowered).unwrap();
        let parsed = parse_qasm(&qasm);
        let mut zero = vec![Complex64::new(0.0, 0.0); 1 << n];
        zero[0] = Complex64::new(1.0, 0.0);
        let out = apply_circuit(&parsed, &zero);
        assert!(phase_free_deviation(&out, &t) <= 1e-9, "n={n}");
    }
}

#[test]
fn controlled_phases_survive_export() {
    // Operators must agree up to one global phase, controls included.
    let mut rng = seeded_rng(22);
    let mut gates = Vec::new();
    for i in 0..6 {
        let u = random_unitary(&mut rng);
        let control = if i % 2 == 0 {
            Control::on(1)
        } else {
            Control::off(3)
        };
        gates.push(ControlledGate::new(Gate::Matrix(u), 3 - i % 2, vec![control]).unwrap());
    }
    gates.push(ControlledGate::new(Gate::H, 1, vec![Control::on(3)]).unwrap());
    gates.push(ControlledGate::new(Gate::X, 2, Vec::new()).unwrap());
    let c = Circuit::from_gates(3, gates).unwrap();
    let reference = circuit_columns(&c);
    let exported = circuit_columns(&parse_qasm(&export_qasm(&c).unwrap()));
    let overlap: Complex64 = reference
        .iter()
        .flatten()
        .zip(exported.iter().flatten())
        .map(|(r, e)| r * e.conj())
        .sum();
    let phase = overlap / overlap.norm();
    let rephased: Vec<Vec<Complex64>> = exported
        .iter()
        .map(|col| col.iter().map(|z| z * phase).collect())
        .collect();
    assert!(max_diff(&reference, &rephased) <= 1e-12);
}
