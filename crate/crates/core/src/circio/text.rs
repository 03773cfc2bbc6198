//! Line-oriented text IR.
//!
//! ```text
//! QUBITS 3
//! GATE ROT target=q1 controls=[] params=[7.8539816339744828e-1]
//! GATE U2 target=q3 controls=[+q1,-q2] params=[re(a0),im(a0),re(a1),im(a1)]
//! ```
//!
//! `+qi` is a control firing on `|1⟩`, `-qi` one firing on `|0⟩`. `MAT` gates
//! carry eight reals: the matrix row-major, real and imaginary part per entry.
//! Blank lines and lines starting with `#` are ignored.

use num_complex::Complex64;

use super::fmt_real;
use crate::error::{Error, Result};
use crate::gate::{Circuit, Control, ControlledGate, Gate};
use crate::matrix::Mat2;

pub fn write_text(circuit: &Circuit) -> String {
    let mut out = format!("QUBITS {}\n", circuit.n());
    for g in circuit {
        let controls: Vec<String> = g
            .controls()
            .iter()
            .map(|c| format!("{}q{}", if c.polarity { '+' } else { '-' }, c.qubit))
            .collect();
        let params: Vec<String> = params_of(g.gate()).into_iter().map(fmt_real).collect();
        out.push_str(&format!(
            "GATE {} target=q{} controls=[{}] params=[{}]\n",
            g.gate().kind(),
            g.target(),
            controls.join(","),
            params.join(",")
        ));
    }
    out
}

fn params_of(gate: &Gate) -> Vec<f64> {
    match *gate {
        Gate::Rotation { theta } => vec![theta],
        Gate::Unitary2 { a0, a1 } => vec![a0.re, a0.im, a1.re, a1.im],
        Gate::Named(_) => Vec::new(),
        Gate::Matrix(m) => m.0.iter().flatten().flat_map(|z| [z.re, z.im]).collect(),
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn read_text(text: &str) -> Result<Circuit> {
    let mut circuit: Option<Circuit> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        match (tokens.next(), circuit.as_mut()) {
            (Some("QUBITS"), None) => {
                let n = tokens
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .filter(|&n| n >= 1)
                    .ok_or_else(|| parse_err(line_no, "expected `QUBITS <n>` with n >= 1"))?;
                if tokens.next().is_some() {
                    return Err(parse_err(line_no, "trailing tokens after qubit count"));
                }
                circuit = Some(Circuit::new(n));
            }
            (Some("QUBITS"), Some(_)) => return Err(parse_err(line_no, "duplicate QUBITS header")),
            (Some("GATE"), Some(c)) => {
                let g = parse_gate(tokens.collect(), c.n(), line_no)?;
                c.push(g).map_err(|e| parse_err(line_no, e.to_string()))?;
            }
            (Some("GATE"), None) => return Err(parse_err(line_no, "GATE before QUBITS header")),
            (Some(other), _) => {
                return Err(parse_err(line_no, format!("unknown directive {other:?}")))
            }
            (None, _) => unreachable!("blank lines are skipped"),
        }
    }
    circuit.ok_or_else(|| parse_err(0, "missing QUBITS header"))
}

fn parse_gate(tokens: Vec<&str>, n: usize, line: usize) -> Result<ControlledGate> {
    let [kind, target, controls, params] = tokens[..] else {
        return Err(parse_err(
            line,
            "expected `GATE <kind> target=.. controls=[..] params=[..]`",
        ));
    };
    let target = field(target, "target=", line).and_then(|t| parse_qubit(t, n, line))?;
    let controls = list(field(controls, "controls=", line)?, line)?
        .into_iter()
        .map(|c| parse_control(c, n, line))
        .collect::<Result<Vec<_>>>()?;
    let params = list(field(params, "params=", line)?, line)?
        .into_iter()
        .map(|p| {
            p.parse::<f64>()
                .map_err(|_| parse_err(line, format!("bad number {p:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let expect = |count: usize| -> Result<()> {
        if params.len() == count {
            Ok(())
        } else {
            Err(parse_err(
                line,
                format!("{kind} takes {count} params, got {}", params.len()),
            ))
        }
    };
    let gate = match kind {
        "ROT" => {
            expect(1)?;
            Gate::Rotation { theta: params[0] }
        }
        "U2" => {
            expect(4)?;
            Gate::Unitary2 {
                a0: Complex64::new(params[0], params[1]),
                a1: Complex64::new(params[2], params[3]),
            }
        }
        "H" | "X" | "I" => {
            expect(0)?;
            match kind {
                "H" => Gate::H,
                "X" => Gate::X,
                _ => Gate::I,
            }
        }
        "MAT" => {
            expect(8)?;
            let z = |i: usize| Complex64::new(params[2 * i], params[2 * i + 1]);
            Gate::Matrix(Mat2::new(z(0), z(1), z(2), z(3)))
        }
        other => return Err(parse_err(line, format!("unknown gate kind {other:?}"))),
    };
    ControlledGate::new(gate, target, controls).map_err(|e| parse_err(line, e.to_string()))
}

fn field<'a>(token: &'a str, key: &str, line: usize) -> Result<&'a str> {
    token
        .strip_prefix(key)
        .ok_or_else(|| parse_err(line, format!("expected {key}..., got {token:?}")))
}

fn list(value: &str, line: usize) -> Result<Vec<&str>> {
    let inner = value
        .strip_prefix('[')
        .and_then(|v| v.strip_suffix(']'))
        .ok_or_else(|| parse_err(line, format!("expected bracketed list, got {value:?}")))?;
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    Ok(inner.split(',').collect())
}

fn parse_qubit(token: &str, n: usize, line: usize) -> Result<usize> {
    let q = token
        .strip_prefix('q')
        .and_then(|d| d.parse::<usize>().ok())
        .ok_or_else(|| parse_err(line, format!("bad qubit {token:?}")))?;
    if q == 0 || q > n {
        return Err(parse_err(line, format!("qubit q{q} outside 1..={n}")));
    }
    Ok(q)
}

fn parse_control(token: &str, n: usize, line: usize) -> Result<Control> {
    let (polarity, rest) = match token.split_at_checked(1) {
        Some(("+", rest)) => (true, rest),
        Some(("-", rest)) => (false, rest),
        _ => {
            return Err(parse_err(
                line,
                format!("control {token:?} needs a + or - prefix"),
            ))
        }
    };
    Ok(Control {
        qubit: parse_qubit(rest, n, line)?,
        polarity,
    })
}
