//! Lowering of multi-controlled gates to gates with at most one control.
//!
//! A gate `C^k(U)` with `k ≥ 2` positive controls `c₁…c_k` is rewritten with
//! `V = √U` as
//!
//! ```text
//! C_{c_k}(V) · C^{k−1}(X)→c_k · C_{c_k}(V†) · C^{k−1}(X)→c_k · C^{k−1}(V)
//! ```
//!
//! (time order, left first) and the last factor is lowered recursively. The
//! multi-controlled NOTs use the qubits outside their own support as borrowed
//! workspace; such qubits may hold any state and are restored exactly, so no
//! ancilla is ever added. The original target is always free for them, which
//! makes each `C^{k−1}(X)` linear in `k` and the whole rewrite quadratic.
//! Negative controls are conjugated with X.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gate::{Circuit, Control, ControlledGate, Gate, NamedGate, UNITARY_TOLERANCE};
use crate::matrix::{Mat2, ZERO};

/// Principal square root of a 2x2 unitary: each eigenphase in `(−π, π]` is
/// halved into `(−π/2, π/2]`.
pub fn unitary_sqrt(u: &Mat2) -> Result<Mat2> {
    let dev = u.unitarity_deviation();
    if dev > UNITARY_TOLERANCE || !u.is_finite() {
        return Err(Error::NonUnitary(dev));
    }
    let [[a, b], [c, d]] = u.0;
    let half_trace = (a + d) * 0.5;
    let disc = ((a - d) * (a - d) * 0.25 + b * c).sqrt();
    if disc.norm() < 1e-13 {
        return Ok(Mat2::scalar(principal_sqrt(half_trace)));
    }
    let l1 = half_trace + disc;
    let l2 = half_trace - disc;
    // Eigenvector of l1 from whichever row of (U − l1·I) is better conditioned.
    let from_row0 = [b, l1 - a];
    let from_row1 = [l1 - d, c];
    let v = if norm2(&from_row0) >= norm2(&from_row1) {
        from_row0
    } else {
        from_row1
    };
    let len = norm2(&v).sqrt();
    let v1 = [v[0] / len, v[1] / len];
    let v2 = [-v1[1].conj(), v1[0].conj()];
    let (s1, s2) = (principal_sqrt(l1), principal_sqrt(l2));
    let mut out = [[ZERO; 2]; 2];
    for (r, row) in out.iter_mut().enumerate() {
        for (col, cell) in row.iter_mut().enumerate() {
            *cell = s1 * v1[r] * v1[col].conj() + s2 * v2[r] * v2[col].conj();
        }
    }
    Ok(Mat2(out))
}

fn norm2(v: &[Complex64; 2]) -> f64 {
    v[0].norm_sqr() + v[1].norm_sqr()
}

fn principal_sqrt(z: Complex64) -> Complex64 {
    let s = z.sqrt();
    // z on the negative real axis with a −0 imaginary part lands on −i·√|z|.
    if s.re == 0.0 && s.im < 0.0 {
        -s
    } else {
        s
    }
}

/// `√X = ½[[1+i, 1−i], [1−i, 1+i]]`.
pub fn sqrt_x() -> Mat2 {
    let p = Complex64::new(0.5, 0.5);
    let m = Complex64::new(0.5, -0.5);
    Mat2::new(p, m, m, p)
}

fn push(out: &mut Vec<ControlledGate>, gate: Gate, target: usize, control: Option<usize>) {
    let controls = control.map(Control::on).into_iter().collect();
    out.push(ControlledGate::from_parts_unchecked(gate, target, controls));
}

/// Toffoli as five two-qubit gates built from `V = √X`.
fn toffoli(a: usize, b: usize, target: usize, out: &mut Vec<ControlledGate>) {
    let v = Gate::Matrix(sqrt_x());
    let v_dag = Gate::Matrix(sqrt_x().adjoint());
    push(out, v, target, Some(b));
    push(out, Gate::X, b, Some(a));
    push(out, v_dag, target, Some(b));
    push(out, Gate::X, b, Some(a));
    push(out, v, target, Some(a));
}

/// `C^m(X)` over `m ≥ 3` controls using `m − 2` borrowed qubits, as
/// `4(m − 2)` Toffolis.
fn ladder(controls: &[usize], target: usize, work: &[usize], out: &mut Vec<ControlledGate>) {
    let m = controls.len();
    debug_assert!(m >= 3 && work.len() >= m - 2);
    let c = controls;
    let a = &work[..m - 2];
    let inner = |out: &mut Vec<ControlledGate>| {
        for i in (1..m - 2).rev() {
            toffoli(c[i + 1], a[i - 1], a[i], out);
        }
        toffoli(c[0], c[1], a[0], out);
        for i in 1..m - 2 {
            toffoli(c[i + 1], a[i - 1], a[i], out);
        }
    };
    toffoli(c[m - 1], a[m - 3], target, out);
    inner(out);
    toffoli(c[m - 1], a[m - 3], target, out);
    inner(out);
}

/// Multi-controlled NOT on positive `controls`, using `borrowed` qubits
/// (disjoint from controls and target) as restorable workspace.
pub fn mcx(controls: &[usize], target: usize, borrowed: &[usize], out: &mut Vec<ControlledGate>) {
    let m = controls.len();
    match m {
        0 => push(out, Gate::X, target, None),
        1 => push(out, Gate::X, target, Some(controls[0])),
        2 => toffoli(controls[0], controls[1], target, out),
        _ if borrowed.len() >= m - 2 => ladder(controls, target, borrowed, out),
        _ if !borrowed.is_empty() => {
            // Split across one borrowed qubit b: b ^= A; t ^= B·b; b ^= A; t ^= B·b.
            let b = borrowed[0];
            let m1 = m.div_ceil(2);
            let (first, second) = controls.split_at(m1);
            let mut first_work: Vec<usize> = second.to_vec();
            first_work.push(target);
            first_work.extend_from_slice(&borrowed[1..]);
            let mut second_controls = second.to_vec();
            second_controls.push(b);
            let mut second_work = first.to_vec();
            second_work.extend_from_slice(&borrowed[1..]);
            for _ in 0..2 {
                mcx(first, b, &first_work, out);
                mcx(&second_controls, target, &second_work, out);
            }
        }
        _ => lower_positive(controls, target, Gate::X, &[], out),
    }
}

/// Lowers `C^k(gate)` with positive controls. `others` lists every register
/// qubit outside the gate's support.
fn lower_positive(
    controls: &[usize],
    target: usize,
    gate: Gate,
    others: &[usize],
    out: &mut Vec<ControlledGate>,
) {
    let k = controls.len();
    if k <= 1 {
        push(out, gate, target, controls.first().copied());
        return;
    }
    if gate == Gate::Named(NamedGate::X) && !others.is_empty() {
        mcx(controls, target, others, out);
        return;
    }
    let u = gate.matrix().expect("validated gate");
    let v = unitary_sqrt(&u).expect("validated gate is unitary");
    let (rest, last) = controls.split_at(k - 1);
    let last = last[0];
    let mut free = Vec::with_capacity(others.len() + 1);
    free.push(target);
    free.extend_from_slice(others);

    push(out, Gate::Matrix(v), target, Some(last));
    mcx(rest, last, &free, out);
    push(out, Gate::Matrix(v.adjoint()), target, Some(last));
    mcx(rest, last, &free, out);

    let mut others_next = others.to_vec();
    others_next.push(last);
    lower_positive(rest, target, Gate::Matrix(v), &others_next, out);
}

/// Rewrites one gate of an `n`-qubit register into gates with at most one
/// control. Gates with zero or one control are returned unchanged.
pub fn lower_controlled(g: &ControlledGate, n: usize) -> Result<Vec<ControlledGate>> {
    if g.arity() <= 1 {
        return Ok(vec![g.clone()]);
    }
    if g.max_qubit() > n {
        return Err(Error::QubitOutOfRange {
            qubit: g.max_qubit(),
            n,
        });
    }
    // Surface non-unitary input as an error instead of a panic below.
    unitary_sqrt(&g.gate().matrix()?)?;

    let controls: Vec<usize> = g.controls().iter().map(|c| c.qubit).collect();
    let negated: Vec<usize> = g
        .controls()
        .iter()
        .filter(|c| !c.polarity)
        .map(|c| c.qubit)
        .collect();
    let others: Vec<usize> = (1..=n)
        .filter(|q| *q != g.target() && !controls.contains(q))
        .collect();

    let mut out = Vec::new();
    for &q in &negated {
        push(&mut out, Gate::X, q, None);
    }
    lower_positive(&controls, g.target(), *g.gate(), &others, &mut out);
    for &q in &negated {
        push(&mut out, Gate::X, q, None);
    }
    Ok(out)
}

/// Lowers every gate in order.
pub fn lower_circuit(c: &Circuit) -> Result<Circuit> {
    let mut gates = Vec::with_capacity(c.len());
    for g in c {
        gates.extend(lower_controlled(g, c.n())?);
    }
    Ok(Circuit::from_parts_unchecked(c.n(), gates))
}

/// Upper bound `Q(k) = 40k²` on the number of gates produced by
/// [`lower_controlled`] for a gate with `k` controls, at any register width
/// and polarity pattern.
///
/// Each recursion level with `m` remaining "rest" controls costs two gates
/// plus two `C^m(X)`, each at most `40m` gates (two ladders of at most
/// `20(m − 2)` gates each, applied twice, when only one qubit is borrowed).
/// Summing over `m < k` and adding the `2k` polarity flips gives
/// `40k² − 36k − 1`.
pub fn count_bound(k: usize) -> usize {
    40 * k * k
}
