//! Brute-force reference semantics, written directly from the definitions
//! and sharing no code with the library's simulator.
#![allow(dead_code)]

use qinit_core::{Circuit, Complex64, Control, Mat2, TargetState};
use rand::Rng;
use rand_distr::StandardNormal;

/// Bits of a basis index, qubit 1 first.
pub fn bits_of(index: usize, n: usize) -> Vec<bool> {
    format!("{index:0n$b}").chars().map(|c| c == '1').collect()
}

pub fn index_of(bits: &[bool]) -> usize {
    bits.iter().fold(0, |acc, &b| 2 * acc + usize::from(b))
}

/// Image of basis state `x` under a controlled single-qubit matrix.
pub fn image(
    n: usize,
    controls: &[Control],
    target: usize,
    m: &Mat2,
    x: usize,
) -> Vec<(usize, Complex64)> {
    let bits = bits_of(x, n);
    if controls.iter().any(|c| bits[c.qubit - 1] != c.polarity) {
        return vec![(x, Complex64::new(1.0, 0.0))];
    }
    let input = usize::from(bits[target - 1]);
    (0..2)
        .map(|out| {
            let mut b = bits.clone();
            b[target - 1] = out == 1;
            (index_of(&b), m.get(out, input))
        })
        .collect()
}

pub fn apply_circuit(c: &Circuit, v: &[Complex64]) -> Vec<Complex64> {
    let mut v = v.to_vec();
    for g in c {
        let m = g.gate().matrix().unwrap();
        let mut next = vec![Complex64::new(0.0, 0.0); v.len()];
        for (x, amp) in v.iter().enumerate() {
            for (row, coeff) in image(c.n(), g.controls(), g.target(), &m, x) {
                next[row] += coeff * amp;
            }
        }
        v = next;
    }
    v
}

/// Columns of the operator of `c`.
pub fn circuit_columns(c: &Circuit) -> Vec<Vec<Complex64>> {
    let dim = 1 << c.n();
    (0..dim)
        .map(|x| {
            let mut e = vec![Complex64::new(0.0, 0.0); dim];
            e[x] = Complex64::new(1.0, 0.0);
            apply_circuit(c, &e)
        })
        .collect()
}

/// Columns of `C^k(U)` straight from the definition.
pub fn controlled_columns(
    n: usize,
    controls: &[Control],
    target: usize,
    m: &Mat2,
) -> Vec<Vec<Complex64>> {
    (0..1 << n)
        .map(|x| {
            let mut col = vec![Complex64::new(0.0, 0.0); 1 << n];
            for (row, coeff) in image(n, controls, target, m, x) {
                col[row] += coeff;
            }
            col
        })
        .collect()
}

pub fn max_diff(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn random_unitary<R: Rng>(rng: &mut R) -> Mat2 {
    let mut z = || Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
    let (a, b) = (z(), z());
    let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
    let (a, b) = (a / r, b / r);
    let phase = Complex64::from_polar(1.0, rng.gen_range(-3.1..3.1));
    Mat2::new(a, -b.conj(), b, a.conj()).scale(phase)
}

/// Max componentwise deviation between two vectors after removing the
/// global phase that best aligns them.
pub fn phase_free_deviation(prepared: &[Complex64], target: &TargetState) -> f64 {
    let overlap: Complex64 = target
        .amplitudes()
        .iter()
        .zip(prepared)
        .map(|(t, p)| p.conj() * t)
        .sum();
    let phase = overlap / overlap.norm();
    prepared
        .iter()
        .zip(target.amplitudes())
        .map(|(p, t)| (p * phase - t).norm())
        .fold(0.0, f64::max)
}
