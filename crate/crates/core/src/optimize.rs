//! Circuit simplification passes.
//!
//! Every pass declares the equivalence it preserves. `optimize` runs only
//! operator-preserving passes: sibling merging followed by name recognition.

use std::collections::HashMap;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::fmt;

use crate::gate::{Circuit, Control, ControlledGate, Gate};

/// Gates count as identical for merging when their matrices agree this closely.
pub const MERGE_TOLERANCE: f64 = 1e-12;
/// Angle tolerance for relabeling rotations as H or X.
pub const NAME_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EquivalenceLevel {
    /// Equal as full `2^n × 2^n` operators.
    Operator,
    /// Equal action on `|0…0⟩` only.
    Preparation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PassRecord {
    pub pass: &'static str,
    pub level: EquivalenceLevel,
    pub gates_before: usize,
    pub gates_after: usize,
    pub rewrites: usize,
}

/// Passes that changed something, in the order they ran.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub records: Vec<PassRecord>,
}

impl Report {
    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    fn record(&mut self, r: PassRecord) {
        if r.rewrites > 0 {
            self.records.push(r);
        }
    }
}

impl fmt::Display for Report {
    /// One `pass,gates_before,gates_after` line per applied pass.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.records {
            writeln!(f, "{},{},{}", r.pass, r.gates_before, r.gates_after)?;
        }
        Ok(())
    }
}

pub const MERGE_SIBLINGS: &str = "merge_siblings";
pub const RECOGNIZE_NAMES: &str = "recognize_names";
pub const PRUNE_UNREACHABLE: &str = "prune_unreachable";

/// Replaces pairs of equal gates whose control sets differ only in the
/// polarity of one qubit by a single gate without that control, to a fixpoint.
///
/// Candidates are only paired inside a run of consecutive gates sharing a
/// target whose control sets are pairwise disjoint; such gates commute, so
/// the merged gate may sit at either position. Within a run, deeper controls
/// (higher qubit numbers) are dropped first.
pub fn merge_siblings(circuit: &Circuit) -> Circuit {
    merge_siblings_counted(circuit).0
}

fn merge_siblings_counted(circuit: &Circuit) -> (Circuit, usize) {
    let mut gates = circuit.gates().to_vec();
    let mut total = 0;
    loop {
        let mut merged_this_round = 0;
        let mut out = Vec::with_capacity(gates.len());
        for mut block in commuting_blocks(gates) {
            merged_this_round += merge_block(&mut block, circuit.n());
            out.extend(block);
        }
        gates = out;
        total += merged_this_round;
        if merged_this_round == 0 {
            break;
        }
    }
    (Circuit::from_parts_unchecked(circuit.n(), gates), total)
}

/// Splits into maximal runs with a common target and pairwise-disjoint controls.
fn commuting_blocks(gates: Vec<ControlledGate>) -> Vec<Vec<ControlledGate>> {
    let mut blocks: Vec<Vec<ControlledGate>> = Vec::new();
    for g in gates {
        let fits = blocks
            .last()
            .is_some_and(|b| b[0].target() == g.target() && b.iter().all(|h| h.disjoint_from(&g)));
        if fits {
            blocks.last_mut().expect("nonempty").push(g);
        } else {
            blocks.push(vec![g]);
        }
    }
    blocks
}

fn merge_block(block: &mut Vec<ControlledGate>, n: usize) -> usize {
    if block.len() < 2 {
        return 0;
    }
    let mut merges = 0;
    loop {
        let mut changed = false;
        for q in (1..=n).rev() {
            let m = merge_on_qubit(block, q);
            merges += m;
            changed |= m > 0;
        }
        if !changed {
            return merges;
        }
    }
}

fn merge_on_qubit(block: &mut Vec<ControlledGate>, q: usize) -> usize {
    // Gates in a disjoint block have distinct control sets, so each key holds
    // at most one gate per polarity.
    let mut pairs: HashMap<Vec<Control>, [Option<usize>; 2]> = HashMap::new();
    for (i, g) in block.iter().enumerate() {
        if let Some(pol) = g.polarity_of(q) {
            let key: Vec<Control> = g
                .controls()
                .iter()
                .copied()
                .filter(|c| c.qubit != q)
                .collect();
            pairs.entry(key).or_default()[usize::from(pol)] = Some(i);
        }
    }
    let mut merged: Vec<(usize, usize)> = pairs
        .into_values()
        .filter_map(|slot| match slot {
            [Some(a), Some(b)] => Some((a.min(b), a.max(b))),
            _ => None,
        })
        .filter(|&(a, b)| block[a].gate().approx_eq(block[b].gate(), MERGE_TOLERANCE))
        .collect();
    if merged.is_empty() {
        return 0;
    }
    merged.sort_unstable();
    let mut remove = vec![false; block.len()];
    for &(keep, drop) in &merged {
        block[keep] = block[keep].without_control(q);
        remove[drop] = true;
    }
    let mut i = 0;
    block.retain(|_| {
        i += 1;
        !remove[i - 1]
    });
    merged.len()
}

/// Relabels rotations by π/4 and π/2 as H and X.
pub fn recognize_names(circuit: &Circuit) -> Circuit {
    recognize_names_counted(circuit).0
}

fn recognize_names_counted(circuit: &Circuit) -> (Circuit, usize) {
    let mut rewrites = 0;
    let gates = circuit
        .iter()
        .map(|g| match *g.gate() {
            Gate::Rotation { theta } if (theta - FRAC_PI_4).abs() <= NAME_TOLERANCE => {
                rewrites += 1;
                g.with_gate(Gate::H)
            }
            Gate::Rotation { theta } if (theta - FRAC_PI_2).abs() <= NAME_TOLERANCE => {
                rewrites += 1;
                g.with_gate(Gate::X)
            }
            _ => g.clone(),
        })
        .collect();
    (Circuit::from_parts_unchecked(circuit.n(), gates), rewrites)
}

/// Preparation-level cleanup: tracks qubits that are still `|0⟩` from the
/// start, removes gates that need one of them to be `|1⟩` and drops controls
/// that need one of them to be `|0⟩`.
pub fn prune_unreachable(circuit: &Circuit) -> (Circuit, PassRecord) {
    let mut fresh = vec![true; circuit.n() + 1];
    let mut gates = Vec::with_capacity(circuit.len());
    let mut rewrites = 0;
    for g in circuit {
        if g.controls().iter().any(|c| c.polarity && fresh[c.qubit]) {
            rewrites += 1;
            continue;
        }
        let mut kept = g.clone();
        for c in g
            .controls()
            .iter()
            .filter(|c| !c.polarity && fresh[c.qubit])
        {
            kept = kept.without_control(c.qubit);
            rewrites += 1;
        }
        fresh[kept.target()] = false;
        gates.push(kept);
    }
    let out = Circuit::from_parts_unchecked(circuit.n(), gates);
    let record = PassRecord {
        pass: PRUNE_UNREACHABLE,
        level: EquivalenceLevel::Preparation,
        gates_before: circuit.len(),
        gates_after: out.len(),
        rewrites,
    };
    (out, record)
}

/// `merge_siblings` then `recognize_names`; operator-equivalent to the input.
pub fn optimize(circuit: &Circuit) -> (Circuit, Report) {
    let mut report = Report::default();
    let (merged, merges) = merge_siblings_counted(circuit);
    report.record(PassRecord {
        pass: MERGE_SIBLINGS,
        level: EquivalenceLevel::Operator,
        gates_before: circuit.len(),
        gates_after: merged.len(),
        rewrites: merges,
    });
    let (named, renames) = recognize_names_counted(&merged);
    report.record(PassRecord {
        pass: RECOGNIZE_NAMES,
        level: EquivalenceLevel::Operator,
        gates_before: merged.len(),
        gates_after: named.len(),
        rewrites: renames,
    });
    (named, report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim;

    fn cg(gate: Gate, target: usize, controls: &[(usize, bool)]) -> ControlledGate {
        let controls = controls
            .iter()
            .map(|&(qubit, polarity)| Control { qubit, polarity })
            .collect();
        ControlledGate::new(gate, target, controls).unwrap()
    }

    fn fig2_fragment() -> Circuit {
        let gates = [(false, false), (false, true), (true, false), (true, true)]
            .iter()
            .map(|&(a, b)| cg(Gate::H, 3, &[(1, a), (2, b)]))
            .collect();
        Circuit::from_gates(3, gates).unwrap()
    }

    #[test]
    fn four_controlled_h_collapse_to_one() {
        let c = fig2_fragment();
        let m = merge_siblings(&c);
        assert_eq!(m.len(), 1);
        assert!(m.gates()[0].controls().is_empty());
        assert_eq!(m.gates()[0].gate(), &Gate::H);
        let a = sim::operator_of(&c).unwrap();
        let b = sim::operator_of(&m).unwrap();
        assert!(a.max_deviation(&b) <= 1e-12);
    }

    #[test]
    fn no_sibling_pair_is_unchanged() {
        let c = Circuit::from_gates(
            3,
            vec![
                cg(Gate::H, 3, &[(1, true), (2, false)]),
                cg(Gate::Rotation { theta: 0.3 }, 3, &[(1, false), (2, true)]),
                cg(Gate::X, 2, &[(1, true)]),
            ],
        )
        .unwrap();
        assert_eq!(merge_siblings(&c), c);
        let (opt, report) = optimize(&c);
        assert_eq!(opt, c);
        assert!(report.is_empty());
    }

    #[test]
    fn different_parameters_do_not_merge() {
        let c = Circuit::from_gates(
            2,
            vec![
                cg(Gate::Rotation { theta: 0.3 }, 2, &[(1, false)]),
                cg(Gate::Rotation { theta: 0.3 + 1e-9 }, 2, &[(1, true)]),
            ],
        )
        .unwrap();
        assert_eq!(merge_siblings(&c).len(), 2);
    }

    #[test]
    fn non_commuting_neighbours_are_not_merged() {
        // The middle gate overlaps both siblings, so they cannot be brought together.
        let c = Circuit::from_gates(
            2,
            vec![
                cg(Gate::H, 2, &[(1, false)]),
                cg(Gate::Rotation { theta: 0.3 }, 2, &[]),
                cg(Gate::H, 2, &[(1, true)]),
            ],
        )
        .unwrap();
        assert_eq!(merge_siblings(&c), c);
    }

    #[test]
    fn names_are_recognized() {
        let c = Circuit::from_gates(
            2,
            vec![
                cg(Gate::Rotation { theta: FRAC_PI_4 }, 1, &[]),
                cg(Gate::Rotation { theta: FRAC_PI_2 }, 2, &[(1, true)]),
                cg(Gate::Rotation { theta: 0.3 }, 2, &[]),
                cg(Gate::Rotation { theta: -FRAC_PI_2 }, 2, &[]),
            ],
        )
        .unwrap();
        let r = recognize_names(&c);
        let kinds: Vec<_> = r.iter().map(|g| *g.gate()).collect();
        assert_eq!(
            kinds,
            vec![
                Gate::H,
                Gate::X,
                Gate::Rotation { theta: 0.3 },
                Gate::Rotation { theta: -FRAC_PI_2 }
            ]
        );
        assert_eq!(r.gates()[1].controls(), &[Control::on(1)]);
    }

    #[test]
    fn report_lines() {
        let (opt, report) = optimize(&fig2_fragment());
        assert_eq!(opt.len(), 1);
        assert_eq!(report.to_string(), "merge_siblings,4,1\n");
        let (_, again) = optimize(&opt);
        assert!(again.is_empty());
    }

    #[test]
    fn prune_drops_gates_on_fresh_qubits() {
        let c = Circuit::from_gates(
            3,
            vec![
                cg(Gate::H, 1, &[]),
                cg(Gate::X, 3, &[(2, true)]),
                cg(Gate::X, 2, &[(1, true), (3, false)]),
            ],
        )
        .unwrap();
        let (p, record) = prune_unreachable(&c);
        assert_eq!(record.level, EquivalenceLevel::Preparation);
        assert_eq!(p.len(), 2);
        assert_eq!(p.gates()[1].controls(), &[Control::on(1)]);
        let a = sim::run(&c).unwrap();
        let b = sim::run(&p).unwrap();
        assert_eq!(a, b);
    }
}
