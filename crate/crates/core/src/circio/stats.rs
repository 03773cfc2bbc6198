use std::collections::BTreeMap;

use crate::error::Result;
use crate::gate::Circuit;
use crate::lower::lower_circuit;

pub const STATS_CSV_HEADER: &str = "n,gates,multi_controlled,params,depth,lowered_gates";

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CircuitStats {
    pub n: usize,
    pub gates: usize,
    /// Gate count per kind (`ROT`, `U2`, `H`, `X`, `I`, `MAT`).
    pub by_kind: BTreeMap<&'static str, usize>,
    /// `by_arity[k]` is the number of gates with `k` controls.
    pub by_arity: Vec<usize>,
    /// Gates counted as one `C^k(U)` each, any `k ≥ 0`, before lowering.
    pub multi_controlled: usize,
    pub params: usize,
    /// ASAP layering where gates sharing a qubit go in different layers.
    pub depth: usize,
}

pub fn stats(circuit: &Circuit) -> CircuitStats {
    let mut s = CircuitStats {
        n: circuit.n(),
        gates: circuit.len(),
        ..CircuitStats::default()
    };
    let mut level = vec![0usize; circuit.n() + 1];
    for g in circuit {
        *s.by_kind.entry(g.gate().kind()).or_default() += 1;
        if s.by_arity.len() <= g.arity() {
            s.by_arity.resize(g.arity() + 1, 0);
        }
        s.by_arity[g.arity()] += 1;
        s.params += g.gate().free_parameters();
        let qubits = || g.controls().iter().map(|c| c.qubit).chain([g.target()]);
        let layer = 1 + qubits().map(|q| level[q]).max().unwrap_or(0);
        for q in qubits() {
            level[q] = layer;
        }
        s.depth = s.depth.max(layer);
    }
    s.multi_controlled = s.by_arity.iter().sum();
    s
}

/// One line of the stats CSV.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StatsRow {
    pub n: usize,
    pub gates: usize,
    pub multi_controlled: usize,
    pub params: usize,
    pub depth: usize,
    pub lowered_gates: usize,
}

impl StatsRow {
    pub fn for_circuit(circuit: &Circuit) -> Result<Self> {
        let s = stats(circuit);
        Ok(StatsRow {
            n: s.n,
            gates: s.gates,
            multi_controlled: s.multi_controlled,
            params: s.params,
            depth: s.depth,
            lowered_gates: lower_circuit(circuit)?.len(),
        })
    }

    pub fn to_csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.n, self.gates, self.multi_controlled, self.params, self.depth, self.lowered_gates
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gate::{Control, ControlledGate, Gate};

    #[test]
    fn empty_circuit_is_zero() {
        let s = stats(&Circuit::new(3));
        assert_eq!(
            (s.gates, s.params, s.depth, s.multi_controlled),
            (0, 0, 0, 0)
        );
        let row = StatsRow::for_circuit(&Circuit::new(3)).unwrap();
        assert_eq!(row.to_csv_line(), "3,0,0,0,0,0");
    }

    #[test]
    fn depth_packs_disjoint_gates() {
        let c = Circuit::from_gates(
            4,
            vec![
                ControlledGate::single(Gate::H, 1).unwrap(),
                ControlledGate::single(Gate::H, 2).unwrap(),
                ControlledGate::new(Gate::X, 3, vec![Control::on(1), Control::on(2)]).unwrap(),
                ControlledGate::single(Gate::Rotation { theta: 0.1 }, 4).unwrap(),
            ],
        )
        .unwrap();
        let s = stats(&c);
        assert_eq!(s.depth, 2);
        assert_eq!(s.by_arity, vec![3, 0, 1]);
        assert_eq!(s.multi_controlled, 4);
        assert_eq!(s.params, 1);
        assert_eq!(s.by_kind["H"], 2);
    }
}
