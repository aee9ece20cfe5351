//! Greedy parallel-layer scheduling under exact generator commutation.

use std::fmt;

use crate::circuit::Circuit;
use crate::error::{Error, Result};

/// Places each gate one layer after the latest earlier gate it fails to
/// commute with. Overlapping gates share a layer whenever their generators
/// commute.
pub fn assign_layers(c: &Circuit) -> Circuit {
    let mut layer_of: Vec<usize> = Vec::with_capacity(c.gates.len());
    let mut layers: Vec<Vec<usize>> = Vec::new();
    for (j, gate) in c.gates.iter().enumerate() {
        let l = (0..j)
            .filter(|&i| !c.gates[i].commutes_with(gate))
            .map(|i| layer_of[i] + 1)
            .max()
            .unwrap_or(0);
        if l == layers.len() {
            layers.push(Vec::new());
        }
        layers[l].push(j);
        layer_of.push(l);
    }
    let mut out = c.clone();
    out.layers = Some(layers);
    out
}

/// Number of layers holding at least one two-qubit gate.
pub fn two_qubit_depth(c: &Circuit) -> Result<usize> {
    let layers = c.layers.as_ref().ok_or(Error::Unscheduled)?;
    Ok(layers
        .iter()
        .filter(|layer| layer.iter().any(|&i| c.gates[i].is_two_qubit()))
        .count())
}

/// Total number of layers, single-qubit layers included.
pub fn total_depth(c: &Circuit) -> Result<usize> {
    c.layers.as_ref().map(Vec::len).ok_or(Error::Unscheduled)
}

/// Gate and depth counts of a scheduled circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CircuitStats {
    pub gates: usize,
    pub two_qubit_gates: usize,
    pub two_qubit_depth: usize,
    pub total_depth: usize,
}

impl CircuitStats {
    pub fn of(c: &Circuit) -> Result<CircuitStats> {
        Ok(CircuitStats {
            gates: c.len(),
            two_qubit_gates: c.two_qubit_count(),
            two_qubit_depth: two_qubit_depth(c)?,
            total_depth: total_depth(c)?,
        })
    }
}

impl fmt::Display for CircuitStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gates: {}", self.gates)?;
        writeln!(f, "two_qubit_gates: {}", self.two_qubit_gates)?;
        writeln!(f, "two_qubit_depth: {}", self.two_qubit_depth)?;
        write!(f, "total_depth: {}", self.total_depth)
    }
}
