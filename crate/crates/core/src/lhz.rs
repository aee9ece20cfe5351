//! Problem-Hamiltonian circuits for the LHZ parity layout on a square grid.
//!
//! A grid of `rows × cols` plaquettes sits on `(rows+1) × (cols+1)` qubits,
//! numbered row-major. The Hamiltonian is `Σ J_i Z_i + Σ C_l Z_n Z_e Z_s Z_w`
//! over qubits `i` and plaquettes `l`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::circuit::{Angle, Circuit, Gate, RotationGate};
use crate::decompose::decompose_path;
use crate::error::{Error, Result};
use crate::graph::HardwareGraph;
use crate::optimize::cancel_inverse_pairs;
use crate::pauli::{Pauli, PauliString};
use crate::schedule::{assign_layers, two_qubit_depth, total_depth};
use crate::verify::Hamiltonian;

/// Two-qubit depth the grid circuit is claimed to reach.
pub const CLAIMED_TWO_QUBIT_DEPTH: usize = 5;
/// Total depth, single-qubit layer included, claimed for the grid circuit.
pub const CLAIMED_TOTAL_DEPTH: usize = 6;

#[derive(Debug, Clone, PartialEq)]
pub struct LhzProblem {
    pub rows: usize,
    pub cols: usize,
    /// Local field per qubit, row-major over the qubit grid.
    pub local_fields: Vec<f64>,
    /// Coefficient per plaquette, `plaquette_coeffs[row][col]`.
    pub plaquette_coeffs: Vec<Vec<f64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemFile {
    rows: usize,
    cols: usize,
    #[serde(rename = "J")]
    j: Vec<f64>,
    #[serde(rename = "C")]
    c: Vec<Vec<f64>>,
}

/// Plaquette color group, applied in declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Blue,
    Gray,
    Maroon,
}

impl Color {
    pub const ALL: [Color; 4] = [Color::Red, Color::Blue, Color::Gray, Color::Maroon];

    /// Columns alternate red/blue and gray/maroon; rows alternate within a column.
    pub fn of(row: usize, col: usize) -> Color {
        match (col % 2, row % 2) {
            (0, 0) => Color::Red,
            (0, _) => Color::Blue,
            (_, 0) => Color::Gray,
            _ => Color::Maroon,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Red => "red",
            Color::Blue => "blue",
            Color::Gray => "gray",
            Color::Maroon => "maroon",
        })
    }
}

impl LhzProblem {
    pub fn new(rows: usize, cols: usize, local_fields: Vec<f64>, plaquette_coeffs: Vec<Vec<f64>>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidGraph("plaquette grid must be at least 1x1".into()));
        }
        let n = (rows + 1) * (cols + 1);
        if local_fields.len() != n {
            return Err(Error::InvalidTarget(format!(
                "expected {n} local fields, got {}",
                local_fields.len()
            )));
        }
        if plaquette_coeffs.len() != rows || plaquette_coeffs.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidTarget(format!("plaquette coefficients must be {rows}x{cols}")));
        }
        if local_fields.iter().chain(plaquette_coeffs.iter().flatten()).any(|v| !v.is_finite()) {
            return Err(Error::InvalidTarget("coefficients must be finite".into()));
        }
        Ok(LhzProblem {
            rows,
            cols,
            local_fields,
            plaquette_coeffs,
        })
    }

    /// All fields zero and all plaquette coefficients one.
    pub fn uniform(rows: usize, cols: usize) -> LhzProblem {
        LhzProblem::new(
            rows,
            cols,
            vec![0.0; (rows + 1) * (cols + 1)],
            vec![vec![1.0; cols]; rows],
        )
        .expect("uniform problem is well formed")
    }

    pub fn from_json(text: &str) -> Result<LhzProblem> {
        let f: ProblemFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        LhzProblem::new(f.rows, f.cols, f.j, f.c)
    }

    pub fn num_qubits(&self) -> usize {
        (self.rows + 1) * (self.cols + 1)
    }

    pub fn qubit(&self, row: usize, col: usize) -> usize {
        row * (self.cols + 1) + col
    }

    /// `[top-left, top-right, bottom-left, bottom-right]` qubits of a plaquette.
    pub fn corners(&self, row: usize, col: usize) -> [usize; 4] {
        [
            self.qubit(row, col),
            self.qubit(row, col + 1),
            self.qubit(row + 1, col),
            self.qubit(row + 1, col + 1),
        ]
    }

    /// Path through the plaquette used for its decomposition (split after
    /// the second node). Odd columns use the mirror image so neighbouring
    /// columns place their central gates on different vertical edges.
    pub fn plaquette_path(&self, row: usize, col: usize) -> [usize; 4] {
        let [tl, tr, bl, br] = self.corners(row, col);
        if col.is_multiple_of(2) {
            [tl, tr, br, bl]
        } else {
            [tr, tl, bl, br]
        }
    }

    pub fn hardware_graph(&self) -> HardwareGraph {
        HardwareGraph::grid(self.rows + 1, self.cols + 1)
    }

    fn plaquette_string(&self, row: usize, col: usize) -> PauliString {
        let terms: Vec<_> = self.corners(row, col).iter().map(|&q| (q, Pauli::Z)).collect();
        PauliString::from_sparse(self.num_qubits(), &terms).expect("corners are distinct and in range")
    }

    /// Every term of the Hamiltonian, zero coefficients omitted.
    pub fn hamiltonian(&self) -> Hamiltonian {
        let n = self.num_qubits();
        let mut terms = Vec::new();
        for (q, &j) in self.local_fields.iter().enumerate() {
            if j != 0.0 {
                terms.push((j, PauliString::from_sparse(n, &[(q, Pauli::Z)]).expect("qubit in range")));
            }
        }
        for row in 0..self.rows {
            for col in 0..self.cols {
                let c = self.plaquette_coeffs[row][col];
                if c != 0.0 {
                    terms.push((c, self.plaquette_string(row, col)));
                }
            }
        }
        Hamiltonian::new(n, terms).expect("Z-type terms commute")
    }

    /// Plaquettes of one color, row-major.
    pub fn plaquettes_of(&self, color: Color) -> Vec<(usize, usize)> {
        (0..self.rows)
            .flat_map(|r| (0..self.cols).map(move |c| (r, c)))
            .filter(|&(r, c)| Color::of(r, c) == color)
            .collect()
    }
}

fn plaquette_circuit(p: &LhzProblem, g: &HardwareGraph, row: usize, col: usize, param: &str) -> Result<Option<Circuit>> {
    let coef = p.plaquette_coeffs[row][col];
    let Some(scaled) = Angle::scaled_param(param, coef) else {
        return Ok(None);
    };
    let mut c = decompose_path(&p.plaquette_string(row, col), g, &p.plaquette_path(row, col), 2, param)?;
    if let Gate::Rotation(central) = &mut c.gates[2] {
        let base = central.angle.coefficient().expect("central gate is parameterized");
        central.angle = Angle::scaled_param(param, base * scaled.coefficient().expect("parameter angle"))
            .expect("nonzero coefficient");
    }
    Ok(Some(c))
}

/// A built grid circuit with its bookkeeping.
#[derive(Debug, Clone)]
pub struct LhzCircuit {
    /// Scheduled circuit after cancellation.
    pub circuit: Circuit,
    /// Two-qubit gates emitted before cancellation.
    pub gates_before_cancellation: usize,
    /// Two-qubit depth of each color group decomposed on its own.
    pub color_depths: Vec<(Color, usize)>,
}

impl LhzCircuit {
    pub fn gates_cancelled(&self) -> usize {
        self.gates_before_cancellation - self.circuit.two_qubit_count()
    }
}

/// Single-qubit field layer, then every color group of plaquette
/// decompositions, then inverse-pair cancellation and scheduling.
pub fn build_problem_circuit(p: &LhzProblem, param: &str) -> Result<LhzCircuit> {
    let n = p.num_qubits();
    let g = p.hardware_graph();
    let mut raw = Circuit::new(n);
    for (q, &j) in p.local_fields.iter().enumerate() {
        if let Some(angle) = Angle::scaled_param(param, j) {
            raw.push(RotationGate::new(vec![q], vec![Pauli::Z], angle)?);
        }
    }
    let mut color_depths = Vec::new();
    for color in Color::ALL {
        let mut group = Circuit::new(n);
        for (r, c) in p.plaquettes_of(color) {
            if let Some(pc) = plaquette_circuit(p, &g, r, c, param)? {
                group.extend(&pc);
            }
        }
        if !group.is_empty() {
            color_depths.push((color, two_qubit_depth(&assign_layers(&group))?));
        }
        raw.extend(&group);
    }
    let gates_before_cancellation = raw.two_qubit_count();
    let circuit = assign_layers(&cancel_inverse_pairs(&raw));
    Ok(LhzCircuit {
        circuit,
        gates_before_cancellation,
        color_depths,
    })
}

/// Depth and cancellation summary of a grid circuit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridDepthReport {
    pub rows: usize,
    pub cols: usize,
    pub qubits: usize,
    pub gates: usize,
    pub two_qubit_gates: usize,
    pub gates_cancelled: usize,
    pub two_qubit_depth: usize,
    pub total_depth: usize,
    pub color_depths: Vec<(Color, usize)>,
    /// Whether the two-qubit depth equals the claimed 5.
    pub matches_two_qubit_claim: bool,
    /// Whether the total depth equals the claimed 6.
    pub matches_total_claim: bool,
}

pub fn grid_depth_report(p: &LhzProblem, built: &LhzCircuit) -> Result<GridDepthReport> {
    let c = &built.circuit;
    let two_qubit_depth = two_qubit_depth(c)?;
    let total_depth = total_depth(c)?;
    Ok(GridDepthReport {
        rows: p.rows,
        cols: p.cols,
        qubits: p.num_qubits(),
        gates: c.len(),
        two_qubit_gates: c.two_qubit_count(),
        gates_cancelled: built.gates_cancelled(),
        two_qubit_depth,
        total_depth,
        color_depths: built.color_depths.clone(),
        matches_two_qubit_claim: two_qubit_depth == CLAIMED_TWO_QUBIT_DEPTH,
        matches_total_claim: total_depth == CLAIMED_TOTAL_DEPTH,
    })
}

impl fmt::Display for GridDepthReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "grid: {}x{} plaquettes, {} qubits", self.rows, self.cols, self.qubits)?;
        writeln!(f, "gates: {}", self.gates)?;
        writeln!(f, "two_qubit_gates: {}", self.two_qubit_gates)?;
        writeln!(f, "gates_cancelled: {}", self.gates_cancelled)?;
        writeln!(f, "two_qubit_depth: {} (claim {}: {})", self.two_qubit_depth, CLAIMED_TWO_QUBIT_DEPTH,
            if self.matches_two_qubit_claim { "match" } else { "differs" })?;
        writeln!(f, "total_depth: {} (claim {}: {})", self.total_depth, CLAIMED_TOTAL_DEPTH,
            if self.matches_total_claim { "match" } else { "differs" })?;
        let colors: Vec<String> = self.color_depths.iter().map(|(c, d)| format!("{c}={d}")).collect();
        write!(f, "color_depths: {}", colors.join(" "))
    }
}
