//! Nested Pauli-rotation compilation of multi-body Pauli exponentials for
//! hardware with native two-qubit Pauli rotations.

pub mod circuit;
pub mod decompose;
pub mod error;
pub mod format;
pub mod graph;
pub mod lhz;
pub mod optimize;
pub mod pauli;
pub mod schedule;
pub mod verify;

pub use circuit::{Angle, Circuit, Gate, RotationGate};
pub use decompose::{
    choose_conjugator, cnot_baseline, decompose, decompose_general, decompose_path, decompose_star,
    route_support, BaselineVariant, DecomposeOptions, Decomposition, RoutedTarget, Strategy,
};
pub use error::{Error, Result};
pub use graph::{build_spanning_plan, depth_lower_bound, HardwareGraph, SpanningTreePlan};
pub use pauli::{Pauli, PauliString, Phase, Sign};
pub use optimize::{cancel_inverse_pairs, merge_same_generator, Lookahead};
pub use schedule::{assign_layers, two_qubit_depth, CircuitStats};
pub use verify::{
    correlation_check, numeric_verify, statevector_verify, symbolic_verify, Hamiltonian,
    VerificationReport, VerifyMode,
};
pub use lhz::{build_problem_circuit, grid_depth_report, Color, GridDepthReport, LhzCircuit, LhzProblem};
pub use format::{read_circuit, read_graph, write_circuit};
