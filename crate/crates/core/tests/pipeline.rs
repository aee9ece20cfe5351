mod common;

use pmqp_core::decompose::{cnot_baseline, decompose, default_split, BaselineVariant, DecomposeOptions, Strategy};
use pmqp_core::graph::{build_spanning_plan, depth_lower_bound};
use pmqp_core::lhz::{build_problem_circuit, grid_depth_report, LhzProblem};
use pmqp_core::schedule::{assign_layers, two_qubit_depth};
use pmqp_core::verify::{statevector_verify, symbolic_verify, verify, Hamiltonian, VerifyMode};
use pmqp_core::{format, HardwareGraph, Pauli, PauliString};

use common::example_graph_15;

fn all_z(n: usize) -> PauliString {
    PauliString::from_letters(&vec![Pauli::Z; n])
}

#[test]
fn example_graph_plan_matches_construction() {
    let g = example_graph_15();
    let (d, pair) = g.diameter().unwrap();
    assert_eq!((d, pair), (6, (0, 6)));
    let plan = build_spanning_plan(&g).unwrap();
    assert_eq!(plan.seed_path, vec![0, 1, 2, 3, 4, 5, 6]);
    assert_eq!(plan.root, 3);
    assert_eq!(plan.height, 3);
    assert_eq!(plan.generations.len(), 3);
    let d = decompose(&all_z(15), &g, &DecomposeOptions::default()).unwrap();
    assert_eq!(d.strategy, Strategy::General);
    let c = assign_layers(&d.circuit);
    assert_eq!(two_qubit_depth(&c).unwrap(), 7);
    assert_eq!(c.two_qubit_count(), 27);
}

#[test]
fn depth_formula_over_all_splits() {
    for n in 2..=10 {
        let g = HardwareGraph::path(n);
        for m in 1..n {
            let opts = DecomposeOptions {
                strategy: Strategy::Path,
                split: Some(m),
                ..DecomposeOptions::default()
            };
            let c = assign_layers(&decompose(&all_z(n), &g, &opts).unwrap().circuit);
            let want = pmqp_core::decompose::path_depth_formula(n, m);
            assert_eq!(two_qubit_depth(&c).unwrap(), want, "n={n} m={m}");
        }
        let best = assign_layers(
            &pmqp_core::decompose::decompose_path(&all_z(n), &g, &(0..n).collect::<Vec<_>>(), default_split(n), "g")
                .unwrap(),
        );
        assert_eq!(two_qubit_depth(&best).unwrap(), depth_lower_bound(n - 1));
    }
}

#[test]
fn baseline_depths() {
    let depth = |n: usize, v| {
        let order: Vec<usize> = (0..n).collect();
        two_qubit_depth(&assign_layers(&cnot_baseline(&all_z(n), &order, v, "g").unwrap())).unwrap()
    };
    assert_eq!(depth(8, BaselineVariant::Ladder), 14);
    assert_eq!(depth(8, BaselineVariant::XShaped), 8);
    assert!(depth(2, BaselineVariant::Ladder) <= 2);
    assert!(depth(2, BaselineVariant::XShaped) <= 2);
    let ours = assign_layers(&decompose(&all_z(8), &HardwareGraph::path(8), &DecomposeOptions::default()).unwrap().circuit);
    assert_eq!(two_qubit_depth(&ours).unwrap(), 7);
}

#[test]
fn disconnected_support_on_a_grid() {
    let g = HardwareGraph::grid(3, 3);
    let p: PauliString = "XIIIIIIIY".parse().unwrap();
    let d = decompose(&p, &g, &DecomposeOptions::default()).unwrap();
    assert_eq!(d.routed_qubits, 3);
    d.circuit.validate_edges(&g).unwrap();
    assert!(symbolic_verify(&d.circuit, &p).unwrap());
    let r = verify(&assign_layers(&d.circuit), &Hamiltonian::single(&p).unwrap(), VerifyMode::Numeric, 9).unwrap();
    assert!(r.passed, "{r}");
}

#[test]
fn disconnected_graph_is_rejected() {
    let g = HardwareGraph::new(4, [(0, 1), (2, 3)]).unwrap();
    let p: PauliString = "XIIZ".parse().unwrap();
    assert_eq!(
        decompose(&p, &g, &DecomposeOptions::default()).unwrap_err(),
        pmqp_core::Error::Disconnected
    );
}

#[test]
fn lhz_two_by_two_survives_a_file_round_trip() {
    let p = LhzProblem::from_json(r#"{"rows":2,"cols":2,"J":[1,0,0.5,0,0,0,-1,0,0.25],"C":[[1,2],[-0.5,1]]}"#).unwrap();
    let built = build_problem_circuit(&p, "gamma").unwrap();
    let text = format::write_circuit(&built.circuit);
    let back = format::read_circuit(&text).unwrap();
    assert_eq!(back, built.circuit);
    assert!(statevector_verify(&back, &p.hamiltonian(), 3, 1).unwrap() < 1e-9);
    let r = grid_depth_report(&p, &built).unwrap();
    assert_eq!(r.gates_cancelled, 4);
    assert_eq!(r.two_qubit_depth, 5);
}

#[test]
fn full_grid_column_on_sixteen_qubits() {
    let p = LhzProblem::uniform(7, 1);
    assert_eq!(p.num_qubits(), 16);
    let built = build_problem_circuit(&p, "g").unwrap();
    assert!(statevector_verify(&built.circuit, &p.hamiltonian(), 2, 3).unwrap() < 1e-10);
}
