use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pmqp_core::decompose::{decompose_general, decompose_path};
use pmqp_core::lhz::{build_problem_circuit, LhzProblem};
use pmqp_core::schedule::assign_layers;
use pmqp_core::verify::{statevector_verify, Hamiltonian};
use pmqp_core::{HardwareGraph, Pauli, PauliString};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn all_z(n: usize) -> PauliString {
    PauliString::from_letters(&vec![Pauli::Z; n])
}

fn path(c: &mut Criterion) {
    let mut group = c.benchmark_group("path");
    for n in [8, 32, 128] {
        let g = HardwareGraph::path(n);
        let order: Vec<usize> = (0..n).collect();
        let p = all_z(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| assign_layers(&decompose_path(&p, &g, &order, n.div_ceil(2), "g").unwrap()))
        });
    }
    group.finish();
}

fn general(c: &mut Criterion) {
    let mut group = c.benchmark_group("general");
    for n in [16, 32, 64] {
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        let g = HardwareGraph::random_connected(n, n / 2, &mut rng);
        let p = all_z(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| assign_layers(&decompose_general(&p, &g, "g").unwrap()))
        });
    }
    group.finish();
}

fn lhz(c: &mut Criterion) {
    let mut group = c.benchmark_group("lhz_grid");
    for k in [2, 4, 8] {
        let p = LhzProblem::uniform(k, k);
        group.bench_with_input(BenchmarkId::from_parameter(k), &p, |b, p| {
            b.iter(|| build_problem_circuit(p, "g").unwrap())
        });
    }
    group.finish();
}

fn statevector(c: &mut Criterion) {
    let n = 16;
    let g = HardwareGraph::path(n);
    let p = all_z(n);
    let order: Vec<usize> = (0..n).collect();
    let circuit = decompose_path(&p, &g, &order, n / 2, "g").unwrap();
    let h = Hamiltonian::single(&p).unwrap();
    c.bench_function("statevector_16", |b| b.iter(|| statevector_verify(&circuit, &h, 1, 0).unwrap()));
}

criterion_group!(benches, path, general, lhz, statevector);
criterion_main!(benches);
