#![allow(dead_code)]

use pmqp_core::{Angle, Circuit, HardwareGraph, Pauli, PauliString, Phase, RotationGate, Sign};
use rand::seq::SliceRandom;
use rand::Rng;

pub const LETTERS: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

/// The 15-vertex example graph: seed path 0..=6 rooted at 3, a path branch
/// at 2, a star branch at 4, a mixed branch at 3, and two non-tree edges.
pub fn example_graph_15() -> HardwareGraph {
    let mut edges: Vec<(usize, usize)> = (0..6).map(|i| (i, i + 1)).collect();
    edges.extend([(2, 7), (7, 8)]);
    edges.extend([(4, 9), (9, 10), (9, 11), (10, 11)]);
    edges.extend([(3, 12), (12, 13), (12, 14), (13, 14)]);
    HardwareGraph::new(15, edges).unwrap()
}

pub fn random_letter(rng: &mut impl Rng) -> Pauli {
    *LETTERS.choose(rng).unwrap()
}

/// Hermitian string with no identity letters and a random sign.
pub fn random_full_support(n: usize, rng: &mut impl Rng) -> PauliString {
    let letters: Vec<Pauli> = (0..n).map(|_| random_letter(rng)).collect();
    let p = PauliString::from_letters(&letters);
    if rng.gen_bool(0.5) {
        -p
    } else {
        p
    }
}

/// Hermitian string with random letters (identity allowed) and sign.
pub fn random_hermitian(n: usize, rng: &mut impl Rng) -> PauliString {
    let letters: Vec<Pauli> = (0..n)
        .map(|_| *[Pauli::I, Pauli::X, Pauli::Y, Pauli::Z].choose(rng).unwrap())
        .collect();
    PauliString::from_letters(&letters).times_phase(if rng.gen_bool(0.5) { Phase::ONE } else { Phase::MINUS_ONE })
}

fn random_angle(rng: &mut impl Rng) -> Angle {
    match rng.gen_range(0..4) {
        0 => Angle::fixed(*[1, -1, 2, -2, 3, 4].choose(rng).unwrap()),
        1 => Angle::quarter(if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus }),
        2 => Angle::param("g", if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus }),
        _ => Angle::scaled_param("g", rng.gen_range(-2.0..2.0)).unwrap_or_else(|| Angle::fixed(1)),
    }
}

fn random_rotation(n: usize, rng: &mut impl Rng) -> RotationGate {
    if n >= 2 && rng.gen_bool(0.7) {
        let a = rng.gen_range(0..n);
        let mut b = rng.gen_range(0..n - 1);
        if b >= a {
            b += 1;
        }
        RotationGate::new(vec![a, b], vec![random_letter(rng), random_letter(rng)], random_angle(rng)).unwrap()
    } else {
        RotationGate::new(vec![rng.gen_range(0..n)], vec![random_letter(rng)], random_angle(rng)).unwrap()
    }
}

/// Random rotation circuit that often contains inverse and repeated pairs
/// separated by other gates.
pub fn random_circuit(n: usize, len: usize, rng: &mut impl Rng) -> Circuit {
    let mut c = Circuit::new(n);
    while c.len() < len {
        let r = random_rotation(n, rng);
        c.push(r.clone());
        if rng.gen_bool(0.3) {
            for _ in 0..rng.gen_range(0..3) {
                c.push(random_rotation(n, rng));
            }
            let partner = if rng.gen_bool(0.5) { r.angle.negated() } else { r.angle.clone() };
            let mut qubits = r.qubits.clone();
            let mut letters = r.letters.clone();
            if rng.gen_bool(0.5) {
                qubits.reverse();
                letters.reverse();
            }
            c.push(RotationGate::new(qubits, letters, partner).unwrap());
        }
    }
    c
}

/// Reorders the gates of a scheduled circuit layer by layer, shuffling the
/// gates inside each layer.
pub fn shuffle_within_layers(c: &Circuit, rng: &mut impl Rng) -> Circuit {
    let mut out = Circuit::new(c.n);
    for layer in c.layers.as_ref().expect("scheduled") {
        let mut idx = layer.clone();
        idx.shuffle(rng);
        for i in idx {
            out.push(c.gates[i].clone());
        }
    }
    out
}
