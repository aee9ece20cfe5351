//! Peephole passes: inverse-pair cancellation and same-generator merging.
//!
//! A gate may slide past any gate it commutes with, so both passes look
//! forward from each gate until the first blocking gate. Output circuits
//! carry no layer assignment.

use crate::circuit::{Angle, Circuit, Gate, RotationGate};

/// How far each pass searches forward from a gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Lookahead {
    #[default]
    Unbounded,
    Gates(usize),
}

impl Lookahead {
    fn limit(self, start: usize, len: usize) -> usize {
        match self {
            Lookahead::Unbounded => len,
            Lookahead::Gates(k) => len.min(start + 1 + k),
        }
    }
}

/// Finds, for gate `i`, the first later gate accepted by `partner` that `i`
/// can reach by commuting moves.
fn find_partner(
    gates: &[Gate],
    i: usize,
    lookahead: Lookahead,
    partner: impl Fn(&RotationGate) -> bool,
) -> Option<usize> {
    let gi = &gates[i];
    let ri = gi.as_rotation()?;
    let key = ri.generator_key();
    let limit = lookahead.limit(i, gates.len());
    for (j, gj) in gates.iter().enumerate().take(limit).skip(i + 1) {
        if let Some(rj) = gj.as_rotation() {
            if rj.generator_key() == key && partner(rj) {
                return Some(j);
            }
        }
        if !gi.commutes_with(gj) {
            return None;
        }
    }
    None
}

fn strip_layers(c: &Circuit, gates: Vec<Gate>) -> Circuit {
    Circuit {
        n: c.n,
        gates,
        layers: None,
    }
}

/// Removes pairs of fixed rotations on the same generator whose angles sum
/// to a multiple of `2π`, iterating until nothing changes.
pub fn cancel_inverse_pairs(c: &Circuit) -> Circuit {
    cancel_inverse_pairs_with(c, Lookahead::Unbounded)
}

pub fn cancel_inverse_pairs_with(c: &Circuit, lookahead: Lookahead) -> Circuit {
    let mut gates = c.gates.clone();
    loop {
        let mut changed = false;
        let mut i = 0;
        while i < gates.len() {
            let q = match gates[i].as_rotation().map(|r| &r.angle) {
                Some(Angle::Fixed { quarters }) => *quarters,
                _ => {
                    i += 1;
                    continue;
                }
            };
            let hit = find_partner(&gates, i, lookahead, |r| {
                matches!(r.angle, Angle::Fixed { quarters } if (q + quarters).rem_euclid(8) == 0)
            });
            if let Some(j) = hit {
                gates.remove(j);
                gates.remove(i);
                changed = true;
            } else {
                i += 1;
            }
        }
        if !changed {
            return strip_layers(c, gates);
        }
    }
}

/// Merges rotations on the same generator with addable angles (two fixed
/// angles, or two multiples of the same parameter) and drops zero angles.
pub fn merge_same_generator(c: &Circuit) -> Circuit {
    merge_same_generator_with(c, Lookahead::Unbounded)
}

pub fn merge_same_generator_with(c: &Circuit, lookahead: Lookahead) -> Circuit {
    let mut gates: Vec<Gate> = c
        .gates
        .iter()
        .filter(|g| !g.as_rotation().is_some_and(|r| r.angle.is_zero()))
        .cloned()
        .collect();
    loop {
        let mut changed = false;
        let mut i = 0;
        while i < gates.len() {
            let Some(ri) = gates[i].as_rotation().cloned() else {
                i += 1;
                continue;
            };
            let hit = find_partner(&gates, i, lookahead, |r| ri.angle.add(&r.angle).is_some());
            let Some(j) = hit else {
                i += 1;
                continue;
            };
            let sum = ri
                .angle
                .add(&gates[j].as_rotation().expect("partner is a rotation").angle)
                .expect("partner angles add");
            gates.remove(j);
            changed = true;
            match sum {
                Some(angle) => {
                    gates[i] = Gate::Rotation(RotationGate { angle, ..ri });
                }
                None => {
                    gates.remove(i);
                }
            }
        }
        if !changed {
            return strip_layers(c, gates);
        }
    }
}
