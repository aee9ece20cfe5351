//! Gate and circuit data model.
//!
//! Gates are stored in time order: `gates[0]` is applied first, so the
//! circuit unitary is `gates[last] ··· gates[0]`. A rotation gate with
//! angle `θ` and generator `G` is `exp(iθG)`.

use std::collections::BTreeSet;
use std::f64::consts::FRAC_PI_4;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::HardwareGraph;
use crate::pauli::{Pauli, PauliString, Sign};

/// Tolerance below which a merged parameter coefficient counts as zero.
pub const ZERO_COEFFICIENT: f64 = 1e-12;

/// Rotation angle: a multiple of `π/4`, or a scaled symbolic parameter.
#[derive(Debug, Clone, PartialEq)]
pub enum Angle {
    /// `quarters · π/4`, normalized into `-3..=4`.
    Fixed { quarters: i32 },
    /// `sign · scale · <name>` with `scale > 0`.
    Param { name: String, sign: Sign, scale: f64 },
}

impl Angle {
    pub fn fixed(quarters: i32) -> Angle {
        // exp(iθG) has period 2π in θ, i.e. 8 quarters
        let mut q = quarters.rem_euclid(8);
        if q > 4 {
            q -= 8;
        }
        Angle::Fixed { quarters: q }
    }

    pub fn quarter(sign: Sign) -> Angle {
        Angle::fixed(i32::from(sign.as_i8()))
    }

    pub fn param(name: impl Into<String>, sign: Sign) -> Angle {
        Angle::Param {
            name: name.into(),
            sign,
            scale: 1.0,
        }
    }

    /// Parameter with a real coefficient; `None` when the coefficient is zero.
    pub fn scaled_param(name: impl Into<String>, coefficient: f64) -> Option<Angle> {
        if coefficient.abs() <= ZERO_COEFFICIENT {
            return None;
        }
        Some(Angle::Param {
            name: name.into(),
            sign: if coefficient < 0.0 { Sign::Minus } else { Sign::Plus },
            scale: coefficient.abs(),
        })
    }

    pub fn is_param(&self) -> bool {
        matches!(self, Angle::Param { .. })
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Angle::Fixed { quarters: 0 })
    }

    /// Signed coefficient of a parameterized angle.
    pub fn coefficient(&self) -> Option<f64> {
        match self {
            Angle::Param { sign, scale, .. } => Some(sign.as_f64() * scale),
            Angle::Fixed { .. } => None,
        }
    }

    /// Numeric value in radians with every parameter bound to `gamma`.
    pub fn radians(&self, gamma: f64) -> f64 {
        match self {
            Angle::Fixed { quarters } => f64::from(*quarters) * FRAC_PI_4,
            Angle::Param { sign, scale, .. } => sign.as_f64() * scale * gamma,
        }
    }

    pub fn negated(&self) -> Angle {
        match self {
            Angle::Fixed { quarters } => Angle::fixed(-quarters),
            Angle::Param { name, sign, scale } => Angle::Param {
                name: name.clone(),
                sign: -*sign,
                scale: *scale,
            },
        }
    }

    /// Sum of two angles when representable; `Some(None)` means the sum is zero.
    pub fn add(&self, other: &Angle) -> Option<Option<Angle>> {
        match (self, other) {
            (Angle::Fixed { quarters: a }, Angle::Fixed { quarters: b }) => {
                let sum = Angle::fixed(a + b);
                Some((!sum.is_zero()).then_some(sum))
            }
            (Angle::Param { name: n1, .. }, Angle::Param { name: n2, .. }) if n1 == n2 => {
                let c = self.coefficient()? + other.coefficient()?;
                Some(Angle::scaled_param(n1.clone(), c))
            }
            _ => None,
        }
    }

    /// Canonical spelling of a fixed angle, e.g. `+pi/4`, `-3pi/4`, `0`.
    pub fn fixed_spelling(quarters: i32) -> String {
        if quarters == 0 {
            return "0".to_string();
        }
        let sign = if quarters < 0 { '-' } else { '+' };
        let q = quarters.unsigned_abs();
        let body = match q {
            1 => "pi/4".to_string(),
            2 => "pi/2".to_string(),
            3 => "3pi/4".to_string(),
            4 => "pi".to_string(),
            q if q % 4 == 0 => format!("{}pi", q / 4),
            q if q % 2 == 0 => format!("{}pi/2", q / 2),
            q => format!("{q}pi/4"),
        };
        format!("{sign}{body}")
    }

    /// Parses the spellings produced by [`Angle::fixed_spelling`].
    pub fn parse_fixed(s: &str) -> Result<i32> {
        let t = s.trim();
        if t == "0" {
            return Ok(0);
        }
        let (neg, body) = match t.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, t.strip_prefix('+').unwrap_or(t)),
        };
        let (num, den) = match body.split_once('/') {
            Some((num, den)) => (num, den),
            None => (body, "1"),
        };
        let coeff = num
            .strip_suffix("pi")
            .ok_or_else(|| Error::Parse(format!("angle '{s}' is not a multiple of pi")))?;
        let coeff: i32 = if coeff.is_empty() {
            1
        } else {
            coeff
                .parse()
                .map_err(|_| Error::Parse(format!("bad angle coefficient in '{s}'")))?
        };
        let den: i32 = den
            .parse()
            .map_err(|_| Error::Parse(format!("bad angle denominator in '{s}'")))?;
        let quarters = match den {
            1 => coeff * 4,
            2 => coeff * 2,
            4 => coeff,
            _ => return Err(Error::Parse(format!("angle '{s}' is not a multiple of pi/4"))),
        };
        Ok(if neg { -quarters } else { quarters })
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Angle::Fixed { quarters } => f.write_str(&Angle::fixed_spelling(*quarters)),
            Angle::Param { name, sign, scale } => {
                let s = if *sign == Sign::Minus { '-' } else { '+' };
                if *scale == 1.0 {
                    write!(f, "{s}{name}")
                } else {
                    write!(f, "{s}{scale}*{name}")
                }
            }
        }
    }
}

/// Native rotation `exp(iθ · σ_a σ_b)` (or a single-qubit `exp(iθ σ_a)`).
#[derive(Debug, Clone, PartialEq)]
pub struct RotationGate {
    pub qubits: Vec<usize>,
    pub letters: Vec<Pauli>,
    pub angle: Angle,
}

impl RotationGate {
    pub fn new(qubits: Vec<usize>, letters: Vec<Pauli>, angle: Angle) -> Result<Self> {
        if qubits.is_empty() || qubits.len() > 2 || qubits.len() != letters.len() {
            return Err(Error::InvalidTarget(format!(
                "rotation needs 1 or 2 qubits with matching letters, got {qubits:?} / {letters:?}"
            )));
        }
        if qubits.len() == 2 && qubits[0] == qubits[1] {
            return Err(Error::InvalidTarget(format!("repeated qubit {}", qubits[0])));
        }
        if letters.iter().any(|l| l.is_identity()) {
            return Err(Error::InvalidTarget("rotation letters must not be I".into()));
        }
        Ok(RotationGate {
            qubits,
            letters,
            angle,
        })
    }

    /// Gate on the letters of `generator` at `qubits`, in the given order.
    pub fn on(generator: &PauliString, qubits: &[usize], angle: Angle) -> Result<Self> {
        Self::new(
            qubits.to_vec(),
            qubits.iter().map(|&q| generator.letter(q)).collect(),
            angle,
        )
    }

    pub fn generator(&self, n: usize) -> Result<PauliString> {
        let terms: Vec<_> = self.qubits.iter().copied().zip(self.letters.iter().copied()).collect();
        PauliString::from_sparse(n, &terms)
    }

    /// Order-independent identity of the generator.
    pub fn generator_key(&self) -> Vec<(usize, Pauli)> {
        let mut key: Vec<_> = self.qubits.iter().copied().zip(self.letters.iter().copied()).collect();
        key.sort_unstable();
        key
    }

    pub fn letter_on(&self, q: usize) -> Pauli {
        self.qubits
            .iter()
            .position(|&x| x == q)
            .map_or(Pauli::I, |i| self.letters[i])
    }
}

/// A circuit element: a native rotation or an opaque CNOT used by baselines.
#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    Rotation(RotationGate),
    Cnot { control: usize, target: usize },
}

impl Gate {
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::Rotation(r) => r.qubits.clone(),
            Gate::Cnot { control, target } => vec![*control, *target],
        }
    }

    pub fn is_two_qubit(&self) -> bool {
        match self {
            Gate::Rotation(r) => r.qubits.len() == 2,
            Gate::Cnot { .. } => true,
        }
    }

    pub fn as_rotation(&self) -> Option<&RotationGate> {
        match self {
            Gate::Rotation(r) => Some(r),
            Gate::Cnot { .. } => None,
        }
    }

    /// Exact commutation of the two gate unitaries' generators.
    ///
    /// A CNOT commutes with a Pauli rotation iff the rotation's letter is
    /// `I`/`Z` on the control and `I`/`X` on the target; two CNOTs commute
    /// iff neither's control is the other's target.
    pub fn commutes_with(&self, other: &Gate) -> bool {
        match (self, other) {
            (Gate::Rotation(a), Gate::Rotation(b)) => {
                let mut anti = 0;
                for (i, &q) in a.qubits.iter().enumerate() {
                    if !a.letters[i].commutes_with(b.letter_on(q)) {
                        anti += 1;
                    }
                }
                anti % 2 == 0
            }
            (Gate::Rotation(r), Gate::Cnot { control, target })
            | (Gate::Cnot { control, target }, Gate::Rotation(r)) => {
                matches!(r.letter_on(*control), Pauli::I | Pauli::Z)
                    && matches!(r.letter_on(*target), Pauli::I | Pauli::X)
            }
            (
                Gate::Cnot {
                    control: c1,
                    target: t1,
                },
                Gate::Cnot {
                    control: c2,
                    target: t2,
                },
            ) => c1 != t2 && c2 != t1,
        }
    }
}

impl From<RotationGate> for Gate {
    fn from(r: RotationGate) -> Gate {
        Gate::Rotation(r)
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::Rotation(r) => {
                write!(f, "exp(i·{}·", r.angle)?;
                for (q, l) in r.qubits.iter().zip(&r.letters) {
                    write!(f, "{l}{q}")?;
                }
                write!(f, ")")
            }
            Gate::Cnot { control, target } => write!(f, "CNOT({control}->{target})"),
        }
    }
}

/// Ordered gate list on `n` qubits with an optional parallel-layer partition.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Circuit {
    pub n: usize,
    pub gates: Vec<Gate>,
    pub layers: Option<Vec<Vec<usize>>>,
}

impl Circuit {
    pub fn new(n: usize) -> Circuit {
        Circuit {
            n,
            gates: Vec::new(),
            layers: None,
        }
    }

    pub fn push(&mut self, gate: impl Into<Gate>) {
        self.gates.push(gate.into());
        self.layers = None;
    }

    pub fn extend(&mut self, other: &Circuit) {
        self.gates.extend(other.gates.iter().cloned());
        self.layers = None;
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn two_qubit_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_two_qubit()).count()
    }

    pub fn rotations(&self) -> impl Iterator<Item = &RotationGate> {
        self.gates.iter().filter_map(Gate::as_rotation)
    }

    /// Checks qubit ranges and that every two-qubit gate sits on a hardware edge.
    pub fn validate_edges(&self, g: &HardwareGraph) -> Result<()> {
        for gate in &self.gates {
            let qs = gate.qubits();
            for &q in &qs {
                if q >= self.n {
                    return Err(Error::NodeOutOfRange { node: q, n: self.n });
                }
            }
            if qs.len() == 2 && !g.has_edge(qs[0], qs[1]) {
                return Err(Error::NotAnEdge(qs[0], qs[1]));
            }
        }
        Ok(())
    }

    /// Checks that `layers` partitions the gates and orders every
    /// non-commuting pair as in the gate list.
    pub fn validate_layers(&self) -> Result<()> {
        let layers = self.layers.as_ref().ok_or(Error::Unscheduled)?;
        let mut layer_of = vec![usize::MAX; self.gates.len()];
        for (l, layer) in layers.iter().enumerate() {
            for &i in layer {
                if i >= self.gates.len() || layer_of[i] != usize::MAX {
                    return Err(Error::Shape(format!("gate {i} misplaced in layer {l}")));
                }
                layer_of[i] = l;
            }
        }
        if let Some(i) = layer_of.iter().position(|&l| l == usize::MAX) {
            return Err(Error::Shape(format!("gate {i} is not assigned to a layer")));
        }
        for j in 0..self.gates.len() {
            for i in 0..j {
                if layer_of[i] >= layer_of[j] && !self.gates[i].commutes_with(&self.gates[j]) {
                    return Err(Error::Shape(format!(
                        "non-commuting gates {i} and {j} are not ordered by their layers"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Distinct parameter names used by the circuit.
    pub fn param_names(&self) -> BTreeSet<String> {
        self.rotations()
            .filter_map(|r| match &r.angle {
                Angle::Param { name, .. } => Some(name.clone()),
                Angle::Fixed { .. } => None,
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rot(qs: &[usize], letters: &str, angle: Angle) -> Gate {
        let letters = letters.chars().map(|c| Pauli::from_char(c).unwrap()).collect();
        RotationGate::new(qs.to_vec(), letters, angle).unwrap().into()
    }

    #[test]
    fn fixed_angles_normalize_and_spell() {
        assert_eq!(Angle::fixed(9), Angle::Fixed { quarters: 1 });
        assert_eq!(Angle::fixed(-5), Angle::Fixed { quarters: 3 });
        assert_eq!(Angle::fixed(-4), Angle::Fixed { quarters: 4 });
        for q in -3..=4 {
            let s = Angle::fixed_spelling(q);
            assert_eq!(Angle::parse_fixed(&s).unwrap(), q, "{s}");
        }
        assert_eq!(Angle::fixed_spelling(1), "+pi/4");
        assert_eq!(Angle::fixed_spelling(-1), "-pi/4");
        assert_eq!(Angle::fixed_spelling(-3), "-3pi/4");
        assert!(Angle::parse_fixed("pi/3").is_err());
        assert!(Angle::parse_fixed("0.7").is_err());
    }

    #[test]
    fn angle_addition() {
        let q = Angle::quarter(Sign::Plus);
        assert_eq!(q.add(&q), Some(Some(Angle::Fixed { quarters: 2 })));
        assert_eq!(q.add(&q.negated()), Some(None));
        let g = Angle::param("gamma", Sign::Plus);
        let sum = g.add(&g).unwrap().unwrap();
        assert_eq!(sum.coefficient(), Some(2.0));
        assert_eq!(g.add(&g.negated()), Some(None));
        assert_eq!(g.add(&Angle::param("beta", Sign::Plus)), None);
        assert_eq!(g.add(&q), None);
    }

    #[test]
    fn rotation_validation() {
        assert!(RotationGate::new(vec![0, 0], vec![Pauli::X, Pauli::Z], Angle::fixed(1)).is_err());
        assert!(RotationGate::new(vec![0, 1], vec![Pauli::X, Pauli::I], Angle::fixed(1)).is_err());
        assert!(RotationGate::new(vec![0, 1, 2], vec![Pauli::X; 3], Angle::fixed(1)).is_err());
    }

    #[test]
    fn gate_commutation() {
        let a = rot(&[0, 1], "ZZ", Angle::fixed(1));
        let b = rot(&[1, 2], "ZZ", Angle::fixed(1));
        let c = rot(&[1, 2], "XZ", Angle::fixed(1));
        assert!(a.commutes_with(&b));
        assert!(!a.commutes_with(&c));
        let cx = Gate::Cnot { control: 0, target: 1 };
        assert!(cx.commutes_with(&rot(&[0], "Z", Angle::fixed(1))));
        assert!(!cx.commutes_with(&rot(&[1], "Z", Angle::fixed(1))));
        assert!(cx.commutes_with(&rot(&[1], "X", Angle::fixed(1))));
        assert!(!cx.commutes_with(&Gate::Cnot { control: 1, target: 2 }));
        assert!(cx.commutes_with(&Gate::Cnot { control: 0, target: 2 }));
        assert!(cx.commutes_with(&Gate::Cnot { control: 2, target: 1 }));
    }

    #[test]
    fn layer_validation_catches_reordering() {
        let mut c = Circuit::new(2);
        c.push(rot(&[0, 1], "ZX", Angle::fixed(1)));
        c.push(rot(&[0, 1], "XX", Angle::fixed(1)));
        c.layers = Some(vec![vec![0, 1]]);
        assert!(c.validate_layers().is_err());
        c.layers = Some(vec![vec![0], vec![1]]);
        assert!(c.validate_layers().is_ok());
        c.layers = Some(vec![vec![0]]);
        assert!(c.validate_layers().is_err());
    }
}
