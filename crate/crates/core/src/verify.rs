//! Correctness checks for compiled circuits.
//!
//! * [`symbolic_verify`] folds a nested circuit back into its generator with
//!   exact Pauli algebra.
//! * [`numeric_verify`] compares dense unitaries built from explicit 2×2
//!   Pauli factors, independent of the symplectic representation.
//! * [`statevector_verify`] compares the action on random states.
//! * [`correlation_check`] tests the output correlations of the all-`X`
//!   gate at `γ = -π/4` on product states.

use std::f64::consts::{FRAC_PI_4, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::circuit::{Angle, Circuit, Gate};
use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString, Sign};
use crate::schedule::two_qubit_depth;

/// Pass threshold for numeric comparisons.
pub const TOLERANCE: f64 = 1e-9;
/// Largest register for dense unitaries.
pub const DENSE_CAP: usize = 12;
/// Largest register for statevector simulation.
pub const STATEVECTOR_CAP: usize = 20;

const C0: Complex64 = Complex64::new(0.0, 0.0);
const C1: Complex64 = Complex64::new(1.0, 0.0);
const CI: Complex64 = Complex64::new(0.0, 1.0);

/// Sum of mutually commuting Pauli terms `Σ c_k P_k`; its exponential
/// `exp(iγH)` is the reference operator.
#[derive(Debug, Clone, PartialEq)]
pub struct Hamiltonian {
    pub n: usize,
    pub terms: Vec<(f64, PauliString)>,
}

impl Hamiltonian {
    pub fn new(n: usize, terms: Vec<(f64, PauliString)>) -> Result<Hamiltonian> {
        for (i, (_, p)) in terms.iter().enumerate() {
            if p.num_qubits() != n {
                return Err(Error::DimensionMismatch {
                    left: p.num_qubits(),
                    right: n,
                });
            }
            if !p.is_hermitian() {
                return Err(Error::NonHermitian(p.to_string()));
            }
            for (_, q) in &terms[..i] {
                if !p.commutes(q)? {
                    return Err(Error::InvalidTarget(format!("terms {p} and {q} do not commute")));
                }
            }
        }
        Ok(Hamiltonian { n, terms })
    }

    pub fn single(p: &PauliString) -> Result<Hamiltonian> {
        Hamiltonian::new(p.num_qubits(), vec![(1.0, p.clone())])
    }
}

// ---------------------------------------------------------------------------
// Symbolic folding

/// Folds a nested circuit and compares the result with `target`.
///
/// The circuit must be `g_0 … g_{p-1} C g_{p-1}⁻¹ … g_0⁻¹` with fixed
/// `±π/4` rotations `g_i` and one unit-scale parameterized rotation `C`.
pub fn symbolic_verify(c: &Circuit, target: &PauliString) -> Result<bool> {
    if target.num_qubits() != c.n {
        return Err(Error::DimensionMismatch {
            left: c.n,
            right: target.num_qubits(),
        });
    }
    let len = c.gates.len();
    if len.is_multiple_of(2) {
        return Err(Error::Shape(format!("{len} gates cannot be nested")));
    }
    let rot = |i: usize| {
        c.gates[i]
            .as_rotation()
            .ok_or_else(|| Error::Shape(format!("gate {i} is not a Pauli rotation")))
    };
    let mid = len / 2;
    let central = rot(mid)?;
    let sign = match central.angle {
        Angle::Param { sign, scale: 1.0, .. } => sign,
        _ => return Err(Error::Shape("central gate is not a unit parameter rotation".into())),
    };
    let mut current = central.generator(c.n)?;
    if sign == Sign::Minus {
        current = -current;
    }
    for i in (0..mid).rev() {
        let (a, b) = (rot(i)?, rot(len - 1 - i)?);
        if a.generator_key() != b.generator_key() {
            return Err(Error::Shape(format!("gates {i} and {} differ", len - 1 - i)));
        }
        let (qa, qb) = match (&a.angle, &b.angle) {
            (Angle::Fixed { quarters: qa }, Angle::Fixed { quarters: qb }) => (*qa, *qb),
            _ => return Err(Error::Shape(format!("gate {i} is not a fixed rotation"))),
        };
        if qa.abs() != 1 {
            return Err(Error::Shape(format!("gate {i} is not a quarter rotation")));
        }
        if qa + qb != 0 {
            // Not an inverse pair: the circuit is not a conjugation.
            return Ok(false);
        }
        let o = a.generator(c.n)?;
        let s = if qa > 0 { Sign::Minus } else { Sign::Plus };
        current = PauliString::conjugate_by_quarter_rotation(&o, &current, s)?;
    }
    Ok(&current == target)
}

// ---------------------------------------------------------------------------
// Dense oracle

/// A Pauli operator as a signed permutation: row `r` has its single nonzero
/// in column `r ^ flip`, with value `scalar · Π_j M_j[r_j][c_j]`.
struct DensePauli {
    flip: usize,
    factors: Vec<(usize, [[Complex64; 2]; 2])>,
    scalar: Complex64,
}

fn letter_matrix(l: Pauli) -> [[Complex64; 2]; 2] {
    match l {
        Pauli::I => [[C1, C0], [C0, C1]],
        Pauli::X => [[C0, C1], [C1, C0]],
        Pauli::Y => [[C0, -CI], [CI, C0]],
        Pauli::Z => [[C1, C0], [C0, -C1]],
    }
}

impl DensePauli {
    fn new(letters: &[(usize, Pauli)], scalar: Complex64) -> DensePauli {
        let mut flip = 0;
        let mut factors = Vec::new();
        for &(q, l) in letters {
            if matches!(l, Pauli::X | Pauli::Y) {
                flip |= 1 << q;
            }
            if l != Pauli::I {
                factors.push((q, letter_matrix(l)));
            }
        }
        DensePauli { flip, factors, scalar }
    }

    fn of_string(p: &PauliString) -> Result<DensePauli> {
        let sign = p.sign().ok_or_else(|| Error::NonHermitian(p.to_string()))?;
        let letters: Vec<_> = p.support().into_iter().map(|q| (q, p.letter(q))).collect();
        Ok(DensePauli::new(&letters, C1 * sign.as_f64()))
    }

    fn row(&self, r: usize) -> (usize, Complex64) {
        let c = r ^ self.flip;
        let v = self
            .factors
            .iter()
            .fold(self.scalar, |acc, (q, m)| acc * m[(r >> q) & 1][(c >> q) & 1]);
        (c, v)
    }
}

/// Row-major dense matrix of size `dim × dim`.
struct Dense {
    dim: usize,
    data: Vec<Complex64>,
}

impl Dense {
    fn identity(n: usize) -> Dense {
        let dim = 1 << n;
        let mut data = vec![C0; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = C1;
        }
        Dense { dim, data }
    }

    /// `U ← exp(iθG)·U = cos θ·U + i sin θ·G·U`.
    fn rotate(&mut self, g: &DensePauli, theta: f64) {
        let (cos, sin) = (theta.cos(), theta.sin());
        let dim = self.dim;
        let mut next = vec![C0; dim * dim];
        for r in 0..dim {
            let (src, v) = g.row(r);
            let w = CI * sin * v;
            let out = &mut next[r * dim..(r + 1) * dim];
            let own = &self.data[r * dim..(r + 1) * dim];
            let other = &self.data[src * dim..(src + 1) * dim];
            for k in 0..dim {
                out[k] = own[k] * cos + w * other[k];
            }
        }
        self.data = next;
    }

    fn cnot(&mut self, control: usize, target: usize) {
        let dim = self.dim;
        let mut next = vec![C0; dim * dim];
        for r in 0..dim {
            let src = if (r >> control) & 1 == 1 { r ^ (1 << target) } else { r };
            next[r * dim..(r + 1) * dim].copy_from_slice(&self.data[src * dim..(src + 1) * dim]);
        }
        self.data = next;
    }

    fn distance(&self, other: &Dense) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

fn require_cap(what: &'static str, n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::SizeCap { what, cap, n });
    }
    Ok(())
}

fn circuit_dense(c: &Circuit, gamma: f64) -> Result<Dense> {
    require_cap("dense verification", c.n, DENSE_CAP)?;
    let mut u = Dense::identity(c.n);
    for gate in &c.gates {
        match gate {
            Gate::Rotation(r) => {
                let letters: Vec<_> = r.qubits.iter().copied().zip(r.letters.iter().copied()).collect();
                u.rotate(&DensePauli::new(&letters, C1), r.angle.radians(gamma));
            }
            Gate::Cnot { control, target } => u.cnot(*control, *target),
        }
    }
    Ok(u)
}

fn hamiltonian_dense(h: &Hamiltonian, gamma: f64) -> Result<Dense> {
    require_cap("dense verification", h.n, DENSE_CAP)?;
    let mut u = Dense::identity(h.n);
    for (coef, p) in &h.terms {
        u.rotate(&DensePauli::of_string(p)?, coef * gamma);
    }
    Ok(u)
}

/// Frobenius distance between the dense unitaries of two circuits with
/// every parameter bound to `gamma`.
pub fn circuit_distance(a: &Circuit, b: &Circuit, gamma: f64) -> Result<f64> {
    if a.n != b.n {
        return Err(Error::DimensionMismatch { left: a.n, right: b.n });
    }
    Ok(circuit_dense(a, gamma)?.distance(&circuit_dense(b, gamma)?))
}

/// Largest Frobenius distance between the circuit and `exp(iγH)` over
/// `gammas`.
pub fn numeric_verify(c: &Circuit, target: &Hamiltonian, gammas: &[f64]) -> Result<f64> {
    if c.n != target.n {
        return Err(Error::DimensionMismatch {
            left: c.n,
            right: target.n,
        });
    }
    let mut worst: f64 = 0.0;
    for &g in gammas {
        worst = worst.max(circuit_dense(c, g)?.distance(&hamiltonian_dense(target, g)?));
    }
    Ok(worst)
}

// ---------------------------------------------------------------------------
// Statevector simulation

/// `ψ ← exp(iθP)ψ` using `P|b⟩ = i^k (-1)^{|b∧z|} |b⊕x⟩`.
fn apply_pauli_exp(psi: &mut [Complex64], p: &PauliString, theta: f64) {
    let (x, z, k) = p.masks_u64().expect("statevector registers are small");
    let phase = CI.powu(u32::from(k));
    let (cos, sin) = (theta.cos(), theta.sin());
    let old = psi.to_vec();
    for (b, amp) in psi.iter_mut().enumerate() {
        let src = b ^ x as usize;
        let parity = ((src as u64) & z).count_ones() % 2;
        let p_src = if parity == 1 { -phase } else { phase } * old[src];
        *amp = old[b] * cos + CI * sin * p_src;
    }
}

fn apply_cnot(psi: &mut [Complex64], control: usize, target: usize) {
    for b in 0..psi.len() {
        if (b >> control) & 1 == 1 && (b >> target) & 1 == 0 {
            psi.swap(b, b | (1 << target));
        }
    }
}

/// Applies the circuit to `psi` in place with every parameter bound to `gamma`.
pub fn apply_circuit(c: &Circuit, psi: &mut [Complex64], gamma: f64) -> Result<()> {
    require_cap("statevector simulation", c.n, STATEVECTOR_CAP)?;
    if psi.len() != 1 << c.n {
        return Err(Error::DimensionMismatch {
            left: psi.len(),
            right: 1 << c.n,
        });
    }
    for gate in &c.gates {
        match gate {
            Gate::Rotation(r) => apply_pauli_exp(psi, &r.generator(c.n)?, r.angle.radians(gamma)),
            Gate::Cnot { control, target } => apply_cnot(psi, *control, *target),
        }
    }
    Ok(())
}

fn apply_hamiltonian(h: &Hamiltonian, psi: &mut [Complex64], gamma: f64) {
    for (coef, p) in &h.terms {
        apply_pauli_exp(psi, p, coef * gamma);
    }
}

/// Normalized random state with components uniform in the unit square.
pub fn random_state(n: usize, rng: &mut impl Rng) -> Vec<Complex64> {
    let mut psi: Vec<Complex64> = (0..1usize << n)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm = psi.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
    psi.iter_mut().for_each(|a| *a /= norm);
    psi
}

/// Largest vector-norm error between circuit and `exp(iγH)` over `trials`
/// random states, each with its own random `γ`.
pub fn statevector_verify(c: &Circuit, target: &Hamiltonian, trials: usize, seed: u64) -> Result<f64> {
    require_cap("statevector simulation", c.n, STATEVECTOR_CAP)?;
    if c.n != target.n {
        return Err(Error::DimensionMismatch {
            left: c.n,
            right: target.n,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let gamma = rng.gen_range(-PI..PI);
        let psi = random_state(c.n, &mut rng);
        let mut a = psi.clone();
        apply_circuit(c, &mut a, gamma)?;
        let mut b = psi;
        apply_hamiltonian(target, &mut b, gamma);
        let err = a.iter().zip(&b).map(|(u, v)| (u - v).norm_sqr()).sum::<f64>().sqrt();
        worst = worst.max(err);
    }
    Ok(worst)
}

// ---------------------------------------------------------------------------
// Correlation property

/// One single-qubit state `(a, b) = a|0⟩ + b|1⟩` per qubit.
pub type ProductState = Vec<[Complex64; 2]>;

/// Random normalized product state.
pub fn random_product_state(n: usize, rng: &mut impl Rng) -> ProductState {
    (0..n)
        .map(|_| {
            let v = random_state(1, rng);
            [v[0], v[1]]
        })
        .collect()
}

fn expand(state: &ProductState) -> Vec<Complex64> {
    let n = state.len();
    (0..1usize << n)
        .map(|b| (0..n).fold(C1, |acc, j| acc * state[j][(b >> j) & 1]))
        .collect()
}

/// `(⟨X⟩, ⟨Y⟩)` of a single-qubit state.
fn xy_expectation(s: &[Complex64; 2]) -> (f64, f64) {
    let norm = s[0].norm_sqr() + s[1].norm_sqr();
    let c = s[0].conj() * s[1] / norm;
    (2.0 * c.re, 2.0 * c.im)
}

/// Largest deviation, over states and qubits, between `⟨Z_j⟩` after the
/// circuit and `⟨Y_j⟩ · Π_{i≠j} ⟨X_i⟩` before it.
///
/// The target must be the unsigned all-`X` string; every parameter is bound
/// to `-π/4`, so the circuit implements `exp(-iπ/4·X⊗…⊗X)`.
pub fn correlation_deviation(c: &Circuit, target: &PauliString, states: &[ProductState]) -> Result<f64> {
    let n = target.num_qubits();
    if n != c.n || target.sign() != Some(Sign::Plus) || target.letters().any(|l| l != Pauli::X) {
        return Err(Error::Precondition(format!(
            "correlation check needs the all-X target on {} qubits, got {target}",
            c.n
        )));
    }
    require_cap("correlation check", n, STATEVECTOR_CAP)?;
    let mut worst: f64 = 0.0;
    for state in states {
        if state.len() != n {
            return Err(Error::DimensionMismatch {
                left: state.len(),
                right: n,
            });
        }
        let mut psi = expand(state);
        let norm: f64 = psi.iter().map(Complex64::norm_sqr).sum();
        apply_circuit(c, &mut psi, -FRAC_PI_4)?;
        let xy: Vec<(f64, f64)> = state.iter().map(xy_expectation).collect();
        for j in 0..n {
            let z: f64 = psi
                .iter()
                .enumerate()
                .map(|(b, a)| if (b >> j) & 1 == 0 { a.norm_sqr() } else { -a.norm_sqr() })
                .sum::<f64>()
                / norm;
            let predicted = (0..n).fold(1.0, |acc, i| acc * if i == j { xy[i].1 } else { xy[i].0 });
            worst = worst.max((z - predicted).abs());
        }
    }
    Ok(worst)
}

pub fn correlation_check(c: &Circuit, target: &PauliString, states: &[ProductState]) -> Result<bool> {
    Ok(correlation_deviation(c, target, states)? <= TOLERANCE)
}

// ---------------------------------------------------------------------------
// Reports

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyMode {
    Symbolic,
    Numeric,
    Statevector,
}

impl FromStr for VerifyMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<VerifyMode> {
        match s {
            "symbolic" => Ok(VerifyMode::Symbolic),
            "numeric" => Ok(VerifyMode::Numeric),
            "statevector" => Ok(VerifyMode::Statevector),
            other => Err(Error::Unsupported(format!("verification mode '{other}'"))),
        }
    }
}

impl fmt::Display for VerifyMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerifyMode::Symbolic => "symbolic",
            VerifyMode::Numeric => "numeric",
            VerifyMode::Statevector => "statevector",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub mode: VerifyMode,
    pub n: usize,
    pub gates: usize,
    pub depth: Option<usize>,
    pub max_error: f64,
    pub seed: Option<u64>,
    pub passed: bool,
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "verify mode={} n={} gates={} depth={} max_error={:.3e} seed={} result={}",
            self.mode,
            self.n,
            self.gates,
            self.depth.map_or("-".to_string(), |d| d.to_string()),
            self.max_error,
            self.seed.map_or("-".to_string(), |s| s.to_string()),
            if self.passed { "pass" } else { "FAIL" }
        )
    }
}

/// Number of random parameter bindings (numeric) or states (statevector).
pub const DEFAULT_TRIALS: usize = 3;

/// Runs one verification mode and packages the outcome.
///
/// Symbolic mode needs a single-term target.
pub fn verify(c: &Circuit, target: &Hamiltonian, mode: VerifyMode, seed: u64) -> Result<VerificationReport> {
    let (max_error, seed_used) = match mode {
        VerifyMode::Symbolic => {
            let p = match target.terms.as_slice() {
                [(coef, p)] if *coef == 1.0 => p,
                _ => {
                    return Err(Error::Unsupported(
                        "symbolic verification needs a single unit-coefficient target".into(),
                    ))
                }
            };
            (if symbolic_verify(c, p)? { 0.0 } else { f64::INFINITY }, None)
        }
        VerifyMode::Numeric => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let gammas: Vec<f64> = (0..DEFAULT_TRIALS).map(|_| rng.gen_range(-PI..PI)).collect();
            (numeric_verify(c, target, &gammas)?, Some(seed))
        }
        VerifyMode::Statevector => (statevector_verify(c, target, DEFAULT_TRIALS, seed)?, Some(seed)),
    };
    Ok(VerificationReport {
        mode,
        n: c.n,
        gates: c.len(),
        depth: two_qubit_depth(c).ok(),
        max_error,
        seed: seed_used,
        passed: max_error <= TOLERANCE,
    })
}
