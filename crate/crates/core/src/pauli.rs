//! Phase-tracked Pauli strings in symplectic (bit-mask) form.
//!
//! A [`PauliString`] stores `i^k · Π_j X_j^{x_j} Z_j^{z_j}`. The `Y = i·X·Z`
//! factor is folded into `k`, so the public readout always reports literal
//! `I/X/Y/Z` letters together with a scalar in `{±1, ±i}`.

use std::fmt;
use std::ops::{Mul, Neg};
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD: usize = 64;

/// Single-qubit Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    /// Non-identity letters in the fixed preference order used for conjugators.
    pub const PREFERENCE: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

    pub fn from_bits(x: bool, z: bool) -> Pauli {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn is_identity(self) -> bool {
        self == Pauli::I
    }

    pub fn commutes_with(self, other: Pauli) -> bool {
        self == Pauli::I || other == Pauli::I || self == other
    }

    /// Letter of the product, ignoring the scalar.
    pub fn product_letter(self, other: Pauli) -> Pauli {
        let (x1, z1) = self.bits();
        let (x2, z2) = other.bits();
        Pauli::from_bits(x1 ^ x2, z1 ^ z2)
    }

    pub fn to_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Result<Pauli> {
        match c.to_ascii_uppercase() {
            'I' => Ok(Pauli::I),
            'X' => Ok(Pauli::X),
            'Y' => Ok(Pauli::Y),
            'Z' => Ok(Pauli::Z),
            other => Err(Error::Parse(format!("invalid Pauli letter '{other}'"))),
        }
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// A real sign, `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_i8(v: i8) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.as_i8())
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

/// Scalar prefactor `i^k` with `k` in `0..4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_power(k: u32) -> Phase {
        Phase((k % 4) as u8)
    }

    /// The exponent `k` of `i^k`.
    pub fn power(self) -> u8 {
        self.0
    }

    pub fn is_real(self) -> bool {
        self.0.is_multiple_of(2)
    }

    /// `(re, im)` of the scalar.
    pub fn to_complex(self) -> (f64, f64) {
        match self.0 {
            0 => (1.0, 0.0),
            1 => (0.0, 1.0),
            2 => (-1.0, 0.0),
            _ => (0.0, -1.0),
        }
    }
}

impl Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

impl From<Sign> for Phase {
    fn from(s: Sign) -> Phase {
        match s {
            Sign::Plus => Phase::ONE,
            Sign::Minus => Phase::MINUS_ONE,
        }
    }
}

/// An `n`-qubit Pauli operator with exact phase.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    // i^k prefactor in the X-before-Z convention
    k: u8,
}

fn words(n: usize) -> usize {
    n.div_ceil(WORD)
}

fn popcount_and(a: &[u64], b: &[u64]) -> u32 {
    a.iter().zip(b).map(|(p, q)| (p & q).count_ones()).sum()
}

impl PauliString {
    pub fn identity(n: usize) -> PauliString {
        PauliString {
            n,
            x: vec![0; words(n)],
            z: vec![0; words(n)],
            k: 0,
        }
    }

    /// Hermitian string with scalar `+1` from a letter list (qubit 0 first).
    pub fn from_letters(letters: &[Pauli]) -> PauliString {
        let mut p = PauliString::identity(letters.len());
        for (j, &l) in letters.iter().enumerate() {
            p.set_letter(j, l);
        }
        p
    }

    /// Hermitian string with scalar `+1` acting as `letters` on `qubits`.
    pub fn from_sparse(n: usize, terms: &[(usize, Pauli)]) -> Result<PauliString> {
        let mut p = PauliString::identity(n);
        for &(q, l) in terms {
            if q >= n {
                return Err(Error::NodeOutOfRange { node: q, n });
            }
            if !p.letter(q).is_identity() {
                return Err(Error::InvalidTarget(format!("qubit {q} listed twice")));
            }
            p.set_letter(q, l);
        }
        Ok(p)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    fn bit(mask: &[u64], j: usize) -> bool {
        (mask[j / WORD] >> (j % WORD)) & 1 == 1
    }

    fn put(mask: &mut [u64], j: usize, v: bool) {
        let w = &mut mask[j / WORD];
        if v {
            *w |= 1 << (j % WORD);
        } else {
            *w &= !(1 << (j % WORD));
        }
    }

    pub fn letter(&self, j: usize) -> Pauli {
        Pauli::from_bits(Self::bit(&self.x, j), Self::bit(&self.z, j))
    }

    /// Replaces the letter on qubit `j`, keeping the scalar readout unchanged.
    pub fn set_letter(&mut self, j: usize, l: Pauli) {
        assert!(j < self.n, "qubit {j} out of range for {} qubits", self.n);
        let was_y = self.letter(j) == Pauli::Y;
        let (x, z) = l.bits();
        Self::put(&mut self.x, j, x);
        Self::put(&mut self.z, j, z);
        let is_y = l == Pauli::Y;
        match (was_y, is_y) {
            (false, true) => self.k = (self.k + 1) % 4,
            (true, false) => self.k = (self.k + 3) % 4,
            _ => {}
        }
    }

    pub fn letters(&self) -> impl Iterator<Item = Pauli> + '_ {
        (0..self.n).map(|j| self.letter(j))
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.n).filter(|&j| !self.letter(j).is_identity()).collect()
    }

    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    fn y_count(&self) -> u32 {
        popcount_and(&self.x, &self.z)
    }

    /// Scalar prefactor in front of the literal letter string.
    pub fn scalar(&self) -> Phase {
        Phase::from_power(u32::from(self.k) + 4 - self.y_count() % 4)
    }

    pub fn is_hermitian(&self) -> bool {
        self.scalar().is_real()
    }

    /// Same letters with scalar `+1`.
    pub fn unsigned(&self) -> PauliString {
        let mut p = self.clone();
        p.k = (self.y_count() % 4) as u8;
        p
    }

    pub fn times_phase(&self, ph: Phase) -> PauliString {
        let mut p = self.clone();
        p.k = (p.k + ph.power()) % 4;
        p
    }

    /// Sign of a Hermitian string, `None` for anti-Hermitian scalars.
    pub fn sign(&self) -> Option<Sign> {
        match self.scalar() {
            Phase::ONE => Some(Sign::Plus),
            Phase::MINUS_ONE => Some(Sign::Minus),
            _ => None,
        }
    }

    /// Restriction of the letters to `qubits`, relabelled `0..qubits.len()`,
    /// with the scalar carried over.
    pub fn restrict(&self, qubits: &[usize]) -> PauliString {
        let mut p = PauliString::identity(qubits.len());
        for (i, &q) in qubits.iter().enumerate() {
            p.set_letter(i, self.letter(q));
        }
        p.times_phase(self.scalar())
    }

    /// Inverse of [`PauliString::restrict`]: embeds into `n` qubits at `qubits`.
    pub fn embed(&self, n: usize, qubits: &[usize]) -> PauliString {
        let mut p = PauliString::identity(n);
        for (i, &q) in qubits.iter().enumerate() {
            p.set_letter(q, self.letter(i));
        }
        p.times_phase(self.scalar())
    }

    /// Raw `(x, z, k)` of `i^k · X^x · Z^z` for strings of at most 64 qubits.
    pub fn masks_u64(&self) -> Option<(u64, u64, u8)> {
        (self.n <= WORD).then(|| (self.x.first().copied().unwrap_or(0), self.z.first().copied().unwrap_or(0), self.k))
    }

    fn check_dims(&self, other: &PauliString) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    fn require_hermitian(&self) -> Result<()> {
        if self.is_hermitian() {
            Ok(())
        } else {
            Err(Error::NonHermitian(self.to_string()))
        }
    }

    /// Operator product `self · other` with exact phase.
    pub fn multiply(&self, other: &PauliString) -> Result<PauliString> {
        self.check_dims(other)?;
        // Z^{z1} X^{x2} = (-1)^{z1·x2} X^{x2} Z^{z1}
        let swaps = popcount_and(&self.z, &other.x);
        let k = (u32::from(self.k) + u32::from(other.k) + 2 * swaps) % 4;
        Ok(PauliString {
            n: self.n,
            x: self.x.iter().zip(&other.x).map(|(a, b)| a ^ b).collect(),
            z: self.z.iter().zip(&other.z).map(|(a, b)| a ^ b).collect(),
            k: k as u8,
        })
    }

    /// Whether `self · other = other · self`.
    pub fn commutes(&self, other: &PauliString) -> Result<bool> {
        self.check_dims(other)?;
        let s = popcount_and(&self.x, &other.z) + popcount_and(&self.z, &other.x);
        Ok(s.is_multiple_of(2))
    }

    /// `exp(i·sign·π/4·o) · p · exp(-i·sign·π/4·o)`.
    ///
    /// For anticommuting `o` and `p` this is `(i·sign)·o·p`; otherwise `p`.
    pub fn conjugate_by_quarter_rotation(
        o: &PauliString,
        p: &PauliString,
        sign: Sign,
    ) -> Result<PauliString> {
        o.check_dims(p)?;
        o.require_hermitian()?;
        p.require_hermitian()?;
        if o.commutes(p)? {
            return Ok(p.clone());
        }
        let op = o.multiply(p)?;
        Ok(op.times_phase(match sign {
            Sign::Plus => Phase::I,
            Sign::Minus => Phase::MINUS_I,
        }))
    }

    /// Splits `p` against the conjugator `o`: returns `(h, s)` with `h`
    /// Hermitian of scalar `+1` such that
    /// `conjugate_by_quarter_rotation(o, h, +1) = s·p`.
    pub fn residual(o: &PauliString, p: &PauliString) -> Result<(PauliString, Sign)> {
        o.check_dims(p)?;
        o.require_hermitian()?;
        p.require_hermitian()?;
        if o.commutes(p)? {
            return Err(Error::InvalidDecomposition(format!(
                "conjugator {o} commutes with {p}"
            )));
        }
        let q = o.multiply(p)?.times_phase(Phase::MINUS_I);
        let sign = q
            .sign()
            .expect("(-i)·o·p is Hermitian for anticommuting Hermitian o, p");
        Ok((q.unsigned(), sign))
    }
}

impl Neg for PauliString {
    type Output = PauliString;
    fn neg(self) -> PauliString {
        self.times_phase(Phase::MINUS_ONE)
    }
}

impl Neg for &PauliString {
    type Output = PauliString;
    fn neg(self) -> PauliString {
        self.times_phase(Phase::MINUS_ONE)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.scalar() {
            Phase::ONE => "",
            Phase::MINUS_ONE => "-",
            Phase::I => "i",
            _ => "-i",
        };
        f.write_str(prefix)?;
        for l in self.letters() {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    /// Parses `[+|-][i]<IXYZ...>`; qubit 0 is the leftmost letter.
    fn from_str(s: &str) -> Result<PauliString> {
        let s = s.trim();
        let (neg, rest) = if let Some(r) = s.strip_prefix('-') {
            (true, r)
        } else if let Some(r) = s.strip_prefix('\u{2212}') {
            (true, r)
        } else if let Some(r) = s.strip_prefix('+') {
            (false, r)
        } else {
            (false, s)
        };
        let (imag, rest) = match rest.strip_prefix('i') {
            Some(r) => (true, r),
            None => (false, rest),
        };
        if rest.is_empty() {
            return Err(Error::Parse(format!("empty Pauli string '{s}'")));
        }
        let letters = rest
            .chars()
            .map(Pauli::from_char)
            .collect::<Result<Vec<_>>>()?;
        let mut p = PauliString::from_letters(&letters);
        if neg {
            p = -p;
        }
        if imag {
            p = p.times_phase(Phase::I);
        }
        Ok(p)
    }
}
