//! Private quantum channel on the logical qubit: keyed Pauli conjugation,
//! two-bit (full) and one-bit (partial) encryption, and decryption.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qubit::{LogicalOperator, LogicalQubit};

/// A key selecting one of the four Paulis `{I, X, Y, Z}` (indices 1 to 4).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PauliKey {
    I = 1,
    X = 2,
    Y = 3,
    Z = 4,
}

impl PauliKey {
    pub const ALL: [PauliKey; 4] = [PauliKey::I, PauliKey::X, PauliKey::Y, PauliKey::Z];

    pub fn index(self) -> u8 {
        self as u8
    }

    pub fn matrix(self) -> [[Complex64; 2]; 2] {
        let o = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        match self {
            PauliKey::I => [[one, o], [o, one]],
            PauliKey::X => [[o, one], [one, o]],
            PauliKey::Y => [[o, -i], [i, o]],
            PauliKey::Z => [[one, o], [o, -one]],
        }
    }

    fn letter(self) -> char {
        match self {
            PauliKey::I => 'I',
            PauliKey::X => 'X',
            PauliKey::Y => 'Y',
            PauliKey::Z => 'Z',
        }
    }
}

impl TryFrom<u8> for PauliKey {
    type Error = Error;

    fn try_from(index: u8) -> Result<Self> {
        match index {
            1 => Ok(PauliKey::I),
            2 => Ok(PauliKey::X),
            3 => Ok(PauliKey::Y),
            4 => Ok(PauliKey::Z),
            _ => Err(Error::InvalidConfig(format!(
                "Pauli key index must be 1..=4, got {index}"
            ))),
        }
    }
}

impl TryFrom<char> for PauliKey {
    type Error = Error;

    fn try_from(c: char) -> Result<Self> {
        match c.to_ascii_uppercase() {
            'I' => Ok(PauliKey::I),
            'X' => Ok(PauliKey::X),
            'Y' => Ok(PauliKey::Y),
            'Z' => Ok(PauliKey::Z),
            _ => Err(Error::InvalidConfig(format!("unknown Pauli '{c}'"))),
        }
    }
}

/// Two distinct Paulis forming a one-bit key.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PartialPair(PauliKey, PauliKey);

impl PartialPair {
    pub fn new(a: PauliKey, b: PauliKey) -> Result<Self> {
        if a == b {
            return Err(Error::InvalidConfig(format!(
                "partial encryption needs two distinct Paulis, got {a:?} twice"
            )));
        }
        Ok(Self(a, b))
    }

    pub fn keys(&self) -> (PauliKey, PauliKey) {
        (self.0, self.1)
    }
}

impl Default for PartialPair {
    /// `{I, X}`
    fn default() -> Self {
        Self(PauliKey::I, PauliKey::X)
    }
}

impl fmt::Display for PartialPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.0.letter(), self.1.letter())
    }
}

impl FromStr for PartialPair {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.trim().chars().collect();
        if chars.len() != 2 {
            return Err(Error::InvalidConfig(format!(
                "Pauli pair must be two letters such as IX, got '{s}'"
            )));
        }
        PartialPair::new(chars[0].try_into()?, chars[1].try_into()?)
    }
}

/// How the logical qubit is encrypted before it enters the channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EncryptionScheme {
    None,
    Partial(PartialPair),
    #[default]
    Full,
}

impl EncryptionScheme {
    pub fn apply(&self, xi: &LogicalQubit) -> LogicalQubit {
        match self {
            EncryptionScheme::None => *xi,
            EncryptionScheme::Partial(pair) => encrypt_partial(xi, *pair),
            EncryptionScheme::Full => encrypt_full(xi),
        }
    }
}

fn conjugate(op: &LogicalOperator, key: PauliKey) -> LogicalOperator {
    let s = key.matrix();
    let m = op.matrix();
    // s m s^dagger
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..2 {
                for l in 0..2 {
                    acc += s[i][k] * m[k][l] * s[j][l].conj();
                }
            }
            *cell = acc;
        }
    }
    LogicalOperator::new(out[0][0].re, out[0][1], out[1][1].re)
}

/// `sigma_key Xi sigma_key^dagger`. An involution.
pub fn apply_key(xi: &LogicalQubit, key: PauliKey) -> LogicalQubit {
    LogicalQubit::from_channel_output(conjugate(xi.operator(), key))
}

/// Undoes [`apply_key`]; Paulis are self-inverse up to a phase that the
/// conjugation cancels.
pub fn decrypt(xi: &LogicalQubit, key: PauliKey) -> LogicalQubit {
    apply_key(xi, key)
}

/// Two-bit encryption: the uniform average over all four Paulis, which maps
/// every qubit to `I/2`.
pub fn encrypt_full(xi: &LogicalQubit) -> LogicalQubit {
    let sum = PauliKey::ALL
        .iter()
        .map(|&k| conjugate(xi.operator(), k))
        .fold(LogicalOperator::new(0.0, Complex64::new(0.0, 0.0), 0.0), |acc, t| acc.add(&t));
    LogicalQubit::from_channel_output(sum.scale(0.25))
}

/// One-bit encryption: `(s_a Xi s_a^dagger + s_b Xi s_b^dagger) / 2`.
///
/// For the default pair `{I, X}` the result is `[[1, f], [f, 1]] / 2` with
/// `f = Xi_12 + Xi_21`.
pub fn encrypt_partial(xi: &LogicalQubit, pair: PartialPair) -> LogicalQubit {
    let (a, b) = pair.keys();
    let sum = conjugate(xi.operator(), a).add(&conjugate(xi.operator(), b));
    LogicalQubit::from_channel_output(sum.scale(0.5))
}
