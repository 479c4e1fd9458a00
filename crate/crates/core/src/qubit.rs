//! Dual-rail logical qubits.
//!
//! The logical basis is `|O> = |0>_1 |1>_2` (index 0) and `|I> = |1>_1 |0>_2`
//! (index 1): one Minkowski particle shared between two spatial modes.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance for the trace and positivity checks on logical density matrices.
pub const LOGICAL_TOL: f64 = 1e-12;

/// A Hermitian 2x2 operator on the dual-rail logical space.
///
/// Only `m12 = <O|X|I>` is stored; `m21` is its conjugate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogicalOperator {
    pub m11: f64,
    pub m12: Complex64,
    pub m22: f64,
}

impl LogicalOperator {
    pub fn new(m11: f64, m12: Complex64, m22: f64) -> Self {
        Self { m11, m12, m22 }
    }

    /// Builds the operator from a full complex matrix, rejecting non-Hermitian
    /// input.
    pub fn from_matrix(m: [[Complex64; 2]; 2]) -> Result<Self> {
        let herm = m[0][0].im.abs() <= LOGICAL_TOL
            && m[1][1].im.abs() <= LOGICAL_TOL
            && (m[1][0] - m[0][1].conj()).norm() <= LOGICAL_TOL;
        if !herm {
            return Err(Error::InvalidQubit(format!("matrix {m:?} is not Hermitian")));
        }
        Ok(Self::new(m[0][0].re, m[0][1], m[1][1].re))
    }

    pub fn m21(&self) -> Complex64 {
        self.m12.conj()
    }

    pub fn matrix(&self) -> [[Complex64; 2]; 2] {
        [
            [Complex64::new(self.m11, 0.0), self.m12],
            [self.m21(), Complex64::new(self.m22, 0.0)],
        ]
    }

    pub fn trace(&self) -> f64 {
        self.m11 + self.m22
    }

    pub fn scale(&self, k: f64) -> Self {
        Self::new(self.m11 * k, self.m12 * k, self.m22 * k)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            self.m11 + other.m11,
            self.m12 + other.m12,
            self.m22 + other.m22,
        )
    }
}

/// A density matrix `Xi` on the dual-rail logical space: Hermitian, unit
/// trace, positive semidefinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogicalQubit(LogicalOperator);

impl LogicalQubit {
    pub fn new(m11: f64, m12: Complex64, m22: f64) -> Result<Self> {
        Self::from_operator(LogicalOperator::new(m11, m12, m22))
    }

    pub fn from_operator(op: LogicalOperator) -> Result<Self> {
        let values = [op.m11, op.m22, op.m12.re, op.m12.im];
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidQubit(format!("non-finite entries in {op:?}")));
        }
        if (op.trace() - 1.0).abs() > LOGICAL_TOL {
            return Err(Error::InvalidQubit(format!(
                "trace is {} rather than 1",
                op.trace()
            )));
        }
        let det = op.m11 * op.m22 - op.m12.norm_sqr();
        if op.m11 < -LOGICAL_TOL || op.m22 < -LOGICAL_TOL || det < -LOGICAL_TOL {
            return Err(Error::InvalidQubit(format!(
                "not positive semidefinite (diagonal {}, {}; determinant {det})",
                op.m11, op.m22
            )));
        }
        Ok(Self(op))
    }

    pub fn from_matrix(m: [[Complex64; 2]; 2]) -> Result<Self> {
        Self::from_operator(LogicalOperator::from_matrix(m)?)
    }

    /// `(I + x X + y Y + z Z) / 2`; requires a Bloch vector of length at most 1.
    pub fn from_bloch(x: f64, y: f64, z: f64) -> Result<Self> {
        let len2 = x * x + y * y + z * z;
        if len2 > 1.0 + LOGICAL_TOL {
            return Err(Error::InvalidQubit(format!(
                "Bloch vector ({x}, {y}, {z}) lies outside the unit ball"
            )));
        }
        Self::new(
            0.5 * (1.0 + z),
            Complex64::new(0.5 * x, -0.5 * y),
            0.5 * (1.0 - z),
        )
    }

    /// Wraps an operator produced by a trace- and positivity-preserving
    /// channel.
    pub(crate) fn from_channel_output(op: LogicalOperator) -> Self {
        Self(op)
    }

    /// `|O><O|`
    pub fn zero() -> Self {
        Self(LogicalOperator::new(1.0, Complex64::new(0.0, 0.0), 0.0))
    }

    /// `|I><I|`
    pub fn one() -> Self {
        Self(LogicalOperator::new(0.0, Complex64::new(0.0, 0.0), 1.0))
    }

    /// `|+><+|` with `|+> = (|O> + |I>)/sqrt 2`
    pub fn plus() -> Self {
        Self(LogicalOperator::new(0.5, Complex64::new(0.5, 0.0), 0.5))
    }

    /// `|-><-|` with `|-> = (|O> - |I>)/sqrt 2`
    pub fn minus() -> Self {
        Self(LogicalOperator::new(0.5, Complex64::new(-0.5, 0.0), 0.5))
    }

    pub fn maximally_mixed() -> Self {
        Self(LogicalOperator::new(0.5, Complex64::new(0.0, 0.0), 0.5))
    }

    pub fn operator(&self) -> &LogicalOperator {
        &self.0
    }

    pub fn matrix(&self) -> [[Complex64; 2]; 2] {
        self.0.matrix()
    }

    pub fn m11(&self) -> f64 {
        self.0.m11
    }

    pub fn m12(&self) -> Complex64 {
        self.0.m12
    }

    pub fn m21(&self) -> Complex64 {
        self.0.m21()
    }

    pub fn m22(&self) -> f64 {
        self.0.m22
    }

    /// Bloch vector `(x, y, z)`.
    pub fn bloch(&self) -> [f64; 3] {
        [2.0 * self.0.m12.re, -2.0 * self.0.m12.im, self.0.m11 - self.0.m22]
    }

    /// Largest absolute entry difference between two qubits.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let a = self.matrix();
        let b = other.matrix();
        let mut worst = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((a[i][j] - b[i][j]).norm());
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_are_valid() {
        for q in [
            LogicalQubit::zero(),
            LogicalQubit::one(),
            LogicalQubit::plus(),
            LogicalQubit::minus(),
            LogicalQubit::maximally_mixed(),
        ] {
            LogicalQubit::from_operator(*q.operator()).unwrap();
        }
    }

    #[test]
    fn rejects_bad_trace_and_negativity() {
        assert!(LogicalQubit::new(0.7, Complex64::new(0.0, 0.0), 0.7).is_err());
        assert!(LogicalQubit::new(1.2, Complex64::new(0.0, 0.0), -0.2).is_err());
        assert!(LogicalQubit::new(0.5, Complex64::new(0.6, 0.0), 0.5).is_err());
        assert!(LogicalQubit::new(f64::NAN, Complex64::new(0.0, 0.0), 0.5).is_err());
    }

    #[test]
    fn rejects_non_hermitian_matrix() {
        let m = [
            [Complex64::new(0.5, 0.0), Complex64::new(0.1, 0.2)],
            [Complex64::new(0.1, 0.2), Complex64::new(0.5, 0.0)],
        ];
        assert!(LogicalQubit::from_matrix(m).is_err());
    }

    #[test]
    fn bloch_round_trip() {
        let q = LogicalQubit::from_bloch(0.3, -0.4, 0.5).unwrap();
        let b = q.bloch();
        assert!((b[0] - 0.3).abs() < 1e-15);
        assert!((b[1] + 0.4).abs() < 1e-15);
        assert!((b[2] - 0.5).abs() < 1e-15);
        assert_eq!(LogicalQubit::from_bloch(0.0, 0.0, 1.0).unwrap(), LogicalQubit::zero());
        assert!(LogicalQubit::from_bloch(1.0, 1.0, 0.0).is_err());
    }
}
