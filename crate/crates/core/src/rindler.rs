//! Minkowski-to-Rindler transformation of dual-rail qubits.
//!
//! Each spatial mode is reduced to its single equivalent Rindler mode. With
//! `x = tanh^2 r`, the vacuum of a mode seen from one wedge is thermal with
//! weights `therm_q = x^q / cosh^2 r`, and the one-particle state carries
//! weight `a_q = (1 + q) x^q / cosh^4 r` on occupancy `q + 1`. Coherence
//! between vacuum and one particle survives as the shift
//! `S = sum_q A_q |q><q+1|` with `A_q = sqrt(1 + q) x^q / cosh^3 r`.
//!
//! A logical state `Xi` becomes
//!
//! ```text
//! T(Xi) = Xi_11 D_therm (x) D_one + Xi_22 D_one (x) D_therm
//!       + Xi_12 S (x) S^dagger + Xi_21 S^dagger (x) S
//! ```
//!
//! with `D_one = sum_q a_q |q+1><q+1|`. It conserves total occupancy and is
//! tridiagonal in every sector, so it is assembled directly as sector blocks.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qubit::{LogicalOperator, LogicalQubit};
use crate::state::{RindlerState, SectorBlock};

/// Refuse cutoffs beyond this many terms per mode.
pub const MAX_TERMS: usize = 50_000;

/// The acceleration parameter `r >= 0`, with `tanh r = exp(-pi omega / a)`.
/// `r = 0` is the inertial frame.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct AccelerationParam(f64);

impl AccelerationParam {
    pub fn new(r: f64) -> Result<Self> {
        if !r.is_finite() || r < 0.0 {
            return Err(Error::InvalidR(r));
        }
        Ok(Self(r))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `x = tanh^2 r`
    pub fn tanh_sq(self) -> f64 {
        let t = self.0.tanh();
        t * t
    }

    /// `1 - x = 1 / cosh^2 r`, computed without cancellation.
    pub fn sech_sq(self) -> f64 {
        let s = 1.0 / self.0.cosh();
        s * s
    }
}

/// Converts a proper acceleration `a` and mode frequency `omega` (natural
/// units, `c = 1`) into `r = artanh(exp(-pi omega / a))`.
pub fn accel_to_r(a: f64, omega: f64) -> Result<AccelerationParam> {
    if !(a > 0.0 && omega > 0.0 && a.is_finite() && omega.is_finite()) {
        return Err(Error::InvalidAcceleration { a, omega });
    }
    let u = std::f64::consts::PI * omega / a;
    let t = (-u).exp();
    // artanh t = ln((1 + t) / (1 - t)) / 2, with 1 - t = -expm1(-u)
    let r = 0.5 * ((1.0 + t) / -(-u).exp_m1()).ln();
    AccelerationParam::new(r)
}

/// Per-occupancy weights of the traced single-mode states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RindlerCoefficients {
    /// `tanh^{2q} r / cosh^2 r`, thermal (vacuum) weight.
    pub therm: f64,
    /// `a_q = (1 + q) tanh^{2q} r / cosh^4 r`, one-particle weight.
    pub one: f64,
    /// `A_q = sqrt(1 + q) tanh^{2q} r / cosh^3 r`, vacuum/one-particle coherence.
    pub cross: f64,
}

pub fn rindler_coefficients(q: usize, r: AccelerationParam) -> RindlerCoefficients {
    let xq = r.tanh_sq().powi(q as i32);
    let sech = 1.0 / r.value().cosh();
    let sech2 = sech * sech;
    let n = (1 + q) as f64;
    RindlerCoefficients {
        therm: xq * sech2,
        one: n * xq * sech2 * sech2,
        cross: n.sqrt() * xq * sech2 * sech,
    }
}

/// `sum_{g >= terms} therm_g = x^terms`
pub fn thermal_tail(r: AccelerationParam, terms: usize) -> f64 {
    r.tanh_sq().powi(terms as i32)
}

/// `sum_{q >= terms} a_q = x^terms (1 + terms (1 - x))`
pub fn one_particle_tail(r: AccelerationParam, terms: usize) -> f64 {
    r.tanh_sq().powi(terms as i32) * (1.0 + terms as f64 * r.sech_sq())
}

/// `sum_q A_q^2 = 1 / (cosh^6 r (1 - tanh^4 r)^2)`, evaluated as
/// `sech^2 r / (1 + x)^2`.
pub fn cross_square_sum(r: AccelerationParam) -> f64 {
    let x = r.tanh_sq();
    r.sech_sq() / ((1.0 + x) * (1.0 + x))
}

/// Truncation of both modes to the first `terms` coefficients.
///
/// Keeping `therm_g` for `g < terms` and `a_q`, `A_q` for `q < terms` is the
/// same as projecting the unobserved wedge onto occupancies below `terms`
/// before tracing it out, so truncated states stay positive. The largest
/// occupied sector is `n_max = 2 terms - 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cutoff {
    r: AccelerationParam,
    terms: usize,
    predicted_deficit: f64,
}

impl Cutoff {
    /// A cutoff with an explicit number of terms per mode.
    pub fn with_terms(r: AccelerationParam, terms: usize) -> Result<Self> {
        if terms == 0 || terms > MAX_TERMS {
            return Err(Error::InvalidConfig(format!(
                "terms per mode must be in 1..={MAX_TERMS}, got {terms}"
            )));
        }
        let th = thermal_tail(r, terms);
        let one = one_particle_tail(r, terms);
        Ok(Self {
            r,
            terms,
            predicted_deficit: th + one - th * one,
        })
    }

    pub fn r(&self) -> AccelerationParam {
        self.r
    }

    pub fn terms(&self) -> usize {
        self.terms
    }

    pub fn n_max(&self) -> usize {
        2 * self.terms - 1
    }

    /// Mass lost from any unit-trace state, `1 - (1 - x^N)(1 - x^N (1 + N(1-x)))`.
    pub fn predicted_deficit(&self) -> f64 {
        self.predicted_deficit
    }
}

/// Smallest cutoff whose thermal and one-particle tails are each at most
/// `epsilon / 2`, so the trace deficit stays below `epsilon`.
pub fn choose_cutoff(r: AccelerationParam, epsilon: f64) -> Result<Cutoff> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidEpsilon(epsilon));
    }
    let half = 0.5 * epsilon;
    let fits = |n: usize| thermal_tail(r, n) <= half && one_particle_tail(r, n) <= half;
    if !fits(MAX_TERMS) {
        return Err(Error::CutoffInfeasible {
            r: r.value(),
            epsilon,
            limit: MAX_TERMS,
        });
    }
    // both tails decrease monotonically in n
    let (mut lo, mut hi) = (1usize, MAX_TERMS);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if fits(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Cutoff::with_terms(r, lo)
}

/// Coefficient arrays for `q < terms`.
#[derive(Debug, Clone)]
struct CoefficientTable {
    therm: Vec<f64>,
    one: Vec<f64>,
    cross: Vec<f64>,
}

impl CoefficientTable {
    fn new(cutoff: &Cutoff) -> Self {
        let mut therm = Vec::with_capacity(cutoff.terms);
        let mut one = Vec::with_capacity(cutoff.terms);
        let mut cross = Vec::with_capacity(cutoff.terms);
        for q in 0..cutoff.terms {
            let c = rindler_coefficients(q, cutoff.r);
            therm.push(c.therm);
            one.push(c.one);
            cross.push(c.cross);
        }
        Self { therm, one, cross }
    }
}

/// Transforms a logical density matrix into the truncated Rindler frame.
pub fn transform_dual_rail(xi: &LogicalQubit, cutoff: &Cutoff) -> RindlerState {
    transform_operator(xi.operator(), cutoff)
}

/// The linear map behind [`transform_dual_rail`], defined for any Hermitian
/// logical operator. The recorded trace deficit scales with the trace of `op`.
pub fn transform_operator(op: &LogicalOperator, cutoff: &Cutoff) -> RindlerState {
    let coeff = CoefficientTable::new(cutoff);
    let terms = cutoff.terms;
    let blocks = (0..=cutoff.n_max())
        .map(|n| sector_block(op, &coeff, terms, n))
        .collect();
    RindlerState::from_blocks(*cutoff, blocks, op.trace() * cutoff.predicted_deficit)
        .expect("one block per sector by construction")
}

fn sector_block(op: &LogicalOperator, c: &CoefficientTable, terms: usize, n: usize) -> SectorBlock {
    if n == 0 {
        return SectorBlock::zero(0);
    }
    // basis |j, n-j>; entries vanish outside j in [n - terms, terms]
    let lo = n.saturating_sub(terms);
    let hi = n.min(terms);
    let diag = (lo..=hi)
        .map(|j| {
            let mut v = 0.0;
            // |O><O|: mode 1 thermal at j, mode 2 one-particle at n - j = q + 1
            if j < n && j < terms && n - 1 - j < terms {
                v += op.m11 * c.therm[j] * c.one[n - 1 - j];
            }
            // |I><I|: mode 1 one-particle at j = q + 1, mode 2 thermal at n - j
            if j >= 1 && j - 1 < terms && n - j < terms {
                v += op.m22 * c.one[j - 1] * c.therm[n - j];
            }
            v
        })
        .collect();
    // <j| T |j+1> = Xi_12 A_j A_{n-1-j}
    let offdiag = (lo..hi)
        .map(|j| op.m12 * (c.cross[j] * c.cross[n - 1 - j]))
        .collect::<Vec<Complex64>>();
    SectorBlock::with_support(n, lo, diag, offdiag).expect("support lies inside the sector")
}
