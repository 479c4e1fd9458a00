//! What an accelerated eavesdropper can learn: Holevo quantity, binary
//! Helstrom guessing probability, trace-moment gaps between partially and
//! fully encrypted ensembles, and the chain of trace inequalities bounding
//! those gaps.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rindler::Cutoff;
use crate::spectral::{trace_moment, trace_norm_of_combination, von_neumann_entropy};
use crate::state::{RindlerState, SectorBlock};

/// Tolerance on probability normalization.
pub const PROBABILITY_TOL: f64 = 1e-12;

/// Negative Holevo values down to this are rounding and are clamped to 0.
pub const HOLEVO_TOL: f64 = 1e-9;

/// Relative tolerance when checking the inequality chain and the
/// element-wise dominance of the largest member.
pub const CHAIN_TOL: f64 = 1e-12;

/// Weighted Rindler-frame states sharing one cutoff.
///
/// States are reference counted so that identical members (e.g. every
/// fully encrypted member, which equals the average state) are stored once.
#[derive(Debug, Clone)]
pub struct RindlerEnsemble {
    members: Vec<(f64, Arc<RindlerState>)>,
}

impl RindlerEnsemble {
    pub fn new(members: Vec<(f64, Arc<RindlerState>)>) -> Result<Self> {
        let (_, first) = members
            .first()
            .ok_or_else(|| Error::InvalidEnsemble("no members".into()))?;
        if let Some((p, _)) = members.iter().find(|(p, _)| !(*p >= 0.0) || !p.is_finite()) {
            return Err(Error::InvalidEnsemble(format!("probability {p} is not in [0, 1]")));
        }
        let total: f64 = members.iter().map(|(p, _)| p).sum();
        if (total - 1.0).abs() > PROBABILITY_TOL {
            return Err(Error::InvalidEnsemble(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        for (_, s) in &members {
            first.ensure_comparable(s)?;
        }
        Ok(Self { members })
    }

    pub fn members(&self) -> &[(f64, Arc<RindlerState>)] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn cutoff(&self) -> &Cutoff {
        self.members[0].1.cutoff()
    }

    /// `sum_i p_i rho_i`
    pub fn average(&self) -> Result<RindlerState> {
        let terms: Vec<(f64, &RindlerState)> =
            self.members.iter().map(|(p, s)| (*p, s.as_ref())).collect();
        RindlerState::linear_combination(&terms)
    }

    /// Like [`average`](Self::average), but when every member is the same
    /// state that state is returned without building a new one.
    pub fn average_shared(&self) -> Result<Arc<RindlerState>> {
        let first = &self.members[0].1;
        if self.members.iter().all(|(_, s)| Arc::ptr_eq(s, first)) {
            return Ok(Arc::clone(first));
        }
        self.average().map(Arc::new)
    }
}

/// Shares diagonalizations between equivalent members: the first member of
/// each equivalence class is diagonalized, the rest borrow its spectrum.
fn share_spectra(states: &[&RindlerState]) {
    for (i, s) in states.iter().enumerate() {
        for earlier in &states[..i] {
            if std::ptr::eq(*s, *earlier) || s.share_spectrum_with(earlier) {
                break;
            }
        }
    }
}

/// `S(sum p_i rho_i) - sum p_i S(rho_i)` in bits.
pub fn holevo(ens: &RindlerEnsemble) -> Result<f64> {
    holevo_with_average(ens, &ens.average()?)
}

/// [`holevo`] with a precomputed average state, which must equal
/// `ens.average()`.
pub fn holevo_with_average(ens: &RindlerEnsemble, avg: &RindlerState) -> Result<f64> {
    ens.members[0].1.ensure_comparable(avg)?;
    let mut states: Vec<&RindlerState> = ens.members.iter().map(|(_, s)| s.as_ref()).collect();
    states.push(avg);
    share_spectra(&states);
    let mut member_entropy = 0.0;
    for (p, s) in &ens.members {
        if *p > 0.0 {
            member_entropy += p * von_neumann_entropy(s)?;
        }
    }
    let chi = von_neumann_entropy(avg)? - member_entropy;
    if chi < -HOLEVO_TOL {
        return Err(Error::NegativeInformation(chi));
    }
    Ok(chi.max(0.0))
}

/// Optimal probability of telling `s0` from `s1` with priors `p0`, `p1`:
/// `(1 + ||p0 s0 - p1 s1||_1) / 2`.
pub fn helstrom_guess(p0: f64, s0: &RindlerState, p1: f64, s1: &RindlerState) -> Result<f64> {
    if !(p0 >= 0.0 && p1 >= 0.0) || (p0 + p1 - 1.0).abs() > PROBABILITY_TOL {
        return Err(Error::InvalidEnsemble(format!(
            "priors {p0} and {p1} do not form a distribution"
        )));
    }
    let norm = trace_norm_of_combination(&[(p0, s0), (-p1, s1)])?;
    Ok(0.5 * (1.0 + norm))
}

/// `sum_i p_i Tr[rho_i^k] - Tr[avg^k]`.
///
/// Intended for partially encrypted members against the fully encrypted
/// average, which share a diagonal; the gap then measures the surviving
/// coherence alone.
pub fn moment_gap(ens: &RindlerEnsemble, avg_full: &RindlerState, k: u32) -> Result<f64> {
    ens.members[0].1.ensure_comparable(avg_full)?;
    let member: f64 = ens
        .members
        .iter()
        .map(|(p, s)| p * trace_moment(s, k))
        .sum();
    Ok(member - trace_moment(avg_full, k))
}

/// The four ordered quantities of the moment-gap bound for one even `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainReport {
    pub k: u32,
    /// `sum p_i Tr[r_i^k] - Tr[r^k]`, `sum Tr[r_i^k] - Tr[r^k]`,
    /// `Tr[(sum r_i + r)^k]`, `(n+1)^k Tr[r_max^k]`.
    pub quantities: [f64; 4],
    /// Whether `quantities[j] <= quantities[j + 1]` (up to [`CHAIN_TOL`]).
    pub holds: [bool; 3],
    /// `(quantities[j + 1] - quantities[j]) / |quantities[j + 1]|`; negative
    /// where an inequality fails.
    pub slack: [f64; 3],
    /// `m Tr[(r_max^2)^(k/2)]` with `m = (n+1)^2`.
    pub limit_bound: f64,
    /// Index of the member chosen as `r_max`.
    pub max_member: usize,
    /// Whether `r_max^2` dominates every other member's square entry-wise in
    /// absolute value.
    pub dominance_ok: bool,
}

impl ChainReport {
    pub fn all_hold(&self) -> bool {
        self.holds.iter().all(|h| *h)
    }

    pub fn min_slack(&self) -> f64 {
        self.slack.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

fn dominates(max: &SectorBlock, other: &SectorBlock) -> bool {
    let (m0, m1, m2) = max.squared_band();
    let (o0, o1, o2) = other.squared_band();
    // Equal diagonals keep the supports equal; a mismatch is a failure.
    if m0.len() != o0.len() {
        return false;
    }
    let ok = |a: f64, b: f64| b <= a + CHAIN_TOL * a.max(b);
    m0.iter().zip(&o0).all(|(a, b)| ok(a.abs(), b.abs()))
        && m1.iter().zip(&o1).all(|(a, b)| ok(a.norm(), b.norm()))
        && m2.iter().zip(&o2).all(|(a, b)| ok(a.norm(), b.norm()))
}

/// Evaluates the inequality chain for partially encrypted members `ens`
/// against the fully encrypted average `avg`. `k` must be even.
///
/// `r_max` is the member with the largest total coupling, i.e. the largest
/// `|f_i|` when members share a diagonal; its dominance over the others is
/// checked, not assumed.
pub fn inequality_chain(ens: &RindlerEnsemble, avg: &RindlerState, k: u32) -> Result<ChainReport> {
    if k % 2 == 1 || k == 0 {
        return Err(Error::OddMoment(k));
    }
    ens.members[0].1.ensure_comparable(avg)?;
    let n = ens.len() as f64;
    let avg_moment = trace_moment(avg, k);
    let moments: Vec<f64> = ens.members.iter().map(|(_, s)| trace_moment(s, k)).collect();

    let q1 = ens.members.iter().zip(&moments).map(|((p, _), m)| p * m).sum::<f64>() - avg_moment;
    let q2 = moments.iter().sum::<f64>() - avg_moment;
    let mut terms: Vec<(f64, &RindlerState)> =
        ens.members.iter().map(|(_, s)| (1.0, s.as_ref())).collect();
    terms.push((1.0, avg));
    let q3 = trace_moment(&RindlerState::linear_combination(&terms)?, k);

    let max_member = ens
        .members
        .iter()
        .enumerate()
        .map(|(i, (_, s))| (i, s.coherence()))
        .fold((0, f64::NEG_INFINITY), |best, cur| if cur.1 > best.1 { cur } else { best })
        .0;
    let max_moment = moments[max_member];
    let q4 = (n + 1.0).powi(k as i32) * max_moment;
    let limit_bound = (n + 1.0).powi(2) * max_moment;

    let max_state = &ens.members[max_member].1;
    let dominance_ok = ens.members.iter().all(|(_, s)| {
        Arc::ptr_eq(s, max_state)
            || max_state
                .blocks()
                .iter()
                .zip(s.blocks())
                .all(|(a, b)| dominates(a, b))
    });

    let quantities = [q1, q2, q3, q4];
    let mut holds = [false; 3];
    let mut slack = [0.0; 3];
    for j in 0..3 {
        let (lo, hi) = (quantities[j], quantities[j + 1]);
        let scale = lo.abs().max(hi.abs());
        holds[j] = lo <= hi + CHAIN_TOL * scale;
        slack[j] = if hi == lo { 0.0 } else { (hi - lo) / hi.abs().max(f64::MIN_POSITIVE) };
    }
    Ok(ChainReport {
        k,
        quantities,
        holds,
        slack,
        limit_bound,
        max_member,
        dominance_ok,
    })
}
