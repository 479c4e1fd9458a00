//! Sector-structured Rindler-frame operators.
//!
//! Every operator produced by the dual-rail transform conserves the total
//! occupancy `n = n1 + n2` of the two observed modes, and within a sector it
//! only couples `|j, n-j>` to `|j+1, n-j-1>`. An operator is therefore a list
//! of Hermitian tridiagonal blocks, one per sector, which is all we store.

use std::sync::{Arc, OnceLock};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::rindler::Cutoff;
use crate::tridiag;

/// Slightly negative eigenvalues above `-POSITIVITY_TOL` are attributed to
/// truncation and rounding and clamped to zero.
pub const POSITIVITY_TOL: f64 = 1e-10;

/// Tolerance on `trace + trace_deficit == 1` for density states.
pub const TRACE_TOL: f64 = 1e-12;

/// A Hermitian tridiagonal block acting on the sector with total occupancy
/// `n`, in the basis `|j>_1 |n - j>_2`, `j = 0..=n`.
///
/// Only the support `offset..offset + diag.len()` is stored; rows and columns
/// outside it are zero. `offdiag[k]` is the element `<offset+k| B |offset+k+1>`;
/// the element below the diagonal is its conjugate.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorBlock {
    n: usize,
    offset: usize,
    diag: Vec<f64>,
    offdiag: Vec<Complex64>,
}

impl SectorBlock {
    /// A block given on its full basis (`diag.len() == n + 1`).
    pub fn new(n: usize, diag: Vec<f64>, offdiag: Vec<Complex64>) -> Result<Self> {
        if diag.len() != n + 1 {
            return Err(Error::Mismatch(format!(
                "sector {n} needs {} diagonal entries, got {}",
                n + 1,
                diag.len()
            )));
        }
        Self::with_support(n, 0, diag, offdiag)
    }

    /// A block whose nonzero entries are confined to basis indices
    /// `offset..offset + diag.len()`.
    pub fn with_support(
        n: usize,
        offset: usize,
        diag: Vec<f64>,
        offdiag: Vec<Complex64>,
    ) -> Result<Self> {
        if diag.is_empty() || offset + diag.len() > n + 1 {
            return Err(Error::Mismatch(format!(
                "support {offset}..{} does not fit sector {n}",
                offset + diag.len()
            )));
        }
        if offdiag.len() + 1 != diag.len() {
            return Err(Error::Mismatch(format!(
                "{} diagonal entries need {} couplings, got {}",
                diag.len(),
                diag.len() - 1,
                offdiag.len()
            )));
        }
        if diag.iter().any(|v| !v.is_finite()) || offdiag.iter().any(|v| !v.is_finite()) {
            return Err(Error::Mismatch(format!("non-finite entry in sector {n}")));
        }
        Ok(Self {
            n,
            offset,
            diag,
            offdiag,
        })
    }

    pub(crate) fn zero(n: usize) -> Self {
        Self {
            n,
            offset: 0,
            diag: vec![0.0],
            offdiag: Vec::new(),
        }
    }

    /// Total occupancy of the sector.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension of the sector, `n + 1`.
    pub fn dim(&self) -> usize {
        self.n + 1
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[Complex64] {
        &self.offdiag
    }

    fn support_end(&self) -> usize {
        self.offset + self.diag.len()
    }

    /// Matrix element `<i| B |j>` in the full sector basis.
    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        let zero = Complex64::new(0.0, 0.0);
        let inside = |k: usize| k >= self.offset && k < self.support_end();
        if !inside(i) || !inside(j) {
            return zero;
        }
        let (a, b) = (i - self.offset, j - self.offset);
        if a == b {
            Complex64::new(self.diag[a], 0.0)
        } else if b == a + 1 {
            self.offdiag[a]
        } else if a == b + 1 {
            self.offdiag[b].conj()
        } else {
            zero
        }
    }

    pub fn trace(&self) -> f64 {
        self.diag.iter().sum()
    }

    /// Sum of coupling magnitudes.
    pub fn coherence(&self) -> f64 {
        self.offdiag.iter().map(|v| v.norm()).sum()
    }

    /// `sum_k w_k B_k` over blocks of the same sector.
    pub fn combine(terms: &[(f64, &SectorBlock)]) -> Result<SectorBlock> {
        let first = terms
            .first()
            .ok_or_else(|| Error::Mismatch("empty combination".into()))?
            .1;
        let n = first.n;
        if terms.iter().any(|(_, b)| b.n != n) {
            return Err(Error::Mismatch("blocks belong to different sectors".into()));
        }
        let lo = terms.iter().map(|(_, b)| b.offset).min().unwrap_or(0);
        let hi = terms.iter().map(|(_, b)| b.support_end()).max().unwrap_or(1);
        let mut diag = vec![0.0; hi - lo];
        let mut offdiag = vec![Complex64::new(0.0, 0.0); hi - lo - 1];
        for &(w, b) in terms {
            let shift = b.offset - lo;
            for (k, v) in b.diag.iter().enumerate() {
                diag[shift + k] += w * v;
            }
            for (k, v) in b.offdiag.iter().enumerate() {
                offdiag[shift + k] += v * w;
            }
        }
        Ok(SectorBlock {
            n,
            offset: lo,
            diag,
            offdiag,
        })
    }

    /// Real symmetric tridiagonal matrix with the same spectrum.
    ///
    /// Conjugating by a diagonal unitary `diag(e^{i phi_j})` rotates every
    /// coupling onto the non-negative real axis without touching the
    /// diagonal.
    pub(crate) fn real_form(&self) -> (&[f64], Vec<f64>) {
        (&self.diag, self.offdiag.iter().map(|v| v.norm()).collect())
    }

    /// Whether `other` has the same diagonal and coupling magnitudes, hence
    /// the same spectrum.
    pub(crate) fn unitarily_equivalent(&self, other: &SectorBlock) -> bool {
        self.n == other.n
            && self.offset == other.offset
            && self.diag == other.diag
            && self
                .offdiag
                .iter()
                .zip(&other.offdiag)
                .all(|(a, b)| a.norm() == b.norm())
    }

    /// Pentadiagonal band of `B^2`: diagonal, first and second
    /// super-diagonals, on the stored support.
    pub(crate) fn squared_band(&self) -> (Vec<f64>, Vec<Complex64>, Vec<Complex64>) {
        let m = self.diag.len();
        let d = &self.diag;
        let u = &self.offdiag;
        let main = (0..m)
            .map(|j| {
                let above = if j + 1 < m { u[j].norm_sqr() } else { 0.0 };
                let below = if j > 0 { u[j - 1].norm_sqr() } else { 0.0 };
                d[j] * d[j] + above + below
            })
            .collect();
        let first = (0..m.saturating_sub(1))
            .map(|j| u[j] * (d[j] + d[j + 1]))
            .collect();
        let second = (0..m.saturating_sub(2)).map(|j| u[j] * u[j + 1]).collect();
        (main, first, second)
    }
}

/// A truncated Rindler-frame operator on the two observed modes.
///
/// Blocks are stored for sectors `n = 0..=n_max`. States built from a valid
/// logical qubit have unit trace up to `trace_deficit`, the probability mass
/// discarded by truncation. The operator is immutable; its spectrum is
/// computed on first use and cached.
#[derive(Debug, Clone)]
pub struct RindlerState {
    cutoff: Cutoff,
    blocks: Vec<SectorBlock>,
    trace_deficit: f64,
    spectrum: OnceLock<Arc<Vec<Vec<f64>>>>,
}

impl PartialEq for RindlerState {
    fn eq(&self, other: &Self) -> bool {
        self.cutoff == other.cutoff
            && self.trace_deficit == other.trace_deficit
            && self.blocks == other.blocks
    }
}

impl RindlerState {
    /// Assembles an operator from per-sector blocks. Block `k` must describe
    /// sector `k`, for `k = 0..=cutoff.n_max()`.
    pub fn from_blocks(cutoff: Cutoff, blocks: Vec<SectorBlock>, trace_deficit: f64) -> Result<Self> {
        if blocks.len() != cutoff.n_max() + 1 {
            return Err(Error::Mismatch(format!(
                "expected {} sector blocks, got {}",
                cutoff.n_max() + 1,
                blocks.len()
            )));
        }
        if let Some((k, b)) = blocks.iter().enumerate().find(|(k, b)| b.n() != *k) {
            return Err(Error::Mismatch(format!(
                "block {k} describes sector {}",
                b.n()
            )));
        }
        Ok(Self {
            cutoff,
            blocks,
            trace_deficit,
            spectrum: OnceLock::new(),
        })
    }

    pub fn cutoff(&self) -> &Cutoff {
        &self.cutoff
    }

    pub fn r(&self) -> f64 {
        self.cutoff.r().value()
    }

    pub fn n_max(&self) -> usize {
        self.cutoff.n_max()
    }

    pub fn blocks(&self) -> &[SectorBlock] {
        &self.blocks
    }

    pub fn trace_deficit(&self) -> f64 {
        self.trace_deficit
    }

    pub fn trace(&self) -> f64 {
        self.blocks.iter().map(SectorBlock::trace).sum()
    }

    /// Dimension of the truncated space, `sum_n (n + 1)`.
    pub fn dimension(&self) -> usize {
        self.blocks.iter().map(SectorBlock::dim).sum()
    }

    /// Matrix element between occupancy states `|n1, n2>` and `|m1, m2>`;
    /// zero across sectors or beyond `n_max`.
    pub fn element(&self, bra: (usize, usize), ket: (usize, usize)) -> Complex64 {
        let n = bra.0 + bra.1;
        if n != ket.0 + ket.1 || n > self.n_max() {
            return Complex64::new(0.0, 0.0);
        }
        self.blocks[n].entry(bra.0, ket.0)
    }

    /// Checks the density-state invariants: non-negative diagonal (up to
    /// [`POSITIVITY_TOL`]) and `trace + trace_deficit = 1`.
    pub fn check_density(&self) -> Result<()> {
        for b in &self.blocks {
            if let Some(v) = b.diag().iter().find(|v| **v < -POSITIVITY_TOL) {
                return Err(Error::NegativeEigenvalue {
                    value: *v,
                    sector: b.n(),
                });
            }
        }
        let total = self.trace() + self.trace_deficit;
        if (total - 1.0).abs() > TRACE_TOL {
            return Err(Error::Mismatch(format!(
                "trace {} plus deficit {} is not 1",
                self.trace(),
                self.trace_deficit
            )));
        }
        Ok(())
    }

    pub(crate) fn ensure_comparable(&self, other: &RindlerState) -> Result<()> {
        if self.cutoff != other.cutoff {
            return Err(Error::Mismatch(format!(
                "r = {} with n_max = {} vs r = {} with n_max = {}",
                self.r(),
                self.n_max(),
                other.r(),
                other.n_max()
            )));
        }
        Ok(())
    }

    /// `sum_k w_k S_k`. All operands must share `r` and the cutoff; the trace
    /// deficit combines linearly.
    pub fn linear_combination(terms: &[(f64, &RindlerState)]) -> Result<RindlerState> {
        let first = terms
            .first()
            .ok_or_else(|| Error::Mismatch("empty combination".into()))?
            .1;
        for (_, s) in terms {
            first.ensure_comparable(s)?;
        }
        let blocks = (0..first.blocks.len())
            .map(|n| {
                let parts: Vec<(f64, &SectorBlock)> =
                    terms.iter().map(|(w, s)| (*w, &s.blocks[n])).collect();
                SectorBlock::combine(&parts)
            })
            .collect::<Result<Vec<_>>>()?;
        let deficit = terms.iter().map(|(w, s)| w * s.trace_deficit).sum();
        RindlerState::from_blocks(first.cutoff, blocks, deficit)
    }

    /// Eigenvalues of every block on its stored support, ascending. Rows
    /// outside the support contribute exact zeros, which are not listed.
    pub fn block_spectra(&self) -> &[Vec<f64>] {
        self.shared_spectra()
    }

    fn shared_spectra(&self) -> &Arc<Vec<Vec<f64>>> {
        self.spectrum.get_or_init(|| {
            let real: Vec<(&[f64], Vec<f64>)> =
                self.blocks.iter().map(SectorBlock::real_form).collect();
            let problems: Vec<(&[f64], &[f64])> =
                real.iter().map(|(d, e)| (*d, e.as_slice())).collect();
            Arc::new(tridiag::batch_eigenvalues(&problems))
        })
    }

    /// Whether `other` has blockwise the same diagonal and coupling
    /// magnitudes, and hence the same spectrum.
    pub fn unitarily_equivalent(&self, other: &RindlerState) -> bool {
        self.cutoff == other.cutoff
            && self.blocks.len() == other.blocks.len()
            && self
                .blocks
                .iter()
                .zip(&other.blocks)
                .all(|(a, b)| a.unitarily_equivalent(b))
    }

    /// Reuses the spectrum of an equivalent state instead of diagonalizing
    /// again. Returns whether the spectrum was shared.
    pub fn share_spectrum_with(&self, other: &RindlerState) -> bool {
        if self.spectrum.get().is_some() || !self.unitarily_equivalent(other) {
            return false;
        }
        let spectrum = Arc::clone(other.shared_spectra());
        self.spectrum.set(spectrum).is_ok()
    }

    /// Total coupling magnitude, a proxy for how much logical coherence
    /// survives the transform.
    pub fn coherence(&self) -> f64 {
        self.blocks.iter().map(SectorBlock::coherence).sum()
    }

    /// Largest entry-wise difference in absolute value.
    pub fn max_abs_diff(&self, other: &RindlerState) -> Result<f64> {
        self.ensure_comparable(other)?;
        let mut worst = 0.0f64;
        for (a, b) in self.blocks.iter().zip(&other.blocks) {
            let lo = a.offset.min(b.offset);
            let hi = a.support_end().max(b.support_end());
            for i in lo..hi {
                worst = worst.max((a.entry(i, i) - b.entry(i, i)).norm());
                if i + 1 < hi {
                    worst = worst.max((a.entry(i, i + 1) - b.entry(i, i + 1)).norm());
                }
            }
        }
        Ok(worst)
    }
}
