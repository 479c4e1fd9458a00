//! Spectral quantities of sector-structured operators: von Neumann entropy
//! (in bits), trace distance and trace moments.

use crate::error::{Error, Result};
use crate::state::{RindlerState, SectorBlock, POSITIVITY_TOL};
use crate::tridiag;

/// Eigenvalues of a block, ascending, `n + 1` of them (rows outside the
/// stored support contribute zeros).
pub fn eig_block(block: &SectorBlock) -> Vec<f64> {
    let (d, e) = block.real_form();
    let mut values = tridiag::symmetric_tridiagonal_eigenvalues(d, &e);
    values.resize(block.dim(), 0.0);
    values.sort_by(|a, b| a.total_cmp(b));
    values
}

fn xlog2x(v: f64) -> f64 {
    if v <= 0.0 {
        0.0
    } else {
        v * v.log2()
    }
}

/// `-sum lambda log2 lambda` over the state's spectrum, with `0 log 0 = 0`.
///
/// The state is not renormalized: the deficit it reports is the caller's
/// error bar. Eigenvalues in `[-POSITIVITY_TOL, 0)` are clamped to zero;
/// anything more negative is an error.
pub fn von_neumann_entropy(state: &RindlerState) -> Result<f64> {
    let mut acc = 0.0;
    for (block, values) in state.blocks().iter().zip(state.block_spectra()) {
        for &v in values {
            if v < -POSITIVITY_TOL {
                return Err(Error::NegativeEigenvalue {
                    value: v,
                    sector: block.n(),
                });
            }
            acc -= xlog2x(v);
        }
    }
    Ok(acc)
}

/// `sum |lambda|` of `sum_k w_k S_k`, evaluated block by block.
pub fn trace_norm_of_combination(terms: &[(f64, &RindlerState)]) -> Result<f64> {
    let first = terms
        .first()
        .ok_or_else(|| Error::Mismatch("empty combination".into()))?
        .1;
    for (_, s) in terms {
        first.ensure_comparable(s)?;
    }
    let blocks = (0..first.blocks().len())
        .map(|n| {
            let parts: Vec<(f64, &SectorBlock)> =
                terms.iter().map(|(w, s)| (*w, &s.blocks()[n])).collect();
            SectorBlock::combine(&parts)
        })
        .collect::<Result<Vec<_>>>()?;
    let real: Vec<(&[f64], Vec<f64>)> = blocks.iter().map(SectorBlock::real_form).collect();
    let problems: Vec<(&[f64], &[f64])> = real.iter().map(|(d, e)| (*d, e.as_slice())).collect();
    Ok(tridiag::batch_eigenvalues(&problems)
        .iter()
        .flatten()
        .map(|v| v.abs())
        .sum())
}

/// `||a - b||_1 / 2`. Both states must share `r` and the cutoff.
pub fn trace_distance(a: &RindlerState, b: &RindlerState) -> Result<f64> {
    Ok(0.5 * trace_norm_of_combination(&[(1.0, a), (-1.0, b)])?)
}

/// `sum lambda^k` over the spectrum. `k = 0` counts the dimension of the
/// truncated space; `k = 1` is the trace.
///
/// `k = 2` and `k = 4` are Frobenius norms of `B` and `B^2` and need no
/// eigensolve; other orders use the cached spectrum.
pub fn trace_moment(state: &RindlerState, k: u32) -> f64 {
    match k {
        0 => state.dimension() as f64,
        1 => state.trace(),
        2 => state.blocks().iter().map(frobenius_sq).sum(),
        4 => state.blocks().iter().map(squared_frobenius_sq).sum(),
        _ => state
            .block_spectra()
            .iter()
            .flatten()
            .map(|v| v.powi(k as i32))
            .sum(),
    }
}

fn frobenius_sq(b: &SectorBlock) -> f64 {
    let d: f64 = b.diag().iter().map(|v| v * v).sum();
    let u: f64 = b.offdiag().iter().map(|v| v.norm_sqr()).sum();
    d + 2.0 * u
}

fn squared_frobenius_sq(b: &SectorBlock) -> f64 {
    let (main, first, second) = b.squared_band();
    let d: f64 = main.iter().map(|v| v * v).sum();
    let u: f64 = first.iter().chain(&second).map(|v| v.norm_sqr()).sum();
    d + 2.0 * u
}
