//! Dense two-wedge construction of the transformed state, independent of
//! the sector-block code.

#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use rindler_pqc::{LogicalQubit, RindlerState};

/// Amplitudes `psi[l][r]` of a single Minkowski mode over (left, right)
/// Rindler occupancies, keeping left occupancy below `terms`.
pub fn single_mode(r: f64, terms: usize, excited: bool) -> DMatrix<f64> {
    let t = r.tanh();
    let c = r.cosh();
    let mut m = DMatrix::zeros(terms, terms + 1);
    for q in 0..terms {
        if excited {
            // |1_M> = sum sqrt(1+q) t^q / c^2 |q>_L |q+1>_R
            m[(q, q + 1)] = ((1 + q) as f64).sqrt() * t.powi(q as i32) / (c * c);
        } else {
            m[(q, q)] = t.powi(q as i32) / c;
        }
    }
    m
}

/// Dense `Tr_L` of `sum_ab Xi_ab |psi_a><psi_b|` over right-wedge states
/// indexed `r1 * (terms + 1) + r2`.
pub fn brute_force(xi: &LogicalQubit, r: f64, terms: usize) -> DMatrix<Complex64> {
    let vac = single_mode(r, terms, false);
    let one = single_mode(r, terms, true);
    // |O> = |0>_1 |1>_2, |I> = |1>_1 |0>_2; rows (l1, l2), columns (r1, r2)
    let psi = [vac.kronecker(&one), one.kronecker(&vac)];
    let m = xi.matrix();
    let dim = (terms + 1) * (terms + 1);
    let mut rho = DMatrix::<Complex64>::zeros(dim, dim);
    for a in 0..2 {
        for b in 0..2 {
            let block = psi[a].transpose() * &psi[b];
            rho += block.map(|v| m[a][b] * v);
        }
    }
    rho
}

pub fn dense_from_state(s: &RindlerState, terms: usize) -> DMatrix<Complex64> {
    let side = terms + 1;
    DMatrix::from_fn(side * side, side * side, |i, j| {
        s.element((i / side, i % side), (j / side, j % side))
    })
}

pub fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

/// Whether every entry outside the same-sector tridiagonal band is exactly 0.
pub fn sector_tridiagonal(m: &DMatrix<Complex64>, terms: usize) -> bool {
    let side = terms + 1;
    (0..side * side).all(|i| {
        (0..side * side).all(|j| {
            let (a1, a2) = (i / side, i % side);
            let (b1, b2) = (j / side, j % side);
            let in_band = a1 + a2 == b1 + b2 && a1.abs_diff(b1) <= 1;
            in_band || m[(i, j)] == Complex64::new(0.0, 0.0)
        })
    })
}

/// A random logical density matrix; a third of the draws are pure.
pub fn random_qubit<R: Rng>(rng: &mut R) -> LogicalQubit {
    loop {
        let v: [f64; 3] = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        let len = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if len > 1.0 || len == 0.0 {
            continue;
        }
        let s = if rng.gen_bool(1.0 / 3.0) { 1.0 / len } else { 1.0 };
        if let Ok(q) = LogicalQubit::from_bloch(v[0] * s, v[1] * s, v[2] * s) {
            return q;
        }
    }
}
