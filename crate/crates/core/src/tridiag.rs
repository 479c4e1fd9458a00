//! Eigenvalues of real symmetric tridiagonal matrices.
//!
//! Implicit QL iteration with Wilkinson-style shifts, eigenvalues only (the
//! EISPACK `tql1` scheme). An `m`-dimensional problem costs `O(m^2)`.
//!
//! The inner QL sweep is a serial dependency chain (a square root and a
//! division per step), so a single problem leaves most of the floating point
//! units idle. [`batch_eigenvalues`] therefore advances several independent
//! problems in lockstep; the arithmetic per problem is unchanged, only the
//! instruction stream is interleaved.

/// Number of problems advanced together by [`batch_eigenvalues`].
const LANES: usize = 8;

/// Upper bound on QL iterations spent on a single eigenvalue. Symmetric
/// tridiagonal QL converges cubically; this is never reached on sane input.
const MAX_ITERATIONS: usize = 60;

/// Computes the eigenvalues of the symmetric tridiagonal matrix with main
/// diagonal `diag` and sub/super-diagonal `off`, sorted ascending.
///
/// `off[i]` couples rows `i` and `i + 1`, so `off.len() + 1 == diag.len()`
/// (an empty `off` is accepted for a 1x1 or empty matrix).
pub fn symmetric_tridiagonal_eigenvalues(diag: &[f64], off: &[f64]) -> Vec<f64> {
    check_shape(diag, off);
    let mut problem = match QlProblem::new(diag, off) {
        Prepared::Solved(values) => return values,
        Prepared::Pending(problem) => problem,
    };
    while let Status::NeedSweep = problem.advance() {
        while problem.remaining() > 0 {
            problem.step();
        }
        problem.finish_sweep();
    }
    problem.into_eigenvalues()
}

/// Eigenvalues of many independent symmetric tridiagonal problems, each
/// sorted ascending, in input order.
///
/// Results are identical to calling [`symmetric_tridiagonal_eigenvalues`]
/// on every problem separately.
pub fn batch_eigenvalues(problems: &[(&[f64], &[f64])]) -> Vec<Vec<f64>> {
    let mut results: Vec<Option<Vec<f64>>> = vec![None; problems.len()];

    // Largest first, so the tail that runs with fewer than LANES active
    // problems is short.
    let mut order: Vec<usize> = (0..problems.len()).collect();
    order.sort_by_key(|&k| std::cmp::Reverse(problems[k].0.len()));
    let mut queue = order.into_iter();

    let mut lanes: Vec<(usize, QlProblem)> = Vec::with_capacity(LANES);
    let mut refill = |lanes: &mut Vec<(usize, QlProblem)>, results: &mut Vec<Option<Vec<f64>>>| {
        while lanes.len() < LANES {
            let Some(k) = queue.next() else { break };
            let (diag, off) = problems[k];
            check_shape(diag, off);
            match QlProblem::new(diag, off) {
                Prepared::Solved(values) => results[k] = Some(values),
                Prepared::Pending(mut problem) => match problem.advance() {
                    Status::NeedSweep => lanes.push((k, problem)),
                    Status::Done => results[k] = Some(problem.into_eigenvalues()),
                },
            }
        }
    };

    refill(&mut lanes, &mut results);
    while !lanes.is_empty() {
        let steps = lanes
            .iter()
            .map(|(_, p)| p.remaining())
            .min()
            .unwrap_or(0);
        if let Ok(full) = <&mut [(usize, QlProblem); LANES]>::try_from(lanes.as_mut_slice()) {
            for _ in 0..steps {
                for (_, p) in full.iter_mut() {
                    p.step();
                }
            }
        } else {
            for _ in 0..steps {
                for (_, p) in lanes.iter_mut() {
                    p.step();
                }
            }
        }

        let mut idx = 0;
        while idx < lanes.len() {
            if lanes[idx].1.remaining() > 0 {
                idx += 1;
                continue;
            }
            lanes[idx].1.finish_sweep();
            match lanes[idx].1.advance() {
                Status::NeedSweep => idx += 1,
                Status::Done => {
                    let (k, problem) = lanes.swap_remove(idx);
                    results[k] = Some(problem.into_eigenvalues());
                }
            }
        }
        refill(&mut lanes, &mut results);
    }

    results
        .into_iter()
        .map(|r| r.expect("every problem is solved"))
        .collect()
}

fn check_shape(diag: &[f64], off: &[f64]) {
    assert!(
        off.len() + 1 == diag.len() || (diag.len() <= 1 && off.is_empty()),
        "off-diagonal length {} does not match dimension {}",
        off.len(),
        diag.len()
    );
}

#[inline]
fn pythag(a: f64, b: f64) -> f64 {
    let s = a * a + b * b;
    if s.is_normal() {
        s.sqrt()
    } else {
        a.hypot(b)
    }
}

enum Prepared {
    Solved(Vec<f64>),
    Pending(QlProblem),
}

enum Status {
    NeedSweep,
    Done,
}

/// One QL problem, resumable between sweeps.
///
/// `e[i]` couples `i` and `i + 1`; `e[n - 1] == 0`. The working copy is
/// scaled to unit max-norm so squares neither overflow nor underflow for the
/// tiny entries of high-occupancy sectors.
struct QlProblem {
    d: Vec<f64>,
    e: Vec<f64>,
    scale: f64,
    l: usize,
    m: usize,
    shift_acc: f64,
    tst1: f64,
    iter: usize,
    iterating: bool,
    // sweep registers
    i: usize,
    p: f64,
    c: f64,
    c2: f64,
    c3: f64,
    s: f64,
    s2: f64,
    el1: f64,
    dl1: f64,
}

impl QlProblem {
    fn new(diag: &[f64], off: &[f64]) -> Prepared {
        let n = diag.len();
        if n == 0 {
            return Prepared::Solved(Vec::new());
        }
        if n == 1 {
            return Prepared::Solved(vec![diag[0]]);
        }
        if off.iter().all(|v| *v == 0.0) {
            let mut values = diag.to_vec();
            values.sort_by(|a, b| a.total_cmp(b));
            return Prepared::Solved(values);
        }
        let scale = diag
            .iter()
            .chain(off.iter())
            .fold(0.0f64, |acc, v| acc.max(v.abs()));
        let inv = 1.0 / scale;
        let d = diag.iter().map(|v| v * inv).collect();
        let mut e: Vec<f64> = Vec::with_capacity(n);
        e.extend(off.iter().map(|v| v * inv));
        e.push(0.0);
        Prepared::Pending(QlProblem {
            d,
            e,
            scale,
            l: 0,
            m: 0,
            shift_acc: 0.0,
            tst1: 0.0,
            iter: 0,
            iterating: false,
            i: 0,
            p: 0.0,
            c: 1.0,
            c2: 1.0,
            c3: 1.0,
            s: 0.0,
            s2: 0.0,
            el1: 0.0,
            dl1: 0.0,
        })
    }

    fn remaining(&self) -> usize {
        self.i - self.l
    }

    /// Runs the control logic until either a sweep has been set up or every
    /// eigenvalue has been isolated.
    fn advance(&mut self) -> Status {
        let n = self.d.len();
        let eps = f64::EPSILON;
        loop {
            if self.iterating {
                let l = self.l;
                if self.e[l].abs() <= eps * self.tst1 || self.iter >= MAX_ITERATIONS {
                    self.iterating = false;
                    self.d[l] += self.shift_acc;
                    self.e[l] = 0.0;
                    self.l += 1;
                } else {
                    self.begin_sweep();
                    return Status::NeedSweep;
                }
            }

            let l = self.l;
            if l == n {
                return Status::Done;
            }
            self.tst1 = self.tst1.max(self.d[l].abs() + self.e[l].abs());
            let mut m = l;
            while m < n - 1 {
                if self.e[m].abs() <= eps * self.tst1 {
                    break;
                }
                m += 1;
            }
            if m == l {
                self.d[l] += self.shift_acc;
                self.e[l] = 0.0;
                self.l += 1;
                continue;
            }
            self.m = m;
            self.iter = 0;
            self.iterating = true;
            self.begin_sweep();
            return Status::NeedSweep;
        }
    }

    fn begin_sweep(&mut self) {
        let l = self.l;
        self.iter += 1;
        let g = self.d[l];
        let p = (self.d[l + 1] - g) / (2.0 * self.e[l]);
        let mut r = p.hypot(1.0);
        if p < 0.0 {
            r = -r;
        }
        self.d[l] = self.e[l] / (p + r);
        self.d[l + 1] = self.e[l] * (p + r);
        self.dl1 = self.d[l + 1];
        let h = g - self.d[l];
        for di in self.d[l + 2..].iter_mut() {
            *di -= h;
        }
        self.shift_acc += h;

        self.p = self.d[self.m];
        self.c = 1.0;
        self.c2 = 1.0;
        self.c3 = 1.0;
        self.s = 0.0;
        self.s2 = 0.0;
        self.el1 = self.e[l + 1];
        self.i = self.m;
    }

    #[inline(always)]
    fn step(&mut self) {
        let i = self.i - 1;
        self.c3 = self.c2;
        self.c2 = self.c;
        self.s2 = self.s;
        let ei = self.e[i];
        let di = self.d[i];
        let g = self.c * ei;
        let h = self.c * self.p;
        let r = pythag(self.p, ei);
        self.e[i + 1] = self.s * r;
        let inv = 1.0 / r;
        self.s = ei * inv;
        self.c = self.p * inv;
        self.p = self.c * di - self.s * g;
        self.d[i + 1] = h + self.s * (self.c * g + self.s * di);
        self.i = i;
    }

    fn finish_sweep(&mut self) {
        let l = self.l;
        let p = -self.s * self.s2 * self.c3 * self.el1 * self.e[l] / self.dl1;
        self.e[l] = self.s * p;
        self.d[l] = self.c * p;
    }

    fn into_eigenvalues(self) -> Vec<f64> {
        let scale = self.scale;
        let mut d = self.d;
        for v in d.iter_mut() {
            *v *= scale;
        }
        d.sort_by(|a, b| a.total_cmp(b));
        d
    }
}
