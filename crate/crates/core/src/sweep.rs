//! Acceleration sweeps comparing fully and partially encrypted ensembles.

use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::metrics::{
    helstrom_guess, holevo_with_average, inequality_chain, moment_gap, RindlerEnsemble,
};
use crate::pqc::{encrypt_full, encrypt_partial, PartialPair};
use crate::qubit::LogicalQubit;
use crate::rindler::{accel_to_r, choose_cutoff, transform_dual_rail, AccelerationParam, Cutoff};
use crate::state::RindlerState;

pub use crate::records::SweepRecord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Spacing {
    #[default]
    Linear,
    Log,
}

impl FromStr for Spacing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "linear" | "lin" => Ok(Spacing::Linear),
            "log" => Ok(Spacing::Log),
            _ => Err(Error::InvalidConfig(format!("unknown spacing '{s}'"))),
        }
    }
}

/// The acceleration parameters to visit. `steps` counts intervals, so a
/// range yields `steps + 1` points including both ends.
#[derive(Debug, Clone, PartialEq)]
pub enum RGrid {
    Range {
        r_min: f64,
        r_max: f64,
        steps: usize,
        spacing: Spacing,
    },
    List(Vec<f64>),
    /// Proper accelerations from `a_min` to `a_max` (linear), converted at
    /// mode frequency `omega`.
    Acceleration {
        a_min: f64,
        a_max: f64,
        steps: usize,
        omega: f64,
    },
}

fn linear(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    (0..=steps)
        .map(|i| {
            if i == steps {
                hi
            } else {
                lo + (hi - lo) * i as f64 / steps as f64
            }
        })
        .collect()
}

impl RGrid {
    pub fn points(&self) -> Result<Vec<AccelerationParam>> {
        match self {
            RGrid::Range {
                r_min,
                r_max,
                steps,
                spacing,
            } => {
                if *steps == 0 {
                    return Err(Error::InvalidConfig("steps must be at least 1".into()));
                }
                if !(*r_min >= 0.0) || !(r_max >= r_min) || !r_max.is_finite() {
                    return Err(Error::InvalidConfig(format!(
                        "need 0 <= r_min <= r_max, got {r_min} and {r_max}"
                    )));
                }
                let values = match spacing {
                    Spacing::Linear => linear(*r_min, *r_max, *steps),
                    Spacing::Log => {
                        if *r_min <= 0.0 {
                            return Err(Error::InvalidConfig(
                                "log spacing needs r_min > 0".into(),
                            ));
                        }
                        let mut v: Vec<f64> = linear(r_min.ln(), r_max.ln(), *steps)
                            .into_iter()
                            .map(f64::exp)
                            .collect();
                        v[0] = *r_min;
                        v[*steps] = *r_max;
                        v
                    }
                };
                values.into_iter().map(AccelerationParam::new).collect()
            }
            RGrid::List(values) => {
                if values.is_empty() {
                    return Err(Error::InvalidConfig("empty r list".into()));
                }
                values
                    .iter()
                    .map(|&r| AccelerationParam::new(r).map_err(|e| Error::InvalidConfig(e.to_string())))
                    .collect()
            }
            RGrid::Acceleration {
                a_min,
                a_max,
                steps,
                omega,
            } => {
                if *steps == 0 {
                    return Err(Error::InvalidConfig("steps must be at least 1".into()));
                }
                if !(a_max >= a_min) {
                    return Err(Error::InvalidConfig(format!(
                        "need a_min <= a_max, got {a_min} and {a_max}"
                    )));
                }
                linear(*a_min, *a_max, *steps)
                    .into_iter()
                    .map(|a| accel_to_r(a, *omega).map_err(|e| Error::InvalidConfig(e.to_string())))
                    .collect()
            }
        }
    }
}

/// Eve's ensemble of logical states, before encryption.
#[derive(Debug, Clone, PartialEq)]
pub struct LogicalEnsemble {
    members: Vec<(f64, LogicalQubit)>,
}

impl LogicalEnsemble {
    pub fn new(members: Vec<(f64, LogicalQubit)>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::InvalidEnsemble("no members".into()));
        }
        if let Some((p, _)) = members.iter().find(|(p, _)| !(*p >= 0.0 && *p <= 1.0)) {
            return Err(Error::InvalidEnsemble(format!("probability {p} is not in [0, 1]")));
        }
        let total: f64 = members.iter().map(|(p, _)| p).sum();
        if (total - 1.0).abs() > crate::metrics::PROBABILITY_TOL {
            return Err(Error::InvalidEnsemble(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        Ok(Self { members })
    }

    /// `{1/2 |+><+|, 1/2 |-><-|}`
    pub fn plus_minus() -> Self {
        Self {
            members: vec![(0.5, LogicalQubit::plus()), (0.5, LogicalQubit::minus())],
        }
    }

    /// `{1/2 |O><O|, 1/2 |I><I|}`; carries no coherence, so partial
    /// encryption already hides it.
    pub fn computational() -> Self {
        Self {
            members: vec![(0.5, LogicalQubit::zero()), (0.5, LogicalQubit::one())],
        }
    }

    /// Four equiprobable pure states at the vertices of a regular
    /// tetrahedron inscribed in the Bloch sphere.
    pub fn tetrahedral() -> Self {
        let s = (2.0f64 / 3.0).sqrt();
        let h = 2.0f64.sqrt() / 3.0;
        let vertices = [
            (0.0, 0.0, 1.0),
            (2.0 * h, 0.0, -1.0 / 3.0),
            (-h, s, -1.0 / 3.0),
            (-h, -s, -1.0 / 3.0),
        ];
        Self {
            members: vertices
                .iter()
                .map(|&(x, y, z)| (0.25, LogicalQubit::from_bloch(x, y, z).expect("unit vertex")))
                .collect(),
        }
    }

    /// Parses lines of `p re11 re12 im12 re22`; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut members = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: String| Error::InvalidEnsemble(format!("line {}: {msg}", lineno + 1));
            let fields = line
                .split_whitespace()
                .map(|f| f.parse::<f64>().map_err(|_| bad(format!("'{f}' is not a number"))))
                .collect::<Result<Vec<_>>>()?;
            if fields.len() != 5 {
                return Err(bad(format!("expected 5 numbers, found {}", fields.len())));
            }
            let q = LogicalQubit::new(fields[1], Complex64::new(fields[2], fields[3]), fields[4])
                .map_err(|e| bad(e.to_string()))?;
            members.push((fields[0], q));
        }
        Self::new(members)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn members(&self) -> &[(f64, LogicalQubit)] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

impl FromStr for LogicalEnsemble {
    type Err = Error;

    /// `plusminus`, `computational`, `tetra`, or `file:PATH`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plusminus" => Ok(Self::plus_minus()),
            "computational" => Ok(Self::computational()),
            "tetra" => Ok(Self::tetrahedral()),
            _ => match s.strip_prefix("file:") {
                Some(path) => Self::from_file(Path::new(path)),
                None => Err(Error::InvalidConfig(format!("unknown ensemble '{s}'"))),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub grid: RGrid,
    pub epsilon: f64,
    pub ensemble: LogicalEnsemble,
    pub partial_pair: PartialPair,
    pub moment_ks: Vec<u32>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            grid: RGrid::Range {
                r_min: 0.0,
                r_max: 3.0,
                steps: 12,
                spacing: Spacing::Linear,
            },
            epsilon: 1e-10,
            ensemble: LogicalEnsemble::plus_minus(),
            partial_pair: PartialPair::default(),
            moment_ks: vec![2, 4],
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "epsilon must lie in (0, 1), got {}",
                self.epsilon
            )));
        }
        if self.moment_ks.is_empty() {
            return Err(Error::InvalidConfig("no moment orders requested".into()));
        }
        self.grid.points()?;
        Ok(())
    }
}

/// Transforms each logical state once; equal inputs share one output.
fn transform_ensemble(members: &[(f64, LogicalQubit)], cutoff: &Cutoff) -> Result<RindlerEnsemble> {
    let mut cache: Vec<(LogicalQubit, Arc<RindlerState>)> = Vec::new();
    let mut out = Vec::with_capacity(members.len());
    for (p, q) in members {
        let state = match cache.iter().find(|(c, _)| c == q) {
            Some((_, s)) => Arc::clone(s),
            None => {
                let s = Arc::new(transform_dual_rail(q, cutoff));
                cache.push((*q, Arc::clone(&s)));
                s
            }
        };
        out.push((*p, state));
    }
    RindlerEnsemble::new(out)
}

/// Logical ensembles after full and partial encryption.
pub fn encrypted_ensembles(
    ensemble: &LogicalEnsemble,
    pair: PartialPair,
) -> (Vec<(f64, LogicalQubit)>, Vec<(f64, LogicalQubit)>) {
    let full = ensemble
        .members
        .iter()
        .map(|(p, q)| (*p, encrypt_full(q)))
        .collect();
    let partial = ensemble
        .members
        .iter()
        .map(|(p, q)| (*p, encrypt_partial(q, pair)))
        .collect();
    (full, partial)
}

/// All metrics at one grid point, using the given cutoff for every state.
pub fn evaluate_point(cfg: &SweepConfig, cutoff: &Cutoff) -> Result<SweepRecord> {
    let start = Instant::now();
    let (full, partial) = encrypted_ensembles(&cfg.ensemble, cfg.partial_pair);
    let full = transform_ensemble(&full, cutoff)?;
    let partial = transform_ensemble(&partial, cutoff)?;
    let avg_full = full.average_shared()?;
    let avg_partial = partial.average_shared()?;

    let chi_full = holevo_with_average(&full, &avg_full)?;
    let chi_partial = holevo_with_average(&partial, &avg_partial)?;
    let helstrom = match partial.members() {
        [(p0, s0), (p1, s1)] => Some(helstrom_guess(*p0, s0, *p1, s1)?),
        _ => None,
    };
    let moment_gaps = cfg
        .moment_ks
        .iter()
        .map(|&k| Ok((k, moment_gap(&partial, &avg_full, k)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut chain_ok = true;
    let mut chain_min_slack = f64::INFINITY;
    for &k in cfg.moment_ks.iter().filter(|k| **k >= 2 && **k % 2 == 0) {
        let chain = inequality_chain(&partial, &avg_full, k)?;
        chain_ok &= chain.all_hold() && chain.dominance_ok;
        chain_min_slack = chain_min_slack.min(chain.min_slack());
    }
    Ok(SweepRecord {
        r: cutoff.r().value(),
        n_max: cutoff.n_max(),
        trace_deficit: avg_full.trace_deficit(),
        chi_full,
        chi_partial,
        delta_chi: (chi_partial - chi_full).abs(),
        helstrom,
        moment_gaps,
        chain_ok,
        chain_min_slack,
        wall_time_s: Some(start.elapsed().as_secs_f64()),
    })
}

/// Runs every grid point (concurrently) and returns records sorted by `r`.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRecord>> {
    cfg.validate()?;
    let mut points = cfg.grid.points()?;
    points.sort_by(|a, b| a.value().total_cmp(&b.value()));
    let mut records = points
        .par_iter()
        .map(|&r| {
            let cutoff = choose_cutoff(r, cfg.epsilon)?;
            evaluate_point(cfg, &cutoff)
        })
        .collect::<Result<Vec<_>>>()?;
    records.sort_by(|a, b| a.r.total_cmp(&b.r));
    Ok(records)
}

/// Summary of how the leak behaves along a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub points: usize,
    pub r_first: f64,
    pub r_last: f64,
    /// `delta_chi(last) / delta_chi(first)`; `None` when the first value is 0.
    pub decay_ratio: Option<f64>,
    /// Set when every record has the same `r`.
    pub no_decay_measurable: bool,
    /// `r` values at which `delta_chi` failed to decrease.
    pub monotonicity_violations: Vec<f64>,
    pub chain_failures: Vec<f64>,
    /// Smallest relative slack over every inequality checked.
    pub chain_min_slack: f64,
    /// Per moment order: `gap(last) / gap(first)` and whether the gap
    /// decreased at every step.
    pub moment_decay: Vec<(u32, f64, bool)>,
    /// `helstrom(last)` and whether it decreased at every step.
    pub helstrom_trend: Option<(f64, bool)>,
}

/// Tolerance for the monotonicity checks.
pub const MONOTONE_TOL: f64 = 1e-12;

fn decreasing(values: &[f64]) -> bool {
    values.windows(2).all(|w| w[1] < w[0] + MONOTONE_TOL)
}

/// Summarizes `records`, which must be ascending in `r`.
pub fn convergence_report(records: &[SweepRecord]) -> Result<ConvergenceReport> {
    if records.len() < 3 {
        return Err(Error::TooFewRecords(records.len()));
    }
    if records.windows(2).any(|w| w[1].r < w[0].r) {
        return Err(Error::InvalidConfig("records are not ascending in r".into()));
    }
    let first = &records[0];
    let last = &records[records.len() - 1];
    let no_decay_measurable = first.r == last.r;
    let monotonicity_violations = records
        .windows(2)
        .filter(|w| w[1].r > w[0].r && w[1].delta_chi >= w[0].delta_chi + MONOTONE_TOL)
        .map(|w| w[1].r)
        .collect();
    let decay_ratio = (first.delta_chi != 0.0).then(|| last.delta_chi / first.delta_chi);
    let chain_failures = records.iter().filter(|r| !r.chain_ok).map(|r| r.r).collect();
    let chain_min_slack = records
        .iter()
        .map(|r| r.chain_min_slack)
        .fold(f64::INFINITY, f64::min);
    let moment_decay = first
        .moment_gaps
        .iter()
        .map(|&(k, g0)| {
            let series: Vec<f64> = records.iter().filter_map(|r| r.gap(k)).collect();
            let end = *series.last().unwrap_or(&g0);
            (k, end / g0, series.len() == records.len() && decreasing(&series))
        })
        .collect();
    let helstrom: Vec<f64> = records.iter().filter_map(|r| r.helstrom).collect();
    let helstrom_trend = (helstrom.len() == records.len()).then(|| (helstrom[helstrom.len() - 1], decreasing(&helstrom)));
    Ok(ConvergenceReport {
        points: records.len(),
        r_first: first.r,
        r_last: last.r,
        decay_ratio,
        no_decay_measurable,
        monotonicity_violations,
        chain_failures,
        chain_min_slack,
        moment_decay,
        helstrom_trend,
    })
}

impl ConvergenceReport {
    /// False when `delta_chi` rises anywhere or an inequality fails.
    pub fn passed(&self) -> bool {
        self.monotonicity_violations.is_empty() && self.chain_failures.is_empty()
    }
}

impl fmt::Display for ConvergenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "points: {} (r = {} .. {})", self.points, self.r_first, self.r_last)?;
        if self.no_decay_measurable {
            writeln!(f, "delta_chi decay: no decay measurable (constant r)")?;
        } else {
            match self.decay_ratio {
                Some(q) => writeln!(f, "delta_chi decay ratio: {q:.6e}")?,
                None => writeln!(f, "delta_chi decay ratio: undefined (delta_chi = 0 at r = {})", self.r_first)?,
            }
        }
        if self.monotonicity_violations.is_empty() {
            writeln!(f, "monotonicity: ok")?;
        } else {
            writeln!(f, "monotonicity: violated at r = {:?}", self.monotonicity_violations)?;
        }
        if self.chain_failures.is_empty() {
            writeln!(f, "trace inequalities: ok (tightest relative slack {:.3e})", self.chain_min_slack)?;
        } else {
            writeln!(f, "trace inequalities: failed at r = {:?}", self.chain_failures)?;
        }
        for (k, ratio, dec) in &self.moment_decay {
            writeln!(
                f,
                "moment gap k={k}: ratio {ratio:.6e}, {}",
                if *dec { "decreasing" } else { "not decreasing" }
            )?;
        }
        if let Some((end, dec)) = self.helstrom_trend {
            writeln!(
                f,
                "helstrom: {end:.9} at r = {}, {}",
                self.r_last,
                if dec { "decreasing" } else { "not decreasing" }
            )?;
        }
        write!(f, "status: {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}
