//! Sweeps the acceleration parameter and writes one CSV row per point.
//!
//! Exit status: 0 success, 1 invalid configuration, 2 failed convergence or
//! inequality check, 3 infeasible cutoff.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser};

use rindler_pqc::sweep::{convergence_report, run_sweep, LogicalEnsemble, RGrid, Spacing, SweepConfig};
use rindler_pqc::{write_csv, Error, PartialPair};

#[derive(Debug, Parser)]
#[command(name = "rindler-sweep", version, about = "Holevo leak of encrypted dual-rail qubits versus acceleration")]
#[command(group(ArgGroup::new("grid").args(["r_list", "accel_min"])))]
struct Args {
    #[arg(long, default_value_t = 0.0)]
    r_min: f64,
    #[arg(long, default_value_t = 3.0)]
    r_max: f64,
    /// Number of intervals; the grid has steps + 1 points.
    #[arg(long, default_value_t = 12)]
    steps: usize,
    #[arg(long, default_value = "linear", value_parser = parse_spacing)]
    spacing: Spacing,
    /// Explicit r values, comma separated.
    #[arg(long, value_delimiter = ',')]
    r_list: Option<Vec<f64>>,
    /// Proper-acceleration grid (linear from accel-min to accel-max).
    #[arg(long, requires_all = ["accel_max", "omega"])]
    accel_min: Option<f64>,
    #[arg(long, requires = "accel_min")]
    accel_max: Option<f64>,
    /// Mode frequency for the acceleration grid.
    #[arg(long, requires = "accel_min")]
    omega: Option<f64>,
    /// Truncation budget on the trace deficit.
    #[arg(long, default_value_t = 1e-10)]
    epsilon: f64,
    /// plusminus, computational, tetra, or file:PATH.
    #[arg(long, default_value = "plusminus")]
    ensemble: String,
    #[arg(long, default_value = "IX")]
    partial_pair: String,
    /// Moment orders, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "2,4")]
    moments: Vec<u32>,
    /// CSV destination; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print a convergence summary and fail if a check does not hold.
    #[arg(long)]
    report: bool,
    /// Add a wall_time_s column (makes output run-dependent).
    #[arg(long)]
    timing: bool,
}

fn parse_spacing(s: &str) -> Result<Spacing, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn config(args: &Args) -> Result<SweepConfig, Error> {
    let grid = if let Some(list) = &args.r_list {
        RGrid::List(list.clone())
    } else if let (Some(a_min), Some(a_max), Some(omega)) = (args.accel_min, args.accel_max, args.omega) {
        RGrid::Acceleration {
            a_min,
            a_max,
            steps: args.steps,
            omega,
        }
    } else {
        RGrid::Range {
            r_min: args.r_min,
            r_max: args.r_max,
            steps: args.steps,
            spacing: args.spacing,
        }
    };
    let ensemble: LogicalEnsemble = args.ensemble.parse()?;
    let cfg = SweepConfig {
        grid,
        epsilon: args.epsilon,
        ensemble,
        partial_pair: args.partial_pair.parse::<PartialPair>()?,
        moment_ks: args.moments.clone(),
    };
    cfg.validate()?;
    Ok(cfg)
}

fn run(args: &Args) -> Result<bool, (Error, u8)> {
    let cfg = config(args).map_err(|e| (e, 1))?;
    let records = run_sweep(&cfg).map_err(|e| {
        let code = match e {
            Error::CutoffInfeasible { .. } => 3,
            Error::InvalidConfig(_) | Error::InvalidEnsemble(_) => 1,
            _ => 2,
        };
        (e, code)
    })?;
    let io = |e: Error| (e, 1);
    match &args.out {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
                .map_err(io)?;
            write_csv(BufWriter::new(file), &records, args.timing).map_err(io)?;
        }
        None => write_csv(io::stdout().lock(), &records, args.timing).map_err(io)?,
    }
    if !args.report {
        return Ok(true);
    }
    let report = match convergence_report(&records) {
        Ok(r) => r,
        Err(e @ Error::TooFewRecords(_)) => return Err((e, 1)),
        Err(e) => return Err((e, 2)),
    };
    // keep the CSV on stdout parseable: the report goes after it, or to
    // stdout alone when the CSV went to a file
    let mut out = io::stdout().lock();
    writeln!(out, "{report}").ok();
    Ok(report.passed())
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            e.print().ok();
            return ExitCode::from(code);
        }
    };
    match run(&args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err((e, code)) => {
            eprintln!("rindler-sweep: {e}");
            ExitCode::from(code)
        }
    }
}
