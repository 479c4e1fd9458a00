//! Sweep records and their CSV form.
//!
//! Columns: `r, n_max, trace_deficit, chi_full, chi_partial, delta_chi,
//! helstrom, gap_k<K>..., chain_ok, chain_min_slack` and, only when timing is
//! requested, `wall_time_s`. Floats are written with 17 significant digits
//! so a file parses back to the same bits. `helstrom` is empty for
//! ensembles that are not binary.

use std::io::{Read, Write};

use crate::error::{Error, Result};

/// Metrics for one acceleration.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub r: f64,
    pub n_max: usize,
    pub trace_deficit: f64,
    pub chi_full: f64,
    pub chi_partial: f64,
    pub delta_chi: f64,
    pub helstrom: Option<f64>,
    /// `(k, gap)` in requested order.
    pub moment_gaps: Vec<(u32, f64)>,
    pub chain_ok: bool,
    pub chain_min_slack: f64,
    pub wall_time_s: Option<f64>,
}

impl SweepRecord {
    pub fn gap(&self, k: u32) -> Option<f64> {
        self.moment_gaps.iter().find(|(j, _)| *j == k).map(|(_, g)| *g)
    }
}

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn csv_err(e: impl std::fmt::Display) -> Error {
    Error::Io(format!("csv: {e}"))
}

/// Writes `records` with a header row. All records must request the same
/// moment orders.
pub fn write_csv<W: Write>(out: W, records: &[SweepRecord], timing: bool) -> Result<()> {
    let ks: Vec<u32> = records
        .first()
        .map(|r| r.moment_gaps.iter().map(|(k, _)| *k).collect())
        .unwrap_or_default();
    let mut w = csv::Writer::from_writer(out);
    let mut header: Vec<String> = [
        "r",
        "n_max",
        "trace_deficit",
        "chi_full",
        "chi_partial",
        "delta_chi",
        "helstrom",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    header.extend(ks.iter().map(|k| format!("gap_k{k}")));
    header.push("chain_ok".into());
    header.push("chain_min_slack".into());
    if timing {
        header.push("wall_time_s".into());
    }
    w.write_record(&header).map_err(csv_err)?;
    for rec in records {
        let these: Vec<u32> = rec.moment_gaps.iter().map(|(k, _)| *k).collect();
        if these != ks {
            return Err(Error::Mismatch(format!(
                "record at r = {} has moment orders {these:?}, expected {ks:?}",
                rec.r
            )));
        }
        let mut row = vec![
            num(rec.r),
            rec.n_max.to_string(),
            num(rec.trace_deficit),
            num(rec.chi_full),
            num(rec.chi_partial),
            num(rec.delta_chi),
            rec.helstrom.map(num).unwrap_or_default(),
        ];
        row.extend(rec.moment_gaps.iter().map(|(_, g)| num(*g)));
        row.push(rec.chain_ok.to_string());
        row.push(num(rec.chain_min_slack));
        if timing {
            row.push(rec.wall_time_s.map(num).unwrap_or_default());
        }
        w.write_record(&row).map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::Io(e.to_string()))
}

/// Parses a file produced by [`write_csv`].
pub fn read_csv<R: Read>(input: R) -> Result<Vec<SweepRecord>> {
    let mut rd = csv::Reader::from_reader(input);
    let header: Vec<String> = rd.headers().map_err(csv_err)?.iter().map(String::from).collect();
    let col = |name: &str| {
        header
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::Io(format!("csv: missing column '{name}'")))
    };
    let fixed = [
        "r",
        "n_max",
        "trace_deficit",
        "chi_full",
        "chi_partial",
        "delta_chi",
        "helstrom",
        "chain_ok",
        "chain_min_slack",
    ]
    .map(col);
    let mut idx = [0usize; 9];
    for (slot, c) in idx.iter_mut().zip(fixed) {
        *slot = c?;
    }
    let gaps: Vec<(u32, usize)> = header
        .iter()
        .enumerate()
        .filter_map(|(i, h)| h.strip_prefix("gap_k").and_then(|k| k.parse().ok()).map(|k| (k, i)))
        .collect();
    let timing = header.iter().position(|h| h == "wall_time_s");

    let mut records = Vec::new();
    for row in rd.records() {
        let row = row.map_err(csv_err)?;
        let field = |i: usize| row.get(i).unwrap_or("");
        let float = |i: usize| {
            field(i)
                .parse::<f64>()
                .map_err(|_| Error::Io(format!("csv: '{}' in column '{}' is not a number", field(i), header[i])))
        };
        let optional = |i: usize| {
            if field(i).is_empty() {
                Ok(None)
            } else {
                float(i).map(Some)
            }
        };
        records.push(SweepRecord {
            r: float(idx[0])?,
            n_max: field(idx[1])
                .parse()
                .map_err(|_| Error::Io(format!("csv: bad n_max '{}'", field(idx[1]))))?,
            trace_deficit: float(idx[2])?,
            chi_full: float(idx[3])?,
            chi_partial: float(idx[4])?,
            delta_chi: float(idx[5])?,
            helstrom: optional(idx[6])?,
            moment_gaps: gaps
                .iter()
                .map(|&(k, i)| Ok((k, float(i)?)))
                .collect::<Result<Vec<_>>>()?,
            chain_ok: field(idx[7])
                .parse()
                .map_err(|_| Error::Io(format!("csv: bad chain_ok '{}'", field(idx[7]))))?,
            chain_min_slack: float(idx[8])?,
            wall_time_s: match timing {
                Some(i) => optional(i)?,
                None => None,
            },
        });
    }
    Ok(records)
}
