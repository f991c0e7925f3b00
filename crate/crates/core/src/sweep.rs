//! Sampling-rate sweep: SNR of every fixture object over a grid of object
//! counts and sample rates.
//!
//! Grid points run in parallel. Rows always come back sorted by
//! `(n, rate_hz, object)` regardless of completion order.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::interpolation::SplineOrder;
use crate::metrics::{format_db, serialize_db};
use crate::pipeline::{evaluate, PipelineError};
use crate::signalgen::{standard_object_set_seeded, SignalError};

/// Rates of the default sweep, Hz.
pub const DEFAULT_RATES: [u32; 6] = [32_000, 44_100, 48_000, 64_000, 88_200, 96_000];

pub const CSV_HEADER: [&str; 4] = ["n", "rate_hz", "object", "snr_db"];

#[derive(Debug, Error)]
pub enum SweepError {
    #[error(transparent)]
    Signal(#[from] SignalError),
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),
    #[error("empty sweep grid")]
    EmptyGrid,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub objects: Vec<usize>,
    pub c_channels: usize,
    pub rates: Vec<u32>,
    pub duration_s: f64,
    pub order: SplineOrder,
    pub seed: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            objects: (3..=10).collect(),
            c_channels: 2,
            rates: DEFAULT_RATES.to_vec(),
            duration_s: 0.5,
            order: SplineOrder::Cubic,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub rate_hz: u32,
    pub object: usize,
    #[serde(serialize_with = "serialize_db")]
    pub snr_db: f64,
}

pub fn run_sweep(config: &SweepConfig) -> Result<Vec<SweepRow>, SweepError> {
    if config.objects.is_empty() || config.rates.is_empty() {
        return Err(SweepError::EmptyGrid);
    }
    let mut grid: Vec<(usize, u32)> = config
        .objects
        .iter()
        .flat_map(|&n| config.rates.iter().map(move |&r| (n, r)))
        .collect();
    grid.sort_unstable();
    grid.dedup();

    let blocks = grid
        .par_iter()
        .map(|&(n, rate)| -> Result<Vec<SweepRow>, SweepError> {
            let set = standard_object_set_seeded(n, rate, config.duration_s, config.seed)?;
            let report = evaluate(&set, config.c_channels, config.order)?;
            Ok(report
                .objects
                .iter()
                .map(|o| SweepRow {
                    n,
                    rate_hz: rate,
                    object: o.object,
                    snr_db: o.snr_db,
                })
                .collect())
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(blocks.into_iter().flatten().collect())
}

/// Mean SNR over the objects of one `(n, rate)` grid point.
pub fn mean_snr(rows: &[SweepRow], n: usize, rate_hz: u32) -> Option<f64> {
    let vals: Vec<f64> = rows
        .iter()
        .filter(|r| r.n == n && r.rate_hz == rate_hz)
        .map(|r| r.snr_db)
        .collect();
    (!vals.is_empty()).then(|| vals.iter().sum::<f64>() / vals.len() as f64)
}

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<(), SweepError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.n.to_string(),
            r.rate_hz.to_string(),
            r.object.to_string(),
            format_db(r.snr_db),
        ])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}
