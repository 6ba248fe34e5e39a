//! Seeded Monte-Carlo studies that produce tabular records.
//!
//! Sample `i` of every experiment draws from its own stream
//! `RandomSource::for_stream(seed, i + 1)`, so records do not depend on the
//! number of worker threads.

mod classification;
mod continuity;
mod csv_io;
mod monotonicity;
mod xstate;

pub use classification::{run_channel_classification, ChannelClass, ClassificationConfig};
pub use continuity::{perturb, run_continuity_check, ContinuityConfig};
pub use csv_io::{format_real, record_from_csv, rows_csv, summary_csv};
pub use monotonicity::{run_monotonicity, MonotonicityConfig, MONOTONICITY_TOL};
pub use xstate::{run_xstate_comparison, xstate_row, XStateConfig, ORDERING_TOL, XSTATE_COLUMNS};

use crate::error::{Error, Result};
use crate::linalg::random::RandomSource;

/// Default master seed.
pub const DEFAULT_SEED: u64 = 7;

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentRecord {
    pub experiment_id: String,
    pub seed: u64,
    /// Parameters in insertion order.
    pub inputs: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    /// Statistics derived from `rows` (and `inputs`).
    pub summary: Vec<(String, f64)>,
    /// Tallies that the rows cannot reproduce, such as resampled draws.
    pub counters: Vec<(String, f64)>,
}

impl ExperimentRecord {
    pub fn new(
        experiment_id: &str,
        seed: u64,
        inputs: Vec<(String, String)>,
        columns: &[&str],
    ) -> Self {
        Self {
            experiment_id: experiment_id.to_string(),
            seed,
            inputs,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            summary: Vec::new(),
            counters: Vec::new(),
        }
    }

    pub fn input(&self, name: &str) -> Option<&str> {
        self.inputs
            .iter()
            .find(|(k, _)| k == name)
            .map(|(_, v)| v.as_str())
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }

    pub fn summary_value(&self, name: &str) -> Option<f64> {
        self.summary
            .iter()
            .chain(&self.counters)
            .find(|(k, _)| k == name)
            .map(|(_, v)| *v)
    }

    /// Computes `summary` from the rows.
    pub fn finalize(mut self) -> Result<Self> {
        if self.rows.iter().any(|r| r.len() != self.columns.len()) {
            return Err(Error::InvalidArgument(
                "row width differs from column count".into(),
            ));
        }
        self.summary = derive_summary(&self)?;
        self.verify()?;
        Ok(self)
    }

    /// Recomputes the summary from the rows and checks it matches bit for bit.
    pub fn verify(&self) -> Result<()> {
        let fresh = derive_summary(self)?;
        let same = fresh.len() == self.summary.len()
            && fresh
                .iter()
                .zip(&self.summary)
                .all(|(a, b)| a.0 == b.0 && a.1.to_bits() == b.1.to_bits());
        if !same {
            return Err(Error::InvalidArgument(format!(
                "summary of `{}` does not match its rows",
                self.experiment_id
            )));
        }
        Ok(())
    }

    /// Descriptions of violated hard invariants, if any.
    pub fn invariant_failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        match self.experiment_id.as_str() {
            "xstate" => {
                if let Some(n) = self
                    .summary_value("ordering_violations")
                    .filter(|&n| n > 0.0)
                {
                    out.push(format!(
                        "{n} rows with diagonal discord below optimized discord"
                    ));
                }
            }
            "continuity" => {
                for key in ["violation_count", "schatten_violation_count"] {
                    if let Some(n) = self.summary_value(key).filter(|&n| n > 0.0) {
                        out.push(format!("{key} = {n}"));
                    }
                }
            }
            _ => {}
        }
        out
    }
}

/// Recomputes the derived summary of a record from its id, inputs and rows.
pub fn derive_summary(record: &ExperimentRecord) -> Result<Vec<(String, f64)>> {
    match record.experiment_id.as_str() {
        "monotonicity" => monotonicity::summarize(record),
        "xstate" => xstate::summarize(record),
        "continuity" => continuity::summarize(record),
        "classify-sweep" => classification::summarize(record),
        other => Err(Error::InvalidArgument(format!(
            "unknown experiment `{other}`"
        ))),
    }
}

pub(crate) fn input_f64(record: &ExperimentRecord, name: &str) -> Result<f64> {
    record
        .input(name)
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| Error::InvalidArgument(format!("record lacks numeric input `{name}`")))
}

pub(crate) fn column(record: &ExperimentRecord, name: &str) -> Result<Vec<f64>> {
    record
        .column(name)
        .ok_or_else(|| Error::InvalidArgument(format!("record lacks column `{name}`")))
}

pub(crate) fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    xs.iter().sum::<f64>() / xs.len() as f64
}

pub(crate) fn max(xs: &[f64]) -> f64 {
    xs.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

pub(crate) fn min(xs: &[f64]) -> f64 {
    xs.iter().copied().fold(f64::INFINITY, f64::min)
}

pub(crate) fn count(xs: &[f64], pred: impl Fn(f64) -> bool) -> f64 {
    xs.iter().filter(|&&x| pred(x)).count() as f64
}

/// Stream for sample `index` under `seed`.
pub fn sample_rng(seed: u64, index: usize) -> RandomSource {
    RandomSource::for_stream(seed, index as u64 + 1)
}

/// `f(0), ..., f(n - 1)` evaluated on up to `threads` scoped threads, in index order.
pub fn par_map<T: Send>(n: usize, threads: usize, f: impl Fn(usize) -> T + Sync) -> Vec<T> {
    let threads = threads.max(1).min(n.max(1));
    if threads == 1 {
        return (0..n).map(f).collect();
    }
    let chunk = n.div_ceil(threads);
    let f = &f;
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                let range = (t * chunk).min(n)..((t + 1) * chunk).min(n);
                scope.spawn(move || range.map(f).collect::<Vec<T>>())
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker thread panicked"))
            .collect()
    })
}

pub(crate) fn kv(name: &str, value: impl ToString) -> (String, String) {
    (name.to_string(), value.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn par_map_preserves_order() {
        for threads in [1, 2, 3, 8, 100] {
            let v = par_map(17, threads, |i| i * i);
            assert_eq!(v, (0..17).map(|i| i * i).collect::<Vec<_>>());
        }
        assert!(par_map(0, 4, |i| i).is_empty());
    }

    #[test]
    fn verify_detects_tampering() {
        let cfg = MonotonicityConfig::new(crate::channels::fig2a(), "fig2a", 5, 1);
        let mut rec = run_monotonicity(&cfg).unwrap();
        rec.verify().unwrap();
        rec.rows[0][1] += 1.0;
        assert!(rec.verify().is_err());
    }
}
