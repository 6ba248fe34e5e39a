use super::{column, count, input_f64, kv, max, mean, par_map, sample_rng, ExperimentRecord};
use crate::channels::QuantumChannel;
use crate::discord::{diagonal_discord, diagonal_discord_with, DegeneracyPolicy};
use crate::error::{Error, Result};
use crate::states::sample_random_bipartite;

/// Increases of diagonal discord above this count as violations.
pub const MONOTONICITY_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct MonotonicityConfig {
    pub channel: QuantumChannel,
    pub channel_name: String,
    pub samples: usize,
    pub seed: u64,
    pub dim_b: usize,
    /// Rank of the random input states; `None` means full rank.
    pub rank: Option<usize>,
    pub tol: f64,
    pub threads: usize,
}

impl MonotonicityConfig {
    pub fn new(channel: QuantumChannel, channel_name: &str, samples: usize, seed: u64) -> Self {
        Self {
            channel,
            channel_name: channel_name.to_string(),
            samples,
            seed,
            dim_b: 2,
            rank: None,
            tol: MONOTONICITY_TOL,
            threads: 1,
        }
    }
}

struct Sample {
    before: f64,
    after: f64,
    resampled: u64,
    degenerate_after: bool,
}

/// Draws random states on `A ⊗ B`, applies the channel to `A`, and records the
/// diagonal discord before and after. Inputs with a degenerate `ρ_A` are
/// redrawn; outputs with a degenerate marginal are evaluated with the
/// degeneracy-optimizing policy.
pub fn run_monotonicity(cfg: &MonotonicityConfig) -> Result<ExperimentRecord> {
    if cfg.samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    let d_a = cfg.channel.dim();
    let rank = cfg.rank.unwrap_or(d_a * cfg.dim_b);
    let results = par_map(cfg.samples, cfg.threads, |i| -> Result<Sample> {
        let mut rng = sample_rng(cfg.seed, i);
        let mut resampled = 0;
        loop {
            let state = sample_random_bipartite(&mut rng, d_a, cfg.dim_b, rank)?;
            let before = match diagonal_discord(&state) {
                Ok(v) => v,
                Err(Error::DegenerateMarginal { .. }) => {
                    resampled += 1;
                    continue;
                }
                Err(e) => return Err(e),
            };
            let out = cfg.channel.apply_local_a(&state)?;
            let (after, degenerate_after) = match diagonal_discord(&out) {
                Ok(v) => (v, false),
                Err(Error::DegenerateMarginal { .. }) => (
                    diagonal_discord_with(&out, DegeneracyPolicy::Optimize)?,
                    true,
                ),
                Err(e) => return Err(e),
            };
            return Ok(Sample {
                before,
                after,
                resampled,
                degenerate_after,
            });
        }
    });

    let inputs = vec![
        kv("channel", &cfg.channel_name),
        kv("channel_class", cfg.channel.class_name()),
        kv("samples", cfg.samples),
        kv("dim_a", d_a),
        kv("dim_b", cfg.dim_b),
        kv("rank", rank),
        kv("tol", cfg.tol),
    ];
    let mut rec = ExperimentRecord::new(
        "monotonicity",
        cfg.seed,
        inputs,
        &["d_before", "d_after", "delta"],
    );
    let (mut resampled, mut degenerate_after) = (0u64, 0u64);
    for s in results {
        let s = s?;
        resampled += s.resampled;
        degenerate_after += s.degenerate_after as u64;
        rec.rows.push(vec![s.before, s.after, s.after - s.before]);
    }
    rec.counters = vec![
        ("resampled_degenerate_inputs".into(), resampled as f64),
        ("degenerate_outputs".into(), degenerate_after as f64),
    ];
    rec.finalize()
}

pub(super) fn summarize(rec: &ExperimentRecord) -> Result<Vec<(String, f64)>> {
    let tol = input_f64(rec, "tol")?;
    let before = column(rec, "d_before")?;
    let after = column(rec, "d_after")?;
    let delta = column(rec, "delta")?;
    Ok(vec![
        ("samples".into(), rec.rows.len() as f64),
        ("max_delta".into(), max(&delta)),
        ("violation_count".into(), count(&delta, |d| d > tol)),
        ("mean_d_before".into(), mean(&before)),
        ("mean_d_after".into(), mean(&after)),
    ])
}
