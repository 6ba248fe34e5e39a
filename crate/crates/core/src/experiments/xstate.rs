use super::{column, count, input_f64, kv, max, mean, min, par_map, sample_rng, ExperimentRecord};
use crate::discord::{diagonal_discord, optimized_discord_2q};
use crate::error::{Error, Result};
use crate::states::{sample_x_params_counted, x_state_from_params, XStateParams};

/// Rows with `D̄ < D - ORDERING_TOL` break the ordering invariant.
pub const ORDERING_TOL: f64 = 1e-9;

pub const XSTATE_COLUMNS: [&str; 7] = [
    "r6",
    "r8",
    "r9",
    "r15",
    "d_optimized",
    "d_diagonal",
    "difference",
];

#[derive(Clone, Debug)]
pub struct XStateConfig {
    pub samples: usize,
    pub seed: u64,
    /// `D̄ - D` at or below this counts as a match.
    pub equality_tol: f64,
    pub threads: usize,
}

impl XStateConfig {
    pub fn new(samples: usize, seed: u64) -> Self {
        Self {
            samples,
            seed,
            equality_tol: 1e-6,
            threads: 1,
        }
    }
}

/// One row of the comparison: the coordinates, both discords and their
/// difference `D̄ - D`.
/// Fails with [`Error::DegenerateMarginal`] when `ρ_A` is degenerate.
pub fn xstate_row(params: &XStateParams) -> Result<[f64; 7]> {
    let state = x_state_from_params(params)?;
    let diagonal = diagonal_discord(&state)?;
    let optimized = optimized_discord_2q(&state)?.value;
    Ok([
        params.r6,
        params.r8,
        params.r9,
        params.r15,
        optimized,
        diagonal,
        diagonal - optimized,
    ])
}

struct Sample {
    row: [f64; 7],
    excluded: u64,
    draws: u64,
}

/// Compares diagonal and optimized discord on random symmetric X-states.
/// Draws whose `ρ_A` is degenerate are excluded, counted and replaced.
pub fn run_xstate_comparison(cfg: &XStateConfig) -> Result<ExperimentRecord> {
    if cfg.samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    let results = par_map(cfg.samples, cfg.threads, |i| -> Result<Sample> {
        let mut rng = sample_rng(cfg.seed, i);
        let (mut excluded, mut draws) = (0, 0);
        loop {
            let (params, attempts) = sample_x_params_counted(&mut rng);
            draws += attempts;
            match xstate_row(&params) {
                Ok(row) => {
                    return Ok(Sample {
                        row,
                        excluded,
                        draws,
                    })
                }
                Err(Error::DegenerateMarginal { .. }) => excluded += 1,
                Err(e) => return Err(e),
            }
        }
    });
    let inputs = vec![
        kv("samples", cfg.samples),
        kv("equality_tol", cfg.equality_tol),
        kv("ordering_tol", ORDERING_TOL),
    ];
    let mut rec = ExperimentRecord::new("xstate", cfg.seed, inputs, &XSTATE_COLUMNS);
    let (mut excluded, mut draws) = (0u64, 0u64);
    for s in results {
        let s = s?;
        excluded += s.excluded;
        draws += s.draws;
        rec.rows.push(s.row.to_vec());
    }
    rec.counters = vec![
        ("excluded_degenerate".into(), excluded as f64),
        ("sampler_draws".into(), draws as f64),
    ];
    rec.finalize()
}

pub(super) fn summarize(rec: &ExperimentRecord) -> Result<Vec<(String, f64)>> {
    let eq_tol = input_f64(rec, "equality_tol")?;
    let ord_tol = input_f64(rec, "ordering_tol")?;
    let gap = column(rec, "difference")?;
    let matches = count(&gap, |g| g <= eq_tol);
    let n = rec.rows.len() as f64;
    Ok(vec![
        ("samples".into(), n),
        ("match_count".into(), matches),
        ("match_fraction".into(), matches / n),
        ("ordering_violations".into(), count(&gap, |g| g < -ord_tol)),
        ("min_difference".into(), min(&gap)),
        ("max_difference".into(), max(&gap)),
        (
            "mean_d_optimized".into(),
            mean(&column(rec, "d_optimized")?),
        ),
        ("mean_d_diagonal".into(), mean(&column(rec, "d_diagonal")?)),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_bloch_state_is_flagged() {
        assert!(matches!(
            xstate_row(&XStateParams::zero()),
            Err(Error::DegenerateMarginal { .. })
        ));
    }

    #[test]
    fn small_run() {
        let rec = run_xstate_comparison(&XStateConfig::new(40, 5)).unwrap();
        assert_eq!(rec.rows.len(), 40);
        assert_eq!(rec.summary_value("ordering_violations"), Some(0.0));
        assert!(rec.summary_value("sampler_draws").unwrap() >= 40.0);
    }
}
