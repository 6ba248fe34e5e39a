use super::{column, input_f64, kv, par_map, sample_rng, ExperimentRecord};
use crate::channels::{
    commutes_with_pi, fig2a, is_discord_nongenerating, random_isotropic, random_mixed_unitary,
    random_semiclassical, QuantumChannel, Verdict, PROBE_DIM_B, PROBE_MIN_GAP,
};
use crate::discord::{diagonal_discord, diagonal_discord_with, DegeneracyPolicy};
use crate::error::{Error, Result};
use crate::linalg::random::RandomSource;
use crate::states::random_bipartite_with_gap;

use super::monotonicity::MONOTONICITY_TOL;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChannelClass {
    MixedUnitary,
    Isotropic,
    AntiunitaryIsotropic,
    Semiclassical,
    /// `⅓ρ + ⅔HρH`, added for qubits.
    ProbabilisticHadamard,
}

impl ChannelClass {
    pub const ALL: [ChannelClass; 5] = [
        ChannelClass::MixedUnitary,
        ChannelClass::Isotropic,
        ChannelClass::AntiunitaryIsotropic,
        ChannelClass::Semiclassical,
        ChannelClass::ProbabilisticHadamard,
    ];

    pub fn code(self) -> f64 {
        self as u8 as f64
    }

    pub fn name(self) -> &'static str {
        match self {
            ChannelClass::MixedUnitary => "mixed_unitary",
            ChannelClass::Isotropic => "isotropic",
            ChannelClass::AntiunitaryIsotropic => "antiunitary_isotropic",
            ChannelClass::Semiclassical => "semiclassical",
            ChannelClass::ProbabilisticHadamard => "probabilistic_hadamard",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClassificationConfig {
    pub d_a: usize,
    pub per_class: usize,
    /// Probe states per channel for each test.
    pub trials: usize,
    pub seed: u64,
    /// Number of unitaries in random mixed-unitary channels.
    pub mu_terms: usize,
    pub threads: usize,
}

impl ClassificationConfig {
    pub fn new(d_a: usize, per_class: usize, trials: usize, seed: u64) -> Self {
        Self {
            d_a,
            per_class,
            trials,
            seed,
            mu_terms: 3,
            threads: 1,
        }
    }
}

fn verdict_code(v: Verdict) -> f64 {
    match v {
        Verdict::Holds => 0.0,
        Verdict::Violated => 1.0,
        Verdict::Inconclusive => 2.0,
    }
}

/// Largest increase of diagonal discord and number of increases above
/// tolerance over `trials` random inputs, plus the number of inputs for which
/// the lifted map left the state space.
fn monotonicity_probe(
    channel: &QuantumChannel,
    trials: usize,
    rng: &mut RandomSource,
) -> Result<(f64, f64, f64)> {
    let d = channel.dim();
    let (mut worst, mut violations, mut skipped) = (f64::NEG_INFINITY, 0.0, 0.0);
    for _ in 0..trials {
        let (state, _) =
            random_bipartite_with_gap(rng, d, PROBE_DIM_B, d * PROBE_DIM_B, PROBE_MIN_GAP)?;
        let before = diagonal_discord(&state)?;
        let after = match channel.apply_local_a(&state) {
            Ok(out) => match diagonal_discord(&out) {
                Ok(v) => v,
                Err(Error::DegenerateMarginal { .. }) => {
                    match diagonal_discord_with(&out, DegeneracyPolicy::Optimize) {
                        Ok(v) => v,
                        Err(_) => {
                            skipped += 1.0;
                            continue;
                        }
                    }
                }
                Err(e) => return Err(e),
            },
            Err(Error::NotPositiveSemidefinite { .. }) => {
                skipped += 1.0;
                continue;
            }
            Err(e) => return Err(e),
        };
        let increase = after - before;
        worst = worst.max(increase);
        if increase > MONOTONICITY_TOL {
            violations += 1.0;
        }
    }
    Ok((worst, violations, skipped))
}

/// Samples channels from each class and records how they relate to `π_A`.
pub fn run_channel_classification(cfg: &ClassificationConfig) -> Result<ExperimentRecord> {
    if cfg.d_a < 2 || cfg.per_class == 0 || cfg.trials == 0 {
        return Err(Error::InvalidArgument(
            "need d_a >= 2 and positive per_class and trials".into(),
        ));
    }
    let mut jobs: Vec<ChannelClass> = Vec::new();
    for class in &ChannelClass::ALL[..4] {
        jobs.extend(std::iter::repeat_n(*class, cfg.per_class));
    }
    if cfg.d_a == 2 {
        jobs.push(ChannelClass::ProbabilisticHadamard);
    }
    let results = par_map(jobs.len(), cfg.threads, |j| -> Result<Vec<f64>> {
        let mut rng = sample_rng(cfg.seed, j);
        let class = jobs[j];
        let mut gamma = -1.0;
        let channel = match class {
            ChannelClass::MixedUnitary => random_mixed_unitary(&mut rng, cfg.d_a, cfg.mu_terms),
            ChannelClass::Isotropic | ChannelClass::AntiunitaryIsotropic => {
                gamma = rng.uniform(0.0, 1.0);
                random_isotropic(
                    &mut rng,
                    cfg.d_a,
                    gamma,
                    class == ChannelClass::AntiunitaryIsotropic,
                )?
            }
            ChannelClass::Semiclassical => random_semiclassical(&mut rng, cfg.d_a),
            ChannelClass::ProbabilisticHadamard => fig2a(),
        };
        let commute = commutes_with_pi(&channel, cfg.trials, &mut rng);
        let nongen = is_discord_nongenerating(&channel, cfg.trials, &mut rng);
        let (worst, violations, mono_skipped) = monotonicity_probe(&channel, cfg.trials, &mut rng)?;
        Ok(vec![
            class.code(),
            gamma,
            commute.max_deviation,
            verdict_code(commute.verdict()),
            nongen.max_deviation,
            verdict_code(nongen.verdict()),
            worst,
            violations,
            (commute.skipped + nongen.skipped) as f64,
            mono_skipped,
        ])
    });
    let inputs = vec![
        kv("dim_a", cfg.d_a),
        kv("per_class", cfg.per_class),
        kv("trials", cfg.trials),
        kv("mu_terms", cfg.mu_terms),
    ];
    let columns = [
        "class",
        "gamma",
        "commute_deviation",
        "commute_verdict",
        "nongen_deviation",
        "nongen_verdict",
        "max_discord_increase",
        "monotonicity_violations",
        "skipped_degenerate",
        "skipped_nonpositive",
    ];
    let mut rec = ExperimentRecord::new("classify-sweep", cfg.seed, inputs, &columns);
    for r in results {
        rec.rows.push(r?);
    }
    rec.finalize()
}

pub(super) fn summarize(rec: &ExperimentRecord) -> Result<Vec<(String, f64)>> {
    input_f64(rec, "dim_a")?;
    let class = column(rec, "class")?;
    let commute = column(rec, "commute_verdict")?;
    let nongen = column(rec, "nongen_verdict")?;
    let mono = column(rec, "monotonicity_violations")?;
    let mut out = vec![("channels".to_string(), rec.rows.len() as f64)];
    for c in ChannelClass::ALL {
        let idx: Vec<usize> = (0..class.len()).filter(|&i| class[i] == c.code()).collect();
        if idx.is_empty() {
            continue;
        }
        let n = idx.len() as f64;
        let frac =
            |col: &[f64], code: f64| idx.iter().filter(|&&i| col[i] == code).count() as f64 / n;
        let name = c.name();
        out.push((format!("{name}_channels"), n));
        out.push((format!("{name}_commuting_fraction"), frac(&commute, 0.0)));
        out.push((format!("{name}_noncommuting_fraction"), frac(&commute, 1.0)));
        out.push((format!("{name}_nongenerating_fraction"), frac(&nongen, 0.0)));
        out.push((
            format!("{name}_monotonicity_violations"),
            idx.iter().map(|&i| mono[i]).sum(),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qutrit_sweep_structure() {
        let rec = run_channel_classification(&ClassificationConfig::new(3, 2, 15, 9)).unwrap();
        assert_eq!(rec.rows.len(), 8);
        assert_eq!(rec.summary_value("isotropic_commuting_fraction"), Some(1.0));
        assert_eq!(
            rec.summary_value("antiunitary_isotropic_commuting_fraction"),
            Some(1.0)
        );
        assert_eq!(
            rec.summary_value("semiclassical_commuting_fraction"),
            Some(0.0)
        );
        assert_eq!(
            rec.summary_value("semiclassical_nongenerating_fraction"),
            Some(1.0)
        );
        assert!(rec
            .summary_value("probabilistic_hadamard_channels")
            .is_none());
    }

    #[test]
    fn qubit_sweep_includes_hadamard_mix() {
        let rec = run_channel_classification(&ClassificationConfig::new(2, 1, 30, 10)).unwrap();
        assert_eq!(
            rec.summary_value("probabilistic_hadamard_noncommuting_fraction"),
            Some(1.0)
        );
        assert_eq!(
            rec.summary_value("probabilistic_hadamard_monotonicity_violations"),
            Some(0.0)
        );
    }
}
