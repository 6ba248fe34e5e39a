use super::{column, count, kv, max, min, par_map, sample_rng, ExperimentRecord};
use crate::discord::{
    continuity_bound, continuity_min_gap, diagonal_discord, generalized_discord,
    schatten_continuity_bound, DistanceMeasure,
};
use crate::error::{Error, Result};
use crate::linalg::eigen::DEGENERACY_TOL;
use crate::linalg::matrix::ComplexMatrix;
use crate::linalg::random::{gue, RandomSource};
use crate::linalg::{hermitian_eig, schatten_norm, trace_distance_norm};
use crate::states::{sample_random_bipartite, BipartiteState};

const DIRECTION_RETRIES: usize = 64;

#[derive(Clone, Debug)]
pub struct ContinuityConfig {
    pub d_a: usize,
    pub d_b: usize,
    pub samples: usize,
    pub eps_list: Vec<f64>,
    pub seed: u64,
    /// Exponent of the Schatten-norm discord checked alongside.
    pub schatten_p: f64,
    pub threads: usize,
}

impl ContinuityConfig {
    pub fn new(d_a: usize, d_b: usize, samples: usize, eps_list: Vec<f64>, seed: u64) -> Self {
        Self {
            d_a,
            d_b,
            samples,
            eps_list,
            seed,
            schatten_p: 2.0,
            threads: 1,
        }
    }
}

/// A density matrix at trace distance `eps` (in `||.||_1`) from `rho`.
///
/// Tries random traceless Hermitian directions first; if none keeps the
/// result positive, moves toward a random full-rank state instead. The flag is
/// set when that fallback was used.
pub fn perturb(
    rng: &mut RandomSource,
    rho: &ComplexMatrix,
    eps: f64,
) -> Result<(ComplexMatrix, bool)> {
    let n = rho.rows();
    if eps == 0.0 {
        return Ok((rho.clone(), false));
    }
    for _ in 0..DIRECTION_RETRIES {
        let g = gue(rng, n);
        let shift = g.trace().re / n as f64;
        let t = &g - &ComplexMatrix::identity(n).scale_real(shift);
        let norm = schatten_norm(&t, 1.0)?;
        if norm == 0.0 {
            continue;
        }
        let candidate = (rho + &t.scale_real(eps / norm)).hermitian_part();
        if hermitian_eig(&candidate)?.min_eigenvalue() >= 0.0 {
            return Ok((candidate, false));
        }
    }
    let sigma = sample_random_bipartite(rng, n, 1, n)?.into_rho();
    let dist = trace_distance_norm(&sigma, rho)?;
    let s = eps / dist;
    if s > 1.0 {
        return Err(Error::OutOfDomain(format!(
            "eps {eps} exceeds available distance {dist}"
        )));
    }
    Ok((
        (&rho.scale_real(1.0 - s) + &sigma.scale_real(s)).hermitian_part(),
        true,
    ))
}

#[derive(Default)]
struct Sample {
    rows: Vec<Vec<f64>>,
    small_gap: u64,
    discarded: u64,
    fallbacks: u64,
}

/// Perturbs random base states by each `ε` and compares the change of diagonal
/// discord (and of Schatten-norm discord) with the continuity bounds.
///
/// Base states must have a marginal gap large enough for every `ε` in the
/// list to lie in the bound's domain; perturbed marginals must keep at least
/// half the gap. Failing draws are replaced and counted.
pub fn run_continuity_check(cfg: &ContinuityConfig) -> Result<ExperimentRecord> {
    if cfg.samples == 0 || cfg.eps_list.is_empty() {
        return Err(Error::InvalidArgument(
            "need at least one sample and one eps".into(),
        ));
    }
    if cfg.eps_list.iter().any(|&e| !(0.0..1.0).contains(&e)) {
        return Err(Error::InvalidArgument(format!(
            "eps values must lie in [0, 1): {:?}",
            cfg.eps_list
        )));
    }
    let (d_a, d_b) = (cfg.d_a, cfg.d_b);
    let eps_max = cfg.eps_list.iter().copied().fold(0.0, f64::max);
    let required_gap = continuity_min_gap(d_a, d_b, eps_max).max(DEGENERACY_TOL);
    let delta = DistanceMeasure::SchattenNorm { p: cfg.schatten_p };

    let results = par_map(cfg.samples, cfg.threads, |i| -> Result<Sample> {
        let mut rng = sample_rng(cfg.seed, i);
        let mut out = Sample::default();
        'base: loop {
            out.rows.clear();
            let state = sample_random_bipartite(&mut rng, d_a, d_b, d_a * d_b)?;
            let gap = hermitian_eig(&state.marginal_a())?.min_gap;
            if gap < required_gap {
                out.small_gap += 1;
                continue;
            }
            let d0 = diagonal_discord(&state)?;
            let g0 = generalized_discord(&state, delta)?;
            for &eps in &cfg.eps_list {
                let (rho, fallback) = perturb(&mut rng, state.rho(), eps)?;
                out.fallbacks += fallback as u64;
                let moved = BipartiteState::new(rho, d_a, d_b)?;
                if hermitian_eig(&moved.marginal_a())?.min_gap < gap / 2.0 {
                    out.discarded += 1;
                    continue 'base;
                }
                let actual = trace_distance_norm(moved.rho(), state.rho())?;
                let change = (diagonal_discord(&moved)? - d0).abs();
                let bound = continuity_bound(d_a, d_b, gap, eps)?;
                let s_change = (generalized_discord(&moved, delta)? - g0).abs();
                let s_bound = schatten_continuity_bound(d_a, d_b, gap, eps);
                out.rows.push(vec![
                    eps,
                    gap,
                    actual,
                    change,
                    bound,
                    bound - change,
                    s_change,
                    s_bound,
                    s_bound - s_change,
                ]);
            }
            return Ok(out);
        }
    });

    let eps_text: Vec<String> = cfg.eps_list.iter().map(|e| e.to_string()).collect();
    let inputs = vec![
        kv("dim_a", d_a),
        kv("dim_b", d_b),
        kv("samples", cfg.samples),
        kv("eps", eps_text.join(" ")),
        kv("schatten_p", cfg.schatten_p),
        kv("required_gap", required_gap),
    ];
    let columns = [
        "eps",
        "gap",
        "actual_distance",
        "abs_change",
        "bound",
        "slack",
        "schatten_abs_change",
        "schatten_bound",
        "schatten_slack",
    ];
    let mut rec = ExperimentRecord::new("continuity", cfg.seed, inputs, &columns);
    let (mut small_gap, mut discarded, mut fallbacks) = (0u64, 0u64, 0u64);
    for s in results {
        let s = s?;
        small_gap += s.small_gap;
        discarded += s.discarded;
        fallbacks += s.fallbacks;
        rec.rows.extend(s.rows);
    }
    rec.counters = vec![
        ("resampled_small_gap".into(), small_gap as f64),
        ("discarded_gap_collapse".into(), discarded as f64),
        ("fallback_directions".into(), fallbacks as f64),
    ];
    rec.finalize()
}

pub(super) fn summarize(rec: &ExperimentRecord) -> Result<Vec<(String, f64)>> {
    let slack = column(rec, "slack")?;
    let s_slack = column(rec, "schatten_slack")?;
    let change = column(rec, "abs_change")?;
    let bound = column(rec, "bound")?;
    let ratios: Vec<f64> = change
        .iter()
        .zip(&bound)
        .filter(|(_, &b)| b > 0.0)
        .map(|(c, b)| c / b)
        .collect();
    Ok(vec![
        ("rows".into(), rec.rows.len() as f64),
        ("min_slack".into(), min(&slack)),
        ("violation_count".into(), count(&slack, |s| s < 0.0)),
        (
            "max_bound_ratio".into(),
            if ratios.is_empty() { 0.0 } else { max(&ratios) },
        ),
        ("min_schatten_slack".into(), min(&s_slack)),
        (
            "schatten_violation_count".into(),
            count(&s_slack, |s| s < 0.0),
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perturbation_has_requested_size() {
        let mut rng = RandomSource::from_seed(3);
        for eps in [1e-3, 1e-4, 0.05] {
            let rho = sample_random_bipartite(&mut rng, 2, 2, 4)
                .unwrap()
                .into_rho();
            let (moved, _) = perturb(&mut rng, &rho, eps).unwrap();
            let d = trace_distance_norm(&moved, &rho).unwrap();
            assert!((d - eps).abs() < 1e-12 * eps.max(1.0), "{d} vs {eps}");
            assert!((moved.trace().re - 1.0).abs() < 1e-14);
            assert!(hermitian_eig(&moved).unwrap().min_eigenvalue() >= 0.0);
        }
    }

    #[test]
    fn pure_state_uses_fallback() {
        let mut rng = RandomSource::from_seed(4);
        let rho = sample_random_bipartite(&mut rng, 2, 2, 1)
            .unwrap()
            .into_rho();
        let (moved, fallback) = perturb(&mut rng, &rho, 1e-3).unwrap();
        assert!(fallback);
        assert!((trace_distance_norm(&moved, &rho).unwrap() - 1e-3).abs() < 1e-12);
    }

    #[test]
    fn zero_eps_rows() {
        let rec = run_continuity_check(&ContinuityConfig::new(2, 2, 5, vec![0.0], 1)).unwrap();
        assert!(rec.column("abs_change").unwrap().iter().all(|&c| c == 0.0));
        assert!(rec.column("slack").unwrap().iter().all(|&s| s == 0.0));
    }

    #[test]
    fn small_run_respects_bounds() {
        let rec =
            run_continuity_check(&ContinuityConfig::new(2, 2, 10, vec![1e-3, 1e-4], 2)).unwrap();
        assert_eq!(rec.rows.len(), 20);
        assert!(rec.summary_value("min_slack").unwrap() >= 0.0);
        assert!(rec.summary_value("min_schatten_slack").unwrap() >= 0.0);
    }
}
