//! WebAssembly bindings behind `www/index.html`.
//!
//! Every export returns a flat `Float64Array`; the page slices it into points.

use wasm_bindgen::prelude::*;

use diagdisc::channels::builtin;
use diagdisc::discord::{continuity_bound, continuity_eps_limit, diagonal_discord};
use diagdisc::experiments::{perturb, run_monotonicity, xstate_row, MonotonicityConfig};
use diagdisc::linalg::hermitian_eig;
use diagdisc::linalg::random::RandomSource;
use diagdisc::states::{random_bipartite_with_gap, sample_x_params, BipartiteState, XStateParams};

const MAX_SAMPLES: usize = 5_000;

fn check_samples(samples: usize) -> Result<(), String> {
    if samples == 0 || samples > MAX_SAMPLES {
        return Err(format!("samples must be in 1..={MAX_SAMPLES}"));
    }
    Ok(())
}

/// `[d_optimized, d_diagonal, min_eigenvalue]` for one X-state.
pub fn xstate_point_impl(r6: f64, r8: f64, r9: f64, r15: f64) -> Result<Vec<f64>, String> {
    let p = XStateParams::new(r6, r8, r9, r15).map_err(|e| e.to_string())?;
    let row = xstate_row(&p).map_err(|e| e.to_string())?;
    Ok(vec![row[4], row[5], p.min_eigenvalue()])
}

/// `(d_optimized, d_diagonal)` pairs for random X-states; degenerate draws are skipped.
pub fn xstate_scatter_impl(samples: usize, seed: u64) -> Result<Vec<f64>, String> {
    check_samples(samples)?;
    let mut rng = RandomSource::from_seed(seed);
    let mut out = Vec::with_capacity(2 * samples);
    while out.len() < 2 * samples {
        if let Ok(row) = xstate_row(&sample_x_params(&mut rng)) {
            out.extend([row[4], row[5]]);
        }
    }
    Ok(out)
}

/// `(before, after)` pairs of the monotonicity experiment for a built-in channel.
pub fn monotonicity_scatter_impl(
    channel: &str,
    samples: usize,
    seed: u64,
) -> Result<Vec<f64>, String> {
    check_samples(samples)?;
    let ch = builtin(channel).ok_or_else(|| format!("unknown channel `{channel}`"))?;
    let rec = run_monotonicity(&MonotonicityConfig::new(ch, channel, samples, seed))
        .map_err(|e| e.to_string())?;
    let (before, after) = (
        rec.column("d_before").unwrap(),
        rec.column("d_after").unwrap(),
    );
    Ok(before
        .into_iter()
        .zip(after)
        .flat_map(|(b, a)| [b, a])
        .collect())
}

/// `(ε, |ΔD̄|, bound)` triples on a log grid up to the largest admissible `ε`
/// for one random base state.
pub fn continuity_curve_impl(
    d_a: usize,
    d_b: usize,
    points: usize,
    seed: u64,
) -> Result<Vec<f64>, String> {
    if !(2..=4).contains(&d_a) || !(1..=4).contains(&d_b) || !(2..=200).contains(&points) {
        return Err("need 2 <= d_a <= 4, 1 <= d_b <= 4 and 2..=200 points".into());
    }
    let err = |e: diagdisc::Error| e.to_string();
    let mut rng = RandomSource::from_seed(seed);
    let (base, _) = random_bipartite_with_gap(&mut rng, d_a, d_b, d_a * d_b, 0.05).map_err(err)?;
    let gap = hermitian_eig(&base.marginal_a()).map_err(err)?.min_gap;
    let d0 = diagonal_discord(&base).map_err(err)?;
    let hi = continuity_eps_limit(d_a, d_b, gap);
    let lo = hi * 1e-4;
    let mut out = Vec::with_capacity(3 * points);
    for k in 0..points {
        let eps = lo * (hi / lo).powf(k as f64 / (points - 1) as f64);
        let bound = continuity_bound(d_a, d_b, gap, eps).map_err(err)?;
        let mut stream = RandomSource::for_stream(seed, k as u64 + 1);
        let (rho, _) = perturb(&mut stream, base.rho(), eps).map_err(err)?;
        let moved = BipartiteState::new(rho, d_a, d_b).map_err(err)?;
        let change = diagonal_discord(&moved)
            .map(|d| (d - d0).abs())
            .unwrap_or(f64::NAN);
        out.extend([eps, change, bound]);
    }
    Ok(out)
}

#[wasm_bindgen]
pub fn xstate_point(r6: f64, r8: f64, r9: f64, r15: f64) -> Result<Vec<f64>, JsError> {
    xstate_point_impl(r6, r8, r9, r15).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn xstate_scatter(samples: usize, seed: u32) -> Result<Vec<f64>, JsError> {
    xstate_scatter_impl(samples, seed as u64).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn monotonicity_scatter(channel: &str, samples: usize, seed: u32) -> Result<Vec<f64>, JsError> {
    monotonicity_scatter_impl(channel, samples, seed as u64).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn continuity_curve(
    d_a: usize,
    d_b: usize,
    points: usize,
    seed: u32,
) -> Result<Vec<f64>, JsError> {
    continuity_curve_impl(d_a, d_b, points, seed as u64).map_err(|e| JsError::new(&e))
}
