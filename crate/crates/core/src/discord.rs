//! The eigenbasis-dephasing map `π` and the discord quantities built on it.
//!
//! `π_A` measures subsystem `A` in the eigenbasis of `ρ_A` without recording the
//! outcome. Diagonal discord is the entropy this adds, `S(π_A(ρ)) - S(ρ)`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::entropy::{entropy_trusted, shannon_entropy};
use crate::linalg::matrix::{ComplexMatrix, C64, ZERO};
use crate::linalg::{hermitian_eig, relative_entropy, schatten_norm, SpectralDecomposition};
use crate::optim::{grid_search_2d, linspace, nelder_mead};
use crate::states::{trace_out_b, BipartiteState, MultipartiteState};

/// What to do when the measured marginal has a repeated eigenvalue.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DegeneracyPolicy {
    /// Fail with [`Error::DegenerateMarginal`].
    #[default]
    Reject,
    /// Pick, inside each two-dimensional degenerate block, the basis that
    /// minimizes `S(π_A(ρ))`. Larger blocks are rejected.
    Optimize,
}

/// Outcome of [`pi_a`].
#[derive(Clone, Debug)]
pub struct PiResult {
    pub dephased: BipartiteState,
    /// Measurement basis on `A`, as columns.
    pub basis_used: ComplexMatrix,
    pub degenerate: bool,
    pub optimized_over_degeneracy: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DistanceMeasure {
    RelativeEntropy,
    /// `p >= 1`; `f64::INFINITY` selects the operator norm.
    SchattenNorm {
        p: f64,
    },
}

/// Grid used by [`optimized_discord_2q`] (polar x azimuthal).
pub const OPT_GRID: (usize, usize) = (64, 32);
/// Grid used inside degenerate blocks under [`DegeneracyPolicy::Optimize`].
pub const DEGENERATE_GRID: (usize, usize) = (48, 24);
/// Angle tolerance of the local refinement.
pub const ANGLE_TOL: f64 = 1e-8;
const MAX_REFINE_ITER: usize = 2_000;

/// `Σ_i (P_i ⊗ I) m (P_i ⊗ I)` with `P_i` the projectors onto the columns of `basis`.
pub fn dephase_a(
    m: &ComplexMatrix,
    dim_a: usize,
    dim_b: usize,
    basis: &ComplexMatrix,
) -> ComplexMatrix {
    let lift = basis.kron(&ComplexMatrix::identity(dim_b));
    let q = lift.adjoint().matmul(m).matmul(&lift);
    let n = dim_a * dim_b;
    let blocked = ComplexMatrix::from_fn(n, n, |r, c| {
        if r / dim_b == c / dim_b {
            q[(r, c)]
        } else {
            ZERO
        }
    });
    lift.matmul(&blocked).matmul(&lift.adjoint())
}

/// `π_A` applied to an arbitrary operator whose `A` marginal is Hermitian and
/// nondegenerate.
pub fn pi_a_operator(m: &ComplexMatrix, dim_a: usize, dim_b: usize) -> Result<ComplexMatrix> {
    let spec = hermitian_eig(&trace_out_b(m, dim_a, dim_b))?;
    if spec.is_degenerate() {
        return Err(degenerate_error(0, &spec));
    }
    Ok(dephase_a(m, dim_a, dim_b, &spec.eigenvectors))
}

fn degenerate_error(party: usize, spec: &SpectralDecomposition) -> Error {
    Error::DegenerateMarginal {
        party,
        gap: spec.min_gap,
        eigenvalues: spec.eigenvalues.clone(),
        blocks: spec.degenerate_blocks.clone(),
    }
}

pub fn pi_a(state: &BipartiteState) -> Result<PiResult> {
    pi_a_with(state, DegeneracyPolicy::Reject)
}

pub fn pi_a_with(state: &BipartiteState, policy: DegeneracyPolicy) -> Result<PiResult> {
    let (d_a, d_b) = (state.dim_a(), state.dim_b());
    let spec = hermitian_eig(&state.marginal_a())?;
    let degenerate = spec.is_degenerate();
    let mut basis = spec.eigenvectors.clone();
    if degenerate {
        if policy == DegeneracyPolicy::Reject {
            return Err(degenerate_error(0, &spec));
        }
        for block in &spec.degenerate_blocks {
            if block.len() > 2 {
                return Err(Error::DegenerateBlockTooLarge { size: block.len() });
            }
            let (v1, v2) = (
                spec.eigenvector(block.start),
                spec.eigenvector(block.start + 1),
            );
            let (u, w) = best_block_basis(state, &v1, &v2);
            for r in 0..d_a {
                basis[(r, block.start)] = u[r];
                basis[(r, block.start + 1)] = w[r];
            }
        }
    }
    let dephased = dephase_a(state.rho(), d_a, d_b, &basis).hermitian_part();
    Ok(PiResult {
        dephased: BipartiteState::new_unchecked(dephased, d_a, d_b),
        basis_used: basis,
        degenerate,
        optimized_over_degeneracy: degenerate,
    })
}

/// `(<u| ⊗ I) ρ (|u> ⊗ I)`.
fn conditional_block(rho: &ComplexMatrix, d_a: usize, d_b: usize, u: &[C64]) -> ComplexMatrix {
    ComplexMatrix::from_fn(d_b, d_b, |k, l| {
        let mut acc = ZERO;
        for i in 0..d_a {
            for j in 0..d_a {
                acc += u[i].conj() * u[j] * rho[(i * d_b + k, j * d_b + l)];
            }
        }
        acc
    })
}

/// `-tr M log2 M` for a PSD matrix of any trace.
fn unnormalized_entropy(m: &ComplexMatrix) -> f64 {
    if m.rows() == 2 {
        let (a, d) = (m[(0, 0)].re, m[(1, 1)].re);
        let off = m[(0, 1)].norm_sqr();
        let half = 0.5 * (a + d);
        let disc = (0.25 * (a - d) * (a - d) + off).sqrt();
        return shannon_entropy(&[half + disc, half - disc]);
    }
    hermitian_eig(&m.hermitian_part()).map_or(f64::INFINITY, |s| shannon_entropy(&s.eigenvalues))
}

/// `cos(θ/2) v1 + e^{iφ} sin(θ/2) v2` and its orthogonal partner.
fn rotated_pair(v1: &[C64], v2: &[C64], theta: f64, phi: f64) -> (Vec<C64>, Vec<C64>) {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let e = C64::from_polar(1.0, phi);
    let u = v1.iter().zip(v2).map(|(a, b)| a * c + b * e * s).collect();
    let w = v1
        .iter()
        .zip(v2)
        .map(|(a, b)| -a * e.conj() * s + b * c)
        .collect();
    (u, w)
}

fn best_block_basis(state: &BipartiteState, v1: &[C64], v2: &[C64]) -> (Vec<C64>, Vec<C64>) {
    let (d_a, d_b) = (state.dim_a(), state.dim_b());
    let mut f = |p: [f64; 2]| {
        let (u, w) = rotated_pair(v1, v2, p[0], p[1]);
        unnormalized_entropy(&conditional_block(state.rho(), d_a, d_b, &u))
            + unnormalized_entropy(&conditional_block(state.rho(), d_a, d_b, &w))
    };
    let thetas = linspace(0.0, PI, DEGENERATE_GRID.0, true);
    let phis = linspace(0.0, 2.0 * PI, DEGENERATE_GRID.1, false);
    let seed = grid_search_2d(&mut f, &thetas, &phis);
    let step = [PI / DEGENERATE_GRID.0 as f64, PI / DEGENERATE_GRID.1 as f64];
    let refined = nelder_mead(&mut f, seed.point, step, ANGLE_TOL, MAX_REFINE_ITER);
    let best = if refined.value <= seed.value {
        refined.point
    } else {
        seed.point
    };
    rotated_pair(v1, v2, best[0], best[1])
}

pub fn diagonal_discord(state: &BipartiteState) -> Result<f64> {
    diagonal_discord_with(state, DegeneracyPolicy::Reject)
}

/// `S(π_A(ρ)) - S(ρ)` in bits.
pub fn diagonal_discord_with(state: &BipartiteState, policy: DegeneracyPolicy) -> Result<f64> {
    let pi = pi_a_with(state, policy)?;
    let s_pi = entropy_trusted(pi.dephased.rho())?;
    let s = entropy_trusted(state.rho())?;
    Ok((s_pi - s).max(0.0))
}

/// `S(ρ_A) + S(ρ_B) - S(ρ_AB)` in bits.
pub fn mutual_information(state: &BipartiteState) -> Result<f64> {
    let s_a = entropy_trusted(&state.marginal_a())?;
    let s_b = entropy_trusted(&state.marginal_b())?;
    let s = entropy_trusted(state.rho())?;
    Ok((s_a + s_b - s).max(0.0))
}

pub fn diagonal_discord_via_mi(state: &BipartiteState) -> Result<f64> {
    diagonal_discord_via_mi_with(state, DegeneracyPolicy::Reject)
}

/// `I(ρ) - I(π_A(ρ))`.
pub fn diagonal_discord_via_mi_with(
    state: &BipartiteState,
    policy: DegeneracyPolicy,
) -> Result<f64> {
    let pi = pi_a_with(state, policy)?;
    Ok((mutual_information(state)? - mutual_information(&pi.dephased)?).max(0.0))
}

pub fn generalized_discord(state: &BipartiteState, delta: DistanceMeasure) -> Result<f64> {
    generalized_discord_with(state, delta, DegeneracyPolicy::Reject)
}

/// `δ(ρ, π_A(ρ))`.
pub fn generalized_discord_with(
    state: &BipartiteState,
    delta: DistanceMeasure,
    policy: DegeneracyPolicy,
) -> Result<f64> {
    let pi = pi_a_with(state, policy)?;
    match delta {
        DistanceMeasure::RelativeEntropy => relative_entropy(state.rho(), pi.dephased.rho()),
        DistanceMeasure::SchattenNorm { p } => schatten_norm(&(state.rho() - pi.dephased.rho()), p),
    }
}

/// Dephases every party in `parties` in the eigenbasis of its own marginal.
pub fn pi_multi(state: &MultipartiteState, parties: &[usize]) -> Result<MultipartiteState> {
    let dims = state.dims().to_vec();
    let mut measured = vec![false; dims.len()];
    for &p in parties {
        if p >= dims.len() {
            return Err(Error::dims(format!("party < {}", dims.len()), p));
        }
        measured[p] = true;
    }
    let mut lift = ComplexMatrix::identity(1);
    for (k, &d) in dims.iter().enumerate() {
        let local = if measured[k] {
            let spec = hermitian_eig(&state.marginal(k)?)?;
            if spec.is_degenerate() {
                return Err(degenerate_error(k, &spec));
            }
            spec.eigenvectors
        } else {
            ComplexMatrix::identity(d)
        };
        lift = lift.kron(&local);
    }

    let n = state.rho().rows();
    let key = |mut idx: usize| -> usize {
        let mut key = 0;
        for (k, &d) in dims.iter().enumerate().rev() {
            let digit = idx % d;
            idx /= d;
            if measured[k] {
                key = key * d + digit;
            }
        }
        key
    };
    let keys: Vec<usize> = (0..n).map(key).collect();
    let q = lift.adjoint().matmul(state.rho()).matmul(&lift);
    let blocked = ComplexMatrix::from_fn(
        n,
        n,
        |r, c| if keys[r] == keys[c] { q[(r, c)] } else { ZERO },
    );
    let out = lift
        .matmul(&blocked)
        .matmul(&lift.adjoint())
        .hermitian_part();
    Ok(MultipartiteState::new_unchecked(out, dims))
}

/// Two-qubit discord optimized over projective measurements on `A`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OptimizedDiscord {
    pub value: f64,
    /// `(θ, φ)` of the measurement direction `cos(θ/2)|0> + e^{iφ} sin(θ/2)|1>`.
    pub best_angles: (f64, f64),
}

/// `S(ρ_A) - S(ρ) + min_{θ,φ} Σ_k p_k S(ρ_B|k)`, searched on a grid and refined
/// with Nelder-Mead. The eigenbasis of `ρ_A` is always a candidate, so the
/// result never exceeds the diagonal discord.
pub fn optimized_discord_2q(state: &BipartiteState) -> Result<OptimizedDiscord> {
    if state.dim_a() != 2 || state.dim_b() != 2 {
        return Err(Error::dims(
            "2x2",
            format!("{}x{}", state.dim_a(), state.dim_b()),
        ));
    }
    let rho = state.rho();
    let block =
        |i: usize, j: usize| ComplexMatrix::from_fn(2, 2, |k, l| rho[(2 * i + k, 2 * j + l)]);
    let (r00, r01, r11) = (block(0, 0), block(0, 1), block(1, 1));
    let rho_b = &r00 + &r11;

    let mut conditional = |p: [f64; 2]| -> f64 {
        let (c, s) = ((p[0] / 2.0).cos(), (p[0] / 2.0).sin());
        let e = C64::from_polar(1.0, p[1]);
        // <u|ρ|u> with u = (c, e s): c² ρ00 + s² ρ11 + c s (e ρ01 + ē ρ10).
        let cross = r01.scale(e * c * s);
        let m = ComplexMatrix::from_fn(2, 2, |k, l| {
            r00[(k, l)] * (c * c) + r11[(k, l)] * (s * s) + cross[(k, l)] + cross[(l, k)].conj()
        });
        let p0 = m[(0, 0)].re + m[(1, 1)].re;
        let m_perp = &rho_b - &m;
        unnormalized_entropy(&m) + unnormalized_entropy(&m_perp) - shannon_entropy(&[p0, 1.0 - p0])
    };

    let thetas = linspace(0.0, PI, OPT_GRID.0, true);
    let phis = linspace(0.0, 2.0 * PI, OPT_GRID.1, false);
    let mut seed = grid_search_2d(&mut conditional, &thetas, &phis);
    let eig = hermitian_eig(&state.marginal_a())?;
    let candidate = angles_of(&eig.eigenvector(0));
    let at_candidate = conditional(candidate);
    if at_candidate <= seed.value {
        seed.point = candidate;
        seed.value = at_candidate;
    }
    let step = [PI / OPT_GRID.0 as f64, PI / OPT_GRID.1 as f64];
    let refined = nelder_mead(
        &mut conditional,
        seed.point,
        step,
        ANGLE_TOL,
        MAX_REFINE_ITER,
    );
    let (point, min) = if refined.value <= seed.value {
        (refined.point, refined.value)
    } else {
        (seed.point, seed.value)
    };

    let s_a = shannon_entropy(&eig.eigenvalues);
    let s = entropy_trusted(rho)?;
    Ok(OptimizedDiscord {
        value: (s_a - s + min).max(0.0),
        best_angles: normalize_angles(point[0], point[1]),
    })
}

/// Angles `(θ, φ)` with `(cos(θ/2), e^{iφ} sin(θ/2))` equal to `v` up to phase.
fn angles_of(v: &[C64]) -> [f64; 2] {
    let theta = 2.0 * v[0].norm().clamp(0.0, 1.0).acos();
    let phi = if v[0].norm() < 1e-15 || v[1].norm() < 1e-15 {
        0.0
    } else {
        v[1].arg() - v[0].arg()
    };
    let (t, p) = normalize_angles(theta, phi);
    [t, p]
}

/// Maps angles to `θ ∈ [0, π]`, `φ ∈ [0, 2π)` describing the same projector.
fn normalize_angles(theta: f64, phi: f64) -> (f64, f64) {
    let mut t = theta.rem_euclid(2.0 * PI);
    let mut p = phi;
    if t > PI {
        t = 2.0 * PI - t;
        p += PI;
    }
    (t, p.rem_euclid(2.0 * PI))
}

fn gap_constant(d_a: usize, d_b: usize) -> f64 {
    (2.0 * ((d_a * d_b) as f64).powi(3)).sqrt()
}

/// Largest `ε` accepted by [`continuity_bound`] for the given dimensions and gap.
pub fn continuity_eps_limit(d_a: usize, d_b: usize, gap: f64) -> f64 {
    1.0 / (2.0 * gap_constant(d_a, d_b) / gap + 1.0)
}

/// Smallest gap for which [`continuity_bound`] accepts `eps`.
pub fn continuity_min_gap(d_a: usize, d_b: usize, eps: f64) -> f64 {
    2.0 * gap_constant(d_a, d_b) * eps / (1.0 - eps)
}

fn binary_entropy_unchecked(x: f64) -> f64 {
    shannon_entropy(&[x, 1.0 - x])
}

/// Upper bound on `|D̄(ρ') - D̄(ρ)|` for `||ρ' - ρ||_1 <= ε`, where `Δ` is the
/// smallest eigenvalue gap of `ρ_A`:
/// `(K + 1) ε log2(d_A d_B - 1) + H((2K + 1) ε / 2) + H(ε / 2)`, `K = √(2 d_A³ d_B³) / Δ`.
///
/// Both binary-entropy arguments must be at most 1/2, the range on which the
/// bound grows with `ε`.
pub fn continuity_bound(d_a: usize, d_b: usize, gap: f64, eps: f64) -> Result<f64> {
    if d_a == 0 || d_b == 0 || d_a * d_b < 2 {
        return Err(Error::OutOfDomain(format!("dimensions {d_a}x{d_b}")));
    }
    if !(gap > 0.0 && gap.is_finite()) {
        return Err(Error::OutOfDomain(format!("gap {gap} must be positive")));
    }
    if !(eps >= 0.0 && eps.is_finite()) {
        return Err(Error::OutOfDomain(format!(
            "eps {eps} must be non-negative"
        )));
    }
    let k = gap_constant(d_a, d_b) / gap;
    let x1 = 0.5 * (2.0 * k + 1.0) * eps;
    if x1 > 0.5 {
        return Err(Error::OutOfDomain(format!(
            "eps {eps} too large for gap {gap}: binary-entropy argument {x1} exceeds 1/2"
        )));
    }
    let log_term = ((d_a * d_b - 1) as f64).log2();
    Ok((k + 1.0) * eps * log_term
        + binary_entropy_unchecked(x1)
        + binary_entropy_unchecked(eps / 2.0))
}

/// `2 (1 + √(2 d_A³ d_B³) / Δ) ε`; infinite for a non-positive gap.
pub fn schatten_continuity_bound(d_a: usize, d_b: usize, gap: f64, eps: f64) -> f64 {
    if gap <= 0.0 {
        return f64::INFINITY;
    }
    2.0 * (1.0 + gap_constant(d_a, d_b) / gap) * eps
}
