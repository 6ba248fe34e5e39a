use super::su4::{is_x_state_psd, x_state_from_params, XStateParams};
use super::BipartiteState;
use crate::error::{Error, Result};
use crate::linalg::eigen::{hermitian_eig, DEGENERACY_TOL};
use crate::linalg::entropy::validate_density_matrix;
use crate::linalg::matrix::{orthonormality_error, ComplexMatrix, C64};
use crate::linalg::random::{ginibre, RandomSource};

/// Rejection sampler for symmetric X-state coordinates: uniform draws on
/// `[-1, 1]^4`, kept when inside the generalized Bloch ball and positive
/// semidefinite. Returns the accepted point and the number of draws used.
pub fn sample_x_params_counted(rng: &mut RandomSource) -> (XStateParams, u64) {
    let mut attempts = 0;
    loop {
        attempts += 1;
        let p = XStateParams {
            r6: rng.uniform(-1.0, 1.0),
            r8: rng.uniform(-1.0, 1.0),
            r9: rng.uniform(-1.0, 1.0),
            r15: rng.uniform(-1.0, 1.0),
        };
        if p.ball_norm_sq() <= 1.0 && is_x_state_psd(&p) {
            return (p, attempts);
        }
    }
}

pub fn sample_x_params(rng: &mut RandomSource) -> XStateParams {
    sample_x_params_counted(rng).0
}

pub fn sample_x_state(rng: &mut RandomSource) -> BipartiteState {
    let p = sample_x_params(rng);
    x_state_from_params(&p).expect("accepted X-state parameters are PSD")
}

/// `G G^dagger / tr(G G^dagger)` with `G` a `(d_a d_b) x rank` Ginibre matrix.
/// Full rank gives the Hilbert-Schmidt measure.
pub fn sample_random_bipartite(
    rng: &mut RandomSource,
    d_a: usize,
    d_b: usize,
    rank: usize,
) -> Result<BipartiteState> {
    let n = d_a * d_b;
    if rank == 0 || rank > n {
        return Err(Error::InvalidRank { rank, max: n });
    }
    let g = ginibre(rng, n, rank);
    let w = g.matmul(&g.adjoint());
    let tr = w.trace().re;
    let rho = w.scale_real(1.0 / tr).hermitian_part();
    Ok(BipartiteState::new_unchecked(rho, d_a, d_b))
}

/// Draws random states until the marginal on `A` has minimum gap at least
/// `min_gap`. Returns the state and how many draws were rejected.
pub fn random_bipartite_with_gap(
    rng: &mut RandomSource,
    d_a: usize,
    d_b: usize,
    rank: usize,
    min_gap: f64,
) -> Result<(BipartiteState, u64)> {
    let floor = min_gap.max(DEGENERACY_TOL);
    // The marginal has rank at most `rank * d_b`; two or more zero eigenvalues
    // make every draw degenerate.
    if rank * d_b + 1 < d_a {
        return Err(Error::InvalidArgument(format!(
            "rank {rank} states on {d_a}x{d_b} always have a degenerate marginal"
        )));
    }
    let mut rejected = 0;
    loop {
        let s = sample_random_bipartite(rng, d_a, d_b, rank)?;
        if hermitian_eig(&s.marginal_a())?.min_gap >= floor {
            return Ok((s, rejected));
        }
        rejected += 1;
    }
}

/// `Σ_i p_i |i><i| ⊗ σ_i` for an orthonormal basis `{|i>}` of `A`.
pub fn classical_quantum_state(
    probs: &[f64],
    basis: &[Vec<C64>],
    sigmas: &[ComplexMatrix],
) -> Result<BipartiteState> {
    if probs.is_empty() {
        return Err(Error::InvalidDistribution("empty".into()));
    }
    if probs.iter().any(|&p| !(0.0..=1.0).contains(&p)) {
        return Err(Error::InvalidDistribution(format!(
            "entries outside [0, 1]: {probs:?}"
        )));
    }
    let total: f64 = probs.iter().sum();
    if (total - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidDistribution(format!("sums to {total}")));
    }
    if basis.len() != probs.len() || sigmas.len() != probs.len() {
        return Err(Error::dims(
            format!("{} basis vectors and states", probs.len()),
            format!("{} vectors, {} states", basis.len(), sigmas.len()),
        ));
    }
    let d_a = basis[0].len();
    if basis.iter().any(|v| v.len() != d_a) || basis.len() > d_a {
        return Err(Error::dims(
            format!("at most {d_a} vectors of length {d_a}"),
            basis.len(),
        ));
    }
    let deviation = orthonormality_error(basis);
    if deviation > 1e-10 {
        return Err(Error::NotOrthonormal { deviation });
    }
    let d_b = sigmas[0].rows();
    let mut rho = ComplexMatrix::zeros(d_a * d_b, d_a * d_b);
    for ((p, v), sigma) in probs.iter().zip(basis).zip(sigmas) {
        if sigma.rows() != d_b {
            return Err(Error::dims(d_b, sigma.rows()));
        }
        validate_density_matrix(sigma)?;
        rho = &rho + &ComplexMatrix::projector(v).kron(sigma).scale_real(*p);
    }
    Ok(BipartiteState::new_unchecked(rho, d_a, d_b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::von_neumann_entropy;

    #[test]
    fn rank_one_is_pure() {
        let mut rng = RandomSource::from_seed(1);
        for (da, db) in [(2, 2), (3, 2), (2, 4)] {
            let s = sample_random_bipartite(&mut rng, da, db, 1).unwrap();
            assert!(von_neumann_entropy(s.rho()).unwrap().abs() < 1e-10);
        }
    }

    #[test]
    fn outputs_are_valid_states() {
        let mut rng = RandomSource::from_seed(2);
        for rank in 1..=6 {
            let s = sample_random_bipartite(&mut rng, 2, 3, rank).unwrap();
            BipartiteState::new(s.rho().clone(), 2, 3).unwrap();
        }
        for _ in 0..200 {
            let s = sample_x_state(&mut rng);
            BipartiteState::new(s.rho().clone(), 2, 2).unwrap();
        }
    }

    #[test]
    fn invalid_rank() {
        let mut rng = RandomSource::from_seed(3);
        assert!(matches!(
            sample_random_bipartite(&mut rng, 2, 2, 0),
            Err(Error::InvalidRank { .. })
        ));
        assert!(matches!(
            sample_random_bipartite(&mut rng, 2, 2, 5),
            Err(Error::InvalidRank { .. })
        ));
    }

    #[test]
    fn classical_quantum_validation() {
        let e = |i: usize| -> Vec<C64> {
            (0..2)
                .map(|k| C64::new((k == i) as u8 as f64, 0.0))
                .collect()
        };
        let s0 = ComplexMatrix::from_diag(&[1.0, 0.0]);
        let s1 = ComplexMatrix::from_diag(&[0.0, 1.0]);
        let s =
            classical_quantum_state(&[0.4, 0.6], &[e(0), e(1)], &[s0.clone(), s1.clone()]).unwrap();
        assert_eq!(s.rho(), &ComplexMatrix::from_diag(&[0.4, 0.0, 0.0, 0.6]));

        let bad = classical_quantum_state(&[0.5, 0.6], &[e(0), e(1)], &[s0.clone(), s1.clone()]);
        assert!(matches!(bad, Err(Error::InvalidDistribution(_))));
        let skew = vec![C64::new(1.0, 0.0), C64::new(1.0, 0.0)];
        let bad = classical_quantum_state(&[0.5, 0.5], &[e(0), skew], &[s0, s1]);
        assert!(matches!(bad, Err(Error::NotOrthonormal { .. })));
    }

    #[test]
    fn single_term_is_product_state() {
        let v = vec![C64::new(1.0, 0.0)];
        let sigma = ComplexMatrix::from_diag(&[0.3, 0.7]);
        let s = classical_quantum_state(&[1.0], &[v], std::slice::from_ref(&sigma)).unwrap();
        assert_eq!(s.rho(), &sigma);
    }
}
