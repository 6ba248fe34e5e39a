//! Checks shared by the property tests and the acceptance run. Each takes a
//! seed, builds its own random input and reports the first failure.

use diagdisc::discord::{
    diagonal_discord, diagonal_discord_via_mi, generalized_discord, optimized_discord_2q, pi_a,
    DistanceMeasure,
};
use diagdisc::linalg::random::{haar_unitary, random_distribution, RandomSource};
use diagdisc::linalg::ComplexMatrix;
use diagdisc::states::{
    classical_quantum_state, random_bipartite_with_gap, sample_random_bipartite, BipartiteState,
};

pub type Check = std::result::Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn dims_for(seed: u64) -> (usize, usize) {
    [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2)][(seed % 5) as usize]
}

fn random_state(seed: u64) -> BipartiteState {
    let (da, db) = dims_for(seed);
    let mut rng = RandomSource::from_seed(seed);
    let min_rank = (da - 1).div_ceil(db);
    let rank = min_rank + rng.index(da * db - min_rank + 1);
    random_bipartite_with_gap(&mut rng, da, db, rank, 1e-4)
        .unwrap()
        .0
}

/// `D̄ = S(ρ || π_A(ρ)) = I(ρ) - I(π_A(ρ))` to 1e-9.
pub fn relative_entropy_identity(seed: u64) -> Check {
    let s = random_state(seed);
    let d = diagonal_discord(&s).map_err(|e| e.to_string())?;
    let rel =
        generalized_discord(&s, DistanceMeasure::RelativeEntropy).map_err(|e| e.to_string())?;
    let mi = diagonal_discord_via_mi(&s).map_err(|e| e.to_string())?;
    ensure((d - rel).abs() <= 1e-9 && (d - mi).abs() <= 1e-9, || {
        format!("seed {seed}: entropy form {d}, relative entropy {rel}, mutual information {mi}")
    })
}

/// `π_A` is idempotent and preserves both marginals, to 1e-10.
pub fn idempotent_and_marginal_preserving(seed: u64) -> Check {
    let s = random_state(seed);
    let once = pi_a(&s).map_err(|e| e.to_string())?.dephased;
    let twice = pi_a(&once).map_err(|e| e.to_string())?.dephased;
    let idem = twice.rho().max_abs_diff(once.rho());
    let ma = once.marginal_a().max_abs_diff(&s.marginal_a());
    let mb = once.marginal_b().max_abs_diff(&s.marginal_b());
    ensure(idem <= 1e-10 && ma <= 1e-10 && mb <= 1e-10, || {
        format!("seed {seed}: idempotence {idem:e}, marginal A {ma:e}, marginal B {mb:e}")
    })
}

/// Classical-quantum states have `D̄ <= 1e-9`.
pub fn faithful_on_classical_quantum(seed: u64) -> Check {
    let (da, db) = dims_for(seed);
    let mut rng = RandomSource::from_seed(seed);
    let basis = haar_unitary(&mut rng, da).columns();
    let sigmas: Vec<ComplexMatrix> = (0..da)
        .map(|_| {
            let rank = 1 + rng.index(db);
            sample_random_bipartite(&mut rng, db, 1, rank)
                .unwrap()
                .into_rho()
        })
        .collect();
    let probs = loop {
        let p = random_distribution(&mut rng, da);
        let mut sorted = p.clone();
        sorted.sort_by(f64::total_cmp);
        if sorted.windows(2).all(|w| w[1] - w[0] > 1e-4) {
            break p;
        }
    };
    let s = classical_quantum_state(&probs, &basis, &sigmas).map_err(|e| e.to_string())?;
    let d = diagonal_discord(&s).map_err(|e| e.to_string())?;
    ensure(d.abs() <= 1e-9, || {
        format!("seed {seed}: classical-quantum state has D̄ = {d:e}")
    })
}

/// Two-qubit `D <= D̄`.
pub fn optimized_below_diagonal(seed: u64) -> Check {
    let mut rng = RandomSource::from_seed(seed);
    let rank = 1 + rng.index(4);
    let s = random_bipartite_with_gap(&mut rng, 2, 2, rank, 1e-4)
        .unwrap()
        .0;
    let d = optimized_discord_2q(&s).map_err(|e| e.to_string())?.value;
    let dbar = diagonal_discord(&s).map_err(|e| e.to_string())?;
    ensure(d <= dbar + 1e-9, || {
        format!("seed {seed}: D = {d} > D̄ = {dbar}")
    })
}

/// `D̄((U_A ⊗ U_B) ρ (U_A ⊗ U_B)†) = D̄(ρ)` to 1e-9.
pub fn local_unitary_covariance(seed: u64) -> Check {
    let s = random_state(seed);
    let mut rng = RandomSource::for_stream(seed, 1);
    let u = haar_unitary(&mut rng, s.dim_a()).kron(&haar_unitary(&mut rng, s.dim_b()));
    let rotated = BipartiteState::new(
        s.rho().conjugate_by(&u).hermitian_part(),
        s.dim_a(),
        s.dim_b(),
    )
    .map_err(|e| e.to_string())?;
    let (a, b) = (
        diagonal_discord(&s).map_err(|e| e.to_string())?,
        diagonal_discord(&rotated).map_err(|e| e.to_string())?,
    );
    ensure((a - b).abs() <= 1e-9, || {
        format!("seed {seed}: {a} before, {b} after local unitaries")
    })
}
