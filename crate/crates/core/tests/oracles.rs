mod common;

use common::*;
use diagdisc::discord::{diagonal_discord, optimized_discord_2q, pi_multi};
use diagdisc::linalg::random::{gue, RandomSource};
use diagdisc::linalg::{hermitian_eig, von_neumann_entropy, C64};
use diagdisc::states::{
    random_bipartite_with_gap, sample_random_bipartite, BipartiteState, MultipartiteState,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn eigenvalues_match_nalgebra(seed in any::<u64>(), d in 1usize..=8) {
        let m = gue(&mut RandomSource::from_seed(seed), d);
        let ours = hermitian_eig(&m).unwrap();
        let (theirs, _) = eig(&to_na(&m));
        for (a, b) in ours.eigenvalues.iter().zip(&theirs) {
            prop_assert!((a - b).abs() < 1e-10, "{a} vs {b}");
        }
        prop_assert!(ours.reconstruct().max_abs_diff(&m) < 1e-10);
    }

    #[test]
    fn entropy_matches_nalgebra(seed in any::<u64>(), da in 1usize..=3, db in 1usize..=3, rank in 1usize..=9) {
        let rank = rank.min(da * db);
        let s = sample_random_bipartite(&mut RandomSource::from_seed(seed), da, db, rank).unwrap();
        let ours = von_neumann_entropy(s.rho()).unwrap();
        prop_assert!((ours - entropy(&to_na(s.rho()))).abs() < 1e-9);
    }

    #[test]
    fn diagonal_discord_matches_nalgebra(seed in any::<u64>(), da in 2usize..=3, db in 2usize..=3) {
        let mut rng = RandomSource::from_seed(seed);
        let (s, _) = random_bipartite_with_gap(&mut rng, da, db, da * db, 1e-3).unwrap();
        let ours = diagonal_discord(&s).unwrap();
        prop_assert!((ours - common::diagonal_discord(&to_na(s.rho()), da, db)).abs() < 1e-9);
    }
}

#[test]
fn multi_party_dephasing_matches_sequential_projection() {
    let mut rng = RandomSource::from_seed(11);
    for dims in [vec![2, 2, 2], vec![2, 3, 2], vec![3, 2]] {
        let n: usize = dims.iter().product();
        let rho = sample_random_bipartite(&mut rng, n, 1, n)
            .unwrap()
            .into_rho();
        let state = MultipartiteState::new(rho.clone(), dims.clone()).unwrap();
        let parties = [0, dims.len() - 1];
        let ours = pi_multi(&state, &parties).unwrap();

        let r = to_na(&rho);
        // Eigenprojectors of each measured party's marginal, embedded.
        let local = |party: usize| -> Vec<NMat> {
            let (_, v) = eig(&reduce(&r, &dims, party));
            (0..dims[party])
                .map(|i| {
                    let col = v.column(i).into_owned();
                    let mut op = NMat::identity(1, 1);
                    for (k, &d) in dims.iter().enumerate() {
                        let f = if k == party {
                            &col * col.adjoint()
                        } else {
                            NMat::identity(d, d)
                        };
                        op = kron(&op, &f);
                    }
                    op
                })
                .collect()
        };
        let (first, last) = (local(parties[0]), local(parties[1]));
        let mut expected = NMat::zeros(n, n);
        for p in &first {
            for q in &last {
                let pq = p * q;
                expected += &pq * &r * pq.adjoint();
            }
        }
        assert!(
            ours.rho().max_abs_diff(&from_na(&expected)) < 1e-10,
            "{dims:?}"
        );
    }
}

#[test]
fn werner_states_match_closed_form() {
    for z in [0.05, 0.2, 0.5, 0.8, 0.95] {
        let s = BipartiteState::new(from_na(&werner(z)), 2, 2).unwrap();
        let d = optimized_discord_2q(&s).unwrap().value;
        assert!(
            (d - werner_discord(z)).abs() < 1e-8,
            "z = {z}: {d} vs {}",
            werner_discord(z)
        );
    }
}

#[test]
fn perturbed_bell_states_match_brute_force() {
    let mut rng = RandomSource::from_seed(12);
    let bell = to_na(BipartiteState::bell_phi_plus().rho());
    for eps in [0.02, 0.1, 0.3] {
        let noise = to_na(sample_random_bipartite(&mut rng, 2, 2, 4).unwrap().rho());
        let rho = &bell * C64::new(1.0 - eps, 0.0) + noise * C64::new(eps, 0.0);
        let s = BipartiteState::new(from_na(&rho), 2, 2).unwrap();
        let ours = optimized_discord_2q(&s).unwrap().value;
        let brute = brute_force_discord_2q(&rho, 180, 360);
        assert!(ours <= brute + 1e-10, "eps {eps}: {ours} > {brute}");
        assert!(brute - ours < 2e-4, "eps {eps}: {ours} vs {brute}");
    }
}

#[test]
fn random_two_qubit_states_match_brute_force() {
    let mut rng = RandomSource::from_seed(13);
    for rank in [1, 2, 4] {
        let s = sample_random_bipartite(&mut rng, 2, 2, rank).unwrap();
        let ours = optimized_discord_2q(&s).unwrap().value;
        let brute = brute_force_discord_2q(&to_na(s.rho()), 180, 360);
        assert!(
            ours <= brute + 1e-10 && brute - ours < 2e-4,
            "rank {rank}: {ours} vs {brute}"
        );
    }
}

#[test]
fn relative_entropy_oracle_agrees() {
    let mut rng = RandomSource::from_seed(14);
    let (s, _) = random_bipartite_with_gap(&mut rng, 2, 3, 6, 1e-3).unwrap();
    let r = to_na(s.rho());
    let dephased = dephase_a(&r, 2, 3);
    let via_oracle = relative_entropy(&r, &dephased);
    assert!((via_oracle - diagonal_discord(&s).unwrap()).abs() < 1e-9);
}
