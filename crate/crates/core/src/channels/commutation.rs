//! Randomized tests of how a channel on `A` interacts with `π_A`.

use super::QuantumChannel;
use crate::discord::dephase_a;
use crate::error::{Error, Result};
use crate::linalg::eigen::DEGENERACY_TOL;
use crate::linalg::matrix::{orthonormality_error, ComplexMatrix, C64};
use crate::linalg::random::RandomSource;
use crate::linalg::{hermitian_eig, trace_distance_norm};
use crate::states::{random_bipartite_with_gap, trace_out_b, BipartiteState};

/// Deviations at or below this count as exact agreement.
pub const COMMUTING_TOL: f64 = 1e-9;
/// A single deviation at or above this is a structural violation.
pub const VIOLATION_TOL: f64 = 1e-3;
/// Dimension of the reference system `B` in probe states.
pub const PROBE_DIM_B: usize = 2;
/// Minimum eigenvalue gap of `ρ_A` for probe states.
pub const PROBE_MIN_GAP: f64 = 1e-3;
/// Trials whose output marginal on `A` has a smaller gap are skipped, since its
/// eigenbasis is too ill-conditioned to compare at [`COMMUTING_TOL`].
pub const OUTPUT_MIN_GAP: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Violated,
    Inconclusive,
}

pub fn classify_deviation(max_deviation: f64) -> Verdict {
    if max_deviation <= COMMUTING_TOL {
        Verdict::Holds
    } else if max_deviation >= VIOLATION_TOL {
        Verdict::Violated
    } else {
        Verdict::Inconclusive
    }
}

#[derive(Clone, Debug)]
pub struct ConditionReport {
    /// Largest trace-norm deviation over the evaluated trials.
    pub max_deviation: f64,
    /// Probe state attaining `max_deviation`.
    pub witness: Option<BipartiteState>,
    pub trials: usize,
    /// Trials dropped because the output marginal was (nearly) degenerate.
    pub skipped: usize,
}

impl ConditionReport {
    pub fn evaluated(&self) -> usize {
        self.trials - self.skipped
    }

    pub fn verdict(&self) -> Verdict {
        if self.evaluated() == 0 {
            return Verdict::Inconclusive;
        }
        classify_deviation(self.max_deviation)
    }
}

/// `π_A(m)` where `m` is an operator on `A ⊗ B`, or `None` when the marginal gap
/// is below [`OUTPUT_MIN_GAP`].
fn pi_of_output(m: &ComplexMatrix, d_a: usize, d_b: usize) -> Result<Option<ComplexMatrix>> {
    let spec = hermitian_eig(&trace_out_b(m, d_a, d_b).hermitian_part())?;
    if spec.min_gap < OUTPUT_MIN_GAP {
        return Ok(None);
    }
    Ok(Some(dephase_a(m, d_a, d_b, &spec.eigenvectors)))
}

fn run_trials(
    channel: &QuantumChannel,
    trials: usize,
    rng: &mut RandomSource,
    deviation: impl Fn(&BipartiteState, &ComplexMatrix) -> Result<Option<f64>>,
) -> ConditionReport {
    let d = channel.dim();
    let mut report = ConditionReport {
        max_deviation: 0.0,
        witness: None,
        trials,
        skipped: 0,
    };
    for _ in 0..trials {
        let (state, _) =
            random_bipartite_with_gap(rng, d, PROBE_DIM_B, d * PROBE_DIM_B, PROBE_MIN_GAP)
                .expect("probe dimensions are valid");
        let spec = hermitian_eig(&state.marginal_a()).expect("Hermitian marginal");
        let dephased = dephase_a(state.rho(), d, PROBE_DIM_B, &spec.eigenvectors);
        match deviation(&state, &dephased) {
            Ok(Some(dev)) => {
                if report.witness.is_none() || dev > report.max_deviation {
                    report.max_deviation = dev;
                    report.witness = Some(state);
                }
            }
            Ok(None) | Err(_) => report.skipped += 1,
        }
    }
    report
}

/// Estimates `max_ρ ||π_A((E ⊗ id)(ρ)) - (E ⊗ id)(π_A(ρ))||_1` over random
/// full-rank probe states with nondegenerate `ρ_A`.
pub fn commutes_with_pi(
    channel: &QuantumChannel,
    trials: usize,
    rng: &mut RandomSource,
) -> ConditionReport {
    let d = channel.dim();
    run_trials(channel, trials, rng, |state, dephased| {
        let out = channel.apply_local_a_operator(state.rho(), PROBE_DIM_B)?;
        let Some(lhs) = pi_of_output(&out, d, PROBE_DIM_B)? else {
            return Ok(None);
        };
        let rhs = channel.apply_local_a_operator(dephased, PROBE_DIM_B)?;
        Ok(Some(trace_distance_norm(&lhs, &rhs)?))
    })
}

/// Estimates `max_ρ ||π_A(E(π_A(ρ))) - E(π_A(ρ))||_1`, i.e. whether the channel
/// can create diagonal discord from a classical-quantum state.
pub fn is_discord_nongenerating(
    channel: &QuantumChannel,
    trials: usize,
    rng: &mut RandomSource,
) -> ConditionReport {
    let d = channel.dim();
    run_trials(channel, trials, rng, |_, dephased| {
        let out = channel.apply_local_a_operator(dephased, PROBE_DIM_B)?;
        let Some(lhs) = pi_of_output(&out, d, PROBE_DIM_B)? else {
            return Ok(None);
        };
        Ok(Some(trace_distance_norm(&lhs, &out)?))
    })
}

/// For a qubit channel with mixed-unitary form `{p_μ, U_μ}` and a basis
/// `{|ψ>, |ψ̄>}`, returns `max_l |Σ_μ p_μ <η_l|U_μ|ψ><ψ̄|U_μ†|η_l>|` where `{|η_±>}`
/// is the eigenbasis of `E(|ψ><ψ|)`. Zero means the commuting condition holds
/// for this basis.
pub fn qubit_mu_commuting_condition(
    channel: &QuantumChannel,
    psi: &[C64],
    psi_bar: &[C64],
) -> Result<f64> {
    if channel.dim() != 2 {
        return Err(Error::dims(2, channel.dim()));
    }
    let (probs, unitaries) = channel.as_mixed_unitary().ok_or_else(|| {
        Error::InvalidChannel(format!(
            "{} channel has no mixed-unitary form",
            channel.class_name()
        ))
    })?;
    if psi.len() != 2 || psi_bar.len() != 2 {
        return Err(Error::dims(2, psi.len().max(psi_bar.len())));
    }
    let basis = [psi.to_vec(), psi_bar.to_vec()];
    let deviation = orthonormality_error(&basis);
    if deviation > 1e-10 {
        return Err(Error::NotOrthonormal { deviation });
    }
    // E(|ψ><ψ̄|); the condition asks for its diagonal in the eigenbasis of E(|ψ><ψ|).
    let mut coherence = ComplexMatrix::zeros(2, 2);
    for (p, u) in probs.iter().zip(&unitaries) {
        coherence =
            &coherence + &ComplexMatrix::outer(&u.apply(psi), &u.apply(psi_bar)).scale_real(*p);
    }
    let out = channel.apply(&ComplexMatrix::projector(psi))?;
    let spec = hermitian_eig(&out)?;
    if spec.min_gap < DEGENERACY_TOL {
        // Every basis diagonalizes the output; the value is basis independent
        // only when the coherence vanishes.
        let norm = coherence.frobenius_norm();
        if norm <= 1e-12 {
            return Ok(norm);
        }
        return Err(Error::DegenerateOutput { gap: spec.min_gap });
    }
    Ok((0..2)
        .map(|l| coherence.expectation(&spec.eigenvector(l)).norm())
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::super::{
        amplitude_damping, fig2a, pauli_twirl, random_isotropic, random_semiclassical,
    };
    use super::*;
    use crate::linalg::random::haar_unitary;

    fn ket(v: &[f64]) -> Vec<C64> {
        v.iter().map(|&x| C64::new(x, 0.0)).collect()
    }

    #[test]
    fn probabilistic_hadamard_value() {
        let g = (5f64.sqrt() - 1.0) / 2.0;
        let n = 1.0 + g * g;
        let expected = (5f64.sqrt() - 1.0) / (3.0 * n);
        let v =
            qubit_mu_commuting_condition(&fig2a(), &ket(&[1.0, 0.0]), &ket(&[0.0, 1.0])).unwrap();
        assert!((v - expected).abs() < 1e-12, "{v} vs {expected}");
        assert!((expected - 0.298_142_396_999_971_97).abs() < 1e-15);
    }

    #[test]
    fn unitary_and_twirl_satisfy_condition() {
        let mut rng = RandomSource::from_seed(1);
        let u = QuantumChannel::unitary(haar_unitary(&mut rng, 2)).unwrap();
        let basis = haar_unitary(&mut rng, 2);
        let (psi, psi_bar) = (basis.column(0), basis.column(1));
        assert!(qubit_mu_commuting_condition(&u, &psi, &psi_bar).unwrap() < 1e-12);
        assert!(qubit_mu_commuting_condition(&pauli_twirl(), &psi, &psi_bar).unwrap() < 1e-12);
        let depolarize = QuantumChannel::isotropic(1.0, ComplexMatrix::identity(2)).unwrap();
        assert!(qubit_mu_commuting_condition(&depolarize, &psi, &psi_bar).unwrap() < 1e-12);
        let flip = QuantumChannel::mixed_unitary(
            vec![0.5, 0.5],
            vec![ComplexMatrix::identity(2), super::super::pauli_x()],
        )
        .unwrap();
        assert!(matches!(
            qubit_mu_commuting_condition(&flip, &ket(&[1.0, 0.0]), &ket(&[0.0, 1.0])),
            Err(Error::DegenerateOutput { .. })
        ));
    }

    #[test]
    fn isotropic_commutes() {
        let mut rng = RandomSource::from_seed(2);
        for antiunitary in [false, true] {
            let ch = random_isotropic(&mut rng, 3, 0.3, antiunitary).unwrap();
            let r = commutes_with_pi(&ch, 20, &mut rng);
            assert_eq!(r.verdict(), Verdict::Holds, "{r:?}");
        }
    }

    #[test]
    fn hadamard_mix_does_not_commute_but_is_nongenerating() {
        let mut rng = RandomSource::from_seed(3);
        let r = commutes_with_pi(&fig2a(), 50, &mut rng);
        assert_eq!(r.verdict(), Verdict::Violated);
        assert!(r.witness.is_some());
        let r = is_discord_nongenerating(&fig2a(), 50, &mut rng);
        assert_eq!(r.verdict(), Verdict::Holds, "{r:?}");
    }

    #[test]
    fn semiclassical_and_amplitude_damping() {
        let mut rng = RandomSource::from_seed(4);
        let sc = random_semiclassical(&mut rng, 3);
        assert_eq!(
            is_discord_nongenerating(&sc, 30, &mut rng).verdict(),
            Verdict::Holds
        );
        assert_eq!(
            commutes_with_pi(&sc, 30, &mut rng).verdict(),
            Verdict::Violated
        );
        let ad = amplitude_damping(0.5).unwrap();
        assert_eq!(
            is_discord_nongenerating(&ad, 50, &mut rng).verdict(),
            Verdict::Violated
        );
    }
}
