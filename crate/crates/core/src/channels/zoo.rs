//! Named and randomly drawn channels.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use super::QuantumChannel;
use crate::linalg::hermitian_eig;
use crate::linalg::matrix::{ComplexMatrix, C64};
use crate::linalg::random::{ginibre, haar_unitary, random_distribution, RandomSource};

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])
}

pub fn pauli_y() -> ComplexMatrix {
    let i = C64::new(0.0, 1.0);
    ComplexMatrix::from_rows(&[vec![C64::new(0.0, 0.0), -i], vec![i, C64::new(0.0, 0.0)]])
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_diag(&[1.0, -1.0])
}

pub fn hadamard() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        &[FRAC_1_SQRT_2, FRAC_1_SQRT_2],
        &[FRAC_1_SQRT_2, -FRAC_1_SQRT_2],
    ])
}

/// `exp(-i θ n·σ / 2) = cos(θ/2) I - i sin(θ/2) n·σ`; `axis` need not be normalized.
pub fn rotation(axis: [f64; 3], theta: f64) -> ComplexMatrix {
    let norm = axis.iter().map(|x| x * x).sum::<f64>().sqrt();
    let n = axis.map(|x| x / norm);
    let generator =
        &(&pauli_x().scale_real(n[0]) + &pauli_y().scale_real(n[1])) + &pauli_z().scale_real(n[2]);
    let c = ComplexMatrix::identity(2).scale_real((theta / 2.0).cos());
    &c + &generator.scale(C64::new(0.0, -(theta / 2.0).sin()))
}

/// `X^a Z^b` for `a, b < d`; mixing them uniformly gives the completely
/// depolarizing channel.
pub fn weyl_operators(d: usize) -> Vec<ComplexMatrix> {
    let shift = ComplexMatrix::from_fn(d, d, |i, j| {
        C64::new(((i + d - 1) % d == j) as u8 as f64, 0.0)
    });
    let clock = ComplexMatrix::from_fn(d, d, |i, j| {
        if i == j {
            C64::from_polar(1.0, 2.0 * PI * i as f64 / d as f64)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let mut out = Vec::with_capacity(d * d);
    let mut xa = ComplexMatrix::identity(d);
    for _ in 0..d {
        let mut op = xa.clone();
        for _ in 0..d {
            out.push(op.clone());
            op = op.matmul(&clock);
        }
        xa = xa.matmul(&shift);
    }
    out
}

/// `⅓ρ + ⅔HρH`.
pub fn fig2a() -> QuantumChannel {
    QuantumChannel::mixed_unitary(
        vec![1.0 / 3.0, 2.0 / 3.0],
        vec![ComplexMatrix::identity(2), hadamard()],
    )
    .expect("valid channel")
}

/// `⅓ρ + ⅔ R_n(π/2) ρ R_n(π/2)†` with `n ∝ (1, 1, 1)`.
pub fn fig2b() -> QuantumChannel {
    QuantumChannel::mixed_unitary(
        vec![1.0 / 3.0, 2.0 / 3.0],
        vec![
            ComplexMatrix::identity(2),
            rotation([1.0, 1.0, 1.0], PI / 2.0),
        ],
    )
    .expect("valid channel")
}

/// `⅙ρ + ⅓ R_X(π/10) ρ R_X(π/10)† + ½ R_Z(π/5) ρ R_Z(π/5)†`.
pub fn fig2c() -> QuantumChannel {
    QuantumChannel::mixed_unitary(
        vec![1.0 / 6.0, 1.0 / 3.0, 0.5],
        vec![
            ComplexMatrix::identity(2),
            rotation([1.0, 0.0, 0.0], PI / 10.0),
            rotation([0.0, 0.0, 1.0], PI / 5.0),
        ],
    )
    .expect("valid channel")
}

/// Uniform mixture of `I, X, Y, Z`.
pub fn pauli_twirl() -> QuantumChannel {
    QuantumChannel::mixed_unitary(
        vec![0.25; 4],
        vec![ComplexMatrix::identity(2), pauli_x(), pauli_y(), pauli_z()],
    )
    .expect("valid channel")
}

pub fn amplitude_damping(gamma: f64) -> crate::Result<QuantumChannel> {
    if !(0.0..=1.0).contains(&gamma) {
        return Err(crate::Error::OutOfRange {
            value: gamma,
            lo: 0.0,
            hi: 1.0,
        });
    }
    let k0 = ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, (1.0 - gamma).sqrt()]]);
    let k1 = ComplexMatrix::from_real_rows(&[&[0.0, gamma.sqrt()], &[0.0, 0.0]]);
    QuantumChannel::kraus(vec![k0, k1])
}

/// `(1 - p) ρ + p ZρZ`.
pub fn dephasing(p: f64) -> crate::Result<QuantumChannel> {
    QuantumChannel::mixed_unitary(
        vec![1.0 - p, p],
        vec![ComplexMatrix::identity(2), pauli_z()],
    )
}

pub const BUILTIN_NAMES: &[&str] = &[
    "identity",
    "fig2a",
    "fig2b",
    "fig2c",
    "pauli-twirl",
    "dephasing",
    "depolarizing",
    "amplitude-damping",
];

/// Qubit channels addressable by name.
pub fn builtin(name: &str) -> Option<QuantumChannel> {
    Some(match name {
        "identity" => QuantumChannel::identity(2),
        "fig2a" | "hadamard-mix" => fig2a(),
        "fig2b" => fig2b(),
        "fig2c" => fig2c(),
        "pauli-twirl" => pauli_twirl(),
        "dephasing" => dephasing(0.3).ok()?,
        "depolarizing" => QuantumChannel::isotropic(1.0, ComplexMatrix::identity(2)).ok()?,
        "amplitude-damping" => amplitude_damping(0.5).ok()?,
        _ => return None,
    })
}

/// `terms` Haar unitaries with weights drawn uniformly from the simplex.
pub fn random_mixed_unitary(rng: &mut RandomSource, d: usize, terms: usize) -> QuantumChannel {
    let unitaries = (0..terms).map(|_| haar_unitary(rng, d)).collect();
    let probs = random_distribution(rng, terms);
    QuantumChannel::mixed_unitary(probs, unitaries).expect("valid channel")
}

/// Isotropic channel with a Haar unitary and, if `antiunitary`, a Haar
/// transpose basis.
pub fn random_isotropic(
    rng: &mut RandomSource,
    d: usize,
    gamma: f64,
    antiunitary: bool,
) -> crate::Result<QuantumChannel> {
    let u = haar_unitary(rng, d);
    if antiunitary {
        let basis = haar_unitary(rng, d);
        QuantumChannel::antiunitary_isotropic(gamma, u, basis)
    } else {
        QuantumChannel::isotropic(gamma, u)
    }
}

/// `K_i = G_i S^{-1/2}` with Ginibre `G_i` and `S = Σ G_i† G_i`.
pub fn random_kraus(rng: &mut RandomSource, d: usize, ops: usize) -> QuantumChannel {
    let gs: Vec<ComplexMatrix> = (0..ops).map(|_| ginibre(rng, d, d)).collect();
    let mut s = ComplexMatrix::zeros(d, d);
    for g in &gs {
        s = &s + &g.adjoint().matmul(g);
    }
    let spec = hermitian_eig(&s.hermitian_part()).expect("Hermitian");
    let inv_sqrt = ComplexMatrix::from_diag(
        &spec
            .eigenvalues
            .iter()
            .map(|l| 1.0 / l.sqrt())
            .collect::<Vec<_>>(),
    )
    .conjugate_by(&spec.eigenvectors);
    let ks = gs.iter().map(|g| g.matmul(&inv_sqrt)).collect();
    QuantumChannel::kraus(ks).expect("normalized Kraus operators")
}

/// Random Kraus channel followed by dephasing in a Haar-random basis.
pub fn random_semiclassical(rng: &mut RandomSource, d: usize) -> QuantumChannel {
    let inner = random_kraus(rng, d, d);
    let basis = haar_unitary(rng, d);
    QuantumChannel::semiclassical(basis, inner).expect("valid channel")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotations_are_unitary() {
        for axis in [[1.0, 0.0, 0.0], [0.0, 0.0, 1.0], [1.0, 1.0, 1.0]] {
            assert!(rotation(axis, 0.7).unitarity_error() < 1e-15);
        }
        // R_Z(θ) = diag(e^{-iθ/2}, e^{iθ/2}).
        let rz = rotation([0.0, 0.0, 1.0], 0.4);
        assert!((rz[(0, 0)] - C64::from_polar(1.0, -0.2)).norm() < 1e-15);
        assert!((rz[(1, 1)] - C64::from_polar(1.0, 0.2)).norm() < 1e-15);
        // A 2π/3 turn about (1,1,1)/√3 permutes X -> Y -> Z.
        let r = rotation([1.0, 1.0, 1.0], 2.0 * PI / 3.0);
        assert!(pauli_x().conjugate_by(&r).max_abs_diff(&pauli_y()) < 1e-14);
    }

    #[test]
    fn weyl_twirl_depolarizes() {
        for d in 2..=4 {
            let ops = weyl_operators(d);
            assert_eq!(ops.len(), d * d);
            let ch = QuantumChannel::mixed_unitary(vec![1.0 / (d * d) as f64; d * d], ops).unwrap();
            let rho = ComplexMatrix::projector(
                &(0..d)
                    .map(|i| C64::new(i as f64 + 1.0, 0.0))
                    .collect::<Vec<_>>(),
            );
            let rho = rho.scale_real(1.0 / rho.trace().re);
            let out = ch.apply(&rho).unwrap();
            assert!(
                out.max_abs_diff(&ComplexMatrix::identity(d).scale_real(1.0 / d as f64)) < 1e-14
            );
        }
    }

    #[test]
    fn qubit_mixed_unitaries_are_unital() {
        let half = ComplexMatrix::identity(2).scale_real(0.5);
        for ch in [fig2a(), fig2b(), fig2c(), pauli_twirl()] {
            assert!(ch.apply(&half).unwrap().max_abs_diff(&half) < 1e-12);
        }
        let mut rng = RandomSource::from_seed(9);
        for _ in 0..20 {
            let ch = random_mixed_unitary(&mut rng, 2, 3);
            assert!(ch.apply(&half).unwrap().max_abs_diff(&half) < 1e-12);
        }
    }

    #[test]
    fn builtins_resolve() {
        for name in BUILTIN_NAMES {
            assert!(builtin(name).is_some(), "{name}");
        }
        assert!(builtin("nope").is_none());
    }

    #[test]
    fn random_channels_are_valid() {
        let mut rng = RandomSource::from_seed(10);
        for d in 2..=4 {
            random_kraus(&mut rng, d, 3);
            random_semiclassical(&mut rng, d);
            random_isotropic(&mut rng, d, 0.4, true).unwrap();
        }
    }
}
