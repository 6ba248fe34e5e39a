//! Quantum channels acting on one party, and their relation to `π_A`.

mod commutation;
mod format;
mod zoo;

pub use commutation::{
    classify_deviation, commutes_with_pi, is_discord_nongenerating, qubit_mu_commuting_condition,
    ConditionReport, Verdict, COMMUTING_TOL, OUTPUT_MIN_GAP, PROBE_DIM_B, PROBE_MIN_GAP,
    VIOLATION_TOL,
};
pub use format::{parse_channel, write_channel};
pub use zoo::{
    amplitude_damping, builtin, dephasing, fig2a, fig2b, fig2c, hadamard, pauli_twirl, pauli_x,
    pauli_y, pauli_z, random_isotropic, random_kraus, random_mixed_unitary, random_semiclassical,
    rotation, weyl_operators, BUILTIN_NAMES,
};

use crate::discord::dephase_a;
use crate::error::{Error, Result};
use crate::linalg::entropy::EIGEN_FLOOR;
use crate::linalg::matrix::ComplexMatrix;
use crate::linalg::{hermitian_eig, validate_density_matrix};
use crate::states::{partial_transpose_a, trace_out_a, BipartiteState};

/// Completeness and unitarity tolerance for constructors.
pub const CHANNEL_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub enum ChannelKind {
    /// `Σ_i K_i ρ K_i†`.
    Kraus { ops: Vec<ComplexMatrix> },
    /// `Σ_μ p_μ U_μ ρ U_μ†`.
    MixedUnitary {
        probs: Vec<f64>,
        unitaries: Vec<ComplexMatrix>,
    },
    /// `(1 - γ) W(ρ) + γ I/d` where `W(ρ) = U ρ U†`, or `U ρ^T U†` with the
    /// transpose taken in `transpose_basis` (columns) when `antiunitary` is set.
    Isotropic {
        gamma: f64,
        unitary: ComplexMatrix,
        antiunitary: bool,
        transpose_basis: ComplexMatrix,
    },
    /// `inner` followed by complete dephasing in `basis` (columns).
    Semiclassical {
        basis: ComplexMatrix,
        inner: Box<QuantumChannel>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuantumChannel {
    dim: usize,
    kind: ChannelKind,
}

fn check_unitary(u: &ComplexMatrix, what: &str) -> Result<()> {
    if !u.is_square() {
        return Err(Error::InvalidChannel(format!("{what} is not square")));
    }
    let err = u.unitarity_error();
    if err > CHANNEL_TOL {
        return Err(Error::InvalidChannel(format!(
            "{what} is not unitary (deviation {err:e})"
        )));
    }
    Ok(())
}

fn check_basis(basis: &ComplexMatrix, dim: usize) -> Result<()> {
    if basis.rows() != dim || basis.cols() != dim {
        return Err(Error::dims(
            format!("{dim}x{dim} basis"),
            format!("{}x{}", basis.rows(), basis.cols()),
        ));
    }
    let deviation = basis.unitarity_error();
    if deviation > CHANNEL_TOL {
        return Err(Error::NotOrthonormal { deviation });
    }
    Ok(())
}

impl QuantumChannel {
    pub fn kraus(ops: Vec<ComplexMatrix>) -> Result<Self> {
        let dim = ops
            .first()
            .ok_or_else(|| Error::InvalidChannel("no Kraus operators".into()))?
            .rows();
        if ops.iter().any(|k| k.rows() != dim || k.cols() != dim) {
            return Err(Error::InvalidChannel(
                "Kraus operators must share one square shape".into(),
            ));
        }
        let mut sum = ComplexMatrix::zeros(dim, dim);
        for k in &ops {
            sum = &sum + &k.adjoint().matmul(k);
        }
        let err = sum.max_abs_diff(&ComplexMatrix::identity(dim));
        if err > CHANNEL_TOL {
            return Err(Error::InvalidChannel(format!(
                "Σ K†K deviates from identity by {err:e}"
            )));
        }
        Ok(Self {
            dim,
            kind: ChannelKind::Kraus { ops },
        })
    }

    pub fn mixed_unitary(probs: Vec<f64>, unitaries: Vec<ComplexMatrix>) -> Result<Self> {
        if probs.is_empty() || probs.len() != unitaries.len() {
            return Err(Error::InvalidChannel(format!(
                "{} probabilities for {} unitaries",
                probs.len(),
                unitaries.len()
            )));
        }
        if probs.iter().any(|p| !(0.0..=1.0).contains(p)) {
            return Err(Error::InvalidDistribution(format!(
                "entries outside [0, 1]: {probs:?}"
            )));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidDistribution(format!("sums to {total}")));
        }
        let dim = unitaries[0].rows();
        for (i, u) in unitaries.iter().enumerate() {
            check_unitary(u, &format!("unitary {i}"))?;
            if u.rows() != dim {
                return Err(Error::dims(dim, u.rows()));
            }
        }
        Ok(Self {
            dim,
            kind: ChannelKind::MixedUnitary { probs, unitaries },
        })
    }

    pub fn unitary(u: ComplexMatrix) -> Result<Self> {
        Self::mixed_unitary(vec![1.0], vec![u])
    }

    pub fn identity(dim: usize) -> Self {
        Self::unitary(ComplexMatrix::identity(dim)).expect("identity is unitary")
    }

    pub fn isotropic(gamma: f64, unitary: ComplexMatrix) -> Result<Self> {
        let d = unitary.rows();
        Self::build_isotropic(gamma, unitary, false, ComplexMatrix::identity(d))
    }

    pub fn antiunitary_isotropic(
        gamma: f64,
        unitary: ComplexMatrix,
        transpose_basis: ComplexMatrix,
    ) -> Result<Self> {
        Self::build_isotropic(gamma, unitary, true, transpose_basis)
    }

    fn build_isotropic(
        gamma: f64,
        unitary: ComplexMatrix,
        antiunitary: bool,
        basis: ComplexMatrix,
    ) -> Result<Self> {
        if !(0.0..=1.0).contains(&gamma) {
            return Err(Error::OutOfRange {
                value: gamma,
                lo: 0.0,
                hi: 1.0,
            });
        }
        check_unitary(&unitary, "isotropic unitary")?;
        let dim = unitary.rows();
        check_basis(&basis, dim)?;
        Ok(Self {
            dim,
            kind: ChannelKind::Isotropic {
                gamma,
                unitary,
                antiunitary,
                transpose_basis: basis,
            },
        })
    }

    pub fn semiclassical(basis: ComplexMatrix, inner: QuantumChannel) -> Result<Self> {
        check_basis(&basis, inner.dim)?;
        Ok(Self {
            dim: inner.dim,
            kind: ChannelKind::Semiclassical {
                basis,
                inner: Box::new(inner),
            },
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> &ChannelKind {
        &self.kind
    }

    /// Short class name: `kraus`, `mixed_unitary`, `isotropic`,
    /// `antiunitary_isotropic` or `semiclassical`.
    pub fn class_name(&self) -> &'static str {
        match &self.kind {
            ChannelKind::Kraus { .. } => "kraus",
            ChannelKind::MixedUnitary { .. } => "mixed_unitary",
            ChannelKind::Isotropic {
                antiunitary: false, ..
            } => "isotropic",
            ChannelKind::Isotropic {
                antiunitary: true, ..
            } => "antiunitary_isotropic",
            ChannelKind::Semiclassical { .. } => "semiclassical",
        }
    }

    /// Mixed-unitary form, when the channel has one that is known in closed
    /// form (mixed-unitary and unitary-isotropic channels).
    pub fn as_mixed_unitary(&self) -> Option<(Vec<f64>, Vec<ComplexMatrix>)> {
        match &self.kind {
            ChannelKind::MixedUnitary { probs, unitaries } => {
                Some((probs.clone(), unitaries.clone()))
            }
            ChannelKind::Isotropic {
                gamma,
                unitary,
                antiunitary: false,
                ..
            } => {
                let weyl = weyl_operators(self.dim);
                let share = gamma / weyl.len() as f64;
                let mut probs = vec![1.0 - gamma];
                let mut unitaries = vec![unitary.clone()];
                for w in weyl {
                    probs.push(share);
                    unitaries.push(w);
                }
                Some((probs, unitaries))
            }
            _ => None,
        }
    }

    /// The channel applied to a single-system density matrix.
    pub fn apply(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        if rho.rows() != self.dim || rho.cols() != self.dim {
            return Err(Error::dims(
                self.dim,
                format!("{}x{}", rho.rows(), rho.cols()),
            ));
        }
        validate_density_matrix(rho)?;
        Ok(self.apply_local_a_operator(rho, 1)?.hermitian_part())
    }

    /// `(E ⊗ id_B)(m)` for any operator `m` on `A ⊗ B` with `d_A = self.dim()`.
    ///
    /// For antiunitary isotropic channels this is the partial transpose on `A`
    /// followed by the unitary and the mixing, which need not preserve
    /// positivity.
    pub fn apply_local_a_operator(&self, m: &ComplexMatrix, dim_b: usize) -> Result<ComplexMatrix> {
        let n = self.dim * dim_b;
        if m.rows() != n || m.cols() != n {
            return Err(Error::dims(
                format!("{n}x{n}"),
                format!("{}x{}", m.rows(), m.cols()),
            ));
        }
        let id_b = ComplexMatrix::identity(dim_b);
        Ok(match &self.kind {
            ChannelKind::Kraus { ops } => {
                let mut acc = ComplexMatrix::zeros(n, n);
                for k in ops {
                    acc = &acc + &m.conjugate_by(&k.kron(&id_b));
                }
                acc
            }
            ChannelKind::MixedUnitary { probs, unitaries } => {
                let mut acc = ComplexMatrix::zeros(n, n);
                for (p, u) in probs.iter().zip(unitaries) {
                    if *p > 0.0 {
                        acc = &acc + &m.conjugate_by(&u.kron(&id_b)).scale_real(*p);
                    }
                }
                acc
            }
            ChannelKind::Isotropic {
                gamma,
                unitary,
                antiunitary,
                transpose_basis,
            } => {
                let pre = if *antiunitary {
                    partial_transpose_a(m, self.dim, dim_b, transpose_basis)
                } else {
                    m.clone()
                };
                let coherent = pre
                    .conjugate_by(&unitary.kron(&id_b))
                    .scale_real(1.0 - gamma);
                let noise = ComplexMatrix::identity(self.dim)
                    .scale_real(gamma / self.dim as f64)
                    .kron(&trace_out_a(m, self.dim, dim_b));
                &coherent + &noise
            }
            ChannelKind::Semiclassical { basis, inner } => dephase_a(
                &inner.apply_local_a_operator(m, dim_b)?,
                self.dim,
                dim_b,
                basis,
            ),
        })
    }

    /// `(E ⊗ id_B)(ρ)`. The output is checked for positivity.
    pub fn apply_local_a(&self, state: &BipartiteState) -> Result<BipartiteState> {
        if state.dim_a() != self.dim {
            return Err(Error::dims(self.dim, state.dim_a()));
        }
        let out = self
            .apply_local_a_operator(state.rho(), state.dim_b())?
            .hermitian_part();
        if matches!(
            self.kind,
            ChannelKind::Isotropic {
                antiunitary: true,
                ..
            }
        ) {
            let min = hermitian_eig(&out)?.min_eigenvalue();
            if min < -EIGEN_FLOOR {
                return Err(Error::NotPositiveSemidefinite {
                    min_eigenvalue: min,
                });
            }
        }
        Ok(BipartiteState::new_unchecked(
            out,
            state.dim_a(),
            state.dim_b(),
        ))
    }
}
