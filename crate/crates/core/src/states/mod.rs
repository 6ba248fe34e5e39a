//! Density matrices on composite systems.

mod format;
mod sampling;
mod su4;

pub(crate) use format::{fmt_f64, parse_count, parse_f64};
pub use format::{
    parse_multipartite, parse_state, write_matrix, write_multipartite, write_state, LineReader,
};
pub use sampling::{
    classical_quantum_state, random_bipartite_with_gap, sample_random_bipartite, sample_x_params,
    sample_x_params_counted, sample_x_state,
};
pub use su4::{
    bloch_coordinates, generator, generator_trace_product, is_x_state_psd, x_state_from_params,
    Generator, XStateParams,
};

use crate::error::{Error, Result};
use crate::linalg::matrix::{ComplexMatrix, C64};
use crate::linalg::{validate_density_matrix, SpectralDecomposition};

/// Density matrix on `A ⊗ B`.
#[derive(Clone, Debug, PartialEq)]
pub struct BipartiteState {
    rho: ComplexMatrix,
    dim_a: usize,
    dim_b: usize,
}

impl BipartiteState {
    pub fn new(rho: ComplexMatrix, dim_a: usize, dim_b: usize) -> Result<Self> {
        check_dims(&rho, &[dim_a, dim_b])?;
        validate_density_matrix(&rho)?;
        Ok(Self { rho, dim_a, dim_b })
    }

    /// Caller guarantees the density-matrix invariants.
    pub(crate) fn new_unchecked(rho: ComplexMatrix, dim_a: usize, dim_b: usize) -> Self {
        debug_assert_eq!(rho.rows(), dim_a * dim_b);
        Self { rho, dim_a, dim_b }
    }

    pub fn product(rho_a: &ComplexMatrix, rho_b: &ComplexMatrix) -> Result<Self> {
        Self::new(rho_a.kron(rho_b), rho_a.rows(), rho_b.rows())
    }

    /// `|ψ><ψ|` for a normalized `ψ` on `A ⊗ B`.
    pub fn pure(psi: &[C64], dim_a: usize, dim_b: usize) -> Result<Self> {
        Self::new(ComplexMatrix::projector(psi), dim_a, dim_b)
    }

    /// `(|00> + |11>)/√2`
    pub fn bell_phi_plus() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let z = C64::new(0.0, 0.0);
        let psi = [C64::new(h, 0.0), z, z, C64::new(h, 0.0)];
        Self::new_unchecked(ComplexMatrix::projector(&psi), 2, 2)
    }

    pub fn maximally_mixed(dim_a: usize, dim_b: usize) -> Self {
        let n = dim_a * dim_b;
        Self::new_unchecked(
            ComplexMatrix::identity(n).scale_real(1.0 / n as f64),
            dim_a,
            dim_b,
        )
    }

    pub fn rho(&self) -> &ComplexMatrix {
        &self.rho
    }

    pub fn into_rho(self) -> ComplexMatrix {
        self.rho
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn dim(&self) -> usize {
        self.dim_a * self.dim_b
    }

    /// `ρ_A = tr_B ρ`
    pub fn marginal_a(&self) -> ComplexMatrix {
        trace_out_b(&self.rho, self.dim_a, self.dim_b)
    }

    /// `ρ_B = tr_A ρ`
    pub fn marginal_b(&self) -> ComplexMatrix {
        trace_out_a(&self.rho, self.dim_a, self.dim_b)
    }

    pub fn spectrum(&self) -> Result<SpectralDecomposition> {
        validate_density_matrix(&self.rho)
    }

    pub fn to_multipartite(&self) -> MultipartiteState {
        MultipartiteState {
            rho: self.rho.clone(),
            dims: vec![self.dim_a, self.dim_b],
        }
    }
}

/// Density matrix on `A_1 ⊗ ... ⊗ A_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct MultipartiteState {
    rho: ComplexMatrix,
    dims: Vec<usize>,
}

impl MultipartiteState {
    pub fn new(rho: ComplexMatrix, dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::dims("at least one party", "none"));
        }
        check_dims(&rho, &dims)?;
        validate_density_matrix(&rho)?;
        Ok(Self { rho, dims })
    }

    pub(crate) fn new_unchecked(rho: ComplexMatrix, dims: Vec<usize>) -> Self {
        debug_assert_eq!(rho.rows(), dims.iter().product::<usize>());
        Self { rho, dims }
    }

    pub fn rho(&self) -> &ComplexMatrix {
        &self.rho
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn parties(&self) -> usize {
        self.dims.len()
    }

    /// Reduced state of a single party.
    pub fn marginal(&self, party: usize) -> Result<ComplexMatrix> {
        reduce_to_party(&self.rho, &self.dims, party)
    }

    pub fn to_bipartite(&self) -> Result<BipartiteState> {
        match self.dims[..] {
            [a, b] => Ok(BipartiteState::new_unchecked(self.rho.clone(), a, b)),
            _ => Err(Error::dims(
                "2 parties",
                format!("{} parties", self.dims.len()),
            )),
        }
    }
}

fn check_dims(rho: &ComplexMatrix, dims: &[usize]) -> Result<()> {
    let n: usize = dims.iter().product();
    if dims.contains(&0) || !rho.is_square() || rho.rows() != n {
        return Err(Error::dims(
            format!("{n}x{n} matrix for dims {dims:?}"),
            format!("{}x{}", rho.rows(), rho.cols()),
        ));
    }
    Ok(())
}

pub fn partial_trace_b(state: &BipartiteState) -> ComplexMatrix {
    state.marginal_a()
}

pub fn partial_trace_a(state: &BipartiteState) -> ComplexMatrix {
    state.marginal_b()
}

/// `tr_B` of an operator on `A ⊗ B` (no state invariants required).
pub fn trace_out_b(m: &ComplexMatrix, dim_a: usize, dim_b: usize) -> ComplexMatrix {
    assert_eq!(m.rows(), dim_a * dim_b, "operator does not match dims");
    ComplexMatrix::from_fn(dim_a, dim_a, |i, j| {
        (0..dim_b).map(|k| m[(i * dim_b + k, j * dim_b + k)]).sum()
    })
}

/// `tr_A` of an operator on `A ⊗ B`.
pub fn trace_out_a(m: &ComplexMatrix, dim_a: usize, dim_b: usize) -> ComplexMatrix {
    assert_eq!(m.rows(), dim_a * dim_b, "operator does not match dims");
    ComplexMatrix::from_fn(dim_b, dim_b, |i, j| {
        (0..dim_a).map(|k| m[(k * dim_b + i, k * dim_b + j)]).sum()
    })
}

/// Reduced operator of one party of an n-partite operator.
pub fn reduce_to_party(m: &ComplexMatrix, dims: &[usize], party: usize) -> Result<ComplexMatrix> {
    if party >= dims.len() {
        return Err(Error::dims(format!("party < {}", dims.len()), party));
    }
    check_dims(m, dims)?;
    let left: usize = dims[..party].iter().product();
    let d = dims[party];
    let right: usize = dims[party + 1..].iter().product();
    Ok(ComplexMatrix::from_fn(d, d, |i, j| {
        let mut acc = C64::new(0.0, 0.0);
        for l in 0..left {
            for r in 0..right {
                acc += m[((l * d + i) * right + r, (l * d + j) * right + r)];
            }
        }
        acc
    }))
}

/// `I ⊗ ... ⊗ op ⊗ ... ⊗ I` with `op` on `party`.
pub fn embed_local(op: &ComplexMatrix, dims: &[usize], party: usize) -> ComplexMatrix {
    let left: usize = dims[..party].iter().product();
    let right: usize = dims[party + 1..].iter().product();
    ComplexMatrix::identity(left)
        .kron(op)
        .kron(&ComplexMatrix::identity(right))
}

/// Partial transpose on `A`, taken in the basis given by the columns of `basis`.
pub fn partial_transpose_a(
    m: &ComplexMatrix,
    dim_a: usize,
    dim_b: usize,
    basis: &ComplexMatrix,
) -> ComplexMatrix {
    let lift = basis.kron(&ComplexMatrix::identity(dim_b));
    let q = lift.adjoint().matmul(m).matmul(&lift);
    let pt = ComplexMatrix::from_fn(dim_a * dim_b, dim_a * dim_b, |r, c| {
        let (i, k) = (r / dim_b, r % dim_b);
        let (j, l) = (c / dim_b, c % dim_b);
        q[(j * dim_b + k, i * dim_b + l)]
    });
    lift.matmul(&pt).matmul(&lift.adjoint())
}
