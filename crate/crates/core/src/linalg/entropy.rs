//! Entropic functionals. Every logarithm is base 2, so results are in bits.

use super::eigen::{hermitian_eig, SpectralDecomposition, HERMITIAN_TOL};
use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Eigenvalues in `[-EIGEN_FLOOR, 0]` are round-off and clamp to zero.
pub const EIGEN_FLOOR: f64 = 1e-10;

/// Allowed deviation of the trace from one.
pub const TRACE_TOL: f64 = 1e-10;

/// Eigenvalues of the second argument below this count as outside its support.
pub const SUPPORT_TOL: f64 = 1e-10;

/// Multiply an entropy in bits by this to get nats.
pub const BITS_TO_NATS: f64 = std::f64::consts::LN_2;

/// `-Σ λ log2 λ` with `0 log 0 = 0`; negative entries are treated as zero.
pub fn shannon_entropy(values: &[f64]) -> f64 {
    values
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| -x * x.log2())
        .sum::<f64>()
        .max(0.0)
}

/// Checks the density-matrix preconditions and returns the spectrum.
pub fn validate_density_matrix(rho: &ComplexMatrix) -> Result<SpectralDecomposition> {
    if !rho.is_square() {
        return Err(Error::NotDensityMatrix(format!(
            "not square ({}x{})",
            rho.rows(),
            rho.cols()
        )));
    }
    let herm = rho.hermiticity_error();
    if herm > HERMITIAN_TOL {
        return Err(Error::NotDensityMatrix(format!(
            "not Hermitian (deviation {herm:e})"
        )));
    }
    let tr = rho.trace().re;
    if (tr - 1.0).abs() > TRACE_TOL {
        return Err(Error::NotDensityMatrix(format!("trace {tr} != 1")));
    }
    let spec = hermitian_eig(rho)?;
    let min = spec.min_eigenvalue();
    if min < -EIGEN_FLOOR {
        return Err(Error::NotDensityMatrix(format!(
            "negative eigenvalue {min:e}"
        )));
    }
    Ok(spec)
}

pub fn von_neumann_entropy(rho: &ComplexMatrix) -> Result<f64> {
    let spec = validate_density_matrix(rho)?;
    Ok(shannon_entropy(&spec.eigenvalues))
}

/// Entropy of a matrix already known to be a density matrix (no trace/PSD checks).
pub(crate) fn entropy_trusted(rho: &ComplexMatrix) -> Result<f64> {
    Ok(shannon_entropy(&hermitian_eig(rho)?.eigenvalues))
}

/// `S(ρ||σ) = tr ρ (log2 ρ - log2 σ)`.
pub fn relative_entropy(rho: &ComplexMatrix, sigma: &ComplexMatrix) -> Result<f64> {
    if rho.rows() != sigma.rows() || rho.cols() != sigma.cols() {
        return Err(Error::dims(
            format!("{}x{}", rho.rows(), rho.cols()),
            format!("{}x{}", sigma.rows(), sigma.cols()),
        ));
    }
    let rho_spec = validate_density_matrix(rho)?;
    let sigma_spec = validate_density_matrix(sigma)?;

    let neg_entropy = -shannon_entropy(&rho_spec.eigenvalues);
    let mut cross = 0.0;
    for (k, &lambda) in sigma_spec.eigenvalues.iter().enumerate() {
        let v = sigma_spec.eigenvector(k);
        let weight = rho.expectation(&v).re;
        if lambda <= SUPPORT_TOL {
            if weight > SUPPORT_TOL {
                return Err(Error::SupportViolation { weight });
            }
            continue;
        }
        cross += weight * lambda.log2();
    }
    Ok((neg_entropy - cross).max(0.0))
}

/// `-x log2 x - (1-x) log2 (1-x)`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::OutOfRange {
            value: x,
            lo: 0.0,
            hi: 1.0,
        });
    }
    Ok(shannon_entropy(&[x, 1.0 - x]))
}
