use super::eigen::hermitian_eig;
use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Singular values, descending. Hermitian input uses `|eigenvalues|` directly,
/// anything else the square roots of the spectrum of `m^dagger m`.
pub fn singular_values(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let mut sv: Vec<f64> = if m.is_square() && m.hermiticity_error() <= 1e-12 * m.max_abs() {
        hermitian_eig(&m.hermitian_part())?
            .eigenvalues
            .iter()
            .map(|x| x.abs())
            .collect()
    } else {
        let gram = m.adjoint().matmul(m).hermitian_part();
        hermitian_eig(&gram)?
            .eigenvalues
            .iter()
            .map(|x| x.max(0.0).sqrt())
            .collect()
    };
    sv.sort_by(|a, b| b.total_cmp(a));
    Ok(sv)
}

/// Schatten-p norm; `p = f64::INFINITY` gives the operator norm.
pub fn schatten_norm(m: &ComplexMatrix, p: f64) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidP(p));
    }
    let sv = singular_values(m)?;
    if p.is_infinite() {
        return Ok(sv.first().copied().unwrap_or(0.0));
    }
    if p == 1.0 {
        return Ok(sv.iter().sum());
    }
    if p == 2.0 {
        return Ok(sv.iter().map(|s| s * s).sum::<f64>().sqrt());
    }
    let top = sv.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return Ok(0.0);
    }
    // Factor out the largest value to keep s^p in range.
    Ok(top
        * sv.iter()
            .map(|s| (s / top).powf(p))
            .sum::<f64>()
            .powf(1.0 / p))
}

/// `||a - b||_1`
pub fn trace_distance_norm(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    schatten_norm(&(a - b), 1.0)
}
