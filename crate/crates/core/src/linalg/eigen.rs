//! Hermitian eigendecomposition by cyclic complex Jacobi rotations.
//!
//! Jacobi is slow for large matrices but every matrix here is at most a few
//! dozen rows, and the method gives eigenvectors orthonormal to machine
//! precision with fully deterministic output.

use std::ops::Range;

use super::matrix::{ComplexMatrix, C64, ZERO};
use crate::error::{Error, Result};

/// Inputs with `||m - m^dagger||_max` above this are rejected.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Eigenvalues closer than this (absolute) are treated as one degenerate level.
pub const DEGENERACY_TOL: f64 = 1e-8;

/// Sweep cap for the Jacobi iteration.
pub const MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors as columns, in eigenvalue order.
    pub eigenvectors: ComplexMatrix,
    /// Smallest gap between consecutive eigenvalues; zero when a degenerate
    /// block exists, infinite for 1x1 input.
    pub min_gap: f64,
    /// Index ranges (length >= 2) whose eigenvalues chain within `DEGENERACY_TOL`.
    pub degenerate_blocks: Vec<Range<usize>>,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvector(&self, i: usize) -> Vec<C64> {
        self.eigenvectors.column(i)
    }

    pub fn eigenvector_list(&self) -> Vec<Vec<C64>> {
        self.eigenvectors.columns()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.degenerate_blocks.is_empty()
    }

    /// `V diag(λ) V^dagger`
    pub fn reconstruct(&self) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let n = self.dim();
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n)
                .map(|k| v[(i, k)] * v[(j, k)].conj() * self.eigenvalues[k])
                .sum()
        })
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }
}

pub fn hermitian_eig(m: &ComplexMatrix) -> Result<SpectralDecomposition> {
    if !m.is_square() {
        return Err(Error::dims(
            "square matrix",
            format!("{}x{}", m.rows(), m.cols()),
        ));
    }
    let deviation = m.hermiticity_error();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let n = m.dim();
    let (values, vectors) = jacobi(&m.hermitian_part())?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
    let eigenvalues: Vec<f64> = order.iter().map(|&k| values[k]).collect();

    let mut eigenvectors = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        // Fix the phase: largest-magnitude entry real positive.
        let mut pivot = 0;
        let mut best = -1.0;
        for i in 0..n {
            let a = vectors[(i, src)].norm();
            if a > best {
                best = a;
                pivot = i;
            }
        }
        let z = vectors[(pivot, src)];
        let phase = if z.norm() > 0.0 {
            z.conj() / z.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        for i in 0..n {
            eigenvectors[(i, dst)] = vectors[(i, src)] * phase;
        }
        eigenvectors[(pivot, dst)] = C64::new(eigenvectors[(pivot, dst)].norm(), 0.0);
    }

    let (min_gap, degenerate_blocks) = gap_structure(&eigenvalues, DEGENERACY_TOL);
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
        min_gap,
        degenerate_blocks,
    })
}

/// Smallest consecutive gap and the chained degenerate blocks of an ascending spectrum.
pub fn gap_structure(sorted: &[f64], tol: f64) -> (f64, Vec<Range<usize>>) {
    let mut blocks = Vec::new();
    let mut min_gap = f64::INFINITY;
    let mut start = 0;
    for i in 1..=sorted.len() {
        let split = i == sorted.len() || sorted[i] - sorted[i - 1] >= tol;
        if i < sorted.len() {
            min_gap = min_gap.min(sorted[i] - sorted[i - 1]);
        }
        if split {
            if i - start >= 2 {
                blocks.push(start..i);
            }
            start = i;
        }
    }
    if !blocks.is_empty() {
        min_gap = 0.0;
    }
    (min_gap, blocks)
}

fn jacobi(a0: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    let n = a0.dim();
    let mut a = a0.clone();
    let mut v = ComplexMatrix::identity(n);
    for i in 0..n {
        a[(i, i)] = C64::new(a[(i, i)].re, 0.0);
    }
    let scale = a.frobenius_norm();

    let mut converged = n <= 1 || scale == 0.0;
    let mut sweep = 0;
    while !converged {
        if sweep == MAX_SWEEPS {
            return Err(Error::ConvergenceFailure { sweeps: MAX_SWEEPS });
        }
        sweep += 1;
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += a[(p, q)].norm_sqr();
            }
        }
        converged = off.sqrt() <= 1e-16 * scale;
    }
    let values = (0..n).map(|i| a[(i, i)].re).collect();
    Ok((values, v))
}

/// One complex Jacobi rotation annihilating `a[p][q]`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let n = a.rows();
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let e = apq / r;

    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // U = diag(1, conj(e)) . [[c, s], [-s, c]] on the (p, q) plane.
    let upp = C64::new(c, 0.0);
    let upq = C64::new(s, 0.0);
    let uqp = -e.conj() * s;
    let uqq = e.conj() * c;

    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * upp + akq * uqp;
        a[(k, q)] = akp * upq + akq * uqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = upp.conj() * apk + uqp.conj() * aqk;
        a[(q, k)] = upq.conj() * apk + uqq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * upp + vkq * uqp;
        v[(k, q)] = vkp * upq + vkq * uqq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::orthonormality_error;

    #[test]
    fn identity_is_one_degenerate_block() {
        let d = hermitian_eig(&ComplexMatrix::identity(2)).unwrap();
        assert_eq!(d.eigenvalues, vec![1.0, 1.0]);
        assert_eq!(d.min_gap, 0.0);
        assert_eq!(d.degenerate_blocks, vec![0..2]);
    }

    #[test]
    fn diagonal_input_keeps_standard_basis() {
        let d = hermitian_eig(&ComplexMatrix::from_diag(&[0.8, 0.2])).unwrap();
        assert_eq!(d.eigenvalues, vec![0.2, 0.8]);
        assert!((d.min_gap - 0.6).abs() < 1e-15);
        assert_eq!(d.eigenvector(0), vec![ZERO, C64::new(1.0, 0.0)]);
        assert_eq!(d.eigenvector(1), vec![C64::new(1.0, 0.0), ZERO]);
        assert!(!d.is_degenerate());
    }

    #[test]
    fn pauli_x_eigenvectors() {
        let x = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let d = hermitian_eig(&x).unwrap();
        assert!((d.eigenvalues[0] + 1.0).abs() < 1e-15);
        assert!((d.eigenvalues[1] - 1.0).abs() < 1e-15);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let minus = d.eigenvector(0);
        let plus = d.eigenvector(1);
        // Up to phase: |<v|target>| = 1.
        let ov_minus = (minus[0] * h - minus[1] * h).norm();
        let ov_plus = (plus[0] * h + plus[1] * h).norm();
        assert!((ov_minus - 1.0).abs() < 1e-14);
        assert!((ov_plus - 1.0).abs() < 1e-14);
        assert!(orthonormality_error(&d.eigenvector_list()) < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(hermitian_eig(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn phase_convention_makes_pivot_real_positive() {
        let i = C64::new(0.0, 1.0);
        let m =
            ComplexMatrix::from_rows(&[vec![C64::new(1.0, 0.0), i], vec![-i, C64::new(2.0, 0.0)]]);
        let d = hermitian_eig(&m).unwrap();
        for k in 0..2 {
            let col = d.eigenvector(k);
            let pivot = col
                .iter()
                .enumerate()
                .fold((0, -1.0), |acc, (j, z)| {
                    if z.norm() > acc.1 {
                        (j, z.norm())
                    } else {
                        acc
                    }
                })
                .0;
            assert_eq!(col[pivot].im, 0.0);
            assert!(col[pivot].re > 0.0);
        }
    }

    #[test]
    fn gap_structure_chains_close_values() {
        let (gap, blocks) = gap_structure(&[0.1, 0.1 + 5e-9, 0.1 + 9e-9, 0.5, 0.7], DEGENERACY_TOL);
        assert_eq!(blocks, vec![0..3]);
        assert_eq!(gap, 0.0);
        let (gap, blocks) = gap_structure(&[0.5], DEGENERACY_TOL);
        assert!(blocks.is_empty());
        assert!(gap.is_infinite());
    }
}
