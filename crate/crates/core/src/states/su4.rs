//! Generalized Bloch representation of two-qubit states and the symmetric
//! X-state family.
//!
//! A two-qubit density matrix is written `¼(I + √6 Σ_i r_i Λ_i)` over the
//! fifteen traceless Hermitian generators of SU(4), normalized so that
//! `tr(Λ_i Λ_j) = 2 δ_ij`. Symmetric X-states (real entries, nonzero only on the
//! diagonal and anti-diagonal, equal middle diagonal entries) keep four free
//! coordinates `r_6, r_8, r_9, r_15`, with `r_3 = √3 r_8` tied to `r_8`.

use super::BipartiteState;
use crate::error::{Error, Result};
use crate::linalg::entropy::EIGEN_FLOOR;
use crate::linalg::matrix::{ComplexMatrix, C64};

/// Gaussian-integer matrix times `1/√norm_denominator`.
///
/// Keeping the integer pattern separate from the scale makes the Gram products
/// `tr(Λ_i Λ_j)` exact in floating point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Generator {
    pub index: usize,
    /// `(re, im)` integer parts.
    pub pattern: [[(i8, i8); 4]; 4],
    pub norm_denominator: u8,
}

impl Generator {
    pub fn matrix(&self) -> ComplexMatrix {
        let s = 1.0 / (self.norm_denominator as f64).sqrt();
        ComplexMatrix::from_fn(4, 4, |i, j| {
            let (re, im) = self.pattern[i][j];
            C64::new(re as f64 * s, im as f64 * s)
        })
    }
}

const fn off_diag(a: usize, b: usize, imaginary: bool, index: usize) -> Generator {
    let mut pattern = [[(0i8, 0i8); 4]; 4];
    if imaginary {
        pattern[a][b] = (0, -1);
        pattern[b][a] = (0, 1);
    } else {
        pattern[a][b] = (1, 0);
        pattern[b][a] = (1, 0);
    }
    Generator {
        index,
        pattern,
        norm_denominator: 1,
    }
}

const fn diagonal(d: [i8; 4], norm_denominator: u8, index: usize) -> Generator {
    let mut pattern = [[(0i8, 0i8); 4]; 4];
    let mut k = 0;
    while k < 4 {
        pattern[k][k] = (d[k], 0);
        k += 1;
    }
    Generator {
        index,
        pattern,
        norm_denominator,
    }
}

const GENERATORS: [Generator; 15] = [
    off_diag(0, 1, false, 1),
    off_diag(0, 1, true, 2),
    diagonal([1, -1, 0, 0], 1, 3),
    off_diag(0, 2, false, 4),
    off_diag(0, 2, true, 5),
    off_diag(1, 2, false, 6),
    off_diag(1, 2, true, 7),
    diagonal([1, 1, -2, 0], 3, 8),
    off_diag(0, 3, false, 9),
    off_diag(0, 3, true, 10),
    off_diag(1, 3, false, 11),
    off_diag(1, 3, true, 12),
    off_diag(2, 3, false, 13),
    off_diag(2, 3, true, 14),
    diagonal([1, 1, 1, -3], 6, 15),
];

/// Generator `Λ_index`, `index` in `1..=15`.
pub fn generator(index: usize) -> Generator {
    assert!(
        (1..=15).contains(&index),
        "SU(4) generator index {index} out of 1..=15"
    );
    GENERATORS[index - 1]
}

/// `tr(Λ_i Λ_j)` computed on the integer patterns, then scaled.
pub fn generator_trace_product(i: usize, j: usize) -> C64 {
    let (gi, gj) = (generator(i), generator(j));
    let (mut re, mut im) = (0i32, 0i32);
    for a in 0..4 {
        for b in 0..4 {
            let (x_re, x_im) = gi.pattern[a][b];
            let (y_re, y_im) = gj.pattern[b][a];
            let (x_re, x_im, y_re, y_im) = (x_re as i32, x_im as i32, y_re as i32, y_im as i32);
            re += x_re * y_re - x_im * y_im;
            im += x_re * y_im + x_im * y_re;
        }
    }
    let (ki, kj) = (gi.norm_denominator as i32, gj.norm_denominator as i32);
    if ki == kj {
        C64::new(re as f64 / ki as f64, im as f64 / ki as f64)
    } else {
        let s = ((ki * kj) as f64).sqrt();
        C64::new(re as f64 / s, im as f64 / s)
    }
}

/// All fifteen Bloch coordinates `r_i = 2 tr(ρ Λ_i) / √6` of a 4x4 matrix.
pub fn bloch_coordinates(rho: &ComplexMatrix) -> [f64; 15] {
    assert_eq!(rho.rows(), 4, "Bloch coordinates need a 4x4 matrix");
    let scale = 2.0 / 6f64.sqrt();
    let mut r = [0.0; 15];
    for (k, slot) in r.iter_mut().enumerate() {
        *slot = scale * rho.matmul(&generator(k + 1).matrix()).trace().re;
    }
    r
}

/// Free Bloch coordinates of a symmetric X-state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct XStateParams {
    pub r6: f64,
    pub r8: f64,
    pub r9: f64,
    pub r15: f64,
}

impl XStateParams {
    /// Checks `r_i ∈ [-1, 1]` and `r6² + 4 r8² + r9² + r15² <= 1`.
    pub fn new(r6: f64, r8: f64, r9: f64, r15: f64) -> Result<Self> {
        let p = Self { r6, r8, r9, r15 };
        for (name, v) in [("r6", r6), ("r8", r8), ("r9", r9), ("r15", r15)] {
            if !(-1.0..=1.0).contains(&v) {
                return Err(Error::InvalidXState(format!(
                    "{name} = {v} outside [-1, 1]"
                )));
            }
        }
        let n = p.ball_norm_sq();
        if n > 1.0 {
            return Err(Error::InvalidXState(format!(
                "r6² + 4r8² + r9² + r15² = {n} > 1"
            )));
        }
        Ok(p)
    }

    pub fn zero() -> Self {
        Self {
            r6: 0.0,
            r8: 0.0,
            r9: 0.0,
            r15: 0.0,
        }
    }

    /// `r6² + 4 r8² + r9² + r15²`; the factor 4 absorbs `r_3 = √3 r_8`.
    pub fn ball_norm_sq(&self) -> f64 {
        self.r6 * self.r6 + 4.0 * self.r8 * self.r8 + self.r9 * self.r9 + self.r15 * self.r15
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.r6, self.r8, self.r9, self.r15]
    }

    /// Entries `(a, b, d, w, z)` of the X-state matrix.
    pub fn entries(&self) -> (f64, f64, f64, f64, f64) {
        let s2 = std::f64::consts::SQRT_2;
        let s6 = 6f64.sqrt();
        let a = (1.0 + 4.0 * s2 * self.r8 + self.r15) / 4.0;
        let b = (1.0 - 2.0 * s2 * self.r8 + self.r15) / 4.0;
        let d = (1.0 - 3.0 * self.r15) / 4.0;
        let w = s6 * self.r9 / 4.0;
        let z = s6 * self.r6 / 4.0;
        (a, b, d, w, z)
    }

    /// Smallest eigenvalue of the induced matrix, in closed form.
    pub fn min_eigenvalue(&self) -> f64 {
        let (a, b, d, w, z) = self.entries();
        let outer = 0.5 * (a + d) - (0.25 * (a - d) * (a - d) + w * w).sqrt();
        let inner = b - z.abs();
        outer.min(inner)
    }

    /// Reads the four coordinates back from a state's Bloch vector.
    pub fn from_matrix(rho: &ComplexMatrix) -> Self {
        let r = bloch_coordinates(rho);
        Self {
            r6: r[5],
            r8: r[7],
            r9: r[8],
            r15: r[14],
        }
    }
}

pub fn is_x_state_psd(params: &XStateParams) -> bool {
    params.min_eigenvalue() >= 0.0
}

/// The symmetric X-state
/// ```text
///       | a 0 0 w |
///       | 0 b z 0 |
///       | 0 z b 0 |
///       | w 0 0 d |
/// ```
/// with `a = (1 + 4√2 r8 + r15)/4`, `b = (1 - 2√2 r8 + r15)/4`, `d = (1 - 3 r15)/4`,
/// `w = √6 r9/4`, `z = √6 r6/4`.
pub fn x_state_from_params(params: &XStateParams) -> Result<BipartiteState> {
    let min = params.min_eigenvalue();
    if min < -EIGEN_FLOOR {
        return Err(Error::NotPositiveSemidefinite {
            min_eigenvalue: min,
        });
    }
    let (a, b, d, w, z) = params.entries();
    let rho = ComplexMatrix::from_real_rows(&[
        &[a, 0.0, 0.0, w],
        &[0.0, b, z, 0.0],
        &[0.0, z, b, 0.0],
        &[w, 0.0, 0.0, d],
    ]);
    Ok(BipartiteState::new_unchecked(rho, 2, 2))
}
