//! Dense complex linear algebra and matrix functions.

pub mod eigen;
pub mod entropy;
pub mod matrix;
pub mod norms;
pub mod random;

pub use eigen::{hermitian_eig, SpectralDecomposition, DEGENERACY_TOL, HERMITIAN_TOL};
pub use entropy::{
    binary_entropy, relative_entropy, shannon_entropy, validate_density_matrix, von_neumann_entropy,
};
pub use matrix::{inner, kron, orthonormality_error, ComplexMatrix, C64};
pub use norms::{schatten_norm, singular_values, trace_distance_norm};
