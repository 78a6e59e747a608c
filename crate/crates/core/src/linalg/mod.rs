//! Dense complex linear algebra for operators up to a few dozen dimensions.

pub mod density;
pub mod eigen;
pub mod matrix;
pub mod partial;

pub use density::{basis_vector, state_distance, DensityMatrix, Validation};
pub use eigen::{
    cholesky_solve, extremal_eigenpair, hermitian_eigen, hermitian_eigenvalues, singular_values,
    HermitianEigen,
};
pub use matrix::{hs_distance, inner, kron_vec, normalized, vec_norm, ComplexMatrix, C};
pub use partial::{partial_trace_operator, partial_transpose_operator, realign_operator};
