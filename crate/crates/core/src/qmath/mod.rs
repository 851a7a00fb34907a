//! Dense complex linear algebra and entropic functionals for Hilbert-space
//! dimensions up to 16.

pub mod eig;
pub mod entropy;
pub mod matrix;
pub mod state;

pub use eig::{eig_hermitian, eigvals_hermitian, HermitianEigen};
pub use entropy::{
    binary_entropy, eta, h_big, mutual_information, relative_entropy, trace_norm_distance,
    von_neumann_entropy,
};
pub use matrix::ComplexMatrix;
pub use state::{DensityMatrix, PureState};
