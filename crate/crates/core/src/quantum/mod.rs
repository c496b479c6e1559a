//! Two-qubit states, entropies, entanglement and the noiseless dense coding capacity.

mod density;
mod entropy;
mod labels;
mod random;
mod text;

pub use density::{
    apply_pauli, basis_index, bell_state, bell_vector, concurrence, partial_trace, pauli_matrix,
    ComplexAmplitude, DensityMatrix, QubitState, BASIS, EIGEN_CLAMP, HERMITIAN_TOL, TRACE_TOL,
};
pub use entropy::{binary_entropy, dense_coding_capacity, shannon_entropy, von_neumann_entropy, Spectrum};
pub use labels::{BellLabel, Party, PauliLabel, Sector};
pub use random::random_density_matrix;
pub use text::{format_complex, parse_complex};
