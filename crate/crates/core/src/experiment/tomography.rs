//! Sixteen-projector two-qubit tomography with linear inversion.

use std::sync::LazyLock;

use nalgebra::{Matrix4, SMatrix, SVector, Vector2, Vector4};
use num_complex::Complex64;

use super::sampling::{binomial, stream};
use crate::error::{Error, Result};
use crate::quantum::{pauli_matrix, DensityMatrix, PauliLabel};

/// Single-qubit analyzer settings, in projector order.
pub const SETTINGS: [&str; 4] = ["H", "V", "D", "L"];

fn analyzer(i: usize) -> Vector2<Complex64> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let (a, b) = match i {
        0 => (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)),
        1 => (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)),
        2 => (Complex64::new(h, 0.0), Complex64::new(h, 0.0)),
        _ => (Complex64::new(h, 0.0), Complex64::new(0.0, h)),
    };
    Vector2::new(a, b)
}

/// Product state measured by projector `4·a + b`.
pub fn projector_state(index: usize) -> Vector4<Complex64> {
    let (a, b) = (analyzer(index / 4), analyzer(index % 4));
    Vector4::new(a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
}

/// Name of projector `index`, e.g. `"HD"`.
pub fn projector_name(index: usize) -> String {
    format!("{}{}", SETTINGS[index / 4], SETTINGS[index % 4])
}

fn pauli_product(idx: usize) -> Matrix4<Complex64> {
    const ORDER: [PauliLabel; 4] = [PauliLabel::Id, PauliLabel::X, PauliLabel::Y, PauliLabel::Z];
    let (a, b) = (pauli_matrix(ORDER[idx / 4]), pauli_matrix(ORDER[idx % 4]));
    a.kronecker(&b)
}

struct Design {
    /// Pauli products σ_i⊗σ_j indexed by `4i + j`.
    basis: [Matrix4<Complex64>; 16],
    inverse: SMatrix<f64, 16, 16>,
}

static DESIGN: LazyLock<Design> = LazyLock::new(|| {
    let basis: [Matrix4<Complex64>; 16] = std::array::from_fn(pauli_product);
    let mut b = SMatrix::<f64, 16, 16>::zeros();
    for k in 0..16 {
        let psi = projector_state(k);
        for (col, sigma) in basis.iter().enumerate() {
            b[(k, col)] = (psi.adjoint() * sigma * psi)[(0, 0)].re / 4.0;
        }
    }
    let inverse = b.try_inverse().expect("tomography design matrix is singular");
    Design { basis, inverse }
});

/// Forces construction of the design matrix and its inverse.
pub fn check_design() {
    LazyLock::force(&DESIGN);
}

/// Noiseless counts `n·⟨ψ_k|ρ|ψ_k⟩`.
pub fn expected_tomography_counts(rho: &DensityMatrix, n_per_projector: u64) -> [f64; 16] {
    std::array::from_fn(|k| n_per_projector as f64 * rho.expectation(&projector_state(k)))
}

/// Binomially sampled counts for each of the 16 projectors.
pub fn tomography_counts(rho: &DensityMatrix, n_per_projector: u64, seed: u64) -> Result<[u64; 16]> {
    if n_per_projector == 0 {
        return Err(Error::Parameter("n_per_projector must be positive".into()));
    }
    let mut rng = stream(seed, 0, 0);
    Ok(std::array::from_fn(|k| {
        binomial(&mut rng, n_per_projector, rho.expectation(&projector_state(k)))
    }))
}

/// Density matrix from 16 projector counts by linear inversion, mapped to
/// the nearest physical state.
pub fn reconstruct_linear_inversion(counts: &[f64], n_per_projector: u64) -> Result<DensityMatrix> {
    if counts.len() != 16 {
        return Err(Error::Parameter(format!("expected 16 counts, got {}", counts.len())));
    }
    if n_per_projector == 0 {
        return Err(Error::Parameter("n_per_projector must be positive".into()));
    }
    let n = n_per_projector as f64;
    let freqs = SVector::<f64, 16>::from_iterator(counts.iter().map(|c| c / n));
    if freqs.iter().any(|f| !f.is_finite()) {
        return Err(Error::NonFinite);
    }
    let design = &*DESIGN;
    let r = design.inverse * freqs;
    let mut m = Matrix4::zeros();
    for (coef, sigma) in r.iter().zip(&design.basis) {
        m += sigma * Complex64::new(coef / 4.0, 0.0);
    }
    DensityMatrix::nearest_physical(m)
}
