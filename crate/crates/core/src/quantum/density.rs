use nalgebra::{DMatrix, Matrix2, Matrix4, Vector4};
use num_complex::Complex64;

use super::labels::{BellLabel, Party, PauliLabel};
use crate::error::{Error, Result};

/// Complex number carrying decoherence factors and matrix entries.
pub type ComplexAmplitude = Complex64;

/// Entrywise tolerance for Hermiticity.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Tolerance on |tr ρ − 1|.
pub const TRACE_TOL: f64 = 1e-12;
/// Eigenvalues in `[-EIGEN_CLAMP, 0)` are treated as zero; anything lower is rejected.
pub const EIGEN_CLAMP: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Basis labels in storage order.
pub const BASIS: [&str; 4] = ["HH", "HV", "VH", "VV"];

/// Index of the two-qubit basis state `|alice bob⟩`, with H = 0 and V = 1.
#[inline]
pub const fn basis_index(alice: usize, bob: usize) -> usize {
    2 * alice + bob
}

pub fn pauli_matrix(p: PauliLabel) -> Matrix2<Complex64> {
    match p {
        PauliLabel::Id => Matrix2::new(ONE, ZERO, ZERO, ONE),
        PauliLabel::X => Matrix2::new(ZERO, ONE, ONE, ZERO),
        PauliLabel::Y => Matrix2::new(ZERO, -I, I, ZERO),
        PauliLabel::Z => Matrix2::new(ONE, ZERO, ZERO, -ONE),
    }
}

pub(crate) fn kron2(a: &Matrix2<Complex64>, b: &Matrix2<Complex64>) -> Matrix4<Complex64> {
    Matrix4::from_fn(|r, c| a[(r / 2, c / 2)] * b[(r % 2, c % 2)])
}

/// Amplitudes of a Bell state in the (HH, HV, VH, VV) basis.
pub fn bell_vector(label: BellLabel) -> Vector4<Complex64> {
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    match label {
        BellLabel::PhiPlus => Vector4::new(h, ZERO, ZERO, h),
        BellLabel::PhiMinus => Vector4::new(h, ZERO, ZERO, -h),
        BellLabel::PsiPlus => Vector4::new(ZERO, h, h, ZERO),
        BellLabel::PsiMinus => Vector4::new(ZERO, h, -h, ZERO),
    }
}

fn hermitian_deviation<const N: usize>(m: &nalgebra::SMatrix<Complex64, N, N>) -> f64 {
    let mut worst = 0.0f64;
    for r in 0..N {
        for c in r..N {
            worst = worst.max((m[(r, c)] - m[(c, r)].conj()).norm());
        }
    }
    worst
}

fn dynamic<const N: usize>(m: &nalgebra::SMatrix<Complex64, N, N>) -> DMatrix<Complex64> {
    DMatrix::from_column_slice(N, N, m.as_slice())
}

/// Spectrum of a validated state, with the small negative tail clamped to zero.
fn clamped_spectrum<const N: usize>(m: &nalgebra::SMatrix<Complex64, N, N>) -> Vec<f64> {
    dynamic(m)
        .symmetric_eigenvalues()
        .iter()
        .map(|&l| l.max(0.0))
        .collect()
}

fn validate<const N: usize>(m: &nalgebra::SMatrix<Complex64, N, N>) -> Result<()> {
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite);
    }
    let dev = hermitian_deviation(m);
    if dev > HERMITIAN_TOL {
        return Err(Error::NotHermitian(dev));
    }
    let tr = m.trace();
    if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
        return Err(Error::InvalidTrace(tr.re));
    }
    let min = dynamic(m)
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    if min < -EIGEN_CLAMP {
        return Err(Error::NotPositive(min));
    }
    Ok(())
}

/// Hermitian part, negative eigenvalues removed, trace rescaled to one.
fn physical_part<const N: usize>(
    m: &nalgebra::SMatrix<Complex64, N, N>,
) -> Result<nalgebra::SMatrix<Complex64, N, N>> {
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite);
    }
    let herm = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = dynamic(&herm).symmetric_eigen();
    let vals: Vec<f64> = eig.eigenvalues.iter().map(|&l| l.max(0.0)).collect();
    let total: f64 = vals.iter().sum();
    if total <= 0.0 {
        return Err(Error::InvalidTrace(total));
    }
    let mut out = nalgebra::SMatrix::<Complex64, N, N>::zeros();
    for (k, &l) in vals.iter().enumerate() {
        if l == 0.0 {
            continue;
        }
        let v = eig.eigenvectors.column(k);
        let outer = v * v.adjoint();
        out += nalgebra::SMatrix::<Complex64, N, N>::from_column_slice(outer.as_slice())
            * Complex64::new(l / total, 0.0);
    }
    Ok(out)
}

/// A two-qubit density matrix in the (HH, HV, VH, VV) basis.
///
/// Construction checks Hermiticity and unit trace to 1e-12 and rejects
/// eigenvalues below −1e-10; everything downstream sees a physical state.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    m: Matrix4<Complex64>,
}

impl DensityMatrix {
    pub fn new(m: Matrix4<Complex64>) -> Result<Self> {
        validate(&m)?;
        Ok(Self { m })
    }

    /// For operations that preserve validity by construction.
    pub(crate) fn from_matrix_unchecked(m: Matrix4<Complex64>) -> Self {
        debug_assert!(validate(&m).is_ok(), "{:?}", validate(&m));
        Self { m }
    }

    /// The closest physical state obtained by Hermitizing, dropping negative
    /// eigenvalues and renormalizing. Used for noisy reconstructions.
    pub fn nearest_physical(m: Matrix4<Complex64>) -> Result<Self> {
        Ok(Self {
            m: physical_part(&m)?,
        })
    }

    /// |ψ⟩⟨ψ| for a (not necessarily normalized) state vector.
    pub fn from_pure(psi: &Vector4<Complex64>) -> Result<Self> {
        let norm = psi.norm();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::Parameter("state vector has zero norm".into()));
        }
        let v = psi.unscale(norm);
        Ok(Self::from_matrix_unchecked(v * v.adjoint()))
    }

    pub fn maximally_mixed() -> Self {
        Self {
            m: Matrix4::identity() * Complex64::new(0.25, 0.0),
        }
    }

    /// σ ⊗ τ with σ on Alice and τ on Bob.
    pub fn product(alice: &QubitState, bob: &QubitState) -> Self {
        Self::from_matrix_unchecked(kron2(alice.matrix(), bob.matrix()))
    }

    pub fn matrix(&self) -> &Matrix4<Complex64> {
        &self.m
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.m[(row, col)]
    }

    pub fn trace(&self) -> Complex64 {
        self.m.trace()
    }

    /// Eigenvalues in ascending order, clamped at zero.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut v = clamped_spectrum(&self.m);
        v.sort_by(f64::total_cmp);
        v
    }

    /// tr(ρσ); for pure states this is the overlap |⟨ψ|φ⟩|².
    pub fn overlap(&self, other: &DensityMatrix) -> f64 {
        (self.m * other.m).trace().re
    }

    /// ⟨ψ|ρ|ψ⟩ for a normalized vector.
    pub fn expectation(&self, psi: &Vector4<Complex64>) -> f64 {
        (psi.adjoint() * self.m * psi)[(0, 0)].re
    }

    /// Uhlmann fidelity (tr √(√ρ σ √ρ))².
    pub fn fidelity(&self, other: &DensityMatrix) -> f64 {
        let sqrt_rho = psd_sqrt(&self.m);
        let inner = sqrt_rho * other.m * sqrt_rho;
        let s: f64 = clamped_spectrum(&inner).iter().map(|l| l.sqrt()).sum();
        (s * s).min(1.0)
    }

    /// Entrywise maximum distance to another state.
    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        (self.m - other.m).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Eigenvalues below this are numerical rank deficiency, not signal.
const RANK_TOL: f64 = 1e-14;

/// Square root of a positive semidefinite Hermitian matrix of unit scale.
pub(crate) fn psd_sqrt(m: &Matrix4<Complex64>) -> Matrix4<Complex64> {
    let eig = m.symmetric_eigen();
    let mut out = Matrix4::zeros();
    for k in 0..4 {
        let l = eig.eigenvalues[k];
        if l < RANK_TOL {
            continue;
        }
        let v = eig.eigenvectors.column(k);
        out += (v * v.adjoint()) * Complex64::new(l.sqrt(), 0.0);
    }
    out
}

/// A single-qubit density matrix, e.g. a reduced state.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitState {
    m: Matrix2<Complex64>,
}

impl QubitState {
    pub fn new(m: Matrix2<Complex64>) -> Result<Self> {
        validate(&m)?;
        Ok(Self { m })
    }

    pub fn maximally_mixed() -> Self {
        Self {
            m: Matrix2::identity() * Complex64::new(0.5, 0.0),
        }
    }

    /// Pure state `cos(θ/2)|H⟩ + e^{iφ} sin(θ/2)|V⟩`.
    pub fn pure(theta: f64, phi: f64) -> Self {
        let a = Complex64::new((theta / 2.0).cos(), 0.0);
        let b = Complex64::from_polar((theta / 2.0).sin(), phi);
        let v = nalgebra::Vector2::new(a, b);
        Self { m: v * v.adjoint() }
    }

    pub fn matrix(&self) -> &Matrix2<Complex64> {
        &self.m
    }

    pub fn trace(&self) -> Complex64 {
        self.m.trace()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut v = clamped_spectrum(&self.m);
        v.sort_by(f64::total_cmp);
        v
    }
}

/// Projector onto one of the four Bell states.
pub fn bell_state(label: BellLabel) -> DensityMatrix {
    // Built from ±1 entries and halved so that the matrix is exact.
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let v = bell_vector(label).map(|z| z / h);
    DensityMatrix::from_matrix_unchecked(v * v.adjoint() * Complex64::new(0.5, 0.0))
}

/// U ρ U† with U the Pauli operation acting on `party`'s qubit.
pub fn apply_pauli(rho: &DensityMatrix, p: PauliLabel, party: Party) -> DensityMatrix {
    let id = pauli_matrix(PauliLabel::Id);
    let local = pauli_matrix(p);
    let u = match party {
        Party::Alice => kron2(&local, &id),
        Party::Bob => kron2(&id, &local),
    };
    DensityMatrix::from_matrix_unchecked(u * rho.matrix() * u.adjoint())
}

/// Reduced state of the party named by `keep`.
pub fn partial_trace(rho: &DensityMatrix, keep: Party) -> QubitState {
    let m = rho.matrix();
    let reduced = Matrix2::from_fn(|r, c| {
        (0..2)
            .map(|k| match keep {
                Party::Alice => m[(basis_index(r, k), basis_index(c, k))],
                Party::Bob => m[(basis_index(k, r), basis_index(k, c))],
            })
            .sum()
    });
    QubitState { m: reduced }
}

/// Wootters concurrence max(0, λ₁ − λ₂ − λ₃ − λ₄).
///
/// The λᵢ are square roots of the eigenvalues of ρ(σ_y⊗σ_y)ρ*(σ_y⊗σ_y).
/// They are taken as the singular values of √ρ (σ_y⊗σ_y) √ρ*, whose Gram
/// matrix has that spectrum; this avoids square roots of tiny eigenvalues.
pub fn concurrence(rho: &DensityMatrix) -> f64 {
    let y = pauli_matrix(PauliLabel::Y);
    let yy = kron2(&y, &y);
    let sqrt_rho = psd_sqrt(rho.matrix());
    let m = sqrt_rho * yy * sqrt_rho.conjugate();
    let mut lambdas: Vec<f64> = m.singular_values().iter().copied().collect();
    lambdas.sort_by(|a, b| b.total_cmp(a));
    (lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).clamp(0.0, 1.0)
}
