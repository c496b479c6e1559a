use super::density::{partial_trace, DensityMatrix, QubitState};
use super::labels::Party;
use crate::error::{check_range, Result};

/// States whose spectrum is available.
pub trait Spectrum {
    /// Eigenvalues, each non-negative.
    fn spectrum(&self) -> Vec<f64>;
}

impl Spectrum for DensityMatrix {
    fn spectrum(&self) -> Vec<f64> {
        self.eigenvalues()
    }
}

impl Spectrum for QubitState {
    fn spectrum(&self) -> Vec<f64> {
        self.eigenvalues()
    }
}

/// `-p log₂ p` with the convention `0 log 0 = 0`.
#[inline]
pub(crate) fn neg_plogp(p: f64) -> f64 {
    if p > 0.0 {
        -p * p.log2()
    } else {
        0.0
    }
}

/// Shannon entropy in bits of a probability vector.
pub fn shannon_entropy(probs: &[f64]) -> f64 {
    probs.iter().copied().map(neg_plogp).sum()
}

/// Von Neumann entropy −tr ρ log₂ ρ in bits.
pub fn von_neumann_entropy<S: Spectrum + ?Sized>(rho: &S) -> f64 {
    shannon_entropy(&rho.spectrum())
}

/// H(x) = −x log₂ x − (1−x) log₂(1−x).
pub fn binary_entropy(x: f64) -> Result<f64> {
    check_range("x", x, 0.0, 1.0, "[0, 1]")?;
    Ok(neg_plogp(x) + neg_plogp(1.0 - x))
}

/// Dense coding capacity log₂ 2 + S(ρ_B) − S(ρ_AB) of a shared two-qubit state, in bits.
pub fn dense_coding_capacity(rho: &DensityMatrix) -> f64 {
    let rho_b = partial_trace(rho, Party::Bob);
    1.0 + von_neumann_entropy(&rho_b) - von_neumann_entropy(rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{bell_state, BellLabel};
    use approx::assert_abs_diff_eq;

    #[test]
    fn binary_entropy_values() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        assert_abs_diff_eq!(binary_entropy(0.80325).unwrap(), 0.7155, epsilon = 2e-4);
        assert_abs_diff_eq!(binary_entropy(0.80325).unwrap(), 0.715_380_279_503_577_3, epsilon = 1e-12);
        // Series-free cross-check via natural logs.
        let x: f64 = 0.80325;
        let direct = -(x * x.ln() + (1.0 - x) * (1.0 - x).ln()) / std::f64::consts::LN_2;
        assert_abs_diff_eq!(binary_entropy(x).unwrap(), direct, epsilon = 1e-12);
    }

    #[test]
    fn binary_entropy_rejects_out_of_range() {
        assert!(binary_entropy(-0.1).is_err());
        assert!(binary_entropy(1.0001).is_err());
        assert!(binary_entropy(f64::NAN).is_err());
    }

    #[test]
    fn pure_and_mixed_entropies() {
        assert_abs_diff_eq!(von_neumann_entropy(&bell_state(BellLabel::PsiMinus)), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(von_neumann_entropy(&QubitState::maximally_mixed()), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(von_neumann_entropy(&DensityMatrix::maximally_mixed()), 2.0, epsilon = 1e-14);
    }

    #[test]
    fn capacity_limits() {
        assert_abs_diff_eq!(dense_coding_capacity(&bell_state(BellLabel::PhiPlus)), 2.0, epsilon = 1e-12);
        let prod = DensityMatrix::product(&QubitState::pure(0.3, 0.1), &QubitState::pure(2.2, 1.0));
        assert_abs_diff_eq!(dense_coding_capacity(&prod), 1.0, epsilon = 1e-7);
    }
}
