//! Correlated Gaussian frequency environments and the dephasing they induce.
//!
//! Each photon's polarization couples to its own frequency. A component with
//! Alice's qubit in `H` picks up a phase `Δn·ω_A·t_A` relative to `V`, and
//! likewise for Bob. Averaging these phases over the joint frequency
//! distribution gives every decoherence factor in the model. For a Gaussian
//! distribution with means `ω₀/2`, variances `c_aa`, `c_bb` and correlation
//! coefficient `k`, the average of `exp(iΔn(a·ω_A + b·ω_B))` is
//!
//! ```text
//! exp(iΔn(a + b)ω₀/2) · exp(−Δn²(c_aa a² + c_bb b² + 2k√(c_aa c_bb) a b)/2)
//! ```
//!
//! which is [`JointSpectrum::characteristic`]. With `k = −1` and equal
//! variances the phases accumulated by the two photons over equal times
//! cancel exactly in `a = b`, which is what lets Bob undo Alice's noise.

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;

use crate::error::{check_range, Error, Result};
use crate::quantum::{
    basis_index, binary_entropy, pauli_matrix, BellLabel, ComplexAmplitude, DensityMatrix, PauliLabel,
};

/// Tolerance for coherences that must vanish in [`evolve_post_encoding`].
pub const STRUCTURE_TOL: f64 = 1e-10;

/// Second moments of the Gaussian joint frequency distribution of the photon pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointSpectrum {
    omega0: f64,
    c_aa: f64,
    c_bb: f64,
    k: f64,
    delta_n: f64,
}

impl Default for JointSpectrum {
    /// ω₀ = 2, unit variances, perfect anticorrelation, Δn = 1.
    fn default() -> Self {
        Self {
            omega0: 2.0,
            c_aa: 1.0,
            c_bb: 1.0,
            k: -1.0,
            delta_n: 1.0,
        }
    }
}

impl JointSpectrum {
    pub fn new(omega0: f64, c_aa: f64, c_bb: f64, k: f64, delta_n: f64) -> Result<Self> {
        if !omega0.is_finite() {
            return Err(Error::Domain {
                param: "omega0",
                value: omega0,
                expected: "a finite number",
            });
        }
        for (param, v) in [("c_aa", c_aa), ("c_bb", c_bb)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Domain {
                    param,
                    value: v,
                    expected: "(0, inf)",
                });
            }
        }
        check_range("k", k, -1.0, 1.0, "[-1, 1]")?;
        if !delta_n.is_finite() {
            return Err(Error::Domain {
                param: "delta_n",
                value: delta_n,
                expected: "a finite number",
            });
        }
        Ok(Self {
            omega0,
            c_aa,
            c_bb,
            k,
            delta_n,
        })
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }
    pub fn c_aa(&self) -> f64 {
        self.c_aa
    }
    pub fn c_bb(&self) -> f64 {
        self.c_bb
    }
    pub fn k(&self) -> f64 {
        self.k
    }
    pub fn delta_n(&self) -> f64 {
        self.delta_n
    }

    /// Same spectrum with a different correlation coefficient.
    pub fn with_k(self, k: f64) -> Result<Self> {
        Self::new(self.omega0, self.c_aa, self.c_bb, k, self.delta_n)
    }

    /// Variance of `a·ω_A + b·ω_B`.
    fn variance(&self, a: f64, b: f64) -> f64 {
        let cross = 2.0 * self.k * (self.c_aa * self.c_bb).sqrt() * a * b;
        (self.c_aa * a * a + self.c_bb * b * b + cross).max(0.0)
    }

    /// Real Gaussian envelope of the phase average, without the mean phase.
    pub fn envelope(&self, a: f64, b: f64) -> f64 {
        (-0.5 * self.delta_n * self.delta_n * self.variance(a, b)).exp()
    }

    /// Deterministic phase `Δn(a + b)ω₀/2` carried by the phase average.
    pub fn mean_phase(&self, a: f64, b: f64) -> f64 {
        self.delta_n * (a + b) * self.omega0 / 2.0
    }

    /// Average of `exp(iΔn(a·ω_A + b·ω_B))` over the joint distribution.
    pub fn characteristic(&self, a: f64, b: f64) -> ComplexAmplitude {
        Complex64::from_polar(self.envelope(a, b), self.mean_phase(a, b))
    }
}

/// Interaction durations of the two local dephasing stages.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DephasingTimes {
    t_a: f64,
    t_b: f64,
}

impl DephasingTimes {
    pub fn new(t_a: f64, t_b: f64) -> Result<Self> {
        check_range("t_a", t_a, 0.0, f64::MAX, "[0, inf)")?;
        check_range("t_b", t_b, 0.0, f64::MAX, "[0, inf)")?;
        Ok(Self { t_a, t_b })
    }

    /// Both stages run for the same duration.
    pub fn equal(t: f64) -> Result<Self> {
        Self::new(t, t)
    }

    pub fn t_a(&self) -> f64 {
        self.t_a
    }
    pub fn t_b(&self) -> f64 {
        self.t_b
    }
}

/// Whether the receiver removes the deterministic phase `exp(iΔn(t_a + t_b)ω₀/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PhaseMode {
    /// Keep only the real magnitude of each coherence factor.
    #[default]
    Compensated,
    /// Keep the raw complex factor.
    Raw,
}

/// Decoherence function κ_A(t_a) of Alice's local noise.
pub fn kappa_a(spec: &JointSpectrum, t_a: f64) -> Result<ComplexAmplitude> {
    check_range("t_a", t_a, 0.0, f64::MAX, "[0, inf)")?;
    Ok(spec.characteristic(t_a, 0.0))
}

/// Joint decoherence factor h(t_a, t_b) after both local noises.
pub fn joint_dephasing_factor(spec: &JointSpectrum, times: &DephasingTimes) -> ComplexAmplitude {
    spec.characteristic(times.t_a, times.t_b)
}

/// Shared state after Alice's noise acts on |Φ⁺⟩:
/// ½[|HH⟩⟨HH| + κ_A|HH⟩⟨VV| + κ_A*|VV⟩⟨HH| + |VV⟩⟨VV|].
pub fn evolve_pre_encoding(spec: &JointSpectrum, t_a: f64) -> Result<DensityMatrix> {
    let kappa = kappa_a(spec, t_a)?;
    let half = Complex64::new(0.5, 0.0);
    let mut m = Matrix4::zeros();
    m[(0, 0)] = half;
    m[(3, 3)] = half;
    m[(0, 3)] = kappa * half;
    m[(3, 0)] = kappa.conj() * half;
    DensityMatrix::new(m)
}

/// Applies Bob's noise to an encoded state whose single coherence pair was
/// produced by Alice's noise of duration `times.t_a()`.
///
/// The coherence is multiplied by h/κ_A, the part of the joint factor not
/// already present, so that the total factor is
/// [`joint_dephasing_factor`]. The factor multiplies the entry whose row has
/// Bob's qubit in `H` (`(HH, VV)` or `(VH, HV)`); its mirror gets the
/// conjugate.
pub fn evolve_post_encoding(
    rho_encoded: &DensityMatrix,
    spec: &JointSpectrum,
    times: &DephasingTimes,
    phase: PhaseMode,
) -> Result<DensityMatrix> {
    let (t_a, t_b) = (times.t_a, times.t_b);
    let m = rho_encoded.matrix();

    let parallel = m[(0, 3)].norm() > STRUCTURE_TOL;
    let crossed = m[(1, 2)].norm() > STRUCTURE_TOL;
    if parallel && crossed {
        return Err(Error::Structure(
            "coherences in both the HH/VV and HV/VH pairs".into(),
        ));
    }
    for (r, c) in [(0, 1), (0, 2), (1, 3), (2, 3)] {
        if m[(r, c)].norm() > STRUCTURE_TOL {
            return Err(Error::Structure(format!(
                "unexpected coherence at ({}, {})",
                crate::quantum::BASIS[r],
                crate::quantum::BASIS[c]
            )));
        }
    }

    // h/κ_A in closed form; no division by a possibly underflowed κ_A.
    let dn2 = spec.delta_n * spec.delta_n;
    let cross = 2.0 * spec.k * (spec.c_aa * spec.c_bb).sqrt() * t_a * t_b;
    let log_mod = -0.5 * dn2 * (spec.c_bb * t_b * t_b + cross);
    let mut factor = Complex64::from_polar(log_mod.exp(), spec.mean_phase(0.0, t_b));
    if phase == PhaseMode::Compensated {
        factor *= Complex64::from_polar(1.0, -spec.mean_phase(t_a, t_b));
    }

    let (r, c) = if crossed {
        (basis_index(1, 0), basis_index(0, 1))
    } else {
        (basis_index(0, 0), basis_index(1, 1))
    };
    let mut out = *m;
    out[(r, c)] = m[(r, c)] * factor;
    out[(c, r)] = out[(r, c)].conj();
    DensityMatrix::new(out)
}

/// Amount of non-Markovianity N = |κ|^(1−k²) − |κ| of the correlated dephasing dynamics.
pub fn non_markovianity(kappa_abs: f64, k: f64) -> Result<f64> {
    if !(kappa_abs > 0.0 && kappa_abs < 1.0) {
        return Err(Error::Domain {
            param: "kappa_abs",
            value: kappa_abs,
            expected: "(0, 1)",
        });
    }
    check_range("k", k, -1.0, 1.0, "[-1, 1]")?;
    Ok(kappa_abs.powf(1.0 - k * k) - kappa_abs)
}

/// Dense coding capacity written as a function of non-Markovianity `n` and |κ_A|:
/// 2 − H((1 + |κ|^{2(1 − √(1 − ln(n + |κ|)/ln|κ|))})/2).
pub fn capacity_from_n(n: f64, kappa_abs: f64) -> Result<f64> {
    if kappa_abs == 0.0 || kappa_abs == 1.0 {
        return Err(Error::Singular {
            param: "kappa_abs",
            value: kappa_abs,
        });
    }
    if !(kappa_abs > 0.0 && kappa_abs < 1.0) {
        return Err(Error::Domain {
            param: "kappa_abs",
            value: kappa_abs,
            expected: "(0, 1)",
        });
    }
    // Upper end is |K| = 1; allow rounding in n + |κ| ≤ 1.
    let n_max = 1.0 - kappa_abs;
    if !(n.is_finite() && n >= 0.0 && n <= n_max * (1.0 + 4.0 * f64::EPSILON)) {
        return Err(Error::Domain {
            param: "n",
            value: n,
            expected: "[0, 1 - kappa_abs]",
        });
    }
    let ratio = ((n + kappa_abs).min(1.0)).ln() / kappa_abs.ln();
    let k_abs = (1.0 - ratio).max(0.0).sqrt();
    let x = kappa_abs.powf(2.0 * (1.0 - k_abs));
    binary_entropy((1.0 + x) / 2.0).map(|h| 2.0 - h)
}

/// A pure polarization state whose basis components carry frequency-dependent
/// phases from the local noise stages.
///
/// Component `i` holds an amplitude and the signed exposure `(a_i, b_i)`:
/// the coefficient of `ω_A` and `ω_B` in its accumulated phase (in units of
/// Δn). Tracing out the frequencies gives density matrix entries
/// `c_i c_j* · χ(a_i − a_j, b_i − b_j)` with χ the joint characteristic
/// function. This tracks the environment correlations exactly and works for
/// any ordering of noise and encoding.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseTrackedState {
    amplitudes: Vector4<Complex64>,
    exposure: [(f64, f64); 4],
}

impl PhaseTrackedState {
    /// A noiseless Bell state.
    pub fn bell(label: BellLabel) -> Self {
        Self {
            amplitudes: crate::quantum::bell_vector(label),
            exposure: [(0.0, 0.0); 4],
        }
    }

    /// Local dephasing on Alice's qubit for duration `t`.
    pub fn alice_noise(mut self, t: f64) -> Self {
        for bob in 0..2 {
            self.exposure[basis_index(0, bob)].0 += t;
        }
        self
    }

    /// Local dephasing on Bob's qubit for duration `t`.
    pub fn bob_noise(mut self, t: f64) -> Self {
        for alice in 0..2 {
            self.exposure[basis_index(alice, 0)].1 += t;
        }
        self
    }

    /// A Pauli operation on Alice's qubit. Paulis are monomial, so every
    /// output component inherits the exposure of exactly one input component.
    pub fn alice_pauli(self, p: PauliLabel) -> Self {
        let u = pauli_matrix(p);
        let mut amplitudes = Vector4::zeros();
        let mut exposure = [(0.0, 0.0); 4];
        for a_out in 0..2 {
            for a_in in 0..2 {
                let coeff = u[(a_out, a_in)];
                if coeff == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for bob in 0..2 {
                    let (o, i) = (basis_index(a_out, bob), basis_index(a_in, bob));
                    amplitudes[o] = coeff * self.amplitudes[i];
                    exposure[o] = self.exposure[i];
                }
            }
        }
        Self {
            amplitudes,
            exposure,
        }
    }

    /// Polarization state after averaging over the photon frequencies.
    pub fn to_density(&self, spec: &JointSpectrum, phase: PhaseMode) -> Result<DensityMatrix> {
        let m = Matrix4::from_fn(|i, j| {
            let (a, b) = (
                self.exposure[i].0 - self.exposure[j].0,
                self.exposure[i].1 - self.exposure[j].1,
            );
            let avg = match phase {
                PhaseMode::Raw => spec.characteristic(a, b),
                PhaseMode::Compensated => Complex64::new(spec.envelope(a, b), 0.0),
            };
            self.amplitudes[i] * self.amplitudes[j].conj() * avg
        });
        DensityMatrix::new(m)
    }
}
