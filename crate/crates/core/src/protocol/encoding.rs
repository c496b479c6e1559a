use std::fmt;
use std::str::FromStr;

use nalgebra::Vector4;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quantum::{bell_vector, BellLabel, DensityMatrix};

/// Which Bell states Alice uses as her alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchemeKind {
    /// Φ⁺, Φ⁻, Ψ⁺: what a linear-optics analyzer can separate in one run.
    ThreeState,
    /// All four Bell states.
    FourState,
}

impl SchemeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SchemeKind::ThreeState => "THREE_STATE",
            SchemeKind::FourState => "FOUR_STATE",
        }
    }

    pub fn alphabet(self) -> &'static [BellLabel] {
        match self {
            SchemeKind::ThreeState => &[BellLabel::PhiPlus, BellLabel::PhiMinus, BellLabel::PsiPlus],
            SchemeKind::FourState => &BellLabel::ALL,
        }
    }
}

impl fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SchemeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "THREE_STATE" => Ok(SchemeKind::ThreeState),
            "FOUR_STATE" => Ok(SchemeKind::FourState),
            _ => Err(Error::Parse(format!(
                "unknown scheme `{s}` (expected THREE_STATE or FOUR_STATE)"
            ))),
        }
    }
}

/// An encoding alphabet with its prior distribution p₁(x).
#[derive(Debug, Clone, PartialEq)]
pub struct EncodingScheme {
    kind: SchemeKind,
    priors: Vec<f64>,
}

impl EncodingScheme {
    /// Uniform priors.
    pub fn new(kind: SchemeKind) -> Self {
        let n = kind.alphabet().len();
        Self {
            kind,
            priors: vec![1.0 / n as f64; n],
        }
    }

    pub fn three_state() -> Self {
        Self::new(SchemeKind::ThreeState)
    }

    pub fn four_state() -> Self {
        Self::new(SchemeKind::FourState)
    }

    pub fn with_priors(kind: SchemeKind, priors: Vec<f64>) -> Result<Self> {
        let n = kind.alphabet().len();
        if priors.len() != n {
            return Err(Error::Parameter(format!(
                "{kind} needs {n} priors, got {}",
                priors.len()
            )));
        }
        if priors.iter().any(|&p| !(p.is_finite() && p >= 0.0)) {
            return Err(Error::Parameter("priors must be non-negative".into()));
        }
        let total: f64 = priors.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::Parameter(format!("priors sum to {total}, not 1")));
        }
        Ok(Self { kind, priors })
    }

    pub fn kind(&self) -> SchemeKind {
        self.kind
    }

    pub fn alphabet(&self) -> &'static [BellLabel] {
        self.kind.alphabet()
    }

    pub fn priors(&self) -> &[f64] {
        &self.priors
    }

    /// log₂ of the alphabet size; the noiseless mutual information for uniform priors.
    pub fn max_bits(&self) -> f64 {
        (self.alphabet().len() as f64).log2()
    }
}

/// How Bob reads out the Bell basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MeasurementModel {
    /// Complete projective measurement onto the four Bell states.
    #[default]
    IdealProjective4,
}

impl MeasurementModel {
    pub fn outcomes(self) -> [BellLabel; 4] {
        BellLabel::ALL
    }

    /// Born-rule probabilities of each outcome, in [`BellLabel::ALL`] order.
    pub fn probabilities(self, rho: &DensityMatrix) -> [f64; 4] {
        let mut p = BellLabel::ALL.map(|b| rho.expectation(&bell_vector(b)).max(0.0));
        let total: f64 = p.iter().sum();
        p.iter_mut().for_each(|x| *x /= total);
        p
    }

    /// Σ_y |y⟩⟨y| − 𝟙, which vanishes for a complete orthogonal set.
    pub fn completeness_defect(self) -> f64 {
        let sum: nalgebra::Matrix4<Complex64> = BellLabel::ALL
            .iter()
            .map(|&b| {
                let v: Vector4<Complex64> = bell_vector(b);
                v * v.adjoint()
            })
            .sum();
        (sum - nalgebra::Matrix4::identity()).norm()
    }
}
