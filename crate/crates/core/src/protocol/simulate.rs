use std::fmt;
use std::str::FromStr;

use super::encoding::{EncodingScheme, MeasurementModel};
use super::table::ConditionalTable;
use crate::environment::{DephasingTimes, JointSpectrum, PhaseMode, PhaseTrackedState};
use crate::error::{Error, Result};
use crate::quantum::BellLabel;

/// When Alice's local noise acts relative to her encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NoiseOrder {
    #[default]
    NoiseBeforeEncoding,
    NoiseAfterEncoding,
}

impl NoiseOrder {
    pub fn as_str(self) -> &'static str {
        match self {
            NoiseOrder::NoiseBeforeEncoding => "NOISE_BEFORE_ENCODING",
            NoiseOrder::NoiseAfterEncoding => "NOISE_AFTER_ENCODING",
        }
    }
}

impl fmt::Display for NoiseOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NoiseOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "NOISE_BEFORE_ENCODING" => Ok(NoiseOrder::NoiseBeforeEncoding),
            "NOISE_AFTER_ENCODING" => Ok(NoiseOrder::NoiseAfterEncoding),
            _ => Err(Error::Parse(format!(
                "unknown noise order `{s}` (expected NOISE_BEFORE_ENCODING or NOISE_AFTER_ENCODING)"
            ))),
        }
    }
}

/// Runs the full protocol through density matrices and returns Bob's decoding table.
///
/// |Φ⁺⟩ is prepared, Alice's dephasing and her Pauli encoding are applied
/// in the requested order, Bob's correlated dephasing follows, the frequencies
/// are traced out, and each symbol's row is the Born-rule distribution over
/// the four Bell outcomes. The receiver compensates the deterministic phase.
pub fn simulate_protocol(
    spec: &JointSpectrum,
    times: &DephasingTimes,
    scheme: &EncodingScheme,
    order: NoiseOrder,
) -> Result<ConditionalTable> {
    simulate_protocol_with_phase(spec, times, scheme, order, PhaseMode::Compensated)
}

/// [`simulate_protocol`] with explicit phase handling.
pub fn simulate_protocol_with_phase(
    spec: &JointSpectrum,
    times: &DephasingTimes,
    scheme: &EncodingScheme,
    order: NoiseOrder,
    phase: PhaseMode,
) -> Result<ConditionalTable> {
    let measurement = MeasurementModel::IdealProjective4;
    let rows = scheme
        .alphabet()
        .iter()
        .map(|&symbol| {
            let pauli = symbol.encoding();
            let start = PhaseTrackedState::bell(BellLabel::PhiPlus);
            let encoded = match order {
                NoiseOrder::NoiseBeforeEncoding => start.alice_noise(times.t_a()).alice_pauli(pauli),
                NoiseOrder::NoiseAfterEncoding => start.alice_pauli(pauli).alice_noise(times.t_a()),
            };
            let rho = encoded.bob_noise(times.t_b()).to_density(spec, phase)?;
            Ok(measurement.probabilities(&rho))
        })
        .collect::<Result<Vec<_>>>()?;
    ConditionalTable::new(scheme.alphabet().to_vec(), rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::environment::kappa_a;
    use crate::protocol::{conditional_probabilities, effective_visibility, mutual_information};

    fn spec(k: f64) -> JointSpectrum {
        JointSpectrum::new(2.0, 1.0, 1.0, k, 1.0).unwrap()
    }

    #[test]
    fn noiseless_run_decodes_perfectly() {
        for scheme in [EncodingScheme::three_state(), EncodingScheme::four_state()] {
            for order in [NoiseOrder::NoiseBeforeEncoding, NoiseOrder::NoiseAfterEncoding] {
                let t = simulate_protocol(&spec(0.3), &DephasingTimes::new(0.0, 0.0).unwrap(), &scheme, order)
                    .unwrap();
                assert!(t.max_abs_diff(&ConditionalTable::identity(&scheme)) < 1e-15);
            }
        }
    }

    #[test]
    fn simulation_matches_visibility_model() {
        let scheme = EncodingScheme::four_state();
        for k in [-1.0, -0.4, 0.0, 0.6] {
            for t in [0.3, 0.9] {
                let s = spec(k);
                let sim = simulate_protocol(&s, &DephasingTimes::equal(t).unwrap(), &scheme, NoiseOrder::NoiseBeforeEncoding)
                    .unwrap();
                let m = effective_visibility(kappa_a(&s, t).unwrap().norm(), k).unwrap();
                let model = conditional_probabilities(&scheme, m).unwrap();
                assert!(sim.max_abs_diff(&model) < 1e-10, "k={k} t={t}");
            }
        }
    }

    #[test]
    fn raw_phase_leaks_between_partners() {
        let s = spec(-1.0);
        let times = DephasingTimes::equal(0.4).unwrap();
        let scheme = EncodingScheme::four_state();
        let raw = simulate_protocol_with_phase(&s, &times, &scheme, NoiseOrder::NoiseBeforeEncoding, PhaseMode::Raw)
            .unwrap();
        // Phase 2·Δn·t·ω₀/2 = 0.8 rad rotates Φ⁺ towards Φ⁻.
        let expected = (1.0 + 0.8f64.cos()) / 2.0;
        assert!((raw.p(BellLabel::PhiPlus, BellLabel::PhiPlus).unwrap() - expected).abs() < 1e-12);
        let mi_raw = mutual_information(&scheme, &raw, 0.0).unwrap();
        assert!(mi_raw < 2.0 - 1e-3);
    }

    #[test]
    fn noise_order_names_parse() {
        for o in [NoiseOrder::NoiseBeforeEncoding, NoiseOrder::NoiseAfterEncoding] {
            assert_eq!(o.to_string().parse::<NoiseOrder>().unwrap(), o);
        }
        assert!("BEFORE".parse::<NoiseOrder>().is_err());
    }
}
