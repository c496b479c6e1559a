//! Superdense coding through correlated dephasing channels.
//!
//! Photon pairs entangled in polarization lose coherence through the
//! coupling of polarization to frequency. When the two photons' frequencies
//! are anticorrelated, the receiver's local noise can undo the sender's, and
//! the dense coding advantage survives arbitrarily strong local noise.
//!
//! ```
//! use sdcoding::environment::{DephasingTimes, JointSpectrum};
//! use sdcoding::protocol::{mutual_information, simulate_protocol, EncodingScheme, NoiseOrder};
//!
//! let spec = JointSpectrum::default(); // K = −1
//! let scheme = EncodingScheme::four_state();
//! let table = simulate_protocol(&spec, &DephasingTimes::equal(2.0).unwrap(), &scheme, NoiseOrder::NoiseBeforeEncoding).unwrap();
//! assert!((mutual_information(&scheme, &table, 0.0).unwrap() - 2.0).abs() < 1e-12);
//! ```

pub mod environment;
pub mod error;
pub mod experiment;
pub mod protocol;
pub mod quantum;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/states.md")]
    mod states {}
    #[doc = include_str!("../../../book/src/noise.md")]
    mod noise {}
    #[doc = include_str!("../../../book/src/protocol.md")]
    mod protocol {}
    #[doc = include_str!("../../../book/src/experiment.md")]
    mod experiment {}
}
