//! Encoding schemes, Bell-measurement statistics, mutual information and capacities.

mod capacity;
mod encoding;
mod info;
mod simulate;
mod table;

pub use capacity::{
    capacity_bob_noise, capacity_pre_encoding, closed_form_i3, closed_form_i4, closed_form_mi,
    effective_visibility, LIMIT_TOL,
};
pub(crate) use capacity::mi_of_visibility;
pub use encoding::{EncodingScheme, MeasurementModel, SchemeKind};
pub use info::{conditional_probabilities, mutual_information, with_imperfection};
pub(crate) use info::raw_mutual_information;
pub use simulate::{simulate_protocol, simulate_protocol_with_phase, NoiseOrder};
pub use table::{ConditionalTable, ROW_TOL};
