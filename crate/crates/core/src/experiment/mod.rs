//! Finite-count statistics, parameter fitting, tomography and noise sweeps.
//!
//! Random draws come from ChaCha8 streams keyed by `(seed, row, trial)`, so
//! parallel execution order never changes a result.

mod fit;
mod sampling;
mod sweep;
pub mod tomography;

pub use fit::{fit_k_s, FitResult, COARSE_STEP_K, COARSE_STEP_S, REFINEMENTS};
pub use sampling::{estimate_mi_with_errors, sample_counts, CountTable};
pub use sweep::{run_sweep, sweep_to_csv, SweepRow, SweepSettings};
pub use tomography::{expected_tomography_counts, reconstruct_linear_inversion, tomography_counts};
