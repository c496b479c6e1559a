use rayon::prelude::*;

use super::sampling::estimate_in_row;
use super::tomography::{expected_tomography_counts, reconstruct_linear_inversion};
use crate::environment::{evolve_pre_encoding, kappa_a, DephasingTimes, JointSpectrum};
use crate::error::{check_range, Error, Result};
use crate::protocol::{closed_form_mi, simulate_protocol, with_imperfection, EncodingScheme, NoiseOrder, SchemeKind};
use crate::quantum::concurrence;

/// Counting and noise settings shared by every row of a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSettings {
    pub s: f64,
    pub order: NoiseOrder,
    pub n_per_input: u64,
    pub trials: usize,
    pub seed: u64,
}

impl Default for SweepSettings {
    fn default() -> Self {
        Self {
            s: 0.0,
            order: NoiseOrder::NoiseBeforeEncoding,
            n_per_input: 10_000,
            trials: 1000,
            seed: 42,
        }
    }
}

/// One point of a mutual-information-versus-noise sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub t_a: f64,
    pub kappa_abs: f64,
    pub concurrence: f64,
    pub mi_theory: f64,
    pub mi_mc_mean: f64,
    pub mi_mc_std: f64,
    pub scheme: SchemeKind,
}

impl SweepRow {
    pub const CSV_HEADER: &'static str = "t_a,kappa_abs,concurrence,mi_theory,mi_mc_mean,mi_mc_std,scheme";

    pub fn to_csv_line(&self) -> String {
        format!(
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{}",
            self.t_a, self.kappa_abs, self.concurrence, self.mi_theory, self.mi_mc_mean, self.mi_mc_std, self.scheme
        )
    }
}

/// Header plus one line per row.
pub fn sweep_to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(SweepRow::CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.to_csv_line());
        out.push('\n');
    }
    out
}

fn sweep_row(
    spec: &JointSpectrum,
    t: f64,
    index: usize,
    scheme: &EncodingScheme,
    settings: &SweepSettings,
) -> Result<SweepRow> {
    let kappa_abs = kappa_a(spec, t)?.norm();
    let rho = evolve_pre_encoding(spec, t)?;
    let reconstructed = reconstruct_linear_inversion(&expected_tomography_counts(&rho, settings.n_per_input), settings.n_per_input)?;
    let mi_theory = closed_form_mi(scheme.kind(), kappa_abs, spec.k(), settings.s)?;
    let table = simulate_protocol(spec, &DephasingTimes::equal(t)?, scheme, settings.order)?;
    let table = with_imperfection(scheme, &table, settings.s)?;
    let (mi_mc_mean, mi_mc_std) = estimate_in_row(
        &table,
        scheme,
        settings.n_per_input,
        settings.trials,
        settings.seed,
        index as u64,
    )?;
    Ok(SweepRow {
        t_a: t,
        kappa_abs,
        concurrence: concurrence(&reconstructed),
        mi_theory,
        mi_mc_mean,
        mi_mc_std,
        scheme: scheme.kind(),
    })
}

/// Evaluates the noise sweep at every dephasing time of `time_grid`, with
/// Bob's stage as long as Alice's.
///
/// The theory column is the closed form for the configured `k` and `s`. The
/// Monte Carlo columns come from the simulated decoding table, lowered by
/// `s` with [`with_imperfection`], and resampled `trials` times.
pub fn run_sweep(
    spec: &JointSpectrum,
    time_grid: &[f64],
    scheme: &EncodingScheme,
    settings: &SweepSettings,
) -> Result<Vec<SweepRow>> {
    if time_grid.is_empty() {
        return Err(Error::Parameter("time grid is empty".into()));
    }
    check_range("s", settings.s, 0.0, f64::MAX, "[0, inf)")?;
    time_grid
        .par_iter()
        .enumerate()
        .map(|(i, &t)| sweep_row(spec, t, i, scheme, settings))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(s: f64) -> SweepSettings {
        SweepSettings {
            s,
            n_per_input: 2000,
            trials: 20,
            ..SweepSettings::default()
        }
    }

    #[test]
    fn flat_three_state_curve() {
        let grid: Vec<f64> = (0..8).map(|i| 0.3 * i as f64).collect();
        let rows = run_sweep(&JointSpectrum::default(), &grid, &EncodingScheme::three_state(), &quick(0.0749)).unwrap();
        for r in &rows {
            assert!((r.mi_theory - 1.510_06).abs() < 1e-5);
            assert!((r.concurrence - r.kappa_abs).abs() < 1e-10);
            assert!(r.mi_mc_std >= 0.0);
        }
        assert_eq!(rows[0].kappa_abs, 1.0);
        assert!((rows[0].concurrence - 1.0).abs() < 1e-10);
    }

    #[test]
    fn uncorrelated_four_state_curve_decreases() {
        let spec = JointSpectrum::default().with_k(0.0).unwrap();
        let grid: Vec<f64> = (0..6).map(|i| 0.25 * i as f64).collect();
        let rows = run_sweep(&spec, &grid, &EncodingScheme::four_state(), &quick(0.0)).unwrap();
        for w in rows.windows(2) {
            assert!(w[1].mi_theory < w[0].mi_theory);
        }
    }

    #[test]
    fn csv_is_reproducible() {
        let grid = [0.0, 0.5];
        let run = || {
            sweep_to_csv(&run_sweep(&JointSpectrum::default(), &grid, &EncodingScheme::four_state(), &quick(0.05)).unwrap())
        };
        let a = run();
        assert_eq!(a, run());
        assert!(a.starts_with("t_a,kappa_abs,concurrence,mi_theory,mi_mc_mean,mi_mc_std,scheme\n"));
        assert!(a.lines().nth(1).unwrap().ends_with(",FOUR_STATE"));
    }

    #[test]
    fn empty_grid_is_rejected() {
        assert!(run_sweep(&JointSpectrum::default(), &[], &EncodingScheme::three_state(), &quick(0.0)).is_err());
    }
}
