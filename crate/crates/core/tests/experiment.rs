use sdcoding::environment::JointSpectrum;
use sdcoding::experiment::{
    expected_tomography_counts, reconstruct_linear_inversion, run_sweep, sweep_to_csv, tomography_counts,
    SweepSettings,
};
use sdcoding::protocol::{EncodingScheme, NoiseOrder};
use sdcoding::quantum::{bell_state, random_density_matrix, BellLabel};

#[test]
fn tomography_round_trip_on_random_states() {
    for seed in 0..50 {
        let rho = random_density_matrix(seed);
        let back = reconstruct_linear_inversion(&expected_tomography_counts(&rho, 10_000), 10_000).unwrap();
        assert!(back.max_abs_diff(&rho) < 1e-10, "seed {seed}");
    }
}

#[test]
fn finite_count_tomography_fidelity() {
    // Bound calibrated once against an independent simulation: at 10⁴ counts
    // per projector the 5th percentile of the fidelity is 0.970.
    let bell = bell_state(BellLabel::PhiPlus);
    let good = (0..100)
        .filter(|&seed| {
            let counts = tomography_counts(&bell, 10_000, seed).unwrap().map(|c| c as f64);
            reconstruct_linear_inversion(&counts, 10_000).unwrap().fidelity(&bell) >= 0.96
        })
        .count();
    assert!(good >= 95, "{good} of 100");
}

#[test]
fn monte_carlo_means_track_exact_values() {
    let settings = SweepSettings {
        s: 0.05,
        n_per_input: 10_000,
        trials: 500,
        seed: 9,
        order: NoiseOrder::NoiseBeforeEncoding,
    };
    let grid: Vec<f64> = (0..40).map(|i| 0.06 * i as f64).collect();
    let mut violations = 0;
    for (k, scheme) in [(-0.5, EncodingScheme::four_state()), (0.3, EncodingScheme::three_state())] {
        let spec = JointSpectrum::default().with_k(k).unwrap();
        let rows = run_sweep(&spec, &grid, &scheme, &settings).unwrap();
        for r in &rows {
            assert!((r.concurrence - r.kappa_abs).abs() < 1e-10);
            if (r.mi_mc_mean - r.mi_theory).abs() > 3.0 * r.mi_mc_std {
                violations += 1;
            }
        }
    }
    assert!(violations <= 2, "{violations} of 80 rows outside 3σ");
}

#[test]
fn sweep_output_is_byte_identical() {
    let settings = SweepSettings {
        s: 0.0975,
        n_per_input: 5000,
        trials: 50,
        ..SweepSettings::default()
    };
    let spec = JointSpectrum::default().with_k(-0.99995).unwrap();
    let grid = [0.0, 0.4, 0.8, 1.6];
    let a = sweep_to_csv(&run_sweep(&spec, &grid, &EncodingScheme::four_state(), &settings).unwrap());
    let b = sweep_to_csv(&run_sweep(&spec, &grid, &EncodingScheme::four_state(), &settings).unwrap());
    assert_eq!(a, b);
    assert_eq!(a.lines().count(), 5);
}
