//! Independent oracles: numerical frequency averages, literal Born-rule
//! sums, and density matrix pipelines checked against the closed forms.

use num_complex::Complex64;
use sdcoding::environment::{
    evolve_post_encoding, evolve_pre_encoding, joint_dephasing_factor, kappa_a, DephasingTimes, JointSpectrum,
    PhaseMode,
};
use sdcoding::protocol::{
    closed_form_mi, mutual_information, simulate_protocol, EncodingScheme, MeasurementModel, NoiseOrder, SchemeKind,
};
use sdcoding::quantum::{apply_pauli, bell_state, concurrence, BellLabel, Party};

/// Average of exp(iΔn(a·ω_A + b·ω_B)) by trapezoid quadrature in whitened coordinates.
fn quadrature(spec: &JointSpectrum, a: f64, b: f64) -> Complex64 {
    let mean = spec.omega0() / 2.0;
    let (sa, sb) = (spec.c_aa().sqrt(), spec.c_bb().sqrt());
    let k = spec.k();
    let h = 0.05;
    let half = 240;
    let weight = |z: f64| (-0.5 * z * z).exp() / (2.0 * std::f64::consts::PI).sqrt();
    let mut total = Complex64::new(0.0, 0.0);
    for i in -half..=half {
        let z1 = i as f64 * h;
        let w1 = weight(z1);
        for j in -half..=half {
            let z2 = j as f64 * h;
            let wa = mean + sa * z1;
            let wb = mean + sb * (k * z1 + (1.0 - k * k).max(0.0).sqrt() * z2);
            let phase = spec.delta_n() * (a * wa + b * wb);
            total += Complex64::from_polar(w1 * weight(z2), phase);
        }
    }
    total * h * h
}

#[test]
fn characteristic_function_matches_quadrature() {
    let spec = JointSpectrum::new(2.0, 1.0, 0.7, -0.6, 1.0).unwrap();
    let grid = [0.0, 0.3, 0.7, 1.2, 1.8];
    for &ta in &grid {
        let q = quadrature(&spec, ta, 0.0);
        assert!((kappa_a(&spec, ta).unwrap() - q).norm() < 1e-8, "t_a = {ta}");
        for &tb in &grid {
            let times = DephasingTimes::new(ta, tb).unwrap();
            let q = quadrature(&spec, ta, tb);
            assert!((joint_dephasing_factor(&spec, &times) - q).norm() < 1e-8, "({ta}, {tb})");
        }
    }
}

#[test]
fn correlated_noise_through_density_matrices() {
    // Noise before encoding, then Bob's noise applied to the encoded matrix.
    for k in [-1.0, -0.7, -0.2, 0.0, 0.5, 1.0] {
        let spec = JointSpectrum::default().with_k(k).unwrap();
        for t in [0.2, 0.6, 1.3] {
            let times = DephasingTimes::equal(t).unwrap();
            let shared = evolve_pre_encoding(&spec, t).unwrap();
            for scheme in [EncodingScheme::three_state(), EncodingScheme::four_state()] {
                let rows: Vec<[f64; 4]> = scheme
                    .alphabet()
                    .iter()
                    .map(|x| {
                        let encoded = apply_pauli(&shared, x.encoding(), Party::Alice);
                        let rho = evolve_post_encoding(&encoded, &spec, &times, PhaseMode::Compensated).unwrap();
                        MeasurementModel::IdealProjective4.probabilities(&rho)
                    })
                    .collect();
                let table = sdcoding::protocol::ConditionalTable::new(scheme.alphabet().to_vec(), rows).unwrap();
                let simulated = simulate_protocol(&spec, &times, &scheme, NoiseOrder::NoiseBeforeEncoding).unwrap();
                assert!(table.max_abs_diff(&simulated) < 1e-12);
                let kappa = kappa_a(&spec, t).unwrap().norm();
                let mi = mutual_information(&scheme, &table, 0.0).unwrap();
                assert!((mi - closed_form_mi(scheme.kind(), kappa, k, 0.0).unwrap()).abs() < 1e-10);
            }
        }
    }
}

/// I(X:Y) from the joint distribution as Σ p(x,y) log₂(p(x,y)/(p(x)p(y))).
fn joint_form_mi(priors: &[f64], rows: &[[f64; 4]]) -> f64 {
    let mut py = [0.0; 4];
    for (p, row) in priors.iter().zip(rows) {
        for y in 0..4 {
            py[y] += p * row[y];
        }
    }
    let mut mi = 0.0;
    for (p, row) in priors.iter().zip(rows) {
        for y in 0..4 {
            let pxy = p * row[y];
            if pxy > 0.0 {
                mi += pxy * (pxy / (p * py[y])).log2();
            }
        }
    }
    mi
}

#[test]
fn mutual_information_matches_joint_form() {
    let spec = JointSpectrum::default().with_k(-0.4).unwrap();
    for kind in [SchemeKind::ThreeState, SchemeKind::FourState] {
        let scheme = EncodingScheme::new(kind);
        for t in [0.0, 0.5, 1.5, 3.0] {
            for order in [NoiseOrder::NoiseBeforeEncoding, NoiseOrder::NoiseAfterEncoding] {
                let table = simulate_protocol(&spec, &DephasingTimes::equal(t).unwrap(), &scheme, order).unwrap();
                let a = mutual_information(&scheme, &table, 0.0).unwrap();
                let b = joint_form_mi(scheme.priors(), table.rows());
                assert!((a - b).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn perfect_anticorrelation_restores_every_bell_state() {
    let spec = JointSpectrum::default();
    for t in [0.5, 1.0, 2.0, 4.0] {
        let shared = evolve_pre_encoding(&spec, t).unwrap();
        for x in BellLabel::ALL {
            let encoded = apply_pauli(&shared, x.encoding(), Party::Alice);
            let rho = evolve_post_encoding(&encoded, &spec, &DephasingTimes::equal(t).unwrap(), PhaseMode::Compensated)
                .unwrap();
            assert!(rho.fidelity(&bell_state(x)) >= 1.0 - 1e-10);
            assert!((concurrence(&rho) - 1.0).abs() < 1e-10);
        }
    }
}
