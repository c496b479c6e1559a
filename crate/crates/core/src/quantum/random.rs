use nalgebra::Matrix4;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::density::DensityMatrix;

/// A full-rank random state G G† / tr(G G†) with G a complex Ginibre matrix.
pub fn random_density_matrix(seed: u64) -> DensityMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = Matrix4::from_fn(|_, _| {
        let re: f64 = StandardNormal.sample(&mut rng);
        let im: f64 = StandardNormal.sample(&mut rng);
        Complex64::new(re, im)
    });
    let gg = g * g.adjoint();
    let m = gg.unscale(gg.trace().re);
    // Exact Hermitian symmetry; the product can differ in the last bit.
    let m = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    DensityMatrix::new(m).expect("Ginibre construction yields a valid state")
}
