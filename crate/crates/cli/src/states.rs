//! Seeded random states.

use rand::Rng;
use rand_distr::StandardNormal;

use ucr_core::{ComplexMatrix, DensityMatrix, C64};

/// `dim x dim` matrix of independent standard complex Gaussians.
pub fn ginibre(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, dim, |_, _| {
        C64::new(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal))
    })
}

/// Hilbert-Schmidt random density matrix.
pub fn random_density(dim: usize, rng: &mut impl Rng) -> DensityMatrix {
    loop {
        if let Ok(rho) = DensityMatrix::from_ginibre(&ginibre(dim, rng)) {
            return rho;
        }
    }
}

