//! Shared generators for randomized property tests.
//!
//! Each integration binary compiles its own copy, so not every helper is
//! used from every binary.
#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rate_core::{C64, CMatrix, CVector, DensityMatrix, FockBasis, ModeSpace, StateVector};

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Basis of the requested dimension: one spatial arm, dim-1 bins, one
/// photon cap, so the basis is {vacuum} ∪ {one photon per bin}.
pub fn flat_basis(dim: usize) -> FockBasis {
    assert!(dim >= 2);
    FockBasis::enumerate(ModeSpace::bins_only(dim - 1).unwrap(), 1).unwrap()
}

fn random_complex(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

/// Random full-rank-ish valid density matrix: AA† normalized to unit trace.
pub fn random_density(basis: &FockBasis, rng: &mut ChaCha8Rng) -> DensityMatrix {
    let d = basis.dim();
    let a = CMatrix::from_fn(d, d, |_, _| random_complex(rng));
    let mut m = &a * a.adjoint();
    let tr = m.trace().re;
    m /= C64::new(tr, 0.0);
    DensityMatrix::from_matrix(basis.clone(), m).expect("AA†/tr is a valid density matrix")
}

/// Random pure state supported on the total-photon-number-`n` sector.
pub fn random_sector_state(basis: &FockBasis, n: u32, rng: &mut ChaCha8Rng) -> StateVector {
    let mut v = CVector::zeros(basis.dim());
    let mut any = false;
    for i in 0..basis.dim() {
        if basis.total_photons(i) == n {
            v[i] = random_complex(rng);
            any = true;
        }
    }
    assert!(any, "sector {n} is empty");
    StateVector::new(basis.clone(), v).expect("nonzero amplitude vector")
}

/// Random mixed state supported on the total-photon-number-`n` sector.
pub fn random_sector_density(
    basis: &FockBasis,
    n: u32,
    terms: usize,
    rng: &mut ChaCha8Rng,
) -> DensityMatrix {
    let mut weights: Vec<f64> = (0..terms).map(|_| rng.random_range(0.01..1.0)).collect();
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    let parts: Vec<(f64, DensityMatrix)> = weights
        .into_iter()
        .map(|w| {
            (
                w,
                DensityMatrix::from_pure(&random_sector_state(basis, n, rng)),
            )
        })
        .collect();
    DensityMatrix::mixture(&parts).expect("convex mixture of valid states")
}
