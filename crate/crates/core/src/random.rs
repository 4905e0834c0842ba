//! Seeded random gates, Hamiltonians, states and schedules.

use nalgebra::DVector;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::gate::{CMatrix, CVector, HamiltonianSchedule, Segment, UnitaryGate};

/// Independent generator for trial `index` under a master `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

fn gaussian_matrix<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(d, d, |_, _| gaussian(rng))
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases
/// of `R`'s diagonal moved into `Q`.
pub fn haar_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> UnitaryGate {
    let qr = gaussian_matrix(d, rng).qr();
    let r = qr.r();
    let mut q = qr.q();
    for (k, mut col) in q.column_iter_mut().enumerate() {
        let diag = r[(k, k)];
        let norm = diag.norm();
        if norm > 0.0 {
            col *= diag / norm;
        }
    }
    UnitaryGate::from_unchecked(q)
}

/// Hermitian matrix from the Gaussian unitary ensemble, scaled by `scale`.
pub fn random_hermitian<R: Rng + ?Sized>(d: usize, scale: f64, rng: &mut R) -> CMatrix {
    let a = gaussian_matrix(d, rng);
    (&a + a.adjoint()) * Complex64::new(scale / 2.0, 0.0)
}

/// Uniformly distributed pure state.
pub fn random_state<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CVector {
    loop {
        let v = DVector::from_fn(d, |_, _| gaussian(rng));
        let norm = v.norm();
        if norm > 1e-8 {
            return v / Complex64::new(norm, 0.0);
        }
    }
}

/// Schedule with `1..=max_segments` random segments.
///
/// Durations are uniform in `[0.05, 1)` and each segment is a Gaussian
/// Hermitian matrix with its own scale in `[0.1, 3)`.
pub fn random_schedule<R: Rng + ?Sized>(
    d: usize,
    max_segments: usize,
    hbar: f64,
    rng: &mut R,
) -> HamiltonianSchedule {
    let n = rng.random_range(1..=max_segments.max(1));
    let segments = (0..n)
        .map(|_| {
            let duration = rng.random_range(0.05..1.0);
            let scale = rng.random_range(0.1..3.0);
            Segment::new(duration, random_hermitian(d, scale, rng))
        })
        .collect();
    HamiltonianSchedule::new(segments, hbar).expect("random segments are valid")
}

/// Uniformly distributed unit vector in three dimensions.
pub fn random_axis<R: Rng + ?Sized>(rng: &mut R) -> [f64; 3] {
    loop {
        let v: [f64; 3] = std::array::from_fn(|_| rng.sample(StandardNormal));
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-8 {
            return v.map(|x| x / norm);
        }
    }
}
