//! Seeded random spectra.
//!
//! Each sample draws from its own ChaCha stream keyed by `(seed, index)`, so
//! results do not depend on how samples are scheduled across threads.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::spectrum::SpectralFunction;

pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Standard complex Gaussian: real and imaginary parts `N(0, 1/2)`.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Gaussian coefficients on every harmonic `|k| <= order`.
pub fn gaussian_polynomial<R: Rng + ?Sized>(rng: &mut R, order: u64) -> SpectralFunction {
    let order = order as i64;
    SpectralFunction::from_coeffs((-order..=order).map(|k| (k, complex_gaussian(rng))))
}

/// `terms` Gaussian coefficients at harmonics drawn uniformly from
/// `[-max_k, max_k]` (collisions add up).
pub fn sparse_spectrum<R: Rng + ?Sized>(rng: &mut R, max_k: u64, terms: usize) -> SpectralFunction {
    let max_k = max_k as i64;
    let mut f = SpectralFunction::new();
    for _ in 0..terms {
        let k = rng.random_range(-max_k..=max_k);
        let c = f.get(k) + complex_gaussian(rng);
        f.set(k, c);
    }
    f
}
