//! Deterministic generation of test signals.
//!
//! Frame diagnostics run over batches of seeded random signals; keeping the
//! generator here makes CLI runs and the acceptance suite reproducible from a
//! single `--seed`.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

use crate::grid::{GridSpec, GridSignal};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A smooth random signal supported in `[a, b)`: a handful of Fourier modes
/// with standard-normal complex coefficients, windowed to the interval.
pub fn random_bandlimited(
    spec: GridSpec,
    rng: &mut impl Rng,
    support: (f64, f64),
    modes: usize,
) -> GridSignal {
    let (a, b) = support;
    let len = b - a;
    let coeffs: Vec<Complex64> = (0..2 * modes + 1)
        .map(|_| {
            // Box-Muller pair.
            let u1: f64 = rng.gen::<f64>().max(1e-12);
            let u2: f64 = rng.gen();
            let r = (-2.0 * u1.ln()).sqrt();
            Complex64::new(r * (TAU * u2).cos(), r * (TAU * u2).sin())
        })
        .collect();
    GridSignal::from_fn(spec, |x| {
        if x < a || x >= b {
            return Complex64::new(0.0, 0.0);
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, c) in coeffs.iter().enumerate() {
            let freq = j as f64 - modes as f64;
            acc += c * Complex64::from_polar(1.0, TAU * freq * (x - a) / len);
        }
        acc
    })
}
