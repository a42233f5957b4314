//! Seeded sampling for the random ensembles.
//!
//! The generator is PCG-64 (`rand_pcg::Pcg64`). Ensemble member `i` of a run
//! seeded with `s` draws from its own substream seeded with `s + i`
//! (wrapping), so members can be generated independently and in any order.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand_core::{Rng, SeedableRng};
use rand_pcg::Pcg64;

pub struct Sampler {
    rng: Pcg64,
    spare: Option<f64>,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: Pcg64::seed_from_u64(seed),
            spare: None,
        }
    }

    /// Substream for ensemble member `index`.
    pub fn substream(seed: u64, index: u64) -> Self {
        Self::new(seed.wrapping_add(index))
    }

    /// Uniform on `[0, 1)` with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal via Box-Muller; the second variate is cached.
    pub fn normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        // 1 - u lies in (0, 1], keeping ln away from zero.
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        self.spare = Some(r * (TAU * u2).sin());
        r * (TAU * u2).cos()
    }

    /// Complex Gaussian with independent standard normal parts.
    pub fn complex_normal(&mut self) -> Complex64 {
        let re = self.normal();
        let im = self.normal();
        Complex64::new(re, im)
    }

    /// Uniformly random point on the unit sphere of `C^n`.
    pub fn unit_vector(&mut self, n: usize) -> Vec<Complex64> {
        loop {
            let v: Vec<Complex64> = (0..n).map(|_| self.complex_normal()).collect();
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > 1e-150 {
                return v.into_iter().map(|z| z / norm).collect();
            }
        }
    }

    /// Uniform point of the probability simplex with `n` vertices
    /// (flat Dirichlet via normalized exponentials).
    pub fn simplex(&mut self, n: usize) -> Vec<f64> {
        let e: Vec<f64> = (0..n).map(|_| -(1.0 - self.uniform()).ln()).collect();
        let total: f64 = e.iter().sum();
        if total > 0.0 {
            e.into_iter().map(|x| x / total).collect()
        } else {
            vec![1.0 / n as f64; n]
        }
    }
}
