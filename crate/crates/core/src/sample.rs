//! Deterministic seeded sampling. All randomized verification goes through
//! an explicitly seeded ChaCha8 stream so reports are reproducible.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_distr::StandardNormal;

pub use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn standard_normal(rng: &mut ChaCha8Rng) -> f64 {
    rng.sample(StandardNormal)
}

pub fn normal_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| standard_normal(rng)).collect()
}

pub fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo..hi)
}

/// Uniform point on the unit sphere in `R^dim` (normalized Gaussian vector).
pub fn unit_sphere_point(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    loop {
        let v = normal_vec(rng, dim);
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

/// Uniform point in the open unit ball of `R^dim`, kept `margin` away from
/// the boundary.
pub fn unit_ball_point(rng: &mut ChaCha8Rng, dim: usize, margin: f64) -> Vec<f64> {
    let dir = unit_sphere_point(rng, dim);
    let u: f64 = rng.gen();
    let r = (1.0 - margin) * u.powf(1.0 / dim as f64);
    dir.into_iter().map(|x| r * x).collect()
}
