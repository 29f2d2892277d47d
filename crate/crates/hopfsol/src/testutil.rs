//! Seeded sampling helpers shared by the unit tests.

use crate::algebra::Point4;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform(rng: &mut ChaCha8Rng) -> f64 {
    rng.gen_range(-1.0..1.0)
}

/// Uniform point on the unit S³ (normalised Gaussian 4-vector).
pub fn unit_point4(rng: &mut ChaCha8Rng) -> Point4 {
    loop {
        let v = [gauss(rng), gauss(rng), gauss(rng), gauss(rng)];
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-3 {
            return Point4([v[0] / n, v[1] / n, v[2] / n, v[3] / n]);
        }
    }
}

/// Point at radius `r` in a random direction.
pub fn point_at_radius(rng: &mut ChaCha8Rng, r: f64) -> Point4 {
    unit_point4(rng).scale(r)
}

/// Random point with radius uniform in [lo, hi].
pub fn point_in_shell(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> Point4 {
    let r = rng.gen_range(lo..hi);
    point_at_radius(rng, r)
}

pub fn gauss(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}
