//! Seeded, reproducible sampling of sphere points and unit quaternions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::quaternion::{SpherePoint, UnitQuaternion};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform on S^2 (normalized 3-D Gaussian).
pub fn sphere_point<R: Rng + ?Sized>(rng: &mut R) -> SpherePoint {
    loop {
        let x: f64 = rng.sample(StandardNormal);
        let y: f64 = rng.sample(StandardNormal);
        let z: f64 = rng.sample(StandardNormal);
        if let Ok(p) = SpherePoint::new(x, y, z) {
            return p;
        }
    }
}

/// Uniform on S^3 = SU(2) (normalized 4-D Gaussian).
pub fn unit_quaternion<R: Rng + ?Sized>(rng: &mut R) -> UnitQuaternion {
    loop {
        let a: f64 = rng.sample(StandardNormal);
        let b: f64 = rng.sample(StandardNormal);
        let c: f64 = rng.sample(StandardNormal);
        let d: f64 = rng.sample(StandardNormal);
        if let Ok(q) = UnitQuaternion::new(a, b, c, d) {
            return q;
        }
    }
}

/// Uniform in `[lo, hi)`.
pub fn uniform<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.random::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_streams_repeat() {
        let mut a = rng(7);
        let mut b = rng(7);
        for _ in 0..10 {
            assert_eq!(sphere_point(&mut a), sphere_point(&mut b));
            assert_eq!(unit_quaternion(&mut a), unit_quaternion(&mut b));
        }
    }

    #[test]
    fn samples_are_normalized() {
        let mut r = rng(1);
        for _ in 0..100 {
            assert!(sphere_point(&mut r).norm_defect() < 1e-15);
            assert!(unit_quaternion(&mut r).norm_defect() < 1e-15);
        }
    }
}
