use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;

use crate::disk::ANGLE_EPS;

/// Seeded source of random angle vectors and side parameters.
///
/// Angle vectors are uniform on the simplex (normalized exponential draws),
/// with draws outside the open side domain rejected.
#[derive(Debug, Clone)]
pub struct SimplexSampler {
    rng: ChaCha8Rng,
}

impl SimplexSampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn angles(&mut self, n: usize) -> Vec<f64> {
        loop {
            let draws: Vec<f64> = (0..n).map(|_| self.rng.sample(Exp1)).collect();
            let total: f64 = draws.iter().sum();
            let angles: Vec<f64> = draws.iter().map(|d| d / total).collect();
            if angles
                .iter()
                .all(|&a| (ANGLE_EPS..=0.5 - ANGLE_EPS).contains(&a))
            {
                return angles;
            }
        }
    }

    pub fn side_count(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.random_range(lo..=hi)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..hi)
    }
}
