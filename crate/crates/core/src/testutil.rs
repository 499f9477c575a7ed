//! Deterministic helpers shared by unit tests.

use crate::algebra::Poly;

/// SplitMix64, for reproducible randomized cases.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed)
    }

    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn uniform(&mut self) -> f64 {
        (self.next() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn poly(&mut self, q: u64, max_deg: usize) -> Poly {
        let deg = (self.next() as usize) % (max_deg + 1);
        let coeffs: Vec<u64> = (0..=deg).map(|_| self.next() % q).collect();
        Poly::new(coeffs, q)
    }
}
