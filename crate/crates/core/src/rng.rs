//! Seeded, splittable random streams.
//!
//! Every run owns a root [`RngStream`] built from its seed. Components draw
//! from labelled children (`walkers`, `tabu`, ...) whose state depends only
//! on the parent seed and the label, so extra draws in one component never
//! shift the sequence seen by another.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    inner: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Independent stream derived from this stream's seed and `label`.
    pub fn child(&self, label: &str) -> RngStream {
        RngStream::new(splitmix64(self.seed ^ fnv1a(label.as_bytes())))
    }

    /// Uniform draw in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.inner.random::<f64>()
    }

    /// Uniform draw in `[lo, hi]`.
    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        (lo + (hi - lo) * self.uniform()).clamp(lo, hi)
    }

    /// Draw from a centred normal with standard deviation `sigma`.
    pub fn normal(&mut self, sigma: f64) -> f64 {
        debug_assert!(sigma > 0.0);
        sigma * self.standard_normal()
    }

    pub fn standard_normal(&mut self) -> f64 {
        self.inner.sample::<f64, _>(StandardNormal)
    }

    /// Uniform index in `0..n`.
    pub fn index(&mut self, n: usize) -> usize {
        assert!(n > 0, "cannot pick from an empty range");
        self.inner.random_range(0..n)
    }

    /// Uniform index in `0..n` different from `skip`. Needs `n >= 2`.
    pub fn index_excluding(&mut self, n: usize, skip: usize) -> usize {
        assert!(n >= 2, "need at least two candidates");
        let k = self.inner.random_range(0..n - 1);
        if k >= skip {
            k + 1
        } else {
            k
        }
    }

    /// Uniformly random point in the box.
    pub fn point_in(&mut self, domain: &crate::BoxDomain) -> Vec<f64> {
        domain
            .lower()
            .iter()
            .zip(domain.upper())
            .map(|(l, u)| self.uniform_in(*l, *u))
            .collect()
    }
}

/// Seed of run `index` in a family rooted at `base`. Runs for a smaller
/// family size are a prefix of those for a larger one.
pub fn derive_seed(base: u64, index: u64) -> u64 {
    splitmix64(base.wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15)))
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ u64::from(*b)).wrapping_mul(0x0100_0000_01b3)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_std(xs: &[f64]) -> f64 {
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
    }

    #[test]
    fn same_seed_replays() {
        let mut a = RngStream::new(42);
        let mut b = RngStream::new(42);
        for _ in 0..100 {
            assert_eq!(a.uniform().to_bits(), b.uniform().to_bits());
            assert_eq!(a.normal(0.3).to_bits(), b.normal(0.3).to_bits());
            assert_eq!(a.index(17), b.index(17));
        }
    }

    #[test]
    fn distinct_seeds_diverge_early() {
        let mut a = RngStream::new(1);
        let mut b = RngStream::new(2);
        let differ = (0..10).any(|_| a.uniform() != b.uniform());
        assert!(differ);
    }

    #[test]
    fn uniform_mean_is_one_half() {
        let mut r = RngStream::new(7);
        let draws: Vec<f64> = (0..100_000).map(|_| r.uniform()).collect();
        assert!(draws.iter().all(|u| (0.0..=1.0).contains(u)));
        let mean = draws.iter().sum::<f64>() / draws.len() as f64;
        assert!((mean - 0.5).abs() < 0.01, "mean {mean}");
    }

    #[test]
    fn normal_sigma_is_standard_deviation() {
        let mut r = RngStream::new(11);
        let unit: Vec<f64> = (0..100_000).map(|_| r.normal(1.0)).collect();
        let s = sample_std(&unit);
        assert!((s - 1.0).abs() < 0.02, "std {s}");

        let tiny: Vec<f64> = (0..100_000).map(|_| r.normal(1e-5)).collect();
        let s = sample_std(&tiny);
        assert!((s - 1e-5).abs() < 2e-7, "std {s}");
    }

    #[test]
    fn children_are_independent_of_parent_draws() {
        let mut parent = RngStream::new(5);
        let before = parent.child("walkers").uniform();
        parent.uniform();
        parent.uniform();
        let after = parent.child("walkers").uniform();
        assert_eq!(before.to_bits(), after.to_bits());
        assert_ne!(
            parent.child("walkers").uniform(),
            parent.child("tabu").uniform()
        );
    }

    #[test]
    fn index_excluding_never_returns_skip() {
        let mut r = RngStream::new(3);
        let mut seen = [0usize; 4];
        for _ in 0..4000 {
            let k = r.index_excluding(4, 2);
            assert_ne!(k, 2);
            seen[k] += 1;
        }
        assert!(seen[0] > 1000 && seen[1] > 1000 && seen[3] > 1000);
    }

    #[test]
    fn derived_seeds_are_distinct() {
        let seeds: std::collections::BTreeSet<u64> = (0..1000).map(|i| derive_seed(9, i)).collect();
        assert_eq!(seeds.len(), 1000);
    }
}
