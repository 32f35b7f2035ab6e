#![allow(dead_code)]

use ergokit::states::seeded_rng;
use ergokit::{BipartiteSystem, DensityMatrix, Spectrum};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};

pub fn rng(seed: u64) -> ChaCha8Rng {
    seeded_rng(seed)
}

/// Dirichlet(alpha, ..., alpha) sample, unsorted.
pub fn dirichlet(rng: &mut ChaCha8Rng, n: usize, alpha: f64) -> Vec<f64> {
    let g = Gamma::new(alpha, 1.0).unwrap();
    loop {
        let raw: Vec<f64> = (0..n).map(|_| g.sample(rng)).collect();
        let total: f64 = raw.iter().sum();
        if total > 0.0 {
            return raw.into_iter().map(|v| v / total).collect();
        }
    }
}

/// Random non-increasing probability vector.
pub fn random_spectrum(rng: &mut ChaCha8Rng, n: usize) -> Spectrum {
    let alpha = [0.2, 0.5, 1.0, 3.0][rng.random_range(0..4)];
    Spectrum::from_unsorted(dirichlet(rng, n, alpha)).unwrap()
}

/// Mixture of a Haar pure state and a Hilbert-Schmidt random state, which
/// covers strongly entangled as well as highly mixed states.
pub fn random_state(d1: usize, d2: usize, seed: u64) -> BipartiteSystem {
    let mut r = rng(seed ^ 0xabcdef);
    let pure = ergokit::haar_random_pure(d1, d2, seed).unwrap();
    let mixed = ergokit::states::ginibre_mixed(d1, d2, seed.wrapping_add(1 << 40)).unwrap();
    let w: f64 = r.random();
    let rho: DensityMatrix = pure.rho().mix(mixed.rho(), w).unwrap();
    BipartiteSystem::with_unit_spacing(rho, d1, d2).unwrap()
}

/// Sorted-spectrum times sorted-ladder, computed without the library.
pub fn sorted_dot(x: &[f64], ladder: &[f64]) -> f64 {
    let mut xs = x.to_vec();
    xs.sort_by(|a, b| b.total_cmp(a));
    let mut es = ladder.to_vec();
    es.sort_by(f64::total_cmp);
    xs.iter().zip(&es).map(|(a, b)| a * b).sum()
}

/// Unit-spaced `d1 x d2` energy grid, enumerated.
pub fn unit_grid(d1: usize, d2: usize) -> Vec<f64> {
    let mut g: Vec<f64> = (0..d1)
        .flat_map(|a| (0..d2).map(move |b| (a + b) as f64))
        .collect();
    g.sort_by(f64::total_cmp);
    g
}
