//! Seeded random parameter values for numeric checks.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Numeric values for `h'(0)`, the torsion components, and a covector.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamDraw {
    pub n: u8,
    pub hp: f64,
    /// `A[i,s,t]` for `s < t`; the rest follows by skew symmetry.
    pub torsion: BTreeMap<(u8, u8, u8), f64>,
    /// `xi_1..xi_{n-1}` with unit norm.
    pub xi_prime: Vec<f64>,
    pub xn: f64,
}

impl ParamDraw {
    pub fn sample<R: Rng>(n: u8, rng: &mut R) -> Self {
        let hp = rng.gen_range(-1.0..1.0);
        let mut torsion = BTreeMap::new();
        for i in 1..=n {
            for s in 1..=n {
                for t in s + 1..=n {
                    torsion.insert((i, s, t), rng.gen_range(-1.0..1.0));
                }
            }
        }
        let mut xi: Vec<f64> = (1..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let norm = xi.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-3);
        xi.iter_mut().for_each(|x| *x /= norm);
        let xn = rng.gen_range(-3.0..3.0);
        ParamDraw { n, hp, torsion, xi_prime: xi, xn }
    }

    /// `count` draws from a ChaCha stream seeded with `seed`.
    pub fn seeded(n: u8, seed: u64, count: usize) -> Vec<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count).map(|_| Self::sample(n, &mut rng)).collect()
    }

    /// Flat, torsion-free point.
    pub fn flat(n: u8) -> Self {
        let mut xi = vec![0.0; n as usize - 1];
        xi[0] = 1.0;
        ParamDraw { n, hp: 0.0, torsion: BTreeMap::new(), xi_prime: xi, xn: 0.0 }
    }

    /// Skew-symmetric lookup of `A[i,s,t]`.
    pub fn a(&self, i: u8, s: u8, t: u8) -> f64 {
        use std::cmp::Ordering;
        match s.cmp(&t) {
            Ordering::Equal => 0.0,
            Ordering::Less => self.torsion.get(&(i, s, t)).copied().unwrap_or(0.0),
            Ordering::Greater => -self.torsion.get(&(i, t, s)).copied().unwrap_or(0.0),
        }
    }

    pub fn with_covector(&self, xi_prime: &[f64], xn: f64) -> Self {
        ParamDraw { xi_prime: xi_prime.to_vec(), xn, ..self.clone() }
    }
}

/// Measure of the unit sphere in `R^d`.
pub fn sphere_measure(d: u32) -> f64 {
    let h = d as f64 / 2.0;
    2.0 * std::f64::consts::PI.powf(h) / statrs::function::gamma::gamma(h)
}

/// `Omega` for dimension `n`: the unit sphere of `R^(n-1)`.
pub fn omega(n: u8) -> f64 {
    sphere_measure(n as u32 - 1)
}
