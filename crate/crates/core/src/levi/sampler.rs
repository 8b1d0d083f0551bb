//! Deterministic low-discrepancy sampling of product domains.
//!
//! Points come from the additive recurrence `x_i = frac(s + (i+1)·α)` with
//! `α_j = φ_d^{−(j+1)}`, where `φ_d` is the positive root of
//! `x^{d+1} = x + 1`. The shift `s` is drawn from a seeded ChaCha stream, so a
//! seed picks one rotation of the sequence.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

#[derive(Debug, Clone)]
pub struct LowDiscrepancy {
    alpha: Vec<f64>,
    shift: Vec<f64>,
}

impl LowDiscrepancy {
    pub fn new(dim: usize, seed: u64) -> Self {
        let mut phi: f64 = 2.0;
        for _ in 0..64 {
            let f = phi.powi(dim as i32 + 1) - phi - 1.0;
            let df = (dim as f64 + 1.0) * phi.powi(dim as i32) - 1.0;
            phi -= f / df;
        }
        let alpha = (1..=dim).map(|j| phi.powi(-(j as i32))).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shift = (0..dim).map(|_| rng.gen::<f64>()).collect();
        Self { alpha, shift }
    }

    pub fn dim(&self) -> usize {
        self.alpha.len()
    }

    pub fn point(&self, index: u64) -> Vec<f64> {
        let k = (index + 1) as f64;
        self.alpha
            .iter()
            .zip(&self.shift)
            .map(|(a, s)| (s + k * a).fract())
            .collect()
    }
}

/// How radii are measured for a shell in ℂ^k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShellNorm {
    /// `r_min ≤ ‖w‖₂ ≤ r_max`.
    Euclidean,
    /// Every coordinate in the planar annulus `r_min ≤ |w_i| ≤ r_max`.
    Coordinatewise,
}

/// A shell in ℂ^k fed from `2k` unit-cube coordinates.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Shell {
    pub dim: usize,
    pub norm: ShellNorm,
    pub r_min: f64,
    pub r_max: f64,
}

impl Shell {
    pub fn cube_dim(&self) -> usize {
        2 * self.dim
    }

    pub fn map(&self, cube: &[f64]) -> Vec<Complex64> {
        let lerp = |t: f64| self.r_min + (self.r_max - self.r_min) * t;
        match self.norm {
            ShellNorm::Coordinatewise => (0..self.dim)
                .map(|i| Complex64::from_polar(lerp(cube[2 * i]), 2.0 * PI * cube[2 * i + 1]))
                .collect(),
            ShellNorm::Euclidean => {
                let k = self.dim;
                let radius = lerp(cube[0]);
                // |w_i|² on the unit sphere are spacings of k − 1 sorted uniforms.
                let mut cuts: Vec<f64> = cube[1..k].to_vec();
                cuts.sort_by(f64::total_cmp);
                let mut weights = Vec::with_capacity(k);
                let mut prev = 0.0;
                for c in cuts {
                    weights.push(c - prev);
                    prev = c;
                }
                weights.push(1.0 - prev);
                weights
                    .iter()
                    .zip(&cube[k..2 * k])
                    .map(|(w, t)| Complex64::from_polar(radius * w.sqrt(), 2.0 * PI * t))
                    .collect()
            }
        }
    }
}

/// Source of scan points.
pub trait DomainSampler: Sync {
    /// Complex dimension of produced points.
    fn dim(&self) -> usize;
    fn cube_dim(&self) -> usize;
    /// `None` rejects the candidate.
    fn map(&self, cube: &[f64]) -> Option<Vec<Complex64>>;
    /// Distance from `w` to the boundary of the field's domain.
    fn boundary_distance(&self, w: &[Complex64]) -> f64;
}
