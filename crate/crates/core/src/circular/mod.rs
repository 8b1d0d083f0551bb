//! Series Bergman kernels of generalized annuli `A_ζ = Ω − ρ(ζ)·Ω̄`.
//!
//! For a Reinhardt domain Ω the monomials are orthogonal on both Ω and
//! `ρΩ`, and `∫_{ρΩ}|z^α|² = ρ^{2|α|+2n} ∫_Ω|z^α|²`, so on `A_ζ`
//!
//! ```text
//! K_ζ(z) = Σ_j Σ_{|α|=j} |z^α|² / (‖z^α‖²_Ω (1 − ρ(ζ)^{2j+2n})).
//! ```
//!
//! The sum converges on all of Ω, including the hole `ρΩ̄`.
//!
//! # Truncation
//!
//! With `S_j` the degree-`j` inner sum and `b_j ≥ S_j` a dominating sequence
//! whose ratios `r_j = b_{j+1}/b_j` decrease in `j`, the remainder after
//! degree `k` satisfies
//!
//! ```text
//! Σ_{j>k} S_j/(1 − ρ^{2j+2n}) ≤ b_{k+1} / ((1 − r_{k+1}) (1 − ρ^{2k+2+2n}))
//! ```
//!
//! whenever `r_{k+1} < 1`, because `1/(1 − ρ^{2j+2n})` decreases in `j` and the
//! `b_j` are dominated by a geometric series from `k + 1` on. The ball uses
//! `b_j = S_j = (n+j)!/(πⁿ j!)‖z‖^{2j}`; the polydisc uses
//! `b_j = π⁻ⁿ C(j+2n−1, 2n−1) max|z_i|^{2j}`.

mod basis;
mod radius;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::levi::{DomainSampler, Shell, ShellNorm};

pub use basis::{monomial_norm, CircularDomainBasis, DomainKind};
pub use radius::{PshClass, RadiusFunction, RadiusKind};

/// Degree cap for the truncated series.
pub const MAX_DEGREE: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CircularError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("point lies outside the domain (gauge {gauge})")]
    PointOutsideDomain { gauge: f64 },
    #[error("parameter lies outside the domain of radius function {rho}")]
    ParameterOutsideDomain { rho: &'static str },
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("series did not reach the requested tolerance within {max_degree} degrees")]
    NonConvergence { max_degree: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TruncatedKernel {
    pub value: f64,
    pub degree_cutoff: usize,
    pub tail_bound: f64,
}

/// `1 − ρ^{2j+2n}` without cancellation for ρ near one.
fn gap(rho: f64, j: usize, n: usize) -> f64 {
    -((2 * j + 2 * n) as f64 * rho.ln()).exp_m1()
}

fn validate(
    basis: &CircularDomainBasis,
    rho: &RadiusFunction,
    zeta: &[Complex64],
    z: &[Complex64],
) -> Result<f64, CircularError> {
    basis.check_point(z)?;
    rho.eval(zeta)
}

fn partial_sum(basis: &CircularDomainBasis, rho_value: f64, z: &[Complex64], k: usize) -> f64 {
    let n = basis.dim();
    let sums = basis.degree_sums(z, k);
    // Smallest terms first.
    sums.iter()
        .enumerate()
        .rev()
        .map(|(j, s)| s / gap(rho_value, j, n))
        .sum()
}

/// Smallest cutoff `k` whose certified tail is below `eps`, and that tail.
fn cutoff(
    basis: &CircularDomainBasis,
    rho_value: f64,
    z: &[Complex64],
    eps: f64,
) -> Result<(usize, f64), CircularError> {
    let n = basis.dim();
    // b_{k+1}
    let mut next = basis.dominating_start() * basis.dominating_ratio(z, 0);
    for k in 0..MAX_DEGREE {
        let ratio = basis.dominating_ratio(z, k + 1);
        if next == 0.0 {
            return Ok((k, 0.0));
        }
        if ratio < 1.0 {
            let tail = next / ((1.0 - ratio) * gap(rho_value, k + 1, n));
            if tail < eps {
                return Ok((k, tail));
            }
        }
        next *= ratio;
    }
    Err(CircularError::NonConvergence {
        max_degree: MAX_DEGREE,
    })
}

/// Bergman kernel of `A_ζ` on the diagonal at `z`, with certified truncation.
pub fn kernel_general(
    basis: &CircularDomainBasis,
    rho: &RadiusFunction,
    zeta: &[Complex64],
    z: &[Complex64],
    eps: f64,
) -> Result<TruncatedKernel, CircularError> {
    if !(eps > 0.0) {
        return Err(CircularError::InvalidParameter(format!("eps must be positive, got {eps}")));
    }
    let rho_value = validate(basis, rho, zeta, z)?;
    let (k, tail_bound) = cutoff(basis, rho_value, z, eps)?;
    Ok(TruncatedKernel {
        value: partial_sum(basis, rho_value, z, k),
        degree_cutoff: k,
        tail_bound,
    })
}

/// `log K^k_ζ(z)`, the logarithm of the degree-≤k partial sum.
pub fn truncated_log_kernel(
    basis: &CircularDomainBasis,
    rho: &RadiusFunction,
    zeta: &[Complex64],
    z: &[Complex64],
    k: usize,
) -> Result<f64, CircularError> {
    let rho_value = validate(basis, rho, zeta, z)?;
    Ok(partial_sum(basis, rho_value, z, k).ln())
}

/// `u₀(ζ) = −log(1 − ρ(ζ)^{2n})`.
pub fn u0_eval(rho: &RadiusFunction, zeta: &[Complex64], n: usize) -> Result<f64, CircularError> {
    let r = rho.eval(zeta)?;
    Ok(-(-r.powi(2 * n as i32)).ln_1p())
}

/// The family `(ζ, z) ↦ A_ζ` as a field on `U × Ω ⊂ ℂ^{m+n}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnnulusFamily {
    pub basis: CircularDomainBasis,
    pub rho: RadiusFunction,
    pub eps: f64,
}

impl AnnulusFamily {
    pub fn new(basis: CircularDomainBasis, rho: RadiusFunction, eps: f64) -> Self {
        Self { basis, rho, eps }
    }

    pub fn dim(&self) -> usize {
        self.rho.dim() + self.basis.dim()
    }

    fn split<'a>(&self, w: &'a [Complex64]) -> (&'a [Complex64], &'a [Complex64]) {
        w.split_at(self.rho.dim())
    }

    /// `log K_ζ(z)` at `w = (ζ, z)`; `None` outside `U × Ω`.
    pub fn log_kernel(&self, w: &[Complex64]) -> Option<f64> {
        if w.len() != self.dim() {
            return None;
        }
        let (zeta, z) = self.split(w);
        kernel_general(&self.basis, &self.rho, zeta, z, self.eps)
            .ok()
            .map(|k| k.value.ln())
    }

    pub fn boundary_distance(&self, w: &[Complex64]) -> f64 {
        let (zeta, z) = self.split(w);
        self.rho
            .boundary_distance(zeta)
            .min(1.0 - self.basis.gauge(z))
    }

    /// Default sampling shells: ζ kept away from `∂U`, z covering the hole
    /// and most of Ω.
    pub fn default_sampler(&self) -> FamilySampler {
        let zeta = match self.rho.kind() {
            RadiusKind::Abs | RadiusKind::AbsPower { .. } => (0.1, 0.9),
            RadiusKind::SqnormAffine | RadiusKind::GaussBump => (0.0, 0.85),
        };
        self.sampler(zeta, (0.05, 0.85))
    }

    pub fn sampler(&self, zeta_shell: (f64, f64), z_shell: (f64, f64)) -> FamilySampler {
        let z_norm = match self.basis.kind() {
            DomainKind::Ball => ShellNorm::Euclidean,
            DomainKind::Polydisc => ShellNorm::Coordinatewise,
        };
        FamilySampler {
            family: *self,
            zeta: Shell {
                dim: self.rho.dim(),
                norm: ShellNorm::Euclidean,
                r_min: zeta_shell.0,
                r_max: zeta_shell.1,
            },
            z: Shell {
                dim: self.basis.dim(),
                norm: z_norm,
                r_min: z_shell.0,
                r_max: z_shell.1,
            },
        }
    }
}

/// Product of a ζ-shell and a z-shell over an [`AnnulusFamily`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FamilySampler {
    pub family: AnnulusFamily,
    pub zeta: Shell,
    pub z: Shell,
}

impl DomainSampler for FamilySampler {
    fn dim(&self) -> usize {
        self.family.dim()
    }

    fn cube_dim(&self) -> usize {
        self.zeta.cube_dim() + self.z.cube_dim()
    }

    fn map(&self, cube: &[f64]) -> Option<Vec<Complex64>> {
        let (a, b) = cube.split_at(self.zeta.cube_dim());
        let mut w = self.zeta.map(a);
        w.extend(self.z.map(b));
        (self.family.boundary_distance(&w) > 0.0).then_some(w)
    }

    fn boundary_distance(&self, w: &[Complex64]) -> f64 {
        self.family.boundary_distance(w)
    }
}
