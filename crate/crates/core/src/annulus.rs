//! Bergman kernel of the planar annulus `A_ζ = {|ζ| < |z| < 1}`.
//!
//! With `u = −2 log|z|`, `ω₁ = −log|ζ|` and ℘, ζ on the lattice `2ω₁ℤ + 2πiℤ`,
//!
//! ```text
//! K_ζ(z) = (℘(u) + c(ω₁)) / (π|z|²),   c(ω₁) = ζ(ω₁)/ω₁.
//! ```
//!
//! [`kernel_series`] sums the Laurent-monomial expansion instead and is used
//! as an independent check on the closed form.
//!
//! # Series truncation
//!
//! With `r = |ζ|`, `s = |z|`, the squared norms are
//! `‖zⁿ‖² = π(1 − r^{2n+2})/(n+1)` for `n ≠ −1` and `‖z⁻¹‖² = 2π ω₁`, so
//!
//! ```text
//! n ≥ 0:        t_n  = (n+1) s^{2n} / (π (1 − r^{2n+2}))
//! n = −m ≤ −2:  t_n  = (m−1) (r/s)^{2m} / (π r² (1 − r^{2m−2}))
//! ```
//!
//! Both denominators increase with `|n|`, so for `x = s²`, `y = (r/s)²`
//!
//! ```text
//! Σ_{n≥K}   t_n ≤ x^K ((K+1) − K x)     / ((1−x)² π (1 − r^{2K+2}))
//! Σ_{m≥M+1} t_n ≤ y^{M+1} (M − (M−1) y) / ((1−y)² π r² (1 − r^{2M}))
//! ```
//!
//! The window `[−N, N]` takes the smallest `N ≥ 2` for which each bound is
//! below `eps/2`.

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

use crate::elliptic::{EllipticError, RectLattice};
use crate::levi::{mixed_wirtinger_1d, wirtinger_derivative_1d, LeviError};

/// Cap on `N` for the Laurent window.
pub const MAX_SERIES_TERMS: usize = 1_000_000;

/// Default FD step relative to the distance from ζ to the constraint set
/// `{ζ = 0} ∪ {|ζ| = |z|}`.
pub const DEFAULT_STEP_FACTOR: f64 = 1e-4;

/// Relative disagreement between steps `h` and `h/2` that triggers a
/// Richardson refinement.
pub const RICHARDSON_TRIGGER: f64 = 1e-5;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnnulusError {
    #[error("need 0 < |zeta| < |z| < 1, got |zeta| = {zeta_abs}, |z| = {z_abs}")]
    Domain { zeta_abs: f64, z_abs: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("Laurent series needs more than {max_terms} terms per side")]
    NonConvergence { max_terms: usize },
    #[error(transparent)]
    Elliptic(#[from] EllipticError),
    #[error(transparent)]
    Stencil(#[from] LeviError),
}

/// A pair `(ζ, z)` with `0 < |ζ| < |z| < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnnulusPoint {
    #[serde(skip)]
    zeta: Complex64,
    #[serde(skip)]
    z: Complex64,
    zeta_abs: f64,
    z_abs: f64,
    u: f64,
    omega1: f64,
}

impl AnnulusPoint {
    pub fn new(zeta: Complex64, z: Complex64) -> Result<Self, AnnulusError> {
        let (zeta_abs, z_abs) = (zeta.norm(), z.norm());
        if !(zeta_abs > 0.0 && zeta_abs < z_abs && z_abs < 1.0) {
            return Err(AnnulusError::Domain { zeta_abs, z_abs });
        }
        Ok(Self {
            zeta,
            z,
            zeta_abs,
            z_abs,
            u: -2.0 * z_abs.ln(),
            omega1: -zeta_abs.ln(),
        })
    }

    /// Point on the positive real axis.
    pub fn from_moduli(zeta_abs: f64, z_abs: f64) -> Result<Self, AnnulusError> {
        Self::new(Complex64::new(zeta_abs, 0.0), Complex64::new(z_abs, 0.0))
    }

    pub fn zeta(&self) -> Complex64 {
        self.zeta
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    pub fn zeta_abs(&self) -> f64 {
        self.zeta_abs
    }

    pub fn z_abs(&self) -> f64 {
        self.z_abs
    }

    /// `u = −2 log|z| ∈ (0, 2ω₁)`.
    pub fn u(&self) -> f64 {
        self.u
    }

    /// `ω₁ = −log|ζ|`.
    pub fn omega1(&self) -> f64 {
        self.omega1
    }

    pub fn lattice(&self) -> Result<RectLattice, AnnulusError> {
        Ok(RectLattice::new(self.omega1)?)
    }

    /// Same `z`, parameter moved to `zeta`.
    pub fn with_zeta(&self, zeta: Complex64) -> Result<Self, AnnulusError> {
        Self::new(zeta, self.z)
    }

    /// Distance from ζ to the constraint set `{0} ∪ {|ζ| = |z|}`.
    pub fn parameter_margin(&self) -> f64 {
        self.zeta_abs.min(self.z_abs - self.zeta_abs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KernelMethod {
    ClosedForm,
    Series,
}

impl fmt::Display for KernelMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KernelMethod::ClosedForm => "closed",
            KernelMethod::Series => "series",
        })
    }
}

impl FromStr for KernelMethod {
    type Err = AnnulusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "closed" | "closed-form" => Ok(KernelMethod::ClosedForm),
            "series" => Ok(KernelMethod::Series),
            other => Err(AnnulusError::InvalidParameter(format!("unknown kernel method `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelValue {
    pub value: f64,
    pub method: KernelMethod,
}

/// A Laurent-series evaluation with its truncation data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LaurentSum {
    pub value: f64,
    /// Terms with `−N ≤ n ≤ N` were summed.
    pub window: usize,
    pub tail_bound: f64,
}

/// `℘(u)` and `c(ω₁)` at a point.
fn wp_and_c(p: &AnnulusPoint) -> Result<(RectLattice, f64, f64), AnnulusError> {
    let lat = p.lattice()?;
    let wp = lat.wp_real(p.u)?;
    let c = lat.quasi_periods()?.c;
    Ok((lat, wp, c))
}

pub fn kernel_closed(p: &AnnulusPoint) -> Result<KernelValue, AnnulusError> {
    let (_, wp, c) = wp_and_c(p)?;
    Ok(KernelValue {
        value: (wp + c) / (PI * p.z_abs * p.z_abs),
        method: KernelMethod::ClosedForm,
    })
}

fn positive_tail(x: f64, r: f64, k: usize) -> f64 {
    let kf = k as f64;
    x.powi(k as i32) * ((kf + 1.0) - kf * x)
        / ((1.0 - x).powi(2) * PI * -((2.0 * kf + 2.0) * r.ln()).exp_m1())
}

fn negative_tail(y: f64, r: f64, m: usize) -> f64 {
    let mf = m as f64;
    y.powi(m as i32 + 1) * (mf - (mf - 1.0) * y)
        / ((1.0 - y).powi(2) * PI * r * r * -((2.0 * mf) * r.ln()).exp_m1())
}

/// Compensated summation; keeps the series noise below the closed form's so
/// that finite differences of the two can be compared.
#[derive(Default)]
struct Neumaier {
    sum: f64,
    carry: f64,
}

impl Neumaier {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.carry += (self.sum - t) + v;
        } else {
            self.carry += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Laurent-series kernel at `|ζ| = r`, `|z| = s` with a certified tail.
pub fn kernel_series_certified(r: f64, s: f64, eps: f64) -> Result<LaurentSum, AnnulusError> {
    if !(r > 0.0 && r < s && s < 1.0) {
        return Err(AnnulusError::Domain {
            zeta_abs: r,
            z_abs: s,
        });
    }
    if !(eps > 0.0) {
        return Err(AnnulusError::InvalidParameter(format!("eps must be positive, got {eps}")));
    }
    let x = s * s;
    let y = (r / s) * (r / s);
    let half = 0.5 * eps;
    let find = |tail: &dyn Fn(usize) -> f64| {
        (2..=MAX_SERIES_TERMS)
            .find(|&k| tail(k) < half)
            .ok_or(AnnulusError::NonConvergence {
                max_terms: MAX_SERIES_TERMS,
            })
    };
    let n_pos = find(&|k| positive_tail(x, r, k))?;
    let n_neg = find(&|m| negative_tail(y, r, m))?;
    let n = n_pos.max(n_neg);
    let ln_r = r.ln();

    let mut sum = Neumaier::default();
    for k in (0..n).rev() {
        let kf = k as f64;
        sum.add((kf + 1.0) * x.powi(k as i32) / (PI * -((2.0 * kf + 2.0) * ln_r).exp_m1()));
    }
    for m in (2..=n).rev() {
        let mf = m as f64;
        sum.add((mf - 1.0) * y.powi(m as i32) / (PI * r * r * -((2.0 * mf - 2.0) * ln_r).exp_m1()));
    }
    sum.add(1.0 / (x * 2.0 * PI * -ln_r));
    let sum = sum.total();
    Ok(LaurentSum {
        value: sum,
        window: n,
        tail_bound: positive_tail(x, r, n) + negative_tail(y, r, n),
    })
}

/// Laurent-series kernel, truncated so the neglected terms sum to less than
/// `eps`.
pub fn kernel_series(r: f64, s: f64, eps: f64) -> Result<KernelValue, AnnulusError> {
    Ok(KernelValue {
        value: kernel_series_certified(r, s, eps)?.value,
        method: KernelMethod::Series,
    })
}

/// Evaluates the kernel at `p` with the chosen method. The series uses
/// `eps = 1e-17 × (its n = −1 and n = 0 terms)`, well under one ulp of the
/// value.
pub fn kernel(p: &AnnulusPoint, method: KernelMethod) -> Result<KernelValue, AnnulusError> {
    match method {
        KernelMethod::ClosedForm => kernel_closed(p),
        KernelMethod::Series => {
            let eps = 1e-17 * series_floor(p.zeta_abs, p.z_abs);
            kernel_series(p.zeta_abs, p.z_abs, eps)
        }
    }
}

fn series_floor(r: f64, s: f64) -> f64 {
    1.0 / (PI * -(2.0 * r.ln()).exp_m1()) + 1.0 / (s * s * 2.0 * PI * -r.ln())
}

/// The ζ-direction Levi component of `log K` as the closed expression
///
/// ```text
/// e^{2ω₁} (2℘(u) − ℘(ω₁) + c)(℘(ω₁) + c) / (4ω₁² (℘(u) + c)²).
/// ```
pub fn levi_zeta_component(p: &AnnulusPoint) -> Result<f64, AnnulusError> {
    let (lat, wp_u, c) = wp_and_c(p)?;
    let wp_w = lat.wp_real(p.omega1)?;
    let w = p.omega1;
    Ok((2.0 * w).exp() * (2.0 * wp_u - wp_w + c) * (wp_w + c) / (4.0 * w * w * (wp_u + c).powi(2)))
}

/// `h = 10⁻⁴ × min(|ζ|, |z| − |ζ|)`.
pub fn default_step(p: &AnnulusPoint) -> f64 {
    DEFAULT_STEP_FACTOR * p.parameter_margin()
}

/// `∂²f/∂ζ∂ζ̄` by the five-point stencil at `h`, with one Richardson step
/// `(4D(h/2) − D(h))/3` when `D(h)` and `D(h/2)` differ by more than
/// [`RICHARDSON_TRIGGER`] relative.
pub fn levi_fd_with<F>(f: F, zeta: Complex64, h: f64) -> Result<f64, AnnulusError>
where
    F: Fn(Complex64) -> Option<f64>,
{
    if !(h > 0.0) {
        return Err(AnnulusError::InvalidParameter(format!("step must be positive, got {h}")));
    }
    let coarse = mixed_wirtinger_1d(&f, zeta, h)?;
    let fine = mixed_wirtinger_1d(&f, zeta, 0.5 * h)?;
    let scale = coarse.abs().max(fine.abs());
    if (coarse - fine).abs() > RICHARDSON_TRIGGER * scale {
        Ok((4.0 * fine - coarse) / 3.0)
    } else {
        Ok(fine)
    }
}

fn log_kernel_in_zeta(p: &AnnulusPoint, method: KernelMethod) -> impl Fn(Complex64) -> Option<f64> + '_ {
    move |zeta| {
        let q = p.with_zeta(zeta).ok()?;
        kernel(&q, method).ok().map(|k| k.value.ln())
    }
}

fn kernel_in_zeta(p: &AnnulusPoint, method: KernelMethod) -> impl Fn(Complex64) -> Option<f64> + '_ {
    move |zeta| {
        let q = p.with_zeta(zeta).ok()?;
        kernel(&q, method).ok().map(|k| k.value)
    }
}

/// `∂² log K_ζ(z) / ∂ζ∂ζ̄` by finite differences in ζ, using `method` for the
/// kernel values.
pub fn levi_zeta_fd(p: &AnnulusPoint, h: f64, method: KernelMethod) -> Result<f64, AnnulusError> {
    levi_fd_with(log_kernel_in_zeta(p, method), p.zeta, h)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RemarkResidual {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

/// `∂²f/∂ζ∂ζ̄` against `|∂f/∂ζ|²` for a real `f`, both by central differences.
pub fn remark_residual_with<F>(f: F, zeta: Complex64, h: f64) -> Result<RemarkResidual, AnnulusError>
where
    F: Fn(Complex64) -> Option<f64>,
{
    let lhs = levi_fd_with(&f, zeta, h)?;
    let rhs = wirtinger_derivative_1d(&f, zeta, h)?.norm_sqr();
    Ok(RemarkResidual {
        lhs,
        rhs,
        residual: lhs - rhs,
    })
}

/// `∂²K/∂ζ∂ζ̄ − (∂K/∂ζ)(∂K/∂ζ̄)` for the closed-form kernel.
pub fn remark_identity_residual(p: &AnnulusPoint, h: f64) -> Result<RemarkResidual, AnnulusError> {
    remark_residual_with(kernel_in_zeta(p, KernelMethod::ClosedForm), p.zeta, h)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Approach {
    /// `|z| = 1 − 10^{−k}`.
    Outer,
    /// `|z| = |ζ| + 10^{−k}(1 − |ζ|)`.
    Inner,
}

impl fmt::Display for Approach {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Approach::Outer => "outer",
            Approach::Inner => "inner",
        })
    }
}

impl FromStr for Approach {
    type Err = AnnulusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "outer" => Ok(Approach::Outer),
            "inner" => Ok(Approach::Inner),
            other => Err(AnnulusError::InvalidParameter(format!("unknown approach `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecayRow {
    pub k: i32,
    pub z_abs: f64,
    pub u: f64,
    pub levi_value: f64,
    /// `levi_value` over the previous row's; `None` on the first row.
    pub ratio_to_previous: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayProfile {
    pub zeta_abs: f64,
    pub approach: Approach,
    pub rows: Vec<DecayRow>,
}

impl DecayProfile {
    pub fn strictly_decreasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].levi_value < w[0].levi_value)
    }
}

/// [`levi_zeta_component`] along `|z| → 1` or `|z| → |ζ|`.
pub fn boundary_decay_profile(zeta: Complex64, approach: Approach, ks: &[i32]) -> Result<DecayProfile, AnnulusError> {
    if ks.is_empty() || ks.windows(2).any(|w| w[1] <= w[0]) {
        return Err(AnnulusError::InvalidParameter(
            "ks must be nonempty and strictly increasing".to_string(),
        ));
    }
    let r = zeta.norm();
    let mut rows: Vec<DecayRow> = Vec::with_capacity(ks.len());
    for &k in ks {
        let step = 10f64.powi(-k);
        let s = match approach {
            Approach::Outer => 1.0 - step,
            Approach::Inner => r + step * (1.0 - r),
        };
        let p = AnnulusPoint::new(zeta, Complex64::new(s, 0.0))?;
        let levi_value = levi_zeta_component(&p)?;
        let ratio_to_previous = rows.last().map(|prev| levi_value / prev.levi_value);
        rows.push(DecayRow {
            k,
            z_abs: s,
            u: p.u,
            levi_value,
            ratio_to_previous,
        });
    }
    Ok(DecayProfile {
        zeta_abs: r,
        approach,
        rows,
    })
}
