//! Weierstrass ℘, ℘′ and ζ on the rectangular lattice `2ω₁ℤ + 2πiℤ`.
//!
//! Values are computed from trigonometric q-series. The nome for the lattice
//! as given is `q = exp(−π²/ω₁)`; once `ω₁ > π` that exceeds `e^{−π}`, and the
//! lattice is rotated by `−i` so the working nome becomes `exp(−ω₁) < e^{−π}`.
//! Under the rotation `℘(u) = −℘̃(−iu)`, `℘′(u) = i℘̃′(−iu)`,
//! `ζ(u) = −iζ̃(−iu)`.

mod series;

use num_complex::Complex64;
use series::Frame;
use std::f64::consts::PI;
use thiserror::Error;

/// Reduced arguments closer than this to a lattice point are rejected.
pub const POLE_GUARD: f64 = 1e-6;

/// Imaginary residue allowed when a real result is expected, relative to
/// `max(|value|, 1)`.
pub const REALNESS_TOL: f64 = 1e-12;

/// Range of `ω₁` over which the accuracy contract is tested.
pub const OMEGA1_CONTRACT: (f64, f64) = (0.05, 10.0);

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EllipticError {
    #[error("half-period omega1 must be finite and positive, got {0}")]
    InvalidHalfPeriod(f64),
    #[error("lattice parameter |zeta| must lie in (0, 1), got {0}")]
    InvalidModulus(f64),
    #[error("argument is {distance:e} from a lattice point (guard radius {POLE_GUARD:e})")]
    PoleProximity { distance: f64 },
    #[error("expected a real value but imaginary part is {imag:e} (value {real})")]
    NonReal { real: f64, imag: f64 },
}

/// The period lattice with half-periods `ω₁` (real) and `πi`.
#[derive(Debug, Clone)]
pub struct RectLattice {
    omega1: f64,
    rotated: bool,
    frame: Frame,
    eta1: f64,
    eta3: Complex64,
}

/// A ℘ or ζ value together with the distance of its reduced argument to the
/// nearest lattice point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticValue {
    pub value: Complex64,
    pub condition: f64,
}

/// `η = ζ(ω₁)` and `c = η/ω₁`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuasiPeriods {
    pub eta: f64,
    pub c: f64,
}

/// All three functions at one argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub wp: Complex64,
    pub wp_prime: Complex64,
    pub zeta: Complex64,
    pub condition: f64,
}

impl RectLattice {
    pub fn new(omega1: f64) -> Result<Self, EllipticError> {
        if !(omega1.is_finite() && omega1 > 0.0) {
            return Err(EllipticError::InvalidHalfPeriod(omega1));
        }
        let rotated = omega1 > PI;
        let frame = if rotated {
            Frame::new(PI, omega1)
        } else {
            Frame::new(omega1, PI)
        };
        let (eta1, eta3) = if rotated {
            // ζ(ω₁) = −iζ̃(−iω₁) = iζ̃(iω₁); ζ(πi) = −iζ̃(π).
            let eta1 = -frame.eta_imag().im;
            (eta1, Complex64::new(0.0, -frame.eta()))
        } else {
            (frame.eta(), frame.eta_imag())
        };
        Ok(Self {
            omega1,
            rotated,
            frame,
            eta1,
            eta3,
        })
    }

    /// Lattice for the annulus `{|ζ| < |z| < 1}`, `ω₁ = −log|ζ|`.
    pub fn from_modulus(zeta_abs: f64) -> Result<Self, EllipticError> {
        if !(zeta_abs > 0.0 && zeta_abs < 1.0) {
            return Err(EllipticError::InvalidModulus(zeta_abs));
        }
        Self::new(-zeta_abs.ln())
    }

    pub fn omega1(&self) -> f64 {
        self.omega1
    }

    /// Nome of the series actually summed; never above `e^{−π}`.
    pub fn working_nome(&self) -> f64 {
        self.frame.nome()
    }

    pub fn is_rotated(&self) -> bool {
        self.rotated
    }

    /// `ζ(πi)`, purely imaginary.
    pub fn eta_imag(&self) -> Complex64 {
        self.eta3
    }

    /// Maps `u` into `[−ω₁, ω₁) × [−π, π)` and returns the quasi-period
    /// correction `s` with `ζ(u) = ζ(u_red) + s`.
    pub fn lattice_reduce(&self, u: Complex64) -> (Complex64, Complex64) {
        let m = ((u.re + self.omega1) / (2.0 * self.omega1)).floor();
        let n = ((u.im + PI) / (2.0 * PI)).floor();
        let reduced = Complex64::new(u.re - 2.0 * m * self.omega1, u.im - 2.0 * n * PI);
        let shift = 2.0 * m * self.eta1 + 2.0 * n * self.eta3;
        (reduced, shift)
    }

    pub fn evaluate(&self, u: Complex64) -> Result<Evaluation, EllipticError> {
        let (reduced, shift) = self.lattice_reduce(u);
        // The fundamental cell is the Voronoi cell of the origin.
        let distance = reduced.norm();
        if !(distance >= POLE_GUARD) {
            return Err(EllipticError::PoleProximity { distance });
        }
        let (wp, wp_prime, zeta) = if self.rotated {
            let i = Complex64::i();
            let s = self.frame.eval(-i * reduced);
            (-s.wp, i * s.wp_prime, -i * s.zeta)
        } else {
            let s = self.frame.eval(reduced);
            (s.wp, s.wp_prime, s.zeta)
        };
        Ok(Evaluation {
            wp,
            wp_prime,
            zeta: zeta + shift,
            condition: distance,
        })
    }

    pub fn wp(&self, u: Complex64) -> Result<Complex64, EllipticError> {
        self.evaluate(u).map(|e| e.wp)
    }

    pub fn wp_prime(&self, u: Complex64) -> Result<Complex64, EllipticError> {
        self.evaluate(u).map(|e| e.wp_prime)
    }

    pub fn wzeta(&self, u: Complex64) -> Result<Complex64, EllipticError> {
        self.evaluate(u).map(|e| e.zeta)
    }

    pub fn wp_value(&self, u: Complex64) -> Result<EllipticValue, EllipticError> {
        self.evaluate(u).map(|e| EllipticValue {
            value: e.wp,
            condition: e.condition,
        })
    }

    pub fn wzeta_value(&self, u: Complex64) -> Result<EllipticValue, EllipticError> {
        self.evaluate(u).map(|e| EllipticValue {
            value: e.zeta,
            condition: e.condition,
        })
    }

    /// ℘ at a real argument, with the imaginary residue checked and dropped.
    pub fn wp_real(&self, x: f64) -> Result<f64, EllipticError> {
        real_part_checked(self.wp(Complex64::new(x, 0.0))?)
    }

    pub fn quasi_periods(&self) -> Result<QuasiPeriods, EllipticError> {
        let eta = real_part_checked(self.wzeta(Complex64::new(self.omega1, 0.0))?)?;
        Ok(QuasiPeriods {
            eta,
            c: eta / self.omega1,
        })
    }
}

fn real_part_checked(value: Complex64) -> Result<f64, EllipticError> {
    if value.im.abs() <= REALNESS_TOL * value.norm().max(1.0) {
        Ok(value.re)
    } else {
        Err(EllipticError::NonReal {
            real: value.re,
            imag: value.im,
        })
    }
}

pub fn lattice_reduce(u: Complex64, lat: &RectLattice) -> (Complex64, Complex64) {
    lat.lattice_reduce(u)
}

pub fn wp(u: Complex64, lat: &RectLattice) -> Result<Complex64, EllipticError> {
    lat.wp(u)
}

pub fn wp_prime(u: Complex64, lat: &RectLattice) -> Result<Complex64, EllipticError> {
    lat.wp_prime(u)
}

pub fn wzeta(u: Complex64, lat: &RectLattice) -> Result<Complex64, EllipticError> {
    lat.wzeta(u)
}

pub fn quasi_periods(lat: &RectLattice) -> Result<QuasiPeriods, EllipticError> {
    lat.quasi_periods()
}
