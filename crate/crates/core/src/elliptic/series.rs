//! Trigonometric q-series for ℘, ℘′ and ζ on a rectangular lattice with real
//! half-period `a` and imaginary half-period `i·b`.
//!
//! With `v = πu/(2a)` and nome `q = exp(−πb/a)`:
//!
//! ```text
//! ℘(u)  = −η/a + (π/2a)² csc²v − 2(π/a)² Σ n qⁿ²ⁿ/(1−q²ⁿ) cos 2nv
//! ζ(u)  =  ηu/a + (π/2a) cot v + 2(π/a) Σ q²ⁿ/(1−q²ⁿ) sin 2nv
//! η     = (π²/12a) (1 − 24 Σ n q²ⁿ/(1−q²ⁿ))
//! ```
//!
//! Each `q²ⁿ e^{±2inv}` is formed as a single exponential so that large
//! imaginary parts of `v` never overflow. For arguments in the fundamental
//! cell the terms decay at least like `qⁿ`.

use num_complex::Complex64;
use std::f64::consts::PI;

const MAX_TERMS: usize = 200;
const TERM_CUTOFF: f64 = 1e-20;

/// `exp(z) − 1` without cancellation for small `|z|`.
pub(crate) fn expm1(z: Complex64) -> Complex64 {
    let (s, c) = z.im.sin_cos();
    let half = (0.5 * z.im).sin();
    let re = z.re.exp_m1() * c - 2.0 * half * half;
    Complex64::new(re, z.re.exp() * s)
}

/// `(cot v, csc² v)` evaluated through `expm1(±2iv)`, stable for any `Im v`.
pub(crate) fn cot_csc2(v: Complex64) -> (Complex64, Complex64) {
    let i = Complex64::i();
    if v.im >= 0.0 {
        let m = expm1(2.0 * i * v);
        let cot = i * (2.0 + m) / m;
        let csc2 = -4.0 * (1.0 + m) / (m * m);
        (cot, csc2)
    } else {
        let m = expm1(-2.0 * i * v);
        let cot = -i * (2.0 + m) / m;
        let csc2 = -4.0 * (1.0 + m) / (m * m);
        (cot, csc2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct SeriesValues {
    pub wp: Complex64,
    pub wp_prime: Complex64,
    pub zeta: Complex64,
}

#[derive(Debug, Clone)]
pub(crate) struct Frame {
    a: f64,
    /// `π b / a`, i.e. `−log q`.
    log_nome: f64,
    eta: f64,
}

impl Frame {
    pub(crate) fn new(a: f64, b: f64) -> Self {
        let log_nome = PI * b / a;
        let mut lambert = 0.0;
        for n in 1..=MAX_TERMS {
            let nf = n as f64;
            let q2n = (-2.0 * nf * log_nome).exp();
            let term = nf * q2n / (-(-2.0 * nf * log_nome).exp_m1());
            lambert += term;
            if term < 1e-18 * lambert.max(1e-300) || term == 0.0 {
                break;
            }
        }
        let eta = PI * PI / (12.0 * a) * (1.0 - 24.0 * lambert);
        Self { a, log_nome, eta }
    }

    pub(crate) fn nome(&self) -> f64 {
        (-self.log_nome).exp()
    }

    /// `ζ(a)`.
    pub(crate) fn eta(&self) -> f64 {
        self.eta
    }

    /// `ζ(i·b)` from the Legendre relation `η·ib − η′·a = πi/2`.
    pub(crate) fn eta_imag(&self) -> Complex64 {
        let b = self.log_nome * self.a / PI;
        Complex64::new(0.0, (self.eta * b - 0.5 * PI) / self.a)
    }

    pub(crate) fn eval(&self, u: Complex64) -> SeriesValues {
        let a = self.a;
        let i = Complex64::i();
        let k = PI / a;
        let half_k = 0.5 * k;
        let v = u * half_k;
        let (cot, csc2) = cot_csc2(v);

        let step_plus = (2.0 * (i * v - self.log_nome)).exp();
        let step_minus = (2.0 * (-i * v - self.log_nome)).exp();
        let mut e_plus = Complex64::new(1.0, 0.0);
        let mut e_minus = Complex64::new(1.0, 0.0);
        let mut cos_sum = Complex64::new(0.0, 0.0);
        let mut sin_sum = Complex64::new(0.0, 0.0);
        let mut sin_sum_n2 = Complex64::new(0.0, 0.0);
        for n in 1..=MAX_TERMS {
            let nf = n as f64;
            e_plus *= step_plus;
            e_minus *= step_minus;
            let c = 1.0 / (-(-2.0 * nf * self.log_nome).exp_m1());
            let cos_part = 0.5 * (e_plus + e_minus);
            let sin_part = (e_plus - e_minus) / (2.0 * i);
            cos_sum += nf * c * cos_part;
            sin_sum += c * sin_part;
            sin_sum_n2 += nf * nf * c * sin_part;
            if nf * nf * (e_plus.norm() + e_minus.norm()) < TERM_CUTOFF {
                break;
            }
        }

        let wp = -self.eta / a + half_k * half_k * csc2 - 2.0 * k * k * cos_sum;
        let wp_prime =
            -2.0 * half_k * half_k * half_k * cot * csc2 + 2.0 * k * k * k * sin_sum_n2;
        let zeta = self.eta / a * u + half_k * cot + 2.0 * k * sin_sum;
        SeriesValues { wp, wp_prime, zeta }
    }
}
