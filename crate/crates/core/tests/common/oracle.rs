//! Lattice-sum ground truth for ℘ and ζ on `2ω₁ℤ + 2πiℤ`, independent of the
//! q-series used by the library.
//!
//! Two routes:
//!
//! * `*_box`: the defining sums over the box `|m|, |n| ≤ N`, with the
//!   `O(N⁻²)` truncation tail removed by Richardson extrapolation in `N`.
//! * `*_rows`: the same absolutely convergent double sum with each row
//!   `w = 2mω₁ + 2nπi, m ∈ ℤ` summed in closed form by the partial-fraction
//!   identities `Σ_m (x − 2mω)⁻² = (π/2ω)² csc²(πx/2ω)` and
//!   `Σ_m (x − 2mω)⁻¹ = (π/2ω) cot(πx/2ω)`; rows decay exponentially in `n`.

#![allow(dead_code)]

use num_complex::Complex64;
use std::f64::consts::PI;

fn lattice_point(omega1: f64, m: i64, n: i64) -> Complex64 {
    Complex64::new(2.0 * m as f64 * omega1, 2.0 * n as f64 * PI)
}

fn wp_box_raw(u: Complex64, omega1: f64, n_max: i64) -> Complex64 {
    let mut sum = 1.0 / (u * u);
    for m in -n_max..=n_max {
        for n in -n_max..=n_max {
            if m == 0 && n == 0 {
                continue;
            }
            let w = lattice_point(omega1, m, n);
            let d = u - w;
            sum += 1.0 / (d * d) - 1.0 / (w * w);
        }
    }
    sum
}

fn wzeta_box_raw(u: Complex64, omega1: f64, n_max: i64) -> Complex64 {
    let mut sum = 1.0 / u;
    for m in -n_max..=n_max {
        for n in -n_max..=n_max {
            if m == 0 && n == 0 {
                continue;
            }
            let w = lattice_point(omega1, m, n);
            sum += 1.0 / (u - w) + 1.0 / w + u / (w * w);
        }
    }
    sum
}

/// Box lattice sum at `N` and `2N`, extrapolated; returns `(value, |S(2N) − S(N)|)`.
pub fn wp_box(u: Complex64, omega1: f64, n_max: i64) -> (Complex64, f64) {
    let a = wp_box_raw(u, omega1, n_max);
    let b = wp_box_raw(u, omega1, 2 * n_max);
    ((4.0 * b - a) / 3.0, (b - a).norm())
}

pub fn wzeta_box(u: Complex64, omega1: f64, n_max: i64) -> (Complex64, f64) {
    let a = wzeta_box_raw(u, omega1, n_max);
    let b = wzeta_box_raw(u, omega1, 2 * n_max);
    ((4.0 * b - a) / 3.0, (b - a).norm())
}

/// `(cot x, csc² x)` via `exp(±2ix)`, safe for large `|Im x|`.
fn cot_csc2(x: Complex64) -> (Complex64, Complex64) {
    let i = Complex64::i();
    let sign = if x.im >= 0.0 { 1.0 } else { -1.0 };
    let w = (2.0 * sign * i * x).exp();
    let cot = sign * i * (w + 1.0) / (w - 1.0);
    let csc2 = -4.0 * w / ((w - 1.0) * (w - 1.0));
    (cot, csc2)
}

fn row_wp(x: Complex64, omega1: f64) -> Complex64 {
    let k = PI / (2.0 * omega1);
    k * k * cot_csc2(k * x).1
}

fn row_zeta(x: Complex64, omega1: f64) -> Complex64 {
    let k = PI / (2.0 * omega1);
    k * cot_csc2(k * x).0
}

fn row_count(omega1: f64) -> i64 {
    // Row n contributes ~exp(−nπ²/ω₁); stop once that is below 1e-20.
    ((46.0 * omega1 / (PI * PI)).ceil() as i64 + 2).max(3)
}

/// Row-summed lattice sum for ℘. Accurate for `u` near the fundamental cell.
pub fn wp_rows(u: Complex64, omega1: f64) -> Complex64 {
    let base = PI * PI / (12.0 * omega1 * omega1);
    let mut sum = row_wp(u, omega1) - base;
    for n in 1..=row_count(omega1) {
        for s in [-1i64, 1] {
            let shift = Complex64::new(0.0, 2.0 * PI * (s * n) as f64);
            sum += row_wp(u - shift, omega1) - row_wp(shift, omega1);
        }
    }
    sum
}

/// Row-summed lattice sum for ζ.
pub fn wzeta_rows(u: Complex64, omega1: f64) -> Complex64 {
    let base = PI * PI / (12.0 * omega1 * omega1);
    let mut sum = row_zeta(u, omega1) + u * base;
    for n in 1..=row_count(omega1) {
        for s in [-1i64, 1] {
            let shift = Complex64::new(0.0, 2.0 * PI * (s * n) as f64);
            sum += row_zeta(u - shift, omega1) + row_zeta(shift, omega1) + u * row_wp(shift, omega1);
        }
    }
    sum
}

/// ℘′ by differentiating each row in closed form.
pub fn wp_prime_rows(u: Complex64, omega1: f64) -> Complex64 {
    let k = PI / (2.0 * omega1);
    let term = |x: Complex64| {
        let (cot, csc2) = cot_csc2(k * x);
        -2.0 * k * k * k * cot * csc2
    };
    let mut sum = term(u);
    for n in 1..=row_count(omega1) {
        for s in [-1i64, 1] {
            let shift = Complex64::new(0.0, 2.0 * PI * (s * n) as f64);
            sum += term(u - shift);
        }
    }
    sum
}
