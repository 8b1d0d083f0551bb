//! Tensor-product quadrature over the unit ball and polydisc in ℂ².

use num_complex::Complex64;
use std::f64::consts::PI;

/// Gauss–Legendre nodes and weights on `[0, 1]`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push((0.5 * (x + 1.0), 0.5 * w));
    }
    out
}

fn angles(m: usize) -> Vec<Complex64> {
    (0..m)
        .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / m as f64))
        .collect()
}

/// `∫ f dV` over `{|z₁|² + |z₂|² < s²}`.
pub fn ball2<F: Fn(Complex64, Complex64) -> Complex64>(f: F, s: f64, nodes: usize) -> Complex64 {
    let gl = gauss_legendre(nodes);
    let th = angles(nodes);
    let dtheta = 2.0 * PI / nodes as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for &(x1, w1) in &gl {
        let r1 = s * x1;
        let top = (s * s - r1 * r1).sqrt();
        for &(x2, w2) in &gl {
            let r2 = top * x2;
            let jac = s * w1 * top * w2 * r1 * r2 * dtheta * dtheta;
            for e1 in &th {
                for e2 in &th {
                    acc += f(r1 * e1, r2 * e2) * jac;
                }
            }
        }
    }
    acc
}

/// `∫ f dV` over `{|z₁| < s, |z₂| < s}`.
pub fn polydisc2<F: Fn(Complex64, Complex64) -> Complex64>(f: F, s: f64, nodes: usize) -> Complex64 {
    let gl = gauss_legendre(nodes);
    let th = angles(nodes);
    let dtheta = 2.0 * PI / nodes as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for &(x1, w1) in &gl {
        for &(x2, w2) in &gl {
            let (r1, r2) = (s * x1, s * x2);
            let jac = s * w1 * s * w2 * r1 * r2 * dtheta * dtheta;
            for e1 in &th {
                for e2 in &th {
                    acc += f(r1 * e1, r2 * e2) * jac;
                }
            }
        }
    }
    acc
}
