use bergkern::annulus::{
    default_step, kernel_closed, kernel_series, kernel_series_certified, levi_zeta_component,
    levi_zeta_fd, remark_identity_residual, AnnulusPoint, KernelMethod,
};
use bergkern::levi::LowDiscrepancy;
use bergkern::RectLattice;
use num_complex::Complex64;
use std::f64::consts::PI;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn grid() -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for r in [0.1, 0.3, 0.5, 0.7] {
        for j in 1..=10 {
            out.push((r, r + (1.0 - r) * j as f64 / 11.0));
        }
    }
    out
}

/// Uniform-ish samples of `(|ζ|, |z|, arg ζ, arg z)` in the annulus family.
fn samples(n: u64, seed: u64) -> Vec<AnnulusPoint> {
    let seq = LowDiscrepancy::new(4, seed);
    (0..n)
        .map(|i| {
            let p = seq.point(i);
            let r = 0.02 + 0.95 * p[0];
            let s = r + (1.0 - r) * (0.01 + 0.98 * p[1]);
            AnnulusPoint::new(
                Complex64::from_polar(r, 2.0 * PI * p[2]),
                Complex64::from_polar(s, 2.0 * PI * p[3]),
            )
            .unwrap()
        })
        .collect()
}

#[test]
fn closed_form_matches_laurent_series_on_grid() {
    for (r, s) in grid() {
        let p = AnnulusPoint::from_moduli(r, s).unwrap();
        let a = kernel_closed(&p).unwrap().value;
        let b = kernel_series(r, s, 1e-12).unwrap().value;
        assert!(rel(a, b) < 1e-8, "r={r} s={s}: {a} vs {b}");
    }
}

#[test]
fn reciprocal_term_alone() {
    // Only the n = −1 term depends on ω₁ through 2πω₁ exactly; isolate it by
    // differencing against the series with that term removed.
    let (r, s) = (0.3f64, 0.6f64);
    let full = kernel_series_certified(r, s, 1e-15).unwrap();
    let mut rest = 0.0;
    for n in 0..full.window {
        let nf = n as f64;
        rest += (nf + 1.0) * s.powi(2 * n as i32) / (PI * (1.0 - r.powi(2 * n as i32 + 2)));
    }
    for m in 2..=full.window {
        let mf = m as f64;
        rest += (mf - 1.0) * s.powi(-2 * m as i32) / (PI * (r.powi(2 - 2 * m as i32) - 1.0));
    }
    let want = s.powi(-2) / (2.0 * PI * -r.ln());
    assert!(rel(full.value - rest, want) < 1e-12);
}

#[test]
fn kernels_depend_only_on_moduli() {
    let base = AnnulusPoint::from_moduli(0.3, 0.6).unwrap();
    let k0 = kernel_closed(&base).unwrap().value;
    let l0 = levi_zeta_component(&base).unwrap();
    for (t, f) in [(0.4, 1.3), (2.0, -0.7), (-3.0, 3.1)] {
        let p = AnnulusPoint::new(Complex64::from_polar(0.3, t), Complex64::from_polar(0.6, f)).unwrap();
        assert!(rel(kernel_closed(&p).unwrap().value, k0) < 1e-14);
        assert!(rel(levi_zeta_component(&p).unwrap(), l0) < 1e-14);
    }
}

#[test]
fn reflection_law_sampled() {
    for p in samples(200, 1) {
        let (r, s) = (p.zeta_abs(), p.z_abs());
        let q = AnnulusPoint::from_moduli(r, r / s).unwrap();
        let lhs = kernel_closed(&q).unwrap().value * r * r / s.powi(4);
        let rhs = kernel_closed(&p).unwrap().value;
        assert!(rel(lhs, rhs) < 1e-10, "r={r} s={s}");
    }
}

#[test]
fn positivity_sampled() {
    for p in samples(500, 2) {
        let lat = RectLattice::new(p.omega1()).unwrap();
        let wp = lat.wp_real(p.u()).unwrap();
        let c = lat.quasi_periods().unwrap().c;
        assert!(wp + c > 0.0);
        assert!(kernel_closed(&p).unwrap().value > 0.0);
        assert!(levi_zeta_component(&p).unwrap() > 0.0);
    }
}

#[test]
fn fd_evaluators_agree_on_samples() {
    // Near |z| = 1 the Levi value shrinks like u² while the rounding noise of
    // the second difference does not, so the comparison stops at |z| = 0.95.
    for p in samples(60, 3) {
        let q = AnnulusPoint::from_moduli(p.zeta_abs(), p.z_abs()).unwrap();
        if q.parameter_margin() < 0.05 || q.z_abs() > 0.95 {
            continue;
        }
        let a = levi_zeta_fd(&q, 1e-4, KernelMethod::ClosedForm).unwrap();
        let b = levi_zeta_fd(&q, 1e-4, KernelMethod::Series).unwrap();
        assert!(rel(a, b) < 1e-5, "{q:?}: {a} vs {b}");
    }
}

#[test]
fn fd_levi_is_rotation_invariant() {
    let p = AnnulusPoint::from_moduli(0.3, 0.6).unwrap();
    let h = default_step(&p);
    let base = levi_zeta_fd(&p, h, KernelMethod::ClosedForm).unwrap();
    let res = remark_identity_residual(&p, h).unwrap();
    for t in [0.7, 2.5] {
        let q = p.with_zeta(Complex64::from_polar(0.3, t)).unwrap();
        assert!(rel(levi_zeta_fd(&q, h, KernelMethod::ClosedForm).unwrap(), base) < 1e-5);
        let rq = remark_identity_residual(&q, h).unwrap();
        assert!(rel(rq.lhs, res.lhs) < 1e-5);
        assert!(rel(rq.rhs, res.rhs) < 1e-6);
    }
}

#[test]
fn fd_levi_positive_on_samples() {
    // The ζ-direction Levi component of log K is positive.
    for p in samples(30, 4) {
        if p.parameter_margin() < 0.02 {
            continue;
        }
        let v = levi_zeta_fd(&p, default_step(&p), KernelMethod::ClosedForm).unwrap();
        assert!(v > 0.0, "{p:?}");
    }
}
