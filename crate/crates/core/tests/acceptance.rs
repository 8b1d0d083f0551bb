//! Acceptance criteria, one line each. Exits nonzero if any criterion fails.

use bergkern::annulus::{kernel_closed, kernel_series, AnnulusPoint};
use bergkern::circular::{kernel_general, CircularDomainBasis, DomainKind, RadiusFunction};
use bergkern::levi::{complex_hessian_fd, ScanConfig};
use bergkern::report::{CheckReport, CheckStatus};
use bergkern::suites::{self, Suite, SuiteConfig, DEFAULT_OMEGA1S};
use bergkern::RectLattice;
use num_complex::Complex64;
use std::f64::consts::PI;
use std::time::{Duration, Instant};

struct Outcome {
    passed: bool,
    detail: String,
}

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

fn suite_outcome(report: &CheckReport) -> Outcome {
    let failed: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
    Outcome {
        passed: report.passed,
        detail: if failed.is_empty() {
            format!("{} checks", report.checks.len())
        } else {
            format!("failed: {}", failed.join("; "))
        },
    }
}

fn elliptic_identities() -> Outcome {
    suite_outcome(&suites::identities(&DEFAULT_OMEGA1S, 1e-10))
}

fn oracle_equivalence() -> Outcome {
    let mut worst: f64 = 0.0;
    for (r, s) in grid() {
        let closed = AnnulusPoint::from_moduli(r, s)
            .and_then(|p| kernel_closed(&p))
            .map(|k| k.value);
        let series = kernel_series(r, s, 1e-13).map(|k| k.value);
        match (closed, series) {
            (Ok(a), Ok(b)) => worst = worst.max(rel(a, b)),
            _ => worst = f64::INFINITY,
        }
    }
    Outcome {
        passed: worst <= 1e-8,
        detail: format!("40 points, max rel diff {worst:.3e} (tol 1e-8)"),
    }
}

fn boundary_decay() -> Outcome {
    suite_outcome(&suites::boundary_decay(0.3, &[1, 2, 3, 4]))
}

fn scan_config() -> ScanConfig {
    ScanConfig {
        samples: 100,
        seed: 7,
        ..ScanConfig::default()
    }
}

fn psh_scans() -> Outcome {
    let report = suites::psh_scans(&scan_config(), 1e-15);
    let mut out = suite_outcome(&report);
    let mins: Vec<String> = report
        .checks
        .iter()
        .filter(|c| c.name.contains("min eigenvalue"))
        .map(|c| format!("{} = {:.3e}", c.name, c.lhs))
        .collect();
    out.detail = format!("{}; {}", out.detail, mins.join("; "));
    out
}

fn non_psh_radius() -> Outcome {
    let report = suites::non_psh_radius(&scan_config(), 1e-15);
    let mut out = suite_outcome(&report);
    if let Some(c) = report.checks.iter().find(|c| c.name.contains("<= -1e-4")) {
        out.detail = format!("{}; min eigenvalue {:.4e}", out.detail, c.lhs);
    }
    out
}

/// `(℘(u) + c)/(π|z|²)` with `u = −2 log|z|`, also for `|z| < |ζ|`.
fn closed_expression(r: f64, s: f64) -> Option<f64> {
    let lat = RectLattice::from_modulus(r).ok()?;
    let wp = lat.wp_real(-2.0 * s.ln()).ok()?;
    let c = lat.quasi_periods().ok()?.c;
    Some((wp + c) / (PI * s * s))
}

fn specialization() -> Outcome {
    let basis = CircularDomainBasis::new(DomainKind::Ball, 1).expect("n = 1");
    let rho = RadiusFunction::from_catalog("abs", 1, None).expect("catalog");
    let inside = grid();
    // |z| < |ζ|, avoiding |z| = |ζ|^k where u lands on the lattice.
    let mut hole = Vec::new();
    for r in [0.1, 0.3, 0.5, 0.7] {
        for j in 1..=3 {
            hole.push((r, r * (j as f64 + 0.5) / 4.0));
        }
    }
    let worst = |points: &[(f64, f64)]| {
        let mut worst = (0.0f64, 0.0, 0.0);
        for &(r, s) in points {
            let series = kernel_general(&basis, &rho, &[Complex64::new(r, 0.0)], &[Complex64::new(s, 0.0)], 1e-15)
                .map(|k| k.value)
                .ok();
            let d = match (series, closed_expression(r, s)) {
                (Some(a), Some(b)) => rel(a, b),
                _ => f64::INFINITY,
            };
            if !(d <= worst.0) {
                worst = (d, r, s);
            }
        }
        worst
    };
    let (a, b) = (worst(&inside), worst(&hole));
    Outcome {
        passed: a.0 <= 1e-8 && b.0 <= 1e-8,
        detail: format!(
            "max rel diff {:.3e} on the 40-point grid (at |zeta|={} |z|={}), {:.3e} on 12 points with |z| < |zeta| (tol 1e-8)",
            a.0, a.1, a.2, b.0
        ),
    }
}

fn comparison_harness() -> Outcome {
    let cfg = SuiteConfig::default();
    let expr = suites::run(Suite::Theorem12, &cfg);
    let prod = suites::run(Suite::Remark32, &cfg);
    println!("    |zeta|  |z|    fd (closed)        fd (series)        expression         rel(expr, fd)  d2K                |dK|^2");
    let mut rows = 0;
    for &(r, s) in &cfg.levi_points {
        let label = format!("|zeta|={r} |z|={s}");
        let get = |report: &CheckReport, suffix: &str| {
            report.find(&format!("{label}: {suffix}")).cloned()
        };
        let (Some(fd), Some(ex), Some(pr)) = (
            get(&expr, "fd closed vs fd series"),
            get(&expr, "expression vs fd"),
            get(&prod, "d2K/dzeta dzetabar vs |dK/dzeta|^2"),
        ) else {
            continue;
        };
        rows += 1;
        println!(
            "    {r:<6}  {s:<5}  {:<17.10e}  {:<17.10e}  {:<17.10e}  {:<13.4e}  {:<17.10e}  {:.10e}",
            fd.lhs,
            fd.rhs,
            ex.lhs,
            ex.rel_diff.unwrap_or(f64::NAN),
            pr.lhs,
            pr.rhs
        );
    }
    let mut out = suite_outcome(&expr);
    out.passed &= prod.checks.iter().all(|c| c.status == CheckStatus::ReportOnly) && rows >= 6;
    out.detail = format!("{rows} points reported; {}", out.detail);
    out
}

fn asymptotic_check() -> Outcome {
    let target = PI * PI / 6.0;
    let mut cells = Vec::new();
    let mut near_limit = f64::NAN;
    for w in [0.1, 0.5, 1.0, 2.0, 5.0] {
        let v = RectLattice::new(w).and_then(|l| l.wp_real(w)).map(|p| w * w * p);
        let v = v.unwrap_or(f64::NAN);
        if w == 0.1 {
            near_limit = v;
        }
        cells.push(format!("w1={w}: {v:.12} (rel {:.2e})", rel(v, target)));
    }
    Outcome {
        passed: rel(near_limit, target) <= 0.02,
        detail: cells.join("; "),
    }
}

fn fd_infrastructure() -> Outcome {
    let c = Complex64::new;
    // Hermitian quadratic plus a pluriharmonic quadratic.
    let quad = |w: &[Complex64]| {
        let herm = 2.0 * w[0].norm_sqr() + 3.0 * w[1].norm_sqr() + 2.0 * (c(0.5, -0.25) * w[0].conj() * w[1]).re;
        Some(herm + (c(1.5, 0.5) * w[0] * w[1] + w[1] * w[1]).re)
    };
    let exact = [[c(2.0, 0.0), c(0.5, 0.25)], [c(0.5, -0.25), c(3.0, 0.0)]];
    let mut quad_err: f64 = 0.0;
    for w in [[c(0.1, 0.2), c(-0.3, 0.4)], [c(0.0, 0.0), c(0.7, -0.1)]] {
        match complex_hessian_fd(quad, &w, 1e-3) {
            Ok(form) => {
                for a in 0..2 {
                    for b in 0..2 {
                        quad_err = quad_err.max((form.entry(a, b) - exact[a][b]).norm());
                    }
                }
            }
            Err(_) => quad_err = f64::INFINITY,
        }
    }

    let fs = |w: &[Complex64]| Some((1.0 + w[0].norm_sqr() + w[1].norm_sqr()).ln());
    let w = [c(0.3, 0.0), c(0.2, -0.1)];
    let t = 1.0 + w[0].norm_sqr() + w[1].norm_sqr();
    let err = |h: f64| -> f64 {
        let Ok(form) = complex_hessian_fd(fs, &w, h) else {
            return f64::NAN;
        };
        let mut e: f64 = 0.0;
        for a in 0..2 {
            for b in 0..2 {
                let delta = if a == b { 1.0 } else { 0.0 };
                let want = delta / t - w[a].conj() * w[b] / (t * t);
                e = e.max((form.entry(a, b) - want).norm());
            }
        }
        e
    };
    let ratio = err(1e-2) / err(5e-3);
    Outcome {
        passed: quad_err <= 1e-8 && (3.0..=5.0).contains(&ratio),
        detail: format!("quadratic max error {quad_err:.2e} (tol 1e-8); h-halving error ratio {ratio:.4}"),
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Option<Duration>); 9] = [
        ("elliptic identities", elliptic_identities, Some(Duration::from_secs(5))),
        ("closed form vs Laurent series", oracle_equivalence, Some(Duration::from_secs(2))),
        ("boundary decay of the Levi expression", boundary_decay, Some(Duration::from_secs(2))),
        ("psh and strict psh scans", psh_scans, Some(Duration::from_secs(60))),
        ("non-psh radius finds a negative eigenvalue", non_psh_radius, Some(Duration::from_secs(30))),
        ("n = 1 series vs annulus closed form", specialization, None),
        ("Levi expression and product rule comparison", comparison_harness, None),
        ("w1^2 wp(w1) near pi^2/6", asymptotic_check, None),
        ("finite-difference Hessians", fd_infrastructure, None),
    ];
    let mut all = true;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = limit.map_or(true, |l| elapsed < l);
        let passed = outcome.passed && in_time;
        all &= passed;
        let budget = limit.map_or(String::new(), |l| format!(" / {:.0} s", l.as_secs_f64()));
        println!(
            "criterion {}: {} {name} [{:.3} s{budget}] {}",
            i + 1,
            if passed { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            outcome.detail
        );
    }
    if !all {
        std::process::exit(1);
    }
}
