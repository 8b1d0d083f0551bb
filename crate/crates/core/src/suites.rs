//! Named check suites shared by the CLI and the acceptance tests.
//!
//! | suite         | contents                                                         |
//! |---------------|------------------------------------------------------------------|
//! | `identities`  | periodicity, parity, quasi-periodicity, `℘′(ω₁) = 0`, Legendre   |
//! | `theorem12`   | closed Levi expression against finite differences (report-only) |
//! | `remark32`    | `∂²K/∂ζ∂ζ̄` against `|∂K/∂ζ|²` (report-only)                     |
//! | `corollary13` | decay of the ζ-direction Levi component at both boundaries       |
//! | `theorem11`   | plurisubharmonicity scans of the generalized annulus kernel      |
//! | `remark21`    | a non-psh radius function produces a negative Levi eigenvalue    |

use num_complex::Complex64;
use serde_json::{json, Map, Value};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::annulus::{
    self, boundary_decay_profile, levi_zeta_component, levi_zeta_fd, remark_identity_residual,
    Approach, AnnulusPoint, KernelMethod,
};
use crate::circular::{AnnulusFamily, CircularDomainBasis, DomainKind, RadiusFunction};
use crate::elliptic::{EllipticError, RectLattice};
use crate::levi::{psh_scan, strict_psh_scan, ScanConfig, ScanReport, StepRule};
use crate::report::{Check, CheckReport, Relation};

/// Half-periods used by the identity suite unless overridden.
pub const DEFAULT_OMEGA1S: [f64; 5] = [0.1, 0.5, 1.0, 2.0, 5.0];

/// `(|ζ|, |z|)` pairs for the Levi-expression and product-rule comparisons.
pub const DEFAULT_LEVI_POINTS: [(f64, f64); 8] = [
    (0.1, 0.2),
    (0.1, 0.5),
    (0.3, 0.6),
    (0.3, 0.9),
    (0.5, 0.7),
    (0.5, 0.95),
    (0.7, 0.8),
    (0.7, 0.9),
];

/// Fixed ζ-step for the comparison suites.
pub const COMPARISON_STEP: f64 = 1e-4;

/// Agreement required between the two finite-difference evaluators.
pub const FD_AGREEMENT_TOL: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Theorem12,
    Remark32,
    Corollary13,
    Theorem11,
    Remark21,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Identities,
        Suite::Theorem12,
        Suite::Remark32,
        Suite::Corollary13,
        Suite::Theorem11,
        Suite::Remark21,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Theorem12 => "theorem12",
            Suite::Remark32 => "remark32",
            Suite::Corollary13 => "corollary13",
            Suite::Theorem11 => "theorem11",
            Suite::Remark21 => "remark21",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

/// Parameters for every suite; each suite reads the fields it needs.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub omega1s: Vec<f64>,
    pub identity_tol: f64,
    pub levi_points: Vec<(f64, f64)>,
    pub step: f64,
    pub zeta_abs: f64,
    pub ks: Vec<i32>,
    pub scan: ScanConfig,
    pub eps: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            omega1s: DEFAULT_OMEGA1S.to_vec(),
            identity_tol: 1e-10,
            levi_points: DEFAULT_LEVI_POINTS.to_vec(),
            step: COMPARISON_STEP,
            zeta_abs: 0.3,
            ks: vec![1, 2, 3, 4],
            scan: ScanConfig::default(),
            eps: 1e-15,
        }
    }
}

pub fn run(suite: Suite, config: &SuiteConfig) -> CheckReport {
    match suite {
        Suite::Identities => identities(&config.omega1s, config.identity_tol),
        Suite::Theorem12 => levi_expression(&config.levi_points, config.step),
        Suite::Remark32 => product_rule(&config.levi_points, config.step),
        Suite::Corollary13 => boundary_decay(config.zeta_abs, &config.ks),
        Suite::Theorem11 => psh_scans(&config.scan, config.eps),
        Suite::Remark21 => non_psh_radius(&config.scan, config.eps),
    }
}

fn config_map(value: Value) -> Map<String, Value> {
    match value {
        Value::Object(map) => map,
        _ => Map::new(),
    }
}

/// Compares the component of `rhs` with the larger modulus; the stored
/// difference is the full complex one.
fn complex_check(name: String, lhs: Complex64, rhs: Complex64, tol: f64) -> Check {
    let (l, r) = if rhs.re.abs() >= rhs.im.abs() {
        (lhs.re, rhs.re)
    } else {
        (lhs.im, rhs.im)
    };
    Check::approx_with_diff(name, l, r, (lhs - rhs).norm(), tol)
}

/// `f′(u)` from the trapezoidal rule on the circle `|w − u| = radius`.
/// Converges geometrically when `f` is analytic on a larger disc.
pub fn contour_derivative<F>(f: F, u: Complex64, radius: f64, nodes: usize) -> Result<Complex64, EllipticError>
where
    F: Fn(Complex64) -> Result<Complex64, EllipticError>,
{
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..nodes {
        let e = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / nodes as f64);
        acc += f(u + radius * e)? * e.conj();
    }
    Ok(acc / (radius * nodes as f64))
}

/// Elliptic identities on the lattice with half-periods `ω₁` and `πi`.
pub fn identities(omega1s: &[f64], tol: f64) -> CheckReport {
    let mut report = CheckReport::new(
        Suite::Identities.name(),
        config_map(json!({ "omega1": omega1s, "tol": tol })),
    );
    for &w in omega1s {
        match identity_checks(w, tol) {
            Ok(checks) => report.extend(checks),
            Err(e) => report.push(Check::errored(format!("omega1={w}: {e}"))),
        }
    }
    report
}

fn identity_checks(w: f64, tol: f64) -> Result<Vec<Check>, EllipticError> {
    let lat = RectLattice::new(w)?;
    let name = |s: &str| format!("omega1={w}: {s}");
    let u = Complex64::new(0.37 * w, 0.41);
    let two_w = Complex64::new(2.0 * w, 0.0);
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    let i_pi = Complex64::new(0.0, PI);
    let eta1 = lat.wzeta(Complex64::new(w, 0.0))?;
    let eta3 = lat.wzeta(i_pi)?;
    let mut out = Vec::new();

    out.push(complex_check(
        name("zeta(u+2w1) - zeta(u) = 2 zeta(w1)"),
        lat.wzeta(u + two_w)? - lat.wzeta(u)?,
        2.0 * eta1,
        tol,
    ));
    out.push(complex_check(
        name("zeta(u+2pi i) - zeta(u) = 2 zeta(pi i)"),
        lat.wzeta(u + two_pi_i)? - lat.wzeta(u)?,
        2.0 * eta3,
        tol,
    ));
    let wp_u = lat.wp(u)?;
    out.push(complex_check(name("wp(u+2w1) = wp(u)"), lat.wp(u + two_w)?, wp_u, tol));
    out.push(complex_check(name("wp(u+2pi i) = wp(u)"), lat.wp(u + two_pi_i)?, wp_u, tol));

    let wp_w = lat.wp_real(w)?;
    let wpp_w = lat.wp_prime(Complex64::new(w, 0.0))?;
    out.push(Check::abs_approx(name("wp'(w1) = 0"), wpp_w.norm(), 0.0, tol * wp_w.abs()));

    let radius = 0.5 * lat.wp_value(u)?.condition.min(1.0);
    let d_zeta = contour_derivative(|v| lat.wzeta(v), u, radius, 64)?;
    out.push(complex_check(name("zeta'(u) = -wp(u)"), d_zeta, -wp_u, tol));
    let d_wp = contour_derivative(|v| lat.wp(v), u, radius, 64)?;
    let wpp_u = lat.wp_prime(u)?;
    out.push(complex_check(name("wp'(u) = d wp/du"), d_wp, wpp_u, tol));

    out.push(complex_check(name("wp(-u) = wp(u)"), lat.wp(-u)?, wp_u, tol));
    out.push(complex_check(name("zeta(-u) = -zeta(u)"), lat.wzeta(-u)?, -lat.wzeta(u)?, tol));
    out.push(complex_check(name("wp'(-u) = -wp'(u)"), lat.wp_prime(-u)?, -wpp_u, tol));

    out.push(complex_check(
        name("legendre: zeta(w1) pi i - zeta(pi i) w1 = pi i/2"),
        eta1 * i_pi - eta3 * w,
        i_pi / 2.0,
        tol,
    ));
    out.push(Check::report_only(name("w1^2 wp(w1) vs pi^2/6"), w * w * wp_w, PI * PI / 6.0));
    Ok(out)
}

fn point_label(r: f64, s: f64) -> String {
    format!("|zeta|={r} |z|={s}")
}

/// Closed Levi expression against finite differences of `log K` in ζ.
///
/// Asserted: the closed-form and series finite differences agree to
/// [`FD_AGREEMENT_TOL`] and the closed expression is positive. Reported:
/// closed expression against the finite difference.
pub fn levi_expression(points: &[(f64, f64)], h: f64) -> CheckReport {
    let mut report = CheckReport::new(
        Suite::Theorem12.name(),
        config_map(json!({ "points": points, "h": h, "fd_tol": FD_AGREEMENT_TOL })),
    );
    for &(r, s) in points {
        let label = point_label(r, s);
        let result = (|| -> Result<[Check; 3], annulus::AnnulusError> {
            let p = AnnulusPoint::from_moduli(r, s)?;
            let fd_closed = levi_zeta_fd(&p, h, KernelMethod::ClosedForm)?;
            let fd_series = levi_zeta_fd(&p, h, KernelMethod::Series)?;
            let formula = levi_zeta_component(&p)?;
            Ok([
                Check::approx(format!("{label}: fd closed vs fd series"), fd_closed, fd_series, FD_AGREEMENT_TOL),
                Check::ordered(format!("{label}: expression positive"), formula, Relation::Greater, 0.0),
                Check::report_only(format!("{label}: expression vs fd"), formula, fd_closed),
            ])
        })();
        match result {
            Ok(checks) => report.extend(checks),
            Err(e) => report.push(Check::errored(format!("{label}: {e}"))),
        }
    }
    report
}

/// `∂²K/∂ζ∂ζ̄` against `|∂K/∂ζ|²`, both reported.
pub fn product_rule(points: &[(f64, f64)], h: f64) -> CheckReport {
    let mut report = CheckReport::new(
        Suite::Remark32.name(),
        config_map(json!({ "points": points, "h": h })),
    );
    for &(r, s) in points {
        let label = point_label(r, s);
        match AnnulusPoint::from_moduli(r, s).and_then(|p| remark_identity_residual(&p, h)) {
            Ok(res) => report.push(Check::report_only(
                format!("{label}: d2K/dzeta dzetabar vs |dK/dzeta|^2"),
                res.lhs,
                res.rhs,
            )),
            Err(e) => report.push(Check::errored(format!("{label}: {e}"))),
        }
    }
    report
}

/// Decay of the closed Levi expression as `|z| → 1` and `|z| → |ζ|`.
pub fn boundary_decay(zeta_abs: f64, ks: &[i32]) -> CheckReport {
    let mut report = CheckReport::new(
        Suite::Corollary13.name(),
        config_map(json!({ "zeta_abs": zeta_abs, "ks": ks })),
    );
    let zeta = Complex64::new(zeta_abs, 0.0);
    for approach in [Approach::Outer, Approach::Inner] {
        let profile = match boundary_decay_profile(zeta, approach, ks) {
            Ok(p) => p,
            Err(e) => {
                report.push(Check::errored(format!("{approach}: {e}")));
                continue;
            }
        };
        for row in &profile.rows {
            report.push(Check::ordered(
                format!("{approach} k={}: value nonnegative", row.k),
                row.levi_value,
                Relation::GreaterEq,
                0.0,
            ));
        }
        for pair in profile.rows.windows(2) {
            let (prev, row) = (&pair[0], &pair[1]);
            report.push(Check::ordered(
                format!("{approach} k={}: below k={}", row.k, prev.k),
                row.levi_value,
                Relation::Less,
                prev.levi_value,
            ));
            if approach == Approach::Outer && row.k >= 2 {
                let ratio = row.ratio_to_previous.unwrap_or(f64::NAN);
                report.push(Check::ordered(
                    format!("{approach} k={}: ratio >= 5e-3", row.k),
                    ratio,
                    Relation::GreaterEq,
                    5e-3,
                ));
                report.push(Check::ordered(
                    format!("{approach} k={}: ratio <= 5e-2", row.k),
                    ratio,
                    Relation::LessEq,
                    5e-2,
                ));
            }
        }
        if let (Some(first), Some(last)) = (profile.rows.first(), profile.rows.last()) {
            report.push(Check::ordered(
                format!("{approach}: last below 1e-3 x first"),
                last.levi_value,
                Relation::Less,
                1e-3 * first.levi_value,
            ));
        }
    }
    report
}

fn scan_config_echo(scan: &ScanConfig, eps: f64) -> Value {
    let step = match scan.step {
        StepRule::Fixed { h } => json!({ "rule": "fixed", "h": h }),
        StepRule::Relative { factor, floor } => json!({ "rule": "relative", "factor": factor, "floor": floor }),
    };
    json!({ "samples": scan.samples, "seed": scan.seed, "tol": scan.tol, "step": step, "eps": eps })
}

fn family(kind: DomainKind, n: usize, rho: &str, m: usize, eps: f64) -> AnnulusFamily {
    AnnulusFamily::new(
        CircularDomainBasis::new(kind, n).expect("n >= 1"),
        RadiusFunction::from_catalog(rho, m, None).expect("catalog entry"),
        eps,
    )
}

fn scan_checks(label: &str, report: &ScanReport, out: &mut CheckReport) {
    out.push(Check::abs_approx(
        format!("{label}: samples evaluated"),
        report.sample_count as f64 - report.failures.len() as f64,
        report.config.samples as f64,
        0.0,
    ));
}

/// Psh scan of `log K` over `(ζ, z)` for the ball in ℂ² with `ρ = |ζ|`, and
/// strict scan with `ρ = 0.1 + 0.5|ζ|²`.
pub fn psh_scans(scan: &ScanConfig, eps: f64) -> CheckReport {
    let mut report = CheckReport::new(Suite::Theorem11.name(), config_map(scan_config_echo(scan, eps)));

    let fam = family(DomainKind::Ball, 2, "abs", 1, eps);
    let r = psh_scan(|w: &[Complex64]| fam.log_kernel(w), &fam.default_sampler(), scan);
    scan_checks("ball n=2 rho=abs", &r, &mut report);
    report.push(Check::ordered(
        "ball n=2 rho=abs: min eigenvalue >= -tol",
        r.global_min.unwrap_or(f64::NAN),
        Relation::GreaterEq,
        -scan.tol,
    ));

    let fam = family(DomainKind::Ball, 2, "sqnorm-affine", 1, eps);
    let strict_cfg = ScanConfig { tol: 0.0, ..*scan };
    let r = strict_psh_scan(|w: &[Complex64]| fam.log_kernel(w), &fam.default_sampler(), &strict_cfg);
    scan_checks("ball n=2 rho=sqnorm-affine", &r, &mut report);
    report.push(Check::ordered(
        "ball n=2 rho=sqnorm-affine: min eigenvalue > 0",
        r.global_min.unwrap_or(f64::NAN),
        Relation::Greater,
        0.0,
    ));
    report
}

/// Sampler for the non-psh search: ζ anywhere in the unit disc, z within
/// 0.05 of the origin.
pub const NEAR_ORIGIN_Z_SHELL: (f64, f64) = (0.0, 0.05);

/// Scan with `ρ = 0.5·exp(−|ζ|²)` near the slice `z = 0`; a Levi eigenvalue
/// at or below `−10⁻⁴` must turn up.
pub fn non_psh_radius(scan: &ScanConfig, eps: f64) -> CheckReport {
    let mut report = CheckReport::new(Suite::Remark21.name(), config_map(scan_config_echo(scan, eps)));
    let fam = family(DomainKind::Ball, 2, "gauss-bump", 1, eps);
    let sampler = fam.sampler((0.0, 0.85), NEAR_ORIGIN_Z_SHELL);
    let r = psh_scan(|w: &[Complex64]| fam.log_kernel(w), &sampler, scan);
    scan_checks("ball n=2 rho=gauss-bump", &r, &mut report);
    report.push(Check::ordered(
        "ball n=2 rho=gauss-bump: min eigenvalue <= -1e-4",
        r.global_min.unwrap_or(f64::NAN),
        Relation::LessEq,
        -1e-4,
    ));
    report.push(Check::report_only(
        "ball n=2 rho=gauss-bump: violating samples",
        r.violations.len() as f64,
        r.sample_count as f64,
    ));
    report
}
