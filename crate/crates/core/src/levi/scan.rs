use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::hessian::complex_hessian_fd;
use super::sampler::{DomainSampler, LowDiscrepancy};

/// Default relative step, scaled by the distance to the domain boundary.
pub const DEFAULT_STEP_FACTOR: f64 = 1e-4;
pub const DEFAULT_STEP_FLOOR: f64 = 1e-6;
pub const DEFAULT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum StepRule {
    Fixed { h: f64 },
    Relative { factor: f64, floor: f64 },
}

impl Default for StepRule {
    fn default() -> Self {
        StepRule::Relative {
            factor: DEFAULT_STEP_FACTOR,
            floor: DEFAULT_STEP_FLOOR,
        }
    }
}

impl StepRule {
    pub fn step(&self, boundary_distance: f64) -> f64 {
        match *self {
            StepRule::Fixed { h } => h,
            StepRule::Relative { factor, floor } => (factor * boundary_distance).max(floor),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanMode {
    /// Violation: minimum eigenvalue below `−tol`.
    Psh,
    /// Violation: minimum eigenvalue below `+tol`.
    StrictPsh,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanConfig {
    pub samples: usize,
    pub step: StepRule,
    pub tol: f64,
    pub seed: u64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            samples: 100,
            step: StepRule::default(),
            tol: DEFAULT_TOL,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleResult {
    pub index: usize,
    /// Position in the low-discrepancy stream, counting rejected candidates.
    pub sequence_index: u64,
    #[serde(serialize_with = "serialize_point")]
    pub point: Vec<Complex64>,
    pub h: f64,
    pub min_eigenvalue: Option<f64>,
    pub error: Option<String>,
}

fn serialize_point<S: serde::Serializer>(point: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(point.len()))?;
    for z in point {
        seq.serialize_element(&[z.re, z.im])?;
    }
    seq.end()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub mode: ScanMode,
    pub config: ScanConfig,
    pub sample_count: usize,
    pub rejected_candidates: u64,
    /// `None` only when no sample could be evaluated.
    pub global_min: Option<f64>,
    /// Indices of samples whose minimum eigenvalue violates the mode's bound.
    pub violations: Vec<usize>,
    /// Indices of samples whose Hessian could not be evaluated.
    pub failures: Vec<usize>,
    pub samples: Vec<SampleResult>,
}

impl ScanReport {
    pub fn is_violation(&self, eigenvalue: f64) -> bool {
        match self.mode {
            ScanMode::Psh => eigenvalue < -self.config.tol,
            ScanMode::StrictPsh => eigenvalue < self.config.tol,
        }
    }

    /// No violations and no failed samples.
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.failures.is_empty() && self.global_min.is_some()
    }
}

pub fn psh_scan<F, S>(f: F, sampler: &S, config: &ScanConfig) -> ScanReport
where
    F: Fn(&[Complex64]) -> Option<f64> + Sync,
    S: DomainSampler + ?Sized,
{
    run_scan(f, sampler, config, ScanMode::Psh)
}

pub fn strict_psh_scan<F, S>(f: F, sampler: &S, config: &ScanConfig) -> ScanReport
where
    F: Fn(&[Complex64]) -> Option<f64> + Sync,
    S: DomainSampler + ?Sized,
{
    run_scan(f, sampler, config, ScanMode::StrictPsh)
}

fn run_scan<F, S>(f: F, sampler: &S, config: &ScanConfig, mode: ScanMode) -> ScanReport
where
    F: Fn(&[Complex64]) -> Option<f64> + Sync,
    S: DomainSampler + ?Sized,
{
    let sequence = LowDiscrepancy::new(sampler.cube_dim(), config.seed);
    let max_candidates = 1000 * config.samples as u64 + 1000;
    let mut accepted = Vec::with_capacity(config.samples);
    let mut candidate = 0u64;
    while accepted.len() < config.samples && candidate < max_candidates {
        if let Some(point) = sampler.map(&sequence.point(candidate)) {
            let distance = sampler.boundary_distance(&point);
            if distance > 0.0 {
                accepted.push((candidate, point, config.step.step(distance)));
            }
        }
        candidate += 1;
    }
    let rejected_candidates = candidate - accepted.len() as u64;

    let samples: Vec<SampleResult> = accepted
        .into_par_iter()
        .enumerate()
        .map(|(index, (sequence_index, point, h))| {
            let (min_eigenvalue, error) = match complex_hessian_fd(&f, &point, h) {
                Ok(form) => (Some(form.min_eigenvalue()), None),
                Err(e) => (None, Some(e.to_string())),
            };
            SampleResult {
                index,
                sequence_index,
                point,
                h,
                min_eigenvalue,
                error,
            }
        })
        .collect();

    let mut report = ScanReport {
        mode,
        config: *config,
        sample_count: samples.len(),
        rejected_candidates,
        global_min: None,
        violations: Vec::new(),
        failures: Vec::new(),
        samples: Vec::new(),
    };
    for s in &samples {
        match s.min_eigenvalue {
            Some(v) => {
                report.global_min = Some(report.global_min.map_or(v, |m: f64| m.min(v)));
                if report.is_violation(v) {
                    report.violations.push(s.index);
                }
            }
            None => report.failures.push(s.index),
        }
    }
    report.samples = samples;
    report
}
