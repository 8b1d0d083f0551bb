//! Finite-difference Levi forms and plurisubharmonicity scans.

mod hessian;
mod sampler;
mod scan;

use num_complex::Complex64;
use thiserror::Error;

pub use hessian::{
    complex_hessian_fd, min_eigenvalue, mixed_wirtinger_1d, wirtinger_derivative_1d,
    HermitianForm,
};
pub use sampler::{DomainSampler, LowDiscrepancy, Shell, ShellNorm};
pub use scan::{
    psh_scan, strict_psh_scan, SampleResult, ScanConfig, ScanMode, ScanReport, StepRule,
    DEFAULT_STEP_FACTOR, DEFAULT_STEP_FLOOR, DEFAULT_TOL,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LeviError {
    #[error("finite-difference stencil leaves the domain at {point:?}")]
    StencilOutOfDomain { point: Vec<Complex64> },
}
