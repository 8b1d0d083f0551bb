//! Bergman kernels of annuli and the numerical checks around them.
//!
//! * [`elliptic`]: Weierstrass ℘, ℘′, ζ on the lattice `2ω₁ℤ + 2πiℤ`.
//! * [`annulus`]: the planar annulus kernel in closed form and as a Laurent
//!   series, plus the ζ-direction Levi form and its boundary decay.
//! * [`circular`]: series kernels of generalized annuli `Ω − ρ(ζ)·Ω̄` over the
//!   unit ball and polydisc.
//! * [`levi`]: finite-difference complex Hessians and plurisubharmonicity
//!   scans.
//! * [`report`] and [`suites`]: named check reports shared by the CLI and the
//!   acceptance tests.

pub mod annulus;
pub mod elliptic;
pub mod circular;
pub mod levi;
pub mod report;
pub mod suites;

pub use elliptic::{EllipticError, EllipticValue, QuasiPeriods, RectLattice};
pub use num_complex::Complex64;

/// Caps the global rayon pool at `BERGKERN_THREADS` when that variable holds a
/// positive integer. Later calls, or a pool that already exists, are ignored.
pub fn init_thread_pool() {
    let threads = std::env::var("BERGKERN_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0);
    if let Some(n) = threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}
