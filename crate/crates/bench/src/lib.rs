//! Shared fixtures for the kernel benchmarks.

use supercong_core::PadicContext;

/// Context sized so the Gamma argument sweeps roughly half a million
/// residue factors, enough to separate the product strategies.
pub fn medium_gamma_context() -> PadicContext {
    PadicContext::new(97, 3).expect("97 is an odd prime")
}

/// The largest prime the default scans touch, at the a2-vh precision.
pub fn scan_edge_context() -> PadicContext {
    PadicContext::new(499, 3).expect("499 is an odd prime")
}

/// Half-range truncation order for a prime, the length every sum runs to.
pub fn half_order(p: u64) -> u64 {
    (p - 1) / 2
}
