//! Library-wide numerical bands.

use std::sync::atomic::{AtomicU64, Ordering};

/// Default relative band for exact case splits (conform-unitary, traceless, parabolic).
pub const DEGENERACY_BAND: f64 = 1e-10;

static BAND_BITS: AtomicU64 = AtomicU64::new(0x3DDB_7CDF_D9D7_BDBB); // 1e-10

/// Current degeneracy band. Starts at [`DEGENERACY_BAND`].
pub fn degeneracy_band() -> f64 {
    f64::from_bits(BAND_BITS.load(Ordering::Relaxed))
}

/// Overrides the degeneracy band for the whole process (the CLI `--tol` flag).
pub fn set_degeneracy_band(band: f64) {
    assert!(band > 0.0 && band.is_finite(), "band must be positive");
    BAND_BITS.store(band.to_bits(), Ordering::Relaxed);
}

/// Band around the real axis used to detect branch-cut hits.
pub const CUT_BAND: f64 = 1e-14;

/// Distance from (k*pi)^2 below which the meromorphic family refuses to evaluate.
pub const POLE_BAND: f64 = 1e-8;
