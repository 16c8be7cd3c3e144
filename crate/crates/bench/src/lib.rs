//! Shared fixtures for the criterion benches: medium-sized inputs that are
//! large enough to time but small enough to validate on every run.

use facering::{Fan, SimplicialComplex};

/// A 6-vertex triangulated projective plane — the largest named complex in
/// the corpus, with a 32-cone fan.
pub fn surface_complex() -> SimplicialComplex {
    facering::corpus::projective_plane()
}

/// The fan of [`surface_complex`], rebuilt from scratch (construction cost
/// is part of what the benches measure).
pub fn surface_fan() -> Fan {
    Fan::fan_of_complex(&surface_complex()).expect("corpus complex yields a fan")
}
