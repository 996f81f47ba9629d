//! Three-wave amplitude dynamics and the spherical interaction coefficient.

mod bve;
mod integrate;
mod legendre;
mod quadrature;

pub use bve::{
    bve_coefficients, check_rossby_triad, demo_triad, BveOptions, BveSigns, BveTriad, ZIntegrand,
    DEFAULT_QUADRATURE_ORDER, DEFAULT_QUADRATURE_TOLERANCE, MIN_QUADRATURE_ORDER,
};
pub use integrate::{
    integrate_triad, integrate_triad_sampled, manley_rowe, AmplitudeState, Trajectory, TriadSystem, DEFAULT_HORIZON,
    DEFAULT_STEP,
};
pub use legendre::{assoc_legendre, assoc_legendre_with, legendre_in_latitude, Normalization};
pub use quadrature::{gauss_legendre, integrate, MAX_QUADRATURE_ORDER};
