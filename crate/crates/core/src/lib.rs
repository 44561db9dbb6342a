//! Numerical laboratory for the Hardy Z-function on the critical line.
//!
//! The crate evaluates Z(t), theta(t) and their derivatives over
//! t in [10, 1e5], locates and certifies the zeros of Z, finds the
//! stationary points of Z between consecutive zeros, evaluates truncated
//! sums over the zero ordinates with density-based tail corrections, runs
//! a battery of numerical verifications of the identities tying these
//! quantities together, and realizes a family of Friedmann-type cosmology
//! models with scale factor R(t) = |Z(t)|.
//!
//! Everything numeric is generic over the [`real::Real`] scalar; the
//! aliases below pin the `f64` instantiations the stated tolerances
//! assume.

pub mod cosmo;
pub mod error;
pub mod eta;
pub mod eval;
pub mod fd;
pub mod psi;
pub mod real;
pub mod roots;
pub mod stationary;
pub mod sums;
pub mod theta;
pub mod verify;
pub mod zeros;
pub mod zfunc;

pub use error::{Error, Result};
pub use eval::{CEvalResult, EvalResult, PrecisionPolicy};
pub use real::Real;

/// Concrete `f64` instantiations.
pub type EvalResult64 = eval::EvalResult<f64>;
pub type CEvalResult64 = eval::CEvalResult<f64>;
pub type PrecisionPolicy64 = eval::PrecisionPolicy<f64>;
pub type ZeroTable64 = zeros::ZeroTable<f64>;
pub type StationaryPoint64 = stationary::StationaryPoint<f64>;
pub type SpectralSum64 = sums::SpectralSum<f64>;
pub type CosmoParams64 = cosmo::CosmoParams<f64>;
pub type CosmoSample64 = cosmo::CosmoSample<f64>;
pub type PressureInterval64 = cosmo::PressureInterval<f64>;
