//! Spectral toolkit for computing life-span lower bounds of the 3D
//! incompressible Navier-Stokes equations from initial data on a periodic
//! box: Littlewood-Paley / Besov norm functionals, the nonlinear
//! quantities `Q0` and `Q1`, the bound formulas `T_FP` and `T_L`, a
//! desk-scale pseudo-spectral solver with energy diagnostics, and the
//! oscillatory data family used for the scaling experiments.
//!
//! All numerics are generic over the scalar type via [`real::Real`]
//! (`f32` or `f64`); the crate root re-exports `f64` aliases, which is
//! what the experiment harness uses.

pub mod real;
pub mod spectral;

pub use real::Real;
pub use spectral::{Exponent, Grid, MixedNormSpec, SpectralField, SpectralVectorField};

/// `f64` aliases for the main domain types.
pub type Grid64 = spectral::Grid<f64>;
pub type SpectralField64 = spectral::SpectralField<f64>;
pub type SpectralVectorField64 = spectral::SpectralVectorField<f64>;
pub type Grid32 = spectral::Grid<f32>;
pub type SpectralField32 = spectral::SpectralField<f32>;
pub type SpectralVectorField32 = spectral::SpectralVectorField<f32>;
