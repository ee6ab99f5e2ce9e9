//! Periodic-box field representation, discrete Fourier analysis,
//! differential and projection operators, and plain Lebesgue /
//! anisotropic mixed norms.

pub mod fft;
pub mod field;
pub mod grid;
pub mod norms;
pub mod ops;

pub use field::{FieldError, SpectralField, SpectralVectorField};
pub use grid::{Grid, GridError};
pub use norms::{Exponent, MixedNormSpec, NormError};
