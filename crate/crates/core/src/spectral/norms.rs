//! Lebesgue and anisotropic mixed norms by spectral quadrature.
//!
//! `L^2` norms come from Parseval and are grid-exact. `L^4` and `L^inf`
//! norms are evaluated in physical space on a zero-padded grid so that
//! oscillatory maxima are not undersampled; the padding factor defaults
//! to [`DEFAULT_PAD`] and is a knob on every `_padded` variant.

use thiserror::Error;

use crate::real::Real;
use crate::spectral::field::{SpectralField, SpectralVectorField};

/// Default zero-padding factor for physical-space quadrature.
pub const DEFAULT_PAD: usize = 2;

#[derive(Debug, Error, PartialEq)]
pub enum NormError {
    #[error("unsupported Lebesgue exponent {0} (use 2, 4 or inf)")]
    UnsupportedExponent(String),
}

/// Lebesgue exponent restricted to the set used by the estimates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Exponent {
    Two,
    Four,
    Inf,
}

impl Exponent {
    pub fn parse(token: &str) -> Result<Self, NormError> {
        match token {
            "2" => Ok(Self::Two),
            "4" => Ok(Self::Four),
            "inf" | "oo" => Ok(Self::Inf),
            other => Err(NormError::UnsupportedExponent(other.to_string())),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Self::Two => "2",
            Self::Four => "4",
            Self::Inf => "inf",
        }
    }
}

/// The supported vertical-outer mixed norms of the anisotropic estimates:
/// inner norm over horizontal planes, outer norm along the vertical axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MixedNormSpec {
    /// `L^inf_v L^2_h`
    InfVTwoH,
    /// `L^2_v L^4_h`
    TwoVFourH,
    /// `L^inf_v L^4_h`
    InfVFourH,
}

impl MixedNormSpec {
    pub fn label(&self) -> &'static str {
        match self {
            Self::InfVTwoH => "LinfV_L2h",
            Self::TwoVFourH => "L2v_L4h",
            Self::InfVFourH => "LinfV_L4h",
        }
    }
}

/// `||a||_{L^2}` via Parseval: `(L^3 sum |a_k|^2)^{1/2}`, grid-exact.
pub fn l2_norm<F: Real>(a: &SpectralField<F>) -> F {
    let vol = a.grid().box_len().powi(3);
    let sum: F = a.coeffs().iter().map(|c| c.norm_sqr()).sum();
    (vol * sum).sqrt()
}

/// Squared `L^2` norm, cheaper when accumulating energies.
pub fn l2_norm_sq<F: Real>(a: &SpectralField<F>) -> F {
    let vol = a.grid().box_len().powi(3);
    let sum: F = a.coeffs().iter().map(|c| c.norm_sqr()).sum();
    vol * sum
}

pub fn l2_norm_sq_vec<F: Real>(u: &SpectralVectorField<F>) -> F {
    u.components().iter().map(l2_norm_sq).sum()
}

pub fn l2_norm_vec<F: Real>(u: &SpectralVectorField<F>) -> F {
    l2_norm_sq_vec(u).sqrt()
}

/// `||grad a||_{L^2}^2` by Fourier weights.
pub fn grad_l2_norm_sq<F: Real>(a: &SpectralField<F>) -> F {
    let g = a.grid();
    let n = g.n();
    let kv = g.wavenumbers();
    let mut sum = F::zero();
    for i in 0..n {
        let ki2 = kv[i] * kv[i];
        for j in 0..n {
            let kij2 = ki2 + kv[j] * kv[j];
            for k in 0..n {
                let ksq = kij2 + kv[k] * kv[k];
                sum = sum + a.coeffs()[g.at(i, j, k)].norm_sqr() * ksq;
            }
        }
    }
    g.box_len().powi(3) * sum
}

pub fn grad_l2_norm_sq_vec<F: Real>(u: &SpectralVectorField<F>) -> F {
    u.components().iter().map(grad_l2_norm_sq).sum()
}

/// Horizontal gradient only (axes 1 and 2), for the anisotropic estimates.
pub fn grad_h_l2_norm_sq<F: Real>(a: &SpectralField<F>) -> F {
    let g = a.grid();
    let n = g.n();
    let kv = g.wavenumbers();
    let mut sum = F::zero();
    for i in 0..n {
        let ki2 = kv[i] * kv[i];
        for j in 0..n {
            let kh2 = ki2 + kv[j] * kv[j];
            for k in 0..n {
                sum = sum + a.coeffs()[g.at(i, j, k)].norm_sqr() * kh2;
            }
        }
    }
    g.box_len().powi(3) * sum
}

/// `||a||_{L^p}` for `p` in `{2, 4, inf}`.
pub fn lebesgue_norm<F: Real>(a: &SpectralField<F>, p: Exponent) -> F {
    lebesgue_norm_padded(a, p, DEFAULT_PAD)
}

pub fn lebesgue_norm_padded<F: Real>(a: &SpectralField<F>, p: Exponent, pad: usize) -> F {
    match p {
        Exponent::Two => l2_norm(a),
        Exponent::Inf => {
            let vals = a.to_values_padded(pad);
            vals.iter().map(|v| v.abs()).fold(F::zero(), F::max)
        }
        Exponent::Four => {
            let vals = a.to_values_padded(pad);
            let nf = a.grid().n() * pad;
            let hf = a.grid().box_len() / F::of(nf as f64);
            let sum: F = vals.iter().map(|&v| v * v * v * v).sum();
            (hf.powi(3) * sum).sqrt().sqrt()
        }
    }
}

/// Componentwise maximum of a Lebesgue norm over a vector field.
pub fn lebesgue_norm_vec_max<F: Real>(u: &SpectralVectorField<F>, p: Exponent, pad: usize) -> F {
    u.components()
        .iter()
        .map(|c| lebesgue_norm_padded(c, p, pad))
        .fold(F::zero(), F::max)
}

/// Mixed norm with inner exponent over horizontal planes and outer
/// exponent along the vertical (third) axis.
pub fn mixed_norm<F: Real>(a: &SpectralField<F>, spec: MixedNormSpec) -> F {
    mixed_norm_padded(a, spec, DEFAULT_PAD)
}

pub fn mixed_norm_padded<F: Real>(a: &SpectralField<F>, spec: MixedNormSpec, pad: usize) -> F {
    let vals = a.to_values_padded(pad);
    let nf = a.grid().n() * pad;
    let hf = a.grid().box_len() / F::of(nf as f64);
    let area = hf * hf;

    // inner norm per vertical level x3 = index k (axis 2)
    let mut plane = vec![F::zero(); nf];
    for k in 0..nf {
        let mut sum = F::zero();
        for i in 0..nf {
            for j in 0..nf {
                let v = vals[(i * nf + j) * nf + k];
                match spec {
                    MixedNormSpec::InfVTwoH => sum = sum + v * v,
                    MixedNormSpec::TwoVFourH | MixedNormSpec::InfVFourH => {
                        sum = sum + v * v * v * v
                    }
                }
            }
        }
        plane[k] = match spec {
            MixedNormSpec::InfVTwoH => (area * sum).sqrt(),
            MixedNormSpec::TwoVFourH | MixedNormSpec::InfVFourH => (area * sum).sqrt().sqrt(),
        };
    }

    match spec {
        MixedNormSpec::InfVTwoH | MixedNormSpec::InfVFourH => {
            plane.into_iter().fold(F::zero(), F::max)
        }
        MixedNormSpec::TwoVFourH => {
            let sum: F = plane.into_iter().map(|v| v * v).sum();
            (hf * sum).sqrt()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::grid::Grid;
    use approx::assert_relative_eq;
    use std::f64::consts::TAU;

    fn grid(n: usize) -> Grid<f64> {
        Grid::unit_torus(n).unwrap()
    }

    #[test]
    fn l2_of_cosine_matches_parseval() {
        let g = grid(16);
        let a = SpectralField::from_fn(g, |x1, _, _| x1.cos());
        assert_relative_eq!(l2_norm(&a), (TAU.powi(3) / 2.0).sqrt(), max_relative = 1e-12);
    }

    #[test]
    fn linf_of_cosine_close_to_one() {
        let g = grid(16);
        let a = SpectralField::from_fn(g, |x1, _, _| x1.cos());
        let v = lebesgue_norm(&a, Exponent::Inf);
        assert!((v - 1.0).abs() < 1e-3, "got {v}");
    }

    #[test]
    fn l4_of_constant_is_volume_root() {
        let g = grid(8);
        let a = SpectralField::from_fn(g, |_, _, _| 1.0);
        assert_relative_eq!(
            lebesgue_norm(&a, Exponent::Four),
            TAU.powf(0.75),
            max_relative = 1e-12
        );
    }

    #[test]
    fn parseval_identity_physical_vs_spectral() {
        let g = grid(16);
        let a = SpectralField::from_fn(g, |x1, x2, x3| {
            (x1 + x2).cos() + 0.3 * (2.0 * x3).sin() - 0.1 * (x1 - 2.0 * x2 + x3).cos()
        });
        let vals = a.to_values();
        let h3 = g.spacing().powi(3);
        let phys_sq: f64 = vals.iter().map(|v| v * v).sum::<f64>() * h3;
        let spec_sq = l2_norm_sq(&a);
        assert_relative_eq!(phys_sq, spec_sq, max_relative = 1e-10);
    }

    #[test]
    fn mixed_norm_of_vertical_cosine() {
        let g = grid(16);
        let a = SpectralField::from_fn(g, |_, _, x3| x3.cos());
        assert_relative_eq!(mixed_norm(&a, MixedNormSpec::InfVTwoH), TAU, max_relative = 1e-10);
    }

    #[test]
    fn mixed_norm_of_horizontal_cosine() {
        let g = grid(16);
        let a = SpectralField::from_fn(g, |x1, _, _| x1.cos());
        assert_relative_eq!(
            mixed_norm(&a, MixedNormSpec::InfVTwoH),
            (TAU * TAU / 2.0).sqrt(),
            max_relative = 1e-10
        );
    }

    #[test]
    fn mixed_norm_of_zero_is_zero() {
        let g = grid(8);
        let a = SpectralField::zero(g);
        assert_eq!(mixed_norm(&a, MixedNormSpec::TwoVFourH), 0.0);
    }
}
