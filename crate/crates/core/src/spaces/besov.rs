//! Homogeneous Besov and Sobolev norm functionals.
//!
//! The heat-flow Besov norm is
//! `||a||_{B^{-sigma}_{p,q}} = || t^{sigma/2} ||e^{t Lap} a||_{L^p} ||_{L^q(dt/t)}`,
//! discretized on a [`TimeGrid`] with analytic head and tail corrections.
//! The equivalent dyadic form sums `2^{-j sigma q} ||Delta_j a||_{L^p}^q`
//! over the resolved annuli.

use thiserror::Error;

use crate::real::Real;
use crate::spaces::filter_bank::LpFilterBank;
use crate::spaces::time_grid::TimeGrid;
use crate::spectral::field::{SpectralField, SpectralVectorField};
use crate::spectral::norms::{self, Exponent};
use crate::spectral::ops;

#[derive(Debug, Error, PartialEq)]
pub enum BesovError {
    #[error("besov index sigma must be positive, got {0}")]
    NonPositiveSigma(f64),
    #[error("field must be mean-zero (|mean| = {0:.3e}); the time integral diverges otherwise")]
    NotMeanZero(f64),
    #[error("sobolev norm of non-mean-zero field with negative index {0}")]
    NegativeIndexWithMean(f64),
    #[error("unsupported q exponent {0} (use 1, 2, 4 or inf)")]
    UnsupportedQ(String),
}

/// Integrability exponent `q` of the time norm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TimeExponent {
    One,
    Two,
    Four,
    Inf,
}

impl TimeExponent {
    pub fn parse(token: &str) -> Result<Self, BesovError> {
        match token {
            "1" => Ok(Self::One),
            "2" => Ok(Self::Two),
            "4" => Ok(Self::Four),
            "inf" | "oo" => Ok(Self::Inf),
            other => Err(BesovError::UnsupportedQ(other.to_string())),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Self::One => "1",
            Self::Two => "2",
            Self::Four => "4",
            Self::Inf => "inf",
        }
    }

    fn value(&self) -> Option<f64> {
        match self {
            Self::One => Some(1.0),
            Self::Two => Some(2.0),
            Self::Four => Some(4.0),
            Self::Inf => None,
        }
    }
}

pub(crate) fn require_mean_zero<F: Real>(a: &SpectralField<F>) -> Result<(), BesovError> {
    let mean = a.mean().norm_sqr().sqrt();
    let amp = a.max_coeff_amplitude();
    if amp > F::zero() && mean > F::of(1e-12) * amp {
        return Err(BesovError::NotMeanZero(mean.to_f64()));
    }
    Ok(())
}

/// `||e^{t Lap} a||_{L^p}` sampled over a time grid; computed once per
/// field and reused by every `(sigma, q)` evaluation.
pub struct HeatLpSamples<F: Real = f64> {
    times: Vec<F>,
    norms: Vec<F>,
    /// `||a||_{L^p}` itself, the `t -> 0` limit.
    norm_at_zero: F,
    /// smallest active squared wavenumber, driving the tail decay
    k_min_sq: F,
    p: Exponent,
}

impl<F: Real> HeatLpSamples<F> {
    pub fn compute(
        a: &SpectralField<F>,
        p: Exponent,
        tg: &TimeGrid<F>,
        pad: usize,
    ) -> Result<Self, BesovError> {
        require_mean_zero(a)?;
        let times = tg.times();
        let norms = times
            .iter()
            .map(|&t| {
                let flowed = ops::heat_flow(a, t).expect("t >= 0");
                norms::lebesgue_norm_padded(&flowed, p, pad)
            })
            .collect();
        let k_min = a.min_active_k(F::of(1e-14)).unwrap_or_else(|| a.grid().k_min());
        Ok(Self {
            times,
            norms,
            norm_at_zero: norms::lebesgue_norm_padded(a, p, pad),
            k_min_sq: k_min * k_min,
            p,
        })
    }

    pub fn p(&self) -> Exponent {
        self.p
    }

    pub fn times(&self) -> &[F] {
        &self.times
    }

    pub fn norms(&self) -> &[F] {
        &self.norms
    }

    /// Evaluate the Besov norm for one `(sigma, q)` pair.
    pub fn besov(&self, sigma: F, q: TimeExponent) -> Result<BesovValue<F>, BesovError> {
        if sigma <= F::zero() {
            return Err(BesovError::NonPositiveSigma(sigma.to_f64()));
        }
        let t0 = self.times[0];
        let t1 = *self.times.last().unwrap();
        let f0 = self.norms[0];
        let f1 = *self.norms.last().unwrap();
        let half_sigma = sigma / F::of(2.0);

        match q.value() {
            None => {
                let mut sup = F::zero();
                for (&t, &f) in self.times.iter().zip(&self.norms) {
                    sup = sup.max(t.powf(half_sigma) * f);
                }
                // bounds on the sup outside the sampled window: below t_min
                // the weight shrinks, above t_max the norm decays
                let head = t0.powf(half_sigma) * self.norm_at_zero;
                let tail = if self.k_min_sq * t1 > half_sigma {
                    t1.powf(half_sigma) * f1
                } else {
                    F::infinity()
                };
                Ok(BesovValue {
                    value: sup,
                    head_residual: head,
                    tail_residual: tail,
                })
            }
            Some(qv) => {
                let qf = F::of(qv);
                let w = |t: F, f: F| t.powf(half_sigma * qf) * f.powf(qf);
                // trapezoid in log t
                let mut integral = F::zero();
                for i in 1..self.times.len() {
                    let dtau = self.times[i].ln() - self.times[i - 1].ln();
                    let wa = w(self.times[i - 1], self.norms[i - 1]);
                    let wb = w(self.times[i], self.norms[i]);
                    integral += dtau * (wa + wb) / F::of(2.0);
                }
                // head: norm is essentially constant on [0, t_min]
                let head = f0.powf(qf) * t0.powf(half_sigma * qf) / (half_sigma * qf);
                // tail: norm decays at least like e^{-k_min^2 (t - t_max)}
                let denom = qf * self.k_min_sq * t1 - half_sigma * qf;
                let tail = if denom > F::zero() {
                    w(t1, f1) / denom
                } else {
                    F::infinity()
                };
                let total = integral + head + tail;
                Ok(BesovValue {
                    value: total.powf(F::one() / qf),
                    head_residual: head,
                    tail_residual: tail,
                })
            }
        }
    }
}

/// A Besov norm value with its quadrature corrections. For finite `q` the
/// head and tail are included in `value`; for `q = inf` they are upper
/// bounds on what the sampled window can miss.
#[derive(Debug, Clone, Copy)]
pub struct BesovValue<F: Real = f64> {
    pub value: F,
    pub head_residual: F,
    pub tail_residual: F,
}

/// Heat-flow Besov norm of a scalar field.
pub fn besov_norm_heat<F: Real>(
    a: &SpectralField<F>,
    sigma: F,
    p: Exponent,
    q: TimeExponent,
    tg: &TimeGrid<F>,
    pad: usize,
) -> Result<BesovValue<F>, BesovError> {
    if sigma <= F::zero() {
        return Err(BesovError::NonPositiveSigma(sigma.to_f64()));
    }
    HeatLpSamples::compute(a, p, tg, pad)?.besov(sigma, q)
}

/// Componentwise maximum over a vector field, the convention used for all
/// vector-field Besov norms in the bound formulas.
pub fn besov_norm_heat_vec<F: Real>(
    u: &SpectralVectorField<F>,
    sigma: F,
    p: Exponent,
    q: TimeExponent,
    tg: &TimeGrid<F>,
    pad: usize,
) -> Result<BesovValue<F>, BesovError> {
    let mut best = BesovValue {
        value: F::zero(),
        head_residual: F::zero(),
        tail_residual: F::zero(),
    };
    for c in u.components() {
        let v = besov_norm_heat(c, sigma, p, q, tg, pad)?;
        if v.value > best.value {
            best = v;
        }
    }
    Ok(best)
}

/// Dyadic Besov norm over the resolved annuli.
pub fn besov_norm_dyadic<F: Real>(
    a: &SpectralField<F>,
    sigma: F,
    p: Exponent,
    q: TimeExponent,
    bank: &LpFilterBank<F>,
    pad: usize,
) -> Result<F, BesovError> {
    if sigma <= F::zero() {
        return Err(BesovError::NonPositiveSigma(sigma.to_f64()));
    }
    require_mean_zero(a)?;
    let block_norms: Vec<(i32, F)> = bank
        .j_range()
        .map(|j| {
            let block = bank.block(a, j).expect("j in range");
            (j, norms::lebesgue_norm_padded(&block, p, pad))
        })
        .collect();
    let weight = |j: i32| F::of(2f64.powi(j)).powf(-sigma);
    Ok(match q.value() {
        None => block_norms
            .iter()
            .map(|&(j, n)| weight(j) * n)
            .fold(F::zero(), F::max),
        Some(qv) => {
            let qf = F::of(qv);
            let sum: F = block_norms
                .iter()
                .map(|&(j, n)| (weight(j) * n).powf(qf))
                .sum();
            sum.powf(F::one() / qf)
        }
    })
}

/// Homogeneous Sobolev norm by Fourier weights, `(L^3 sum |k|^{2s} |a_k|^2)^{1/2}`.
pub fn sobolev_norm<F: Real>(a: &SpectralField<F>, s: F) -> Result<F, BesovError> {
    let mean = a.mean().norm_sqr().sqrt();
    let amp = a.max_coeff_amplitude();
    if s < F::zero() && amp > F::zero() && mean > F::of(1e-12) * amp {
        return Err(BesovError::NegativeIndexWithMean(s.to_f64()));
    }
    let g = a.grid();
    let n = g.n();
    let kv = g.wavenumbers();
    let mut sum = F::zero();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let ksq = kv[i] * kv[i] + kv[j] * kv[j] + kv[k] * kv[k];
                let c = a.coeffs()[g.at(i, j, k)].norm_sqr();
                if ksq == F::zero() {
                    if s == F::zero() {
                        sum += c;
                    }
                    continue;
                }
                sum += ksq.powf(s) * c;
            }
        }
    }
    Ok((g.box_len().powi(3) * sum).sqrt())
}

/// Dyadic form of the Sobolev norm, for the recorded equivalence ratio.
pub fn sobolev_norm_dyadic<F: Real>(
    a: &SpectralField<F>,
    s: F,
    bank: &LpFilterBank<F>,
) -> Result<F, BesovError> {
    let mean = a.mean().norm_sqr().sqrt();
    let amp = a.max_coeff_amplitude();
    if s < F::zero() && amp > F::zero() && mean > F::of(1e-12) * amp {
        return Err(BesovError::NegativeIndexWithMean(s.to_f64()));
    }
    let mut sum = F::zero();
    for j in bank.j_range() {
        let block = bank.block(a, j).expect("j in range");
        let w = F::of(2f64.powi(j)).powf(F::of(2.0) * s);
        sum += w * norms::l2_norm_sq(&block);
    }
    Ok(sum.sqrt())
}
