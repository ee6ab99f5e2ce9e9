//! Koch-Tataru `BMO^{-1}` functional: heat-flow sup term plus a Carleson
//! box term
//! `sup_{x,R} R^{-3} int_0^{R^2} int_{B(x,R)} |e^{t Lap} u0(y)|^2 dy dt`.
//!
//! The ball integral is evaluated for every center at once by spectral
//! convolution with the exact Fourier transform of the ball indicator;
//! the sup then runs over a dyadic radius set and a coarse sublattice of
//! centers, so the reported Carleson term is a lower bound of the true
//! supremum (recorded as such).

use num_complex::Complex;

use crate::real::Real;
use crate::spaces::besov::{BesovError, HeatLpSamples, TimeExponent};
use crate::spaces::time_grid::TimeGrid;
use crate::spectral::fft;
use crate::spectral::field::SpectralVectorField;
use crate::spectral::norms::Exponent;
use crate::spectral::ops;

/// Tuning knobs for the Carleson quadrature.
#[derive(Debug, Clone, Copy)]
pub struct BmoSettings {
    /// zero-padding factor for the physical-space ball quadrature
    pub pad: usize,
    /// center sublattice stride as a fraction of n (stride = n / denom)
    pub stride_denom: usize,
    /// cap on the number of heat-flow times used for the box integral
    pub max_time_samples: usize,
}

impl Default for BmoSettings {
    fn default() -> Self {
        Self {
            pad: 2,
            stride_denom: 8,
            max_time_samples: 24,
        }
    }
}

/// The two summands of the norm, kept separate for diagnostics.
#[derive(Debug, Clone, Copy)]
pub struct BmoValue<F: Real = f64> {
    pub total: F,
    pub heat_term: F,
    pub carleson_term: F,
}

/// DFT of the sampled ball indicator `1[|y|_periodic <= R]` on the fine
/// grid. The indicator is even, so the transform is real; convolving with
/// it reproduces the padded-grid ball quadrature exactly.
fn ball_indicator_spectrum<F: Real>(nf: usize, hf: F, radius: F) -> Vec<F> {
    let mut chi: Vec<Complex<F>> = Vec::with_capacity(nf * nf * nf);
    let dist = |i: usize| -> F {
        let d = i.min(nf - i);
        F::of(d as f64) * hf
    };
    let r_sq = radius * radius;
    for i in 0..nf {
        let di = dist(i);
        for j in 0..nf {
            let dj = dist(j);
            for k in 0..nf {
                let dk = dist(k);
                let inside = di * di + dj * dj + dk * dk <= r_sq;
                chi.push(Complex::new(if inside { F::one() } else { F::zero() }, F::zero()));
            }
        }
    }
    fft::fft3_inplace(&mut chi, nf, false);
    chi.into_iter().map(|c| c.re).collect()
}

/// `||u0||_{BMO^{-1}}` with default quadrature settings.
pub fn bmo_inv_norm<F: Real>(
    u0: &SpectralVectorField<F>,
    tg: &TimeGrid<F>,
    pad: usize,
) -> Result<BmoValue<F>, BesovError> {
    bmo_inv_norm_with(u0, tg, pad, BmoSettings::default())
}

pub fn bmo_inv_norm_with<F: Real>(
    u0: &SpectralVectorField<F>,
    tg: &TimeGrid<F>,
    norm_pad: usize,
    settings: BmoSettings,
) -> Result<BmoValue<F>, BesovError> {
    if u0.max_coeff_amplitude() == F::zero() {
        return Ok(BmoValue {
            total: F::zero(),
            heat_term: F::zero(),
            carleson_term: F::zero(),
        });
    }

    // first term: sup_t t^{1/2} ||e^{t Lap} u0||_inf, max over components,
    // sharing the same samples as the B^{-1}_{inf,inf} norm
    let mut heat_term = F::zero();
    for c in u0.components() {
        let samples = HeatLpSamples::compute(c, Exponent::Inf, tg, norm_pad)?;
        let v = samples.besov(F::one(), TimeExponent::Inf)?;
        heat_term = heat_term.max(v.value);
    }

    let carleson_term = carleson_sup(u0, tg, settings).sqrt();
    Ok(BmoValue {
        total: heat_term + carleson_term,
        heat_term,
        carleson_term,
    })
}

/// `sup_{x,R} R^{-3} int_0^{R^2} int_{B(x,R)} |e^{t Lap} u0|^2 dy dt` over
/// the dyadic radius set `{h 2^m} <= L/4` and the stride-`n/denom`
/// sublattice of centers.
fn carleson_sup<F: Real>(
    u0: &SpectralVectorField<F>,
    tg: &TimeGrid<F>,
    settings: BmoSettings,
) -> F {
    let g = *u0.grid();
    let n = g.n();
    let pad = settings.pad.max(1);
    let nf = n * pad;
    let box_len = g.box_len();
    let box_vol = box_len.powi(3);

    // dyadic radii h * 2^m up to L/4
    let mut radii: Vec<F> = Vec::new();
    let mut r = g.spacing();
    while r <= box_len / F::of(4.0) {
        radii.push(r);
        r = r * F::of(2.0);
    }
    if radii.is_empty() {
        radii.push(g.spacing());
    }

    // subsample the time grid (box integrals are smooth in log t)
    let all_times = tg.times();
    let times: Vec<F> = if all_times.len() <= settings.max_time_samples {
        all_times
    } else {
        let stride = (all_times.len() as f64 / settings.max_time_samples as f64).ceil() as usize;
        let mut ts: Vec<F> = all_times.iter().copied().step_by(stride).collect();
        if *ts.last().unwrap() < *all_times.last().unwrap() {
            ts.push(*all_times.last().unwrap());
        }
        ts
    };

    // fine-grid wavenumber magnitudes for the convolution symbols
    let fine_grid = crate::spectral::grid::Grid::<F>::new(nf, box_len).expect("padded grid valid");
    let kv: Vec<F> = fine_grid.wavenumbers();

    // ball integral of |e^{t Lap} u0|^2 at every center, per (t, R)
    let stride = (n / settings.stride_denom).max(1) * pad;
    let mut best = F::zero();
    // running integrals per (R, center-sublattice) as t advances
    let centers: Vec<usize> = sublattice_indices(nf, stride);
    let mut integrals = vec![vec![F::zero(); centers.len()]; radii.len()];
    let mut prev_t = F::zero();
    let mut prev_vals: Option<Vec<Vec<F>>> = None;

    for &t in &times {
        // |e^{t Lap} u0|^2 on the fine grid
        let mut sq = vec![F::zero(); nf * nf * nf];
        for c in u0.components() {
            let flowed = ops::heat_flow(c, t).expect("t >= 0");
            let vals = flowed.to_values_padded(pad);
            for (s, v) in sq.iter_mut().zip(vals) {
                *s += v * v;
            }
        }
        let mut spec: Vec<Complex<F>> = sq.into_iter().map(|v| Complex::new(v, F::zero())).collect();
        fft::fft3_inplace(&mut spec, nf, false);
        let scale = F::one() / F::of((nf * nf * nf) as f64);
        for c in spec.iter_mut() {
            *c = *c * scale;
        }

        // per radius: convolve with the ball indicator, evaluate at centers
        let vals_per_radius: Vec<Vec<F>> = radii
            .iter()
            .map(|&radius| {
                let mut conv = vec![Complex::<F>::default(); nf * nf * nf];
                for i in 0..nf {
                    for j in 0..nf {
                        for k in 0..nf {
                            let idx = (i * nf + j) * nf + k;
                            let kk =
                                (kv[i] * kv[i] + kv[j] * kv[j] + kv[k] * kv[k]).sqrt();
                            conv[idx] = spec[idx] * (ball_symbol(kk, radius, box_vol) * box_vol);
                        }
                    }
                }
                fft::fft3_inplace(&mut conv, nf, true);
                centers.iter().map(|&idx| conv[idx].re).collect()
            })
            .collect();

        // advance the time integrals: head rectangle on [0, t_first],
        // trapezoids afterwards, clipped at each R^2
        for (ri, &radius) in radii.iter().enumerate() {
            let r_sq = radius * radius;
            if prev_t >= r_sq {
                continue;
            }
            let t_hi = t.min(r_sq);
            match &prev_vals {
                None => {
                    // first sample covers [0, min(t, R^2)] at its value
                    for (ci, v) in vals_per_radius[ri].iter().enumerate() {
                        integrals[ri][ci] += t_hi * *v;
                    }
                }
                Some(prev) => {
                    let dt = t_hi - prev_t;
                    if dt > F::zero() {
                        // linear interpolation toward t_hi
                        let frac = dt / (t - prev_t);
                        for (ci, v) in vals_per_radius[ri].iter().enumerate() {
                            let v_prev = prev[ri][ci];
                            let v_hi = v_prev + (*v - v_prev) * frac;
                            integrals[ri][ci] += dt * (v_prev + v_hi) / F::of(2.0);
                        }
                    }
                }
            }
        }
        prev_vals = Some(vals_per_radius);
        prev_t = t;
    }

    for (ri, &radius) in radii.iter().enumerate() {
        let inv_r3 = F::one() / radius.powi(3);
        for &v in &integrals[ri] {
            best = best.max(v * inv_r3);
        }
    }
    best
}

fn sublattice_indices(nf: usize, stride: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut axis = Vec::new();
    let mut i = 0;
    while i < nf {
        axis.push(i);
        i += stride;
    }
    for &a in &axis {
        for &b in &axis {
            for &c in &axis {
                out.push((a * nf + b) * nf + c);
            }
        }
    }
    out
}
