//! 3D complex FFT kernels built from cached 1D plans, plus zero-padded
//! spectral interpolation onto refined grids.

use num_complex::Complex;

use crate::real::Real;
use crate::spectral::grid::Grid;

/// In-place 3D transform; `inverse = false` applies the forward kernel
/// (no normalization), `inverse = true` the conjugate kernel.
pub fn fft3_inplace<F: Real>(data: &mut [Complex<F>], n: usize, inverse: bool) {
    debug_assert_eq!(data.len(), n * n * n);
    let (fwd, inv) = F::fft_plans(n);
    let plan = if inverse { inv } else { fwd };
    let mut scratch = vec![Complex::default(); plan.get_inplace_scratch_len()];
    let mut col = vec![Complex::default(); n];

    // axis 2: contiguous rows
    for row in data.chunks_exact_mut(n) {
        plan.process_with_scratch(row, &mut scratch);
    }
    // axis 1: stride n within each plane
    for plane in 0..n {
        for k in 0..n {
            let base = plane * n * n + k;
            for j in 0..n {
                col[j] = data[base + j * n];
            }
            plan.process_with_scratch(&mut col, &mut scratch);
            for j in 0..n {
                data[base + j * n] = col[j];
            }
        }
    }
    // axis 0: stride n*n
    let nn = n * n;
    for jk in 0..nn {
        for i in 0..n {
            col[i] = data[jk + i * nn];
        }
        plan.process_with_scratch(&mut col, &mut scratch);
        for i in 0..n {
            data[jk + i * nn] = col[i];
        }
    }
}

/// Forward transform of real samples into normalized coefficients
/// (`coeff(0)` is the mean value).
pub fn forward_from_real<F: Real>(values: &[F], n: usize) -> Vec<Complex<F>> {
    let mut data: Vec<Complex<F>> = values.iter().map(|&v| Complex::new(v, F::zero())).collect();
    fft3_inplace(&mut data, n, false);
    let scale = F::one() / F::of((n * n * n) as f64);
    for c in data.iter_mut() {
        *c = *c * scale;
    }
    data
}

/// Inverse transform of normalized coefficients into real samples.
/// The imaginary residual of the transform is discarded; callers that need
/// to assert Hermitian symmetry do so on the coefficients.
pub fn inverse_to_real<F: Real>(coeffs: &[Complex<F>], n: usize) -> Vec<F> {
    let mut data = coeffs.to_vec();
    fft3_inplace(&mut data, n, true);
    data.into_iter().map(|c| c.re).collect()
}

/// Embed coefficients of an `n`-grid into a `pad*n`-grid spectrum.
///
/// The Nyquist plane (mode `-n/2`) is split evenly between `+n/2` and `-n/2`
/// on the fine grid so real fields stay real.
pub fn zero_pad_spectrum<F: Real>(
    coeffs: &[Complex<F>],
    grid: &Grid<F>,
    pad: usize,
) -> Vec<Complex<F>> {
    assert!(pad >= 1);
    let n = grid.n();
    if pad == 1 {
        return coeffs.to_vec();
    }
    let nf = n * pad;
    let mut out = vec![Complex::default(); nf * nf * nf];
    let half = F::of(0.5);

    // destination indices and weights per source index along one axis
    let mut dests: Vec<Vec<(usize, F)>> = Vec::with_capacity(n);
    for i in 0..n {
        let m = grid.mode(i);
        if m == -((n / 2) as i64) {
            let lo = (m + nf as i64) as usize;
            let hi = (n / 2) as usize;
            dests.push(vec![(lo, half), (hi, half)]);
        } else {
            let d = if m >= 0 { m as usize } else { (m + nf as i64) as usize };
            dests.push(vec![(d, F::one())]);
        }
    }

    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let c = coeffs[(i * n + j) * n + k];
                if c == Complex::default() {
                    continue;
                }
                for &(di, wi) in &dests[i] {
                    for &(dj, wj) in &dests[j] {
                        for &(dk, wk) in &dests[k] {
                            out[(di * nf + dj) * nf + dk] += c * (wi * wj * wk);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Real samples of the band-limited interpolant on a `pad`-times refined grid.
pub fn padded_samples<F: Real>(coeffs: &[Complex<F>], grid: &Grid<F>, pad: usize) -> Vec<F> {
    let fine = zero_pad_spectrum(coeffs, grid, pad);
    inverse_to_real(&fine, grid.n() * pad)
}
