//! Differential operators, heat semigroup, Leray projection and the
//! dealiased pseudo-spectral convection term.

use num_complex::Complex;

use crate::real::Real;
use crate::spectral::fft;
use crate::spectral::field::{FieldError, SpectralField, SpectralVectorField};

/// Spectral derivative along `axis` (0-based), order 1 or 2.
///
/// Odd orders zero the Nyquist plane so real fields stay real and the
/// operator stays skew-symmetric on the grid.
pub fn derivative<F: Real>(
    a: &SpectralField<F>,
    axis: usize,
    order: u32,
) -> Result<SpectralField<F>, FieldError> {
    if order != 1 && order != 2 {
        return Err(FieldError::BadDerivativeOrder(order));
    }
    assert!(axis < 3, "axis out of range");
    let g = *a.grid();
    let n = g.n();
    let kv = g.wavenumbers();
    let nyq_index = n / 2;
    let mut out = a.clone();
    let coeffs = out.coeffs_mut();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let ai = [i, j, k][axis];
                let idx = g.at(i, j, k);
                let kval = kv[ai];
                coeffs[idx] = match order {
                    1 => {
                        if ai == nyq_index {
                            Complex::default()
                        } else {
                            // multiply by i*k
                            let c = coeffs[idx];
                            Complex::new(-c.im * kval, c.re * kval)
                        }
                    }
                    _ => coeffs[idx] * (-kval * kval),
                };
            }
        }
    }
    Ok(out)
}

fn heat_symbol_apply<F: Real>(a: &mut SpectralField<F>, t: F) {
    let g = *a.grid();
    let n = g.n();
    let kv = g.wavenumbers();
    let coeffs = a.coeffs_mut();
    for i in 0..n {
        let ki2 = kv[i] * kv[i];
        for j in 0..n {
            let kij2 = ki2 + kv[j] * kv[j];
            for k in 0..n {
                let ksq = kij2 + kv[k] * kv[k];
                let idx = g.at(i, j, k);
                coeffs[idx] = coeffs[idx] * (-t * ksq).exp();
            }
        }
    }
}

/// `e^{t Laplacian} a` for `t >= 0`.
pub fn heat_flow<F: Real>(a: &SpectralField<F>, t: F) -> Result<SpectralField<F>, FieldError> {
    if t < F::zero() {
        return Err(FieldError::NegativeTime(t.to_f64()));
    }
    let mut out = a.clone();
    heat_symbol_apply(&mut out, t);
    Ok(out)
}

/// Componentwise heat flow of a vector field.
pub fn heat_flow_vec<F: Real>(
    u: &SpectralVectorField<F>,
    t: F,
) -> Result<SpectralVectorField<F>, FieldError> {
    if t < F::zero() {
        return Err(FieldError::NegativeTime(t.to_f64()));
    }
    Ok(u.map(|c| {
        let mut out = c.clone();
        heat_symbol_apply(&mut out, t);
        out
    }))
}

/// Leray projection onto divergence-free fields,
/// `(Id - k k^T / |k|^2) u(k)`; the mean mode passes through unchanged.
pub fn leray_project<F: Real>(v: &SpectralVectorField<F>) -> SpectralVectorField<F> {
    let g = *v.grid();
    let n = g.n();
    let kv = g.wavenumbers();
    let mut out = v.clone();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i == 0 && j == 0 && k == 0 {
                    continue;
                }
                let idx = g.at(i, j, k);
                let kk = [kv[i], kv[j], kv[k]];
                let ksq = kk[0] * kk[0] + kk[1] * kk[1] + kk[2] * kk[2];
                let dot = out.component(0).coeffs()[idx] * kk[0]
                    + out.component(1).coeffs()[idx] * kk[1]
                    + out.component(2).coeffs()[idx] * kk[2];
                let scale = dot / ksq;
                for axis in 0..3 {
                    out.component_mut(axis).coeffs_mut()[idx] -= scale * kk[axis];
                }
            }
        }
    }
    out
}

/// Per-axis 2/3-rule cutoff: retain integer modes `|m| <= n/3`.
pub fn dealias_cutoff_mode(n: usize) -> i64 {
    (n / 3) as i64
}

fn truncate_to_band<F: Real>(a: &SpectralField<F>, cutoff: i64) -> SpectralField<F> {
    let g = *a.grid();
    let n = g.n();
    let mut out = a.clone();
    let coeffs = out.coeffs_mut();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let keep = g.mode(i).abs() <= cutoff
                    && g.mode(j).abs() <= cutoff
                    && g.mode(k).abs() <= cutoff;
                if !keep {
                    coeffs[g.at(i, j, k)] = Complex::default();
                }
            }
        }
    }
    out
}

/// Convection term `(u . grad) u` evaluated pseudo-spectrally with the
/// 2/3 rule: inputs and output truncated to the retained band, so the
/// result is alias-free and exact whenever the true product fits in it.
pub fn advect<F: Real>(u: &SpectralVectorField<F>) -> SpectralVectorField<F> {
    advect_of(u, u)
}

/// `(a . grad) b` with the same dealiasing contract as [`advect`].
pub fn advect_of<F: Real>(
    a: &SpectralVectorField<F>,
    b: &SpectralVectorField<F>,
) -> SpectralVectorField<F> {
    let g = *a.grid();
    let n = g.n();
    let cutoff = dealias_cutoff_mode(n);
    let npts = g.len();
    let vol_scale = F::one() / F::of(npts as f64);

    // velocity components in physical space
    let a_phys: Vec<Vec<F>> = (0..3)
        .map(|axis| truncate_to_band(a.component(axis), cutoff).to_values())
        .collect();

    let mut out_components = Vec::with_capacity(3);
    for comp in 0..3 {
        let mut accum = vec![F::zero(); npts];
        for dir in 0..3 {
            let db = derivative(&truncate_to_band(b.component(comp), cutoff), dir, 1)
                .expect("order 1 valid");
            let db_phys = db.to_values();
            for (acc, (&ua, &gb)) in accum.iter_mut().zip(a_phys[dir].iter().zip(&db_phys)) {
                *acc = *acc + ua * gb;
            }
        }
        let mut coeffs: Vec<Complex<F>> =
            accum.into_iter().map(|v| Complex::new(v, F::zero())).collect();
        fft::fft3_inplace(&mut coeffs, n, false);
        for c in coeffs.iter_mut() {
            *c = *c * vol_scale;
        }
        let field = SpectralField::from_coeffs(g, coeffs).expect("sizes match");
        out_components.push(truncate_to_band(&field, cutoff));
    }
    let [c0, c1, c2]: [SpectralField<F>; 3] = out_components.try_into().expect("three components");
    SpectralVectorField::new([c0, c1, c2]).expect("same grid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::grid::Grid;
    use approx::assert_relative_eq;

    fn grid(n: usize) -> Grid<f64> {
        Grid::unit_torus(n).unwrap()
    }

    fn max_coeff_diff(a: &SpectralField<f64>, b: &SpectralField<f64>) -> f64 {
        a.coeffs()
            .iter()
            .zip(b.coeffs())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn derivative_of_cosine_is_minus_sine() {
        let g = grid(16);
        let a = SpectralField::from_fn(g, |x1, _, _| x1.cos());
        let da = derivative(&a, 0, 1).unwrap();
        let expected = SpectralField::from_fn(g, |x1, _, _| -x1.sin());
        assert!(max_coeff_diff(&da, &expected) < 1e-13);
    }

    #[test]
    fn second_vertical_derivative_of_cosine() {
        let g = grid(16);
        let a = SpectralField::from_fn(g, |_, _, x3| x3.cos());
        let dda = derivative(&a, 2, 2).unwrap();
        let expected = SpectralField::from_fn(g, |_, _, x3| -x3.cos());
        assert!(max_coeff_diff(&dda, &expected) < 1e-13);
    }

    #[test]
    fn derivative_along_constant_axis_vanishes() {
        let g = grid(16);
        let a = SpectralField::from_fn(g, |x1, _, x3| (2.0 * x1).cos() + x3.sin());
        let da = derivative(&a, 1, 1).unwrap();
        assert!(da.max_coeff_amplitude() < 1e-14);
    }

    #[test]
    fn derivative_rejects_bad_order() {
        let g = grid(8);
        let a = SpectralField::zero(g);
        assert_eq!(
            derivative(&a, 0, 3).unwrap_err(),
            FieldError::BadDerivativeOrder(3)
        );
    }

    #[test]
    fn heat_flow_is_identity_at_zero_and_scales_eigenfunctions() {
        let g = grid(16);
        let a = SpectralField::from_fn(g, |x1, _, _| x1.cos());
        let a0 = heat_flow(&a, 0.0).unwrap();
        assert!(max_coeff_diff(&a, &a0) == 0.0);

        let at = heat_flow(&a, 0.5).unwrap();
        let expected = SpectralField::from_fn(g, |x1, _, _| (-0.5f64).exp() * x1.cos());
        assert!(max_coeff_diff(&at, &expected) < 1e-13);
        assert_relative_eq!(
            at.coeff_at_mode(1, 0, 0).re,
            0.5 * (-0.5f64).exp(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn heat_flow_rejects_negative_time() {
        let g = grid(8);
        let a = SpectralField::zero(g);
        assert!(matches!(
            heat_flow(&a, -1.0),
            Err(FieldError::NegativeTime(_))
        ));
    }

    #[test]
    fn heat_flow_semigroup_property() {
        let g = grid(16);
        let a = SpectralField::from_fn(g, |x1, x2, x3| {
            (x1 + 2.0 * x2).cos() + (3.0 * x3).sin() + (x1 - x3).cos()
        });
        let lhs = heat_flow(&heat_flow(&a, 0.3).unwrap(), 0.45).unwrap();
        let rhs = heat_flow(&a, 0.75).unwrap();
        let scale = a.max_coeff_amplitude();
        assert!(max_coeff_diff(&lhs, &rhs) <= 1e-12 * scale);
    }

    #[test]
    fn leray_annihilates_gradients() {
        // v = grad(sin x1 sin x2 sin x3)
        let g = grid(16);
        let v = SpectralVectorField::from_fns(
            g,
            |x1, x2, x3| x1.cos() * x2.sin() * x3.sin(),
            |x1, x2, x3| x1.sin() * x2.cos() * x3.sin(),
            |x1, x2, x3| x1.sin() * x2.sin() * x3.cos(),
        );
        let p = leray_project(&v);
        assert!(p.max_coeff_amplitude() < 1e-14);
    }

    #[test]
    fn leray_keeps_divergence_free_fields() {
        let g = grid(16);
        // v = (-d2 psi, d1 psi, 0) for psi = sin x1 sin x2
        let v = SpectralVectorField::from_fns(
            g,
            |x1, x2, _| -x1.sin() * x2.cos(),
            |x1, x2, _| x1.cos() * x2.sin(),
            |_, _, _| 0.0,
        );
        let p = leray_project(&v);
        for axis in 0..3 {
            assert!(max_coeff_diff(v.component(axis), p.component(axis)) < 1e-14);
        }
        assert!(p.is_divergence_free(1e-10));
    }

    #[test]
    fn leray_kills_field_parallel_to_wavevector() {
        // v = (cos x1, 0, 0): u(k) parallel to k = (+-1,0,0), projector symbol
        // (delta_ij - k_i k_j/|k|^2) evaluates to zero on it.
        let g = grid(16);
        let v = SpectralVectorField::from_fns(g, |x1, _, _| x1.cos(), |_, _, _| 0.0, |_, _, _| 0.0);
        let p = leray_project(&v);
        assert!(p.max_coeff_amplitude() < 1e-14);
    }

    #[test]
    fn leray_is_idempotent_and_divergence_free() {
        let g = grid(16);
        let v = SpectralVectorField::from_fns(
            g,
            |x1, x2, x3| (x1 + x2).cos() + x3.sin(),
            |x1, _, x3| (2.0 * x1).sin() * x3.cos(),
            |_, x2, x3| (x2 + 2.0 * x3).cos(),
        );
        let p1 = leray_project(&v);
        let p2 = leray_project(&p1);
        let scale = p1.max_coeff_amplitude();
        for axis in 0..3 {
            assert!(max_coeff_diff(p1.component(axis), p2.component(axis)) <= 1e-12 * scale);
        }
        assert!(p1.divergence_residual() <= 1e-10 * scale);
    }

    #[test]
    fn advect_of_shear_vanishes() {
        // u = (g(x3), 0, 0): u.grad = g(x3) d1 and u1 is x1-independent.
        let g = grid(16);
        let u = SpectralVectorField::from_fns(
            g,
            |_, _, x3| x3.cos() + 0.5 * (2.0 * x3).sin(),
            |_, _, _| 0.0,
            |_, _, _| 0.0,
        );
        let adv = advect(&u);
        assert!(adv.max_coeff_amplitude() < 1e-14);
    }

    #[test]
    fn advect_matches_hand_computation() {
        let g = grid(16);
        let u = SpectralVectorField::from_fns(
            g,
            |_, x2, _| x2.cos(),
            |x1, _, _| x1.cos(),
            |_, _, _| 0.0,
        );
        let adv = advect(&u);
        let expected = SpectralVectorField::from_fns(
            g,
            |x1, x2, _| -x1.cos() * x2.sin(),
            |x1, x2, _| -x2.cos() * x1.sin(),
            |_, _, _| 0.0,
        );
        for axis in 0..3 {
            assert!(max_coeff_diff(adv.component(axis), expected.component(axis)) < 1e-13);
        }
    }

    #[test]
    fn advect_of_zero_is_zero() {
        let g = grid(8);
        let u = SpectralVectorField::zero(g);
        assert!(advect(&u).max_coeff_amplitude() == 0.0);
    }
}
