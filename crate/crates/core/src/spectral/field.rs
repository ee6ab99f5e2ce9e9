//! Spectral representations of real scalar and vector fields on the box.

use num_complex::Complex;
use thiserror::Error;

use crate::real::Real;
use crate::spectral::fft;
use crate::spectral::grid::Grid;

#[derive(Debug, Error, PartialEq)]
pub enum FieldError {
    #[error("value array has {got} entries, grid wants {want}")]
    DimensionMismatch { got: usize, want: usize },
    #[error("fields live on different grids")]
    GridMismatch,
    #[error("negative time {0} passed to the heat flow")]
    NegativeTime(f64),
    #[error("derivative order {0} unsupported (only 1 and 2)")]
    BadDerivativeOrder(u32),
}

/// Fourier coefficients of a real scalar field, Hermitian-symmetric.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField<F: Real = f64> {
    grid: Grid<F>,
    coeffs: Vec<Complex<F>>,
}

impl<F: Real> SpectralField<F> {
    /// Transform physical samples (row-major, axis 2 contiguous).
    pub fn from_values(grid: Grid<F>, values: &[F]) -> Result<Self, FieldError> {
        if values.len() != grid.len() {
            return Err(FieldError::DimensionMismatch {
                got: values.len(),
                want: grid.len(),
            });
        }
        Ok(Self {
            grid,
            coeffs: fft::forward_from_real(values, grid.n()),
        })
    }

    /// Sample a function of `(x1, x2, x3)` on the grid and transform it.
    pub fn from_fn(grid: Grid<F>, f: impl Fn(F, F, F) -> F) -> Self {
        let n = grid.n();
        let mut values = Vec::with_capacity(grid.len());
        for i in 0..n {
            let x1 = grid.coord(i);
            for j in 0..n {
                let x2 = grid.coord(j);
                for k in 0..n {
                    values.push(f(x1, x2, grid.coord(k)));
                }
            }
        }
        Self::from_values(grid, &values).expect("sizes match by construction")
    }

    /// Wrap raw coefficients. The caller asserts Hermitian symmetry.
    pub fn from_coeffs(grid: Grid<F>, coeffs: Vec<Complex<F>>) -> Result<Self, FieldError> {
        if coeffs.len() != grid.len() {
            return Err(FieldError::DimensionMismatch {
                got: coeffs.len(),
                want: grid.len(),
            });
        }
        Ok(Self { grid, coeffs })
    }

    pub fn zero(grid: Grid<F>) -> Self {
        Self {
            grid,
            coeffs: vec![Complex::default(); grid.len()],
        }
    }

    pub fn grid(&self) -> &Grid<F> {
        &self.grid
    }

    pub fn coeffs(&self) -> &[Complex<F>] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex<F>] {
        &mut self.coeffs
    }

    pub fn coeff_at_mode(&self, m1: i64, m2: i64, m3: i64) -> Complex<F> {
        let g = &self.grid;
        match (g.index_of_mode(m1), g.index_of_mode(m2), g.index_of_mode(m3)) {
            (Some(i), Some(j), Some(k)) => self.coeffs[g.at(i, j, k)],
            _ => Complex::default(),
        }
    }

    /// Mean value of the field (DC coefficient).
    pub fn mean(&self) -> Complex<F> {
        self.coeffs[0]
    }

    pub fn remove_mean(&mut self) -> Complex<F> {
        std::mem::take(&mut self.coeffs[0])
    }

    /// Physical samples on the grid (or a `pad`-times refined grid).
    pub fn to_values(&self) -> Vec<F> {
        fft::inverse_to_real(&self.coeffs, self.grid.n())
    }

    pub fn to_values_padded(&self, pad: usize) -> Vec<F> {
        fft::padded_samples(&self.coeffs, &self.grid, pad)
    }

    /// Largest relative violation of `coeff(-k) = conj(coeff(k))`.
    pub fn hermitian_residual(&self) -> F {
        let n = self.grid.n();
        let mut max_amp = F::zero();
        for c in &self.coeffs {
            max_amp = max_amp.max(c.norm_sqr().sqrt());
        }
        if max_amp == F::zero() {
            return F::zero();
        }
        let mut worst = F::zero();
        let neg = |i: usize| (n - i) % n;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let a = self.coeffs[self.grid.at(i, j, k)];
                    let b = self.coeffs[self.grid.at(neg(i), neg(j), neg(k))];
                    let d = a - b.conj();
                    worst = worst.max(d.norm_sqr().sqrt());
                }
            }
        }
        worst / max_amp
    }

    pub fn max_coeff_amplitude(&self) -> F {
        self.coeffs
            .iter()
            .map(|c| c.norm_sqr().sqrt())
            .fold(F::zero(), F::max)
    }

    /// Smallest nonzero |k| carrying a coefficient above `rel_tol * max`.
    pub fn min_active_k(&self, rel_tol: F) -> Option<F> {
        let tol = self.max_coeff_amplitude() * rel_tol;
        let n = self.grid.n();
        let kv = self.grid.wavenumbers();
        let mut best: Option<F> = None;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if i == 0 && j == 0 && k == 0 {
                        continue;
                    }
                    let c = self.coeffs[self.grid.at(i, j, k)];
                    if c.norm_sqr().sqrt() > tol {
                        let ksq = kv[i] * kv[i] + kv[j] * kv[j] + kv[k] * kv[k];
                        let kabs = ksq.sqrt();
                        best = Some(match best {
                            Some(b) => b.min(kabs),
                            None => kabs,
                        });
                    }
                }
            }
        }
        best
    }

    pub(crate) fn check_same_grid(&self, other: &Self) -> Result<(), FieldError> {
        if self.grid != other.grid {
            return Err(FieldError::GridMismatch);
        }
        Ok(())
    }
}

impl<F: Real> std::ops::Add<&SpectralField<F>> for SpectralField<F> {
    type Output = SpectralField<F>;
    fn add(mut self, rhs: &SpectralField<F>) -> SpectralField<F> {
        assert_eq!(self.grid, rhs.grid, "grid mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += *b;
        }
        self
    }
}

impl<F: Real> std::ops::Sub<&SpectralField<F>> for SpectralField<F> {
    type Output = SpectralField<F>;
    fn sub(mut self, rhs: &SpectralField<F>) -> SpectralField<F> {
        assert_eq!(self.grid, rhs.grid, "grid mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= *b;
        }
        self
    }
}

impl<F: Real> std::ops::Mul<F> for SpectralField<F> {
    type Output = SpectralField<F>;
    fn mul(mut self, rhs: F) -> SpectralField<F> {
        for c in self.coeffs.iter_mut() {
            *c = *c * rhs;
        }
        self
    }
}

/// Three scalar components `u1, u2, u3` of a real vector field.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralVectorField<F: Real = f64> {
    components: [SpectralField<F>; 3],
}

impl<F: Real> SpectralVectorField<F> {
    pub fn new(components: [SpectralField<F>; 3]) -> Result<Self, FieldError> {
        components[0].check_same_grid(&components[1])?;
        components[0].check_same_grid(&components[2])?;
        Ok(Self { components })
    }

    pub fn zero(grid: Grid<F>) -> Self {
        Self {
            components: [
                SpectralField::zero(grid),
                SpectralField::zero(grid),
                SpectralField::zero(grid),
            ],
        }
    }

    pub fn from_fns(
        grid: Grid<F>,
        f1: impl Fn(F, F, F) -> F,
        f2: impl Fn(F, F, F) -> F,
        f3: impl Fn(F, F, F) -> F,
    ) -> Self {
        Self {
            components: [
                SpectralField::from_fn(grid, f1),
                SpectralField::from_fn(grid, f2),
                SpectralField::from_fn(grid, f3),
            ],
        }
    }

    pub fn grid(&self) -> &Grid<F> {
        self.components[0].grid()
    }

    pub fn component(&self, axis: usize) -> &SpectralField<F> {
        &self.components[axis]
    }

    pub fn component_mut(&mut self, axis: usize) -> &mut SpectralField<F> {
        &mut self.components[axis]
    }

    pub fn components(&self) -> &[SpectralField<F>; 3] {
        &self.components
    }

    pub fn into_components(self) -> [SpectralField<F>; 3] {
        self.components
    }

    pub fn map(&self, f: impl Fn(&SpectralField<F>) -> SpectralField<F>) -> Self {
        Self {
            components: [f(&self.components[0]), f(&self.components[1]), f(&self.components[2])],
        }
    }

    pub fn max_coeff_amplitude(&self) -> F {
        self.components
            .iter()
            .map(|c| c.max_coeff_amplitude())
            .fold(F::zero(), F::max)
    }

    /// `max_k |k . u(k)|` over the lattice, the raw divergence residual.
    pub fn divergence_residual(&self) -> F {
        let g = self.grid();
        let n = g.n();
        let kv = g.wavenumbers();
        let mut worst = F::zero();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let idx = g.at(i, j, k);
                    let dot = self.components[0].coeffs()[idx] * kv[i]
                        + self.components[1].coeffs()[idx] * kv[j]
                        + self.components[2].coeffs()[idx] * kv[k];
                    worst = worst.max(dot.norm_sqr().sqrt());
                }
            }
        }
        worst
    }

    /// Divergence-free check: `max|k.u| <= tol * max|u|`.
    pub fn is_divergence_free(&self, rel_tol: F) -> bool {
        let amp = self.max_coeff_amplitude();
        if amp == F::zero() {
            return true;
        }
        self.divergence_residual() <= rel_tol * amp
    }

    pub fn mean(&self) -> [Complex<F>; 3] {
        [
            self.components[0].mean(),
            self.components[1].mean(),
            self.components[2].mean(),
        ]
    }

    pub fn remove_mean(&mut self) {
        for c in self.components.iter_mut() {
            c.remove_mean();
        }
    }
}

impl<F: Real> std::ops::Sub<&SpectralVectorField<F>> for SpectralVectorField<F> {
    type Output = SpectralVectorField<F>;
    fn sub(self, rhs: &SpectralVectorField<F>) -> SpectralVectorField<F> {
        let [a, b, c] = self.components;
        SpectralVectorField {
            components: [
                a - &rhs.components[0],
                b - &rhs.components[1],
                c - &rhs.components[2],
            ],
        }
    }
}

impl<F: Real> std::ops::Mul<F> for SpectralVectorField<F> {
    type Output = SpectralVectorField<F>;
    fn mul(self, rhs: F) -> SpectralVectorField<F> {
        let [a, b, c] = self.components;
        SpectralVectorField {
            components: [a * rhs, b * rhs, c * rhs],
        }
    }
}
