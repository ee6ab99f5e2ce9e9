//! Littlewood-Paley operators `S_j` (dyadic low-pass) and
//! `Delta_j = S_{j+1} - S_j` (band-pass), built from a fixed radial
//! profile with `phi(xi) = 1` for `|xi| <= 1` and `0` for `|xi| >= 2`.

use thiserror::Error;

use crate::real::Real;
use crate::spectral::field::SpectralField;
use crate::spectral::grid::Grid;

#[derive(Debug, Error, PartialEq)]
pub enum LpError {
    #[error("dyadic index {j} outside resolved range [{j_min}, {j_max}]")]
    OutOfRange { j: i32, j_min: i32, j_max: i32 },
}

/// Quintic smoothstep, C^2 monotone from 0 at `s = 0` to 1 at `s = 1`.
fn smoothstep<F: Real>(s: F) -> F {
    if s <= F::zero() {
        F::zero()
    } else if s >= F::one() {
        F::one()
    } else {
        let s3 = s * s * s;
        s3 * (F::of(10.0) + s * (F::of(-15.0) + s * F::of(6.0)))
    }
}

/// Radial low-pass profile: 1 inside the unit ball, 0 outside radius 2,
/// quintic smoothstep of `log2 |xi|` in between.
pub fn low_pass_profile<F: Real>(rho: F) -> F {
    if rho <= F::one() {
        F::one()
    } else if rho >= F::of(2.0) {
        F::zero()
    } else {
        F::one() - smoothstep(rho.ln() / F::of(2.0).ln())
    }
}

/// Dyadic filter bank over the resolved wavenumber range of a grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LpFilterBank<F: Real = f64> {
    grid: Grid<F>,
    j_min: i32,
    j_max: i32,
}

impl<F: Real> LpFilterBank<F> {
    /// Resolved range: `j_min` one step below `floor(log2 k_min)` so the
    /// lowest lattice shell sits at the peak of its band (`S_{j_min}`
    /// annihilates every nonzero mode), and `j_max = ceil(log2 k_nyq) - 1`.
    pub fn for_grid(grid: Grid<F>) -> Self {
        let k_min = grid.k_min().to_f64();
        let k_nyq = grid.nyquist().to_f64();
        let j_min = k_min.log2().floor() as i32 - 1;
        let j_max = k_nyq.log2().ceil() as i32 - 1;
        Self { grid, j_min, j_max }
    }

    pub fn grid(&self) -> &Grid<F> {
        &self.grid
    }

    pub fn j_min(&self) -> i32 {
        self.j_min
    }

    pub fn j_max(&self) -> i32 {
        self.j_max
    }

    pub fn j_range(&self) -> impl Iterator<Item = i32> {
        self.j_min..=self.j_max
    }

    /// Symbol of `S_j` at wavenumber magnitude `k`.
    pub fn s_symbol(&self, j: i32, k_abs: F) -> F {
        low_pass_profile(k_abs / F::of(2f64.powi(j)))
    }

    /// Symbol of `Delta_j = S_{j+1} - S_j` at wavenumber magnitude `k`.
    pub fn delta_symbol(&self, j: i32, k_abs: F) -> F {
        self.s_symbol(j + 1, k_abs) - self.s_symbol(j, k_abs)
    }

    fn apply_radial(&self, a: &SpectralField<F>, sym: impl Fn(F) -> F) -> SpectralField<F> {
        let g = self.grid;
        let n = g.n();
        let kv = g.wavenumbers();
        let mut out = a.clone();
        let coeffs = out.coeffs_mut();
        for i in 0..n {
            let ki2 = kv[i] * kv[i];
            for j in 0..n {
                let kij2 = ki2 + kv[j] * kv[j];
                for k in 0..n {
                    let kabs = (kij2 + kv[k] * kv[k]).sqrt();
                    let idx = g.at(i, j, k);
                    coeffs[idx] = coeffs[idx] * sym(kabs);
                }
            }
        }
        out
    }

    /// Low-pass `S_j a`.
    pub fn low_pass(&self, a: &SpectralField<F>, j: i32) -> SpectralField<F> {
        self.apply_radial(a, |k| self.s_symbol(j, k))
    }

    /// Band-pass block `Delta_j a`; `j` must be in the resolved range.
    pub fn block(&self, a: &SpectralField<F>, j: i32) -> Result<SpectralField<F>, LpError> {
        if j < self.j_min || j > self.j_max {
            return Err(LpError::OutOfRange {
                j,
                j_min: self.j_min,
                j_max: self.j_max,
            });
        }
        Ok(self.apply_radial(a, |k| self.delta_symbol(j, k)))
    }

    /// `sum_j Delta_j a` over the resolved range, i.e.
    /// `(S_{j_max+1} - S_{j_min}) a` by the telescoping identity.
    pub fn resolved_sum(&self, a: &SpectralField<F>) -> SpectralField<F> {
        self.apply_radial(a, |k| {
            self.s_symbol(self.j_max + 1, k) - self.s_symbol(self.j_min, k)
        })
    }

    /// Largest coefficient amplitude the resolved bank does not reproduce
    /// (mean mode excluded): content outside the covered annuli.
    pub fn unresolved_residual(&self, a: &SpectralField<F>) -> F {
        let mut lost = a.clone() - &self.resolved_sum(a);
        lost.remove_mean();
        lost.max_coeff_amplitude()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::field::SpectralField;

    fn bank(n: usize) -> LpFilterBank<f64> {
        LpFilterBank::for_grid(Grid::unit_torus(n).unwrap())
    }

    #[test]
    fn range_covers_lattice() {
        let b = bank(32);
        // k_min = 1, k_nyq = 16 on the 2*pi box
        assert_eq!(b.j_min(), -1);
        assert_eq!(b.j_max(), 3);
    }

    #[test]
    fn telescoping_is_exact_symbol_identity() {
        let b = bank(16);
        for k in [0.3, 0.7, 1.0, 1.5, 2.0, 3.7, 5.0, 8.0] {
            let sum: f64 = b.j_range().map(|j| b.delta_symbol(j, k)).sum();
            let direct = b.s_symbol(b.j_max() + 1, k) - b.s_symbol(b.j_min(), k);
            assert!((sum - direct).abs() < 1e-12);
        }
    }

    #[test]
    fn single_mode_lands_in_unique_block() {
        let g = Grid::unit_torus(16).unwrap();
        let b = LpFilterBank::for_grid(g);
        let a = SpectralField::from_fn(g, |x1, _, _| x1.cos());
        // |k| = 1 sits at the peak of Delta_{-1}
        let block = b.block(&a, -1).unwrap();
        let diff = (block.clone() - &a).max_coeff_amplitude();
        assert!(diff < 1e-12, "block should reproduce the mode, diff {diff}");
        for j in b.j_range() {
            if j == -1 {
                continue;
            }
            assert!(b.block(&a, j).unwrap().max_coeff_amplitude() < 1e-12);
        }
        // telescoped sum reproduces the field
        let total = b.resolved_sum(&a);
        assert!((total - &a).max_coeff_amplitude() < 1e-10);
    }

    #[test]
    fn constant_field_has_zero_blocks() {
        let g = Grid::unit_torus(16).unwrap();
        let b = LpFilterBank::for_grid(g);
        let a = SpectralField::from_fn(g, |_, _, _| 3.5);
        for j in b.j_range() {
            assert!(b.block(&a, j).unwrap().max_coeff_amplitude() == 0.0);
        }
    }

    #[test]
    fn high_mode_outside_low_block_support() {
        let g = Grid::unit_torus(32).unwrap();
        let b = LpFilterBank::for_grid(g);
        // |k| = 8 > 2^{j+1} for j = 1 block support upper edge 2^{j+2} = 8 (open)
        let a = SpectralField::from_fn(g, |x1, _, _| (8.0 * x1).cos());
        assert!(b.block(&a, 0).unwrap().max_coeff_amplitude() < 1e-14);
        assert!(b.block(&a, 1).unwrap().max_coeff_amplitude() < 1e-14);
    }

    #[test]
    fn out_of_range_block_errors() {
        let b = bank(16);
        assert!(matches!(
            b.block(&SpectralField::zero(*b.grid()), 99),
            Err(LpError::OutOfRange { .. })
        ));
    }
}
