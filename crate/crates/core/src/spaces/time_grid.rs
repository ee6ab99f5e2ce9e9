//! Logarithmic time grid discretizing `sup_t` and `dt/t` integrals.

use thiserror::Error;

use crate::real::Real;
use crate::spectral::grid::Grid;

#[derive(Debug, Error, PartialEq)]
pub enum TimeGridError {
    #[error("need 0 < t_min < t_max, got [{0}, {1}]")]
    BadRange(f64, f64),
    #[error("need at least {MIN_COUNT} samples, got {0}")]
    TooFew(usize),
}

pub const MIN_COUNT: usize = 64;

/// Log-spaced time samples on `[t_min, t_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid<F: Real = f64> {
    t_min: F,
    t_max: F,
    count: usize,
}

impl<F: Real> TimeGrid<F> {
    pub fn new(t_min: F, t_max: F, count: usize) -> Result<Self, TimeGridError> {
        if !(t_min > F::zero() && t_min < t_max) {
            return Err(TimeGridError::BadRange(t_min.to_f64(), t_max.to_f64()));
        }
        if count < MIN_COUNT {
            return Err(TimeGridError::TooFew(count));
        }
        Ok(Self { t_min, t_max, count })
    }

    /// Default window for a grid: `t_min = (L/n)^2`, `t_max = 4 L^2`.
    pub fn for_grid(grid: &Grid<F>) -> Self {
        let h = grid.spacing();
        let l = grid.box_len();
        Self {
            t_min: h * h,
            t_max: F::of(4.0) * l * l,
            count: MIN_COUNT,
        }
    }

    pub fn t_min(&self) -> F {
        self.t_min
    }

    pub fn t_max(&self) -> F {
        self.t_max
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn with_count(self, count: usize) -> Result<Self, TimeGridError> {
        Self::new(self.t_min, self.t_max, count)
    }

    /// The sample times, log-spaced inclusive of both endpoints.
    pub fn times(&self) -> Vec<F> {
        let lo = self.t_min.ln();
        let hi = self.t_max.ln();
        let m = self.count - 1;
        (0..self.count)
            .map(|i| (lo + (hi - lo) * F::of(i as f64) / F::of(m as f64)).exp())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_window_matches_grid() {
        let g = Grid::<f64>::unit_torus(32).unwrap();
        let tg = TimeGrid::for_grid(&g);
        let h = std::f64::consts::TAU / 32.0;
        assert!((tg.t_min() - h * h).abs() < 1e-15);
        assert!((tg.t_max() - 4.0 * std::f64::consts::TAU.powi(2)).abs() < 1e-12);
        assert_eq!(tg.count(), 64);
        let ts = tg.times();
        assert_eq!(ts.len(), 64);
        assert!(ts.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn rejects_degenerate_ranges() {
        assert!(TimeGrid::<f64>::new(0.0, 1.0, 64).is_err());
        assert!(TimeGrid::<f64>::new(2.0, 1.0, 64).is_err());
        assert!(TimeGrid::<f64>::new(0.1, 1.0, 32).is_err());
    }
}
