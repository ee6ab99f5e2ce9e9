//! Periodic-box descriptor: resolution, side length and the integer
//! wavenumber lattice scaled by `2*pi/L`.

use thiserror::Error;

use crate::real::Real;

#[derive(Debug, Error, PartialEq)]
pub enum GridError {
    #[error("grid resolution must be a power of two >= 8, got {0}")]
    BadResolution(usize),
    #[error("box length must be positive")]
    BadLength,
}

/// Cubic periodic grid on `[0, L)^3` with `n` points per axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid<F: Real = f64> {
    n: usize,
    box_len: F,
}

impl<F: Real> Grid<F> {
    pub fn new(n: usize, box_len: F) -> Result<Self, GridError> {
        if n < 8 || !n.is_power_of_two() {
            return Err(GridError::BadResolution(n));
        }
        if box_len <= F::zero() {
            return Err(GridError::BadLength);
        }
        Ok(Self { n, box_len })
    }

    /// Side `2*pi` box, the default used throughout.
    pub fn unit_torus(n: usize) -> Result<Self, GridError> {
        Self::new(n, F::TAU())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn box_len(&self) -> F {
        self.box_len
    }

    pub fn len(&self) -> usize {
        self.n * self.n * self.n
    }

    /// Grid spacing `L / n`.
    pub fn spacing(&self) -> F {
        self.box_len / F::of(self.n as f64)
    }

    /// Lattice spacing in wavenumber space, `2*pi/L`.
    pub fn k_lattice(&self) -> F {
        F::TAU() / self.box_len
    }

    /// Largest representable wavenumber magnitude per axis, `(n/2) * 2*pi/L`.
    pub fn nyquist(&self) -> F {
        F::of((self.n / 2) as f64) * self.k_lattice()
    }

    /// Smallest nonzero wavenumber magnitude, `2*pi/L`.
    pub fn k_min(&self) -> F {
        self.k_lattice()
    }

    /// Signed integer mode for storage index `i` along one axis
    /// (`0..n/2` then `-n/2..0` in FFT order).
    pub fn mode(&self, i: usize) -> i64 {
        debug_assert!(i < self.n);
        if i < self.n / 2 {
            i as i64
        } else {
            i as i64 - self.n as i64
        }
    }

    /// Storage index of a signed integer mode, if representable.
    pub fn index_of_mode(&self, m: i64) -> Option<usize> {
        let half = (self.n / 2) as i64;
        if m >= 0 && m < half {
            Some(m as usize)
        } else if m >= -half && m < 0 {
            Some((m + self.n as i64) as usize)
        } else {
            None
        }
    }

    /// Wavenumber value for storage index `i` along one axis.
    pub fn wavenumber(&self, i: usize) -> F {
        F::of(self.mode(i) as f64) * self.k_lattice()
    }

    /// Per-axis wavenumber table in storage order.
    pub fn wavenumbers(&self) -> Vec<F> {
        (0..self.n).map(|i| self.wavenumber(i)).collect()
    }

    /// Physical coordinate of grid index `i` along one axis.
    pub fn coord(&self, i: usize) -> F {
        F::of(i as f64) * self.spacing()
    }

    /// Flat storage index of `(i, j, k)`; axis 2 contiguous.
    #[inline]
    pub fn at(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.n + j) * self.n + k
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_resolutions() {
        assert!(Grid::<f64>::new(7, 1.0).is_err());
        assert!(Grid::<f64>::new(12, 1.0).is_err());
        assert!(Grid::<f64>::new(4, 1.0).is_err());
        assert!(Grid::<f64>::new(16, 0.0).is_err());
        assert!(Grid::<f64>::new(16, 1.0).is_ok());
    }

    #[test]
    fn mode_order_matches_fft_layout() {
        let g = Grid::<f64>::unit_torus(8).unwrap();
        let modes: Vec<i64> = (0..8).map(|i| g.mode(i)).collect();
        assert_eq!(modes, vec![0, 1, 2, 3, -4, -3, -2, -1]);
        for i in 0..8 {
            assert_eq!(g.index_of_mode(g.mode(i)), Some(i));
        }
        assert_eq!(g.index_of_mode(4), None);
    }

    #[test]
    fn nyquist_scales_with_box() {
        let g = Grid::<f64>::new(32, std::f64::consts::PI).unwrap();
        assert_eq!(g.k_lattice(), 2.0);
        assert_eq!(g.nyquist(), 32.0);
    }
}
