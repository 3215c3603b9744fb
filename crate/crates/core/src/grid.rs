//! Rectangular evaluation grids in the light-cone plane.

use crate::error::{Error, Result};

/// Uniform (n_l x n_r) grid over a rectangle in (xi_L, xi_R).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub l_min: f64,
    pub l_max: f64,
    pub r_min: f64,
    pub r_max: f64,
    pub n_l: usize,
    pub n_r: usize,
}

impl GridSpec {
    pub fn new(l_min: f64, l_max: f64, r_min: f64, r_max: f64, n_l: usize, n_r: usize) -> Result<Self> {
        if n_l < 2 || n_r < 2 {
            return Err(Error::InvalidParameter(format!(
                "grid resolution must be at least 2 per direction, got {n_l} x {n_r}"
            )));
        }
        if !(l_min < l_max && r_min < r_max) {
            return Err(Error::InvalidParameter(
                "grid bounds must satisfy min < max".into(),
            ));
        }
        Ok(Self {
            l_min,
            l_max,
            r_min,
            r_max,
            n_l,
            n_r,
        })
    }

    pub fn step_l(&self) -> f64 {
        (self.l_max - self.l_min) / (self.n_l - 1) as f64
    }

    pub fn step_r(&self) -> f64 {
        (self.r_max - self.r_min) / (self.n_r - 1) as f64
    }

    pub fn xi_l(&self, i: usize) -> f64 {
        self.l_min + self.step_l() * i as f64
    }

    pub fn xi_r(&self, j: usize) -> f64 {
        self.r_min + self.step_r() * j as f64
    }

    pub fn len(&self) -> usize {
        self.n_l * self.n_r
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Flat index, row-major over (i, j) = (xi_L index, xi_R index).
    pub fn idx(&self, i: usize, j: usize) -> usize {
        i * self.n_r + j
    }

    /// All (i, j, xi_L, xi_R) tuples in deterministic row-major order.
    pub fn points(&self) -> impl Iterator<Item = (usize, usize, f64, f64)> + '_ {
        (0..self.n_l).flat_map(move |i| {
            (0..self.n_r).map(move |j| (i, j, self.xi_l(i), self.xi_r(j)))
        })
    }
}
