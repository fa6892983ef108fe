use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::grid::Grid1D;

/// Cell averages `u_j^n` at a single time level.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    values: Vec<f64>,
    time: f64,
}

impl Field {
    /// Builds a field, rejecting NaN or infinite entries.
    pub fn new(values: Vec<f64>, time: f64) -> Result<Self> {
        if let Some(cell) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidInitialData {
                cell,
                reason: "non-finite value",
            });
        }
        if values.is_empty() {
            return Err(Error::InvalidInitialData {
                cell: 0,
                reason: "empty field",
            });
        }
        Ok(Self { values, time })
    }

    /// Like [`Field::new`] but also checks the length against `grid`.
    pub fn on_grid(grid: &Grid1D, values: Vec<f64>, time: f64) -> Result<Self> {
        if values.len() != grid.n_cells() {
            return Err(Error::InvalidInitialData {
                cell: values.len().min(grid.n_cells()),
                reason: "length differs from grid cell count",
            });
        }
        Self::new(values, time)
    }

    pub(crate) fn from_step(values: Vec<f64>, time: f64) -> Result<Self> {
        if let Some(cell) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteState { cell });
        }
        Ok(Self { values, time })
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn time(&self) -> f64 {
        self.time
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Overrides the time stamp, used to land the final step exactly on `T`.
    pub fn with_time(mut self, time: f64) -> Self {
        self.time = time;
        self
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }
}
