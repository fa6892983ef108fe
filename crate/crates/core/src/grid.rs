use crate::error::{Error, Result};

/// How values outside `[x_left, x_right)` are synthesized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryCondition {
    /// Indices wrap around.
    Periodic,
    /// Zero-gradient far field: ghost cells copy the nearest end cell.
    Outflow,
}

/// Uniform mesh of `n_cells` cells `I_j = [x_{j-1/2}, x_{j+1/2})`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    x_left: f64,
    x_right: f64,
    n_cells: usize,
    dx: f64,
    bc: BoundaryCondition,
}

impl Grid1D {
    pub fn new(x_left: f64, x_right: f64, n_cells: usize, bc: BoundaryCondition) -> Result<Self> {
        if !x_left.is_finite() || !x_right.is_finite() {
            return Err(Error::InvalidGrid("domain ends must be finite"));
        }
        if x_right <= x_left {
            return Err(Error::InvalidGrid("x_right must exceed x_left"));
        }
        if n_cells == 0 {
            return Err(Error::InvalidGrid("n_cells must be positive"));
        }
        let dx = (x_right - x_left) / n_cells as f64;
        if !(dx > 0.0) {
            return Err(Error::InvalidGrid("cell width underflows"));
        }
        Ok(Self {
            x_left,
            x_right,
            n_cells,
            dx,
            bc,
        })
    }

    #[inline]
    pub fn x_left(&self) -> f64 {
        self.x_left
    }

    #[inline]
    pub fn x_right(&self) -> f64 {
        self.x_right
    }

    #[inline]
    pub fn n_cells(&self) -> usize {
        self.n_cells
    }

    #[inline]
    pub fn dx(&self) -> f64 {
        self.dx
    }

    #[inline]
    pub fn bc(&self) -> BoundaryCondition {
        self.bc
    }

    pub fn with_cells(&self, n_cells: usize) -> Result<Self> {
        Self::new(self.x_left, self.x_right, n_cells, self.bc)
    }

    /// Cell center `x_j`. Negative or overflowing `j` address ghost cells.
    #[inline]
    pub fn center(&self, j: isize) -> f64 {
        self.x_left + (j as f64 + 0.5) * self.dx
    }

    /// Position of the face between cells `i - 1` and `i`, i.e. `x_{i-1/2}`.
    #[inline]
    pub fn face(&self, i: isize) -> f64 {
        self.x_left + i as f64 * self.dx
    }

    /// Number of stored interface coefficients `k_{j+1/2}`: one per cell on
    /// a periodic grid, one more than the cell count otherwise.
    #[inline]
    pub fn n_interfaces(&self) -> usize {
        match self.bc {
            BoundaryCondition::Periodic => self.n_cells,
            BoundaryCondition::Outflow => self.n_cells + 1,
        }
    }

    /// Maps a possibly out-of-range cell index onto a stored one.
    #[inline]
    pub fn resolve(&self, j: isize) -> usize {
        let n = self.n_cells as isize;
        match self.bc {
            BoundaryCondition::Periodic => j.rem_euclid(n) as usize,
            BoundaryCondition::Outflow => j.clamp(0, n - 1) as usize,
        }
    }

    /// Index of the cell containing `x`, if inside the domain.
    pub fn locate(&self, x: f64) -> Option<usize> {
        if x < self.x_left || x >= self.x_right {
            return None;
        }
        let j = libm::floor((x - self.x_left) / self.dx) as usize;
        Some(j.min(self.n_cells - 1))
    }
}
