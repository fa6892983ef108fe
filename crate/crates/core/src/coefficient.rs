//! Piecewise data, cell averaging of initial data and the staggered
//! discretization of the coefficient `k`.
//!
//! Solution values live at cell centers `x_j`; coefficient values live at
//! faces `x_{j+1/2}` and average `k` over the dual cell `[x_j, x_{j+1}]`.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::grid::{BoundaryCondition, Grid1D};
use crate::quadrature::gauss_legendre5;

/// One piece of a [`Piecewise`] function.
#[derive(Clone)]
pub enum Piece {
    Constant(f64),
    /// `intercept + slope * x`
    Affine {
        intercept: f64,
        slope: f64,
    },
    /// Arbitrary integrable function, averaged with Gauss-Legendre.
    Function(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl Piece {
    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Piece::Constant(c) => *c,
            Piece::Affine { intercept, slope } => intercept + slope * x,
            Piece::Function(f) => f(x),
        }
    }

    fn integrate(&self, a: f64, b: f64) -> f64 {
        match self {
            Piece::Constant(c) => c * (b - a),
            Piece::Affine { intercept, slope } => (b - a) * (intercept + slope * 0.5 * (a + b)),
            Piece::Function(f) => gauss_legendre5(|x| f(x), a, b),
        }
    }

    fn mean(&self, a: f64, b: f64) -> f64 {
        match self {
            Piece::Constant(c) => *c,
            Piece::Affine { intercept, slope } => intercept + slope * 0.5 * (a + b),
            Piece::Function(f) => gauss_legendre5(|x| f(x), a, b) / (b - a),
        }
    }

    fn range(&self, a: f64, b: f64) -> (f64, f64) {
        match self {
            Piece::Constant(c) => (*c, *c),
            Piece::Affine { .. } => {
                let (fa, fb) = (self.eval(a), self.eval(b));
                (fa.min(fb), fa.max(fb))
            }
            Piece::Function(f) => {
                const SAMPLES: usize = 64;
                let mut lo = f64::INFINITY;
                let mut hi = f64::NEG_INFINITY;
                for i in 0..=SAMPLES {
                    let v = f(a + (b - a) * i as f64 / SAMPLES as f64);
                    lo = lo.min(v);
                    hi = hi.max(v);
                }
                (lo, hi)
            }
        }
    }
}

impl fmt::Debug for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Piece::Constant(c) => write!(f, "Constant({c})"),
            Piece::Affine { intercept, slope } => write!(f, "Affine({intercept} + {slope}x)"),
            Piece::Function(_) => f.write_str("Function(..)"),
        }
    }
}

/// A function on the real line given by `pieces[i]` on
/// `(breaks[i-1], breaks[i]]`, the first and last pieces extending to
/// infinity. A point sitting exactly on a break belongs to the left piece.
#[derive(Debug, Clone)]
pub struct Piecewise {
    breaks: Vec<f64>,
    pieces: Vec<Piece>,
}

impl Piecewise {
    pub fn new(breaks: Vec<f64>, pieces: Vec<Piece>) -> Result<Self> {
        if pieces.len() != breaks.len() + 1 {
            return Err(Error::InvalidCoefficient(
                "need exactly one more piece than breaks",
            ));
        }
        if breaks.iter().any(|b| !b.is_finite()) {
            return Err(Error::InvalidCoefficient("break points must be finite"));
        }
        if breaks.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidCoefficient(
                "break points must be strictly increasing",
            ));
        }
        for p in &pieces {
            let finite = match p {
                Piece::Constant(c) => c.is_finite(),
                Piece::Affine { intercept, slope } => intercept.is_finite() && slope.is_finite(),
                Piece::Function(_) => true,
            };
            if !finite {
                return Err(Error::InvalidCoefficient("piece parameters must be finite"));
            }
        }
        Ok(Self { breaks, pieces })
    }

    pub fn constant(value: f64) -> Self {
        Self {
            breaks: Vec::new(),
            pieces: alloc::vec![Piece::Constant(value)],
        }
    }

    /// `left` for `x <= at`, `right` beyond.
    pub fn step(at: f64, left: f64, right: f64) -> Self {
        Self {
            breaks: alloc::vec![at],
            pieces: alloc::vec![Piece::Constant(left), Piece::Constant(right)],
        }
    }

    pub fn function<F>(f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            breaks: Vec::new(),
            pieces: alloc::vec![Piece::Function(Arc::new(f))],
        }
    }

    pub fn breaks(&self) -> &[f64] {
        &self.breaks
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    #[inline]
    fn piece_index(&self, x: f64) -> usize {
        self.breaks.partition_point(|&b| b < x)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.pieces[self.piece_index(x)].eval(x)
    }

    /// Exact for constant and affine pieces; Gauss-Legendre per sub-interval
    /// otherwise. Sub-intervals are split at every break inside `[a, b]`.
    pub fn integrate(&self, a: f64, b: f64) -> f64 {
        if b <= a {
            return -self.integrate_ordered(b, a);
        }
        self.integrate_ordered(a, b)
    }

    fn integrate_ordered(&self, a: f64, b: f64) -> f64 {
        let mut total = 0.0;
        self.segments(a, b, |p, lo, hi| total += p.integrate(lo, hi));
        total
    }

    // Visits the pieces covering `[a, b]`, clipped to it.
    fn segments<F: FnMut(&Piece, f64, f64)>(&self, a: f64, b: f64, mut visit: F) {
        let mut lo = a;
        let mut idx = self.piece_index(a);
        // `a` sitting on a break belongs to the left piece, but the interval
        // extends to the right of it.
        if idx < self.breaks.len() && self.breaks[idx] <= a {
            idx += 1;
        }
        loop {
            let hi = self.breaks.get(idx).map_or(b, |&br| br.min(b));
            if hi > lo {
                visit(&self.pieces[idx], lo, hi);
            }
            if hi >= b {
                break;
            }
            lo = hi;
            idx += 1;
        }
    }

    /// Mean value on `[a, b]`, `a < b`. Exact when a single constant piece
    /// covers the interval.
    pub fn average(&self, a: f64, b: f64) -> f64 {
        let mut parts = 0;
        let mut single = 0.0;
        let mut weighted = 0.0;
        self.segments(a, b, |p, lo, hi| {
            let m = p.mean(lo, hi);
            parts += 1;
            single = m;
            weighted += m * (hi - lo);
        });
        if parts == 1 {
            single
        } else {
            weighted / (b - a)
        }
    }

    /// Lower and upper bound of the function on `[a, b]`.
    pub fn range_on(&self, a: f64, b: f64) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        let mut start = a;
        let mut idx = self.piece_index(a);
        loop {
            let end = self.breaks.get(idx).map_or(b, |&br| br.min(b));
            let (plo, phi) = self.pieces[idx].range(start, end.max(start));
            lo = lo.min(plo);
            hi = hi.max(phi);
            if end >= b {
                break;
            }
            start = end;
            idx += 1;
        }
        (lo, hi)
    }

    /// Break points where the one-sided limits differ.
    pub fn jump_locations(&self) -> Vec<f64> {
        self.breaks
            .iter()
            .enumerate()
            .filter(|(i, &x)| self.pieces[*i].eval(x) != self.pieces[i + 1].eval(x))
            .map(|(_, &x)| x)
            .collect()
    }
}

/// Cell averages of `u0`; exact for piecewise constant and affine data.
pub fn project_initial(u0: &Piecewise, grid: &Grid1D) -> Result<Field> {
    let dx = grid.dx();
    let mut values = Vec::with_capacity(grid.n_cells());
    for j in 0..grid.n_cells() {
        let a = grid.face(j as isize);
        let v = u0.average(a, a + dx);
        if !v.is_finite() {
            return Err(Error::InvalidInitialData {
                cell: j,
                reason: "non-finite cell average",
            });
        }
        values.push(v);
    }
    Field::on_grid(grid, values, 0.0)
}

/// Coefficient `k` sampled on faces by averaging over dual cells.
#[derive(Debug, Clone)]
pub struct CoefficientK {
    bc: BoundaryCondition,
    n_cells: usize,
    jump_locations: Vec<f64>,
    /// `values[i]` is `k_{i-1/2}`, the face left of cell `i`.
    values: Vec<f64>,
}

/// Interface averages `k_{j+1/2} = (1/Δx) ∫_{x_j}^{x_{j+1}} k dx`.
///
/// On a periodic grid the face left of cell 0 wraps around the domain end.
pub fn average_k(k: &Piecewise, grid: &Grid1D) -> Result<CoefficientK> {
    if k.breaks()
        .iter()
        .any(|&b| b < grid.x_left() || b > grid.x_right())
    {
        return Err(Error::InvalidCoefficient("break point outside the domain"));
    }
    let dx = grid.dx();
    let n_faces = grid.n_interfaces();
    let mut values = Vec::with_capacity(n_faces);
    for i in 0..n_faces {
        let a = grid.center(i as isize - 1);
        let b = a + dx;
        let v = match grid.bc() {
            BoundaryCondition::Periodic if a < grid.x_left() => {
                let length = grid.x_right() - grid.x_left();
                (k.integrate(a + length, grid.x_right()) + k.integrate(grid.x_left(), b)) / dx
            }
            _ => k.average(a, b),
        };
        if !v.is_finite() {
            return Err(Error::InvalidCoefficient("non-finite face average"));
        }
        values.push(v);
    }
    Ok(CoefficientK {
        bc: grid.bc(),
        n_cells: grid.n_cells(),
        jump_locations: k.jump_locations(),
        values,
    })
}

impl CoefficientK {
    /// Constant coefficient on `grid`.
    pub fn uniform(grid: &Grid1D, value: f64) -> Self {
        Self {
            bc: grid.bc(),
            n_cells: grid.n_cells(),
            jump_locations: Vec::new(),
            values: alloc::vec![value; grid.n_interfaces()],
        }
    }

    /// Uses face values directly; `values[i]` is the face left of cell `i`.
    pub fn from_face_values(grid: &Grid1D, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.n_interfaces() {
            return Err(Error::InvalidCoefficient("face count differs from grid"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidCoefficient("non-finite face value"));
        }
        Ok(Self {
            bc: grid.bc(),
            n_cells: grid.n_cells(),
            jump_locations: Vec::new(),
            values,
        })
    }

    /// All stored face values.
    pub fn face_values(&self) -> &[f64] {
        &self.values
    }

    pub fn jump_locations(&self) -> &[f64] {
        &self.jump_locations
    }

    /// `k_{j-1/2}`
    #[inline]
    pub fn left_of(&self, j: usize) -> f64 {
        self.values[j]
    }

    /// `k_{j+1/2}`
    #[inline]
    pub fn right_of(&self, j: usize) -> f64 {
        match self.bc {
            BoundaryCondition::Periodic => self.values[(j + 1) % self.n_cells],
            BoundaryCondition::Outflow => self.values[j + 1],
        }
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

    pub fn sup_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Checks `lower <= k_{j+1/2} <= upper` on every face.
    pub fn check_bounds(&self, lower: f64, upper: f64) -> Result<()> {
        if self.values.iter().all(|&v| (lower..=upper).contains(&v)) {
            Ok(())
        } else {
            Err(Error::InvalidCoefficient(
                "face value outside declared bounds",
            ))
        }
    }

    pub fn is_uniform(&self) -> bool {
        self.values.windows(2).all(|w| w[0] == w[1])
    }

    /// Marks every cell within `width` cells of a jump of `k`.
    pub fn jump_mask(&self, grid: &Grid1D, width: usize) -> Vec<bool> {
        let n = grid.n_cells();
        let mut mask = alloc::vec![false; n];
        for &xi in &self.jump_locations {
            // Nearest face to the jump.
            let face = libm::round((xi - grid.x_left()) / grid.dx()) as isize;
            for off in -(width as isize)..(width as isize) {
                let j = face + off;
                let idx = match grid.bc() {
                    BoundaryCondition::Periodic => Some(j.rem_euclid(n as isize) as usize),
                    BoundaryCondition::Outflow => {
                        (0..n as isize).contains(&j).then_some(j as usize)
                    }
                };
                if let Some(i) = idx {
                    mask[i] = true;
                }
            }
        }
        mask
    }
}
