//! Discrete difference operators `D_±`, `D_+D_-`, `D_+D_-²` with ghost cells
//! synthesized from the grid's boundary condition.

use alloc::vec::Vec;

use crate::field::Field;
use crate::grid::Grid1D;

/// Value at a possibly ghost index.
#[inline]
pub fn at(grid: &Grid1D, values: &[f64], j: isize) -> f64 {
    values[grid.resolve(j)]
}

/// `D_+ u_j = (u_{j+1} - u_j) / Δx`
pub fn diff_forward(grid: &Grid1D, field: &Field, j: usize) -> f64 {
    let u = field.values();
    let j = j as isize;
    (at(grid, u, j + 1) - at(grid, u, j)) / grid.dx()
}

/// `D_- u_j = (u_j - u_{j-1}) / Δx`
pub fn diff_backward(grid: &Grid1D, field: &Field, j: usize) -> f64 {
    let u = field.values();
    let j = j as isize;
    (at(grid, u, j) - at(grid, u, j - 1)) / grid.dx()
}

/// Copies `values` into a buffer padded with `left` ghosts before and
/// `right` ghosts after. Entry `j + left` of the result is `u_j`.
pub fn with_ghosts(grid: &Grid1D, values: &[f64], left: usize, right: usize, out: &mut Vec<f64>) {
    out.clear();
    out.reserve(values.len() + left + right);
    let n = values.len() as isize;
    for j in -(left as isize)..n + right as isize {
        out.push(at(grid, values, j));
    }
}

/// Forward differences `D_+ u_j` for every cell.
pub fn forward_all(grid: &Grid1D, values: &[f64]) -> Vec<f64> {
    (0..values.len() as isize)
        .map(|j| (at(grid, values, j + 1) - at(grid, values, j)) / grid.dx())
        .collect()
}

/// Backward differences `D_- u_j` for every cell.
pub fn backward_all(grid: &Grid1D, values: &[f64]) -> Vec<f64> {
    (0..values.len() as isize)
        .map(|j| (at(grid, values, j) - at(grid, values, j - 1)) / grid.dx())
        .collect()
}

/// `D_+D_- u_j = (u_{j+1} - 2u_j + u_{j-1}) / Δx²`
pub fn second_all(grid: &Grid1D, values: &[f64]) -> Vec<f64> {
    let dx2 = grid.dx() * grid.dx();
    (0..values.len() as isize)
        .map(|j| {
            (at(grid, values, j + 1) - 2.0 * at(grid, values, j) + at(grid, values, j - 1)) / dx2
        })
        .collect()
}

/// `D_-² u_j = (u_j - 2u_{j-1} + u_{j-2}) / Δx²`
pub fn backward_second_all(grid: &Grid1D, values: &[f64]) -> Vec<f64> {
    let dx2 = grid.dx() * grid.dx();
    (0..values.len() as isize)
        .map(|j| {
            (at(grid, values, j) - 2.0 * at(grid, values, j - 1) + at(grid, values, j - 2)) / dx2
        })
        .collect()
}

/// `D_+D_-² u_j = (u_{j+1} - 3u_j + 3u_{j-1} - u_{j-2}) / Δx³`
pub fn third_all(grid: &Grid1D, values: &[f64]) -> Vec<f64> {
    let dx3 = grid.dx() * grid.dx() * grid.dx();
    (0..values.len() as isize)
        .map(|j| {
            ((at(grid, values, j + 1) - at(grid, values, j - 2))
                - 3.0 * (at(grid, values, j) - at(grid, values, j - 1)))
                / dx3
        })
        .collect()
}

/// Discrete `ℓ²` inner product `Δx Σ u_j v_j`.
pub fn inner(grid: &Grid1D, u: &[f64], v: &[f64]) -> f64 {
    grid.dx() * u.iter().zip(v).map(|(a, b)| a * b).sum::<f64>()
}
