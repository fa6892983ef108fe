//! Tridiagonal and cyclic tridiagonal solvers.
//!
//! Row `i` of the matrix is `lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1]`.
//! In the cyclic case `lower[0]` couples row 0 to `x[n-1]` and `upper[n-1]`
//! couples row `n-1` to `x[0]`; otherwise those two entries are ignored.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Strict diagonal dominance `|d_i| > |l_i| + |u_i|` on every row.
pub fn check_dominance(lower: &[f64], diag: &[f64], upper: &[f64], cyclic: bool) -> Result<()> {
    let n = diag.len();
    for i in 0..n {
        let l = if i > 0 || cyclic { lower[i].abs() } else { 0.0 };
        let u = if i + 1 < n || cyclic {
            upper[i].abs()
        } else {
            0.0
        };
        if !(diag[i].abs() > l + u) {
            return Err(Error::DominanceViolation { row: i });
        }
    }
    Ok(())
}

/// Solves the system after checking strict diagonal dominance.
pub fn solve_tridiagonal(
    lower: &[f64],
    diag: &[f64],
    upper: &[f64],
    rhs: &[f64],
    cyclic: bool,
) -> Result<Vec<f64>> {
    let mut solver = TridiagonalSolver::new(diag.len());
    let mut out = vec![0.0; diag.len()];
    solver.solve(lower, diag, upper, rhs, cyclic, &mut out)?;
    Ok(out)
}

/// Scratch space for repeated solves of the same size.
#[derive(Debug, Clone, Default)]
pub struct TridiagonalSolver {
    c_prime: Vec<f64>,
    bb: Vec<f64>,
    z: Vec<f64>,
    u: Vec<f64>,
}

impl TridiagonalSolver {
    pub fn new(n: usize) -> Self {
        Self {
            c_prime: vec![0.0; n],
            bb: vec![0.0; n],
            z: vec![0.0; n],
            u: vec![0.0; n],
        }
    }

    /// Checks dominance, then solves into `out`.
    pub fn solve(
        &mut self,
        lower: &[f64],
        diag: &[f64],
        upper: &[f64],
        rhs: &[f64],
        cyclic: bool,
        out: &mut [f64],
    ) -> Result<()> {
        let n = diag.len();
        assert!(lower.len() == n && upper.len() == n && rhs.len() == n && out.len() == n);
        if n == 0 {
            return Ok(());
        }
        check_dominance(lower, diag, upper, cyclic)?;
        self.resize(n);
        if !cyclic {
            return thomas(lower, diag, upper, rhs, &mut self.c_prime, out);
        }
        if n <= 2 {
            return small_cyclic(lower, diag, upper, rhs, out);
        }
        // Sherman-Morrison: A = B + w vᵀ with w = (γ, 0, .., α), v = (1, 0, .., β/γ).
        let alpha = upper[n - 1];
        let beta = lower[0];
        let gamma = -diag[0];
        self.bb.copy_from_slice(diag);
        self.bb[0] -= gamma;
        self.bb[n - 1] -= alpha * beta / gamma;
        thomas(lower, &self.bb, upper, rhs, &mut self.c_prime, out)?;
        self.u.iter_mut().for_each(|v| *v = 0.0);
        self.u[0] = gamma;
        self.u[n - 1] = alpha;
        thomas(
            lower,
            &self.bb,
            upper,
            &self.u,
            &mut self.c_prime,
            &mut self.z,
        )?;
        let num = out[0] + beta * out[n - 1] / gamma;
        let den = 1.0 + self.z[0] + beta * self.z[n - 1] / gamma;
        if den == 0.0 || !den.is_finite() {
            return Err(Error::SingularSystem { row: 0 });
        }
        let fact = num / den;
        for (x, z) in out.iter_mut().zip(&self.z) {
            *x -= fact * z;
        }
        Ok(())
    }

    fn resize(&mut self, n: usize) {
        for buf in [&mut self.c_prime, &mut self.bb, &mut self.z, &mut self.u] {
            buf.resize(n, 0.0);
        }
    }
}

fn thomas(
    lower: &[f64],
    diag: &[f64],
    upper: &[f64],
    rhs: &[f64],
    c_prime: &mut [f64],
    out: &mut [f64],
) -> Result<()> {
    let n = diag.len();
    let mut pivot = diag[0];
    if pivot == 0.0 {
        return Err(Error::SingularSystem { row: 0 });
    }
    c_prime[0] = upper[0] / pivot;
    out[0] = rhs[0] / pivot;
    for i in 1..n {
        pivot = diag[i] - lower[i] * c_prime[i - 1];
        if pivot == 0.0 || !pivot.is_finite() {
            return Err(Error::SingularSystem { row: i });
        }
        c_prime[i] = upper[i] / pivot;
        out[i] = (rhs[i] - lower[i] * out[i - 1]) / pivot;
    }
    for i in (0..n - 1).rev() {
        out[i] -= c_prime[i] * out[i + 1];
    }
    Ok(())
}

// With one or two unknowns the cyclic neighbours coincide, so the couplings add.
fn small_cyclic(
    lower: &[f64],
    diag: &[f64],
    upper: &[f64],
    rhs: &[f64],
    out: &mut [f64],
) -> Result<()> {
    if diag.len() == 1 {
        let a = diag[0] + lower[0] + upper[0];
        if a == 0.0 {
            return Err(Error::SingularSystem { row: 0 });
        }
        out[0] = rhs[0] / a;
        return Ok(());
    }
    let (a, b) = (diag[0], lower[0] + upper[0]);
    let (c, d) = (lower[1] + upper[1], diag[1]);
    let det = a * d - b * c;
    if det == 0.0 {
        return Err(Error::SingularSystem { row: 1 });
    }
    out[0] = (d * rhs[0] - b * rhs[1]) / det;
    out[1] = (a * rhs[1] - c * rhs[0]) / det;
    Ok(())
}
