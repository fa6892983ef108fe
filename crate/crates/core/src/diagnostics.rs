//! Norms, energies, entropy residuals and solution-structure classification.

use alloc::vec;
use alloc::vec::Vec;

use crate::coefficient::CoefficientK;
use crate::error::Result;
use crate::field::Field;
use crate::flux::NumericalFlux;
use crate::grid::{BoundaryCondition, Grid1D};
use crate::model::FluxModel;
use crate::ops::at;
use crate::params::{SchemeKind, SchemeParams};

/// Discrete norms with the `Δx` weights of the analysis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Norms {
    /// `Δx Σ |u_j|`
    pub l1: f64,
    /// `(Δx Σ u_j²)^{1/2}`
    pub l2: f64,
    pub linf: f64,
    /// `Σ |u_{j+1} - u_j|`, including the wrap on periodic grids.
    pub bv: f64,
}

pub fn norms(grid: &Grid1D, u: &[f64]) -> Norms {
    let dx = grid.dx();
    let l1 = dx * u.iter().map(|v| v.abs()).sum::<f64>();
    let l2 = libm::sqrt(dx * u.iter().map(|v| v * v).sum::<f64>());
    let linf = u.iter().fold(0.0, |m: f64, v| m.max(v.abs()));
    let mut bv: f64 = u.windows(2).map(|w| (w[1] - w[0]).abs()).sum();
    if grid.bc() == BoundaryCondition::Periodic && u.len() > 1 {
        bv += (u[0] - u[u.len() - 1]).abs();
    }
    Norms { l1, l2, linf, bv }
}

/// `Δx Σ u_j`
pub fn mass(grid: &Grid1D, u: &[f64]) -> f64 {
    grid.dx() * u.iter().sum::<f64>()
}

/// `‖D_- u‖² = Δx Σ (D_- u_j)²`
fn gradient_sq(grid: &Grid1D, u: &[f64]) -> f64 {
    let dx = grid.dx();
    (0..u.len() as isize)
        .map(|j| {
            let d = (at(grid, u, j) - at(grid, u, j - 1)) / dx;
            d * d
        })
        .sum::<f64>()
        * dx
}

/// Energy of the scheme: `½‖u‖² + ((γμ + βΔx²)/2)‖D_- u‖²` for
/// capillarity, `½‖u‖²` for the diffusive-dispersive scheme.
pub fn energy(grid: &Grid1D, u: &[f64], params: &SchemeParams, kind: SchemeKind) -> f64 {
    let dx = grid.dx();
    let half_l2 = 0.5 * dx * u.iter().map(|v| v * v).sum::<f64>();
    match kind {
        SchemeKind::Dispersive => half_l2,
        SchemeKind::Capillarity => {
            let weight = 0.5 * (params.dispersion(dx) + params.beta * dx * dx);
            half_l2 + weight * gradient_sq(grid, u)
        }
    }
}

/// `n + 1` equally spaced Kružkov constants spanning `bounds`.
pub fn kruzkov_constants(bounds: (f64, f64), count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![0.5 * (bounds.0 + bounds.1)],
        _ => (0..count)
            .map(|i| bounds.0 + (bounds.1 - bounds.0) * i as f64 / (count - 1) as f64)
            .collect(),
    }
}

#[inline]
fn sgn(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Residual of the conservative update
/// `D^t_+ u_j + D_-(h_{j+1/2} - ν(u_{j+1} - u_j))`, one entry per cell.
///
/// With `ν = β` this vanishes for the scheme without dispersion.
pub fn weak_residual<M: FluxModel>(
    grid: &Grid1D,
    u_old: &Field,
    u_new: &Field,
    k: &CoefficientK,
    nf: &NumericalFlux<M>,
    dt: f64,
    viscosity: f64,
) -> Result<Vec<f64>> {
    let (u, w) = (u_old.values(), u_new.values());
    let faces = face_quantities(grid, k, |i, kf| {
        let (l, r) = (at(grid, u, i - 1), at(grid, u, i));
        Ok(nf.interface(kf, l, r)? - viscosity * (r - l))
    })?;
    let dx = grid.dx();
    Ok((0..u.len())
        .map(|j| (w[j] - u[j]) / dt + (faces[j + 1] - faces[j]) / dx)
        .collect())
}

// Evaluates `q(i, k_{i-1/2})` on faces `0..=n`, wrapping on periodic grids.
fn face_quantities<F>(grid: &Grid1D, k: &CoefficientK, mut q: F) -> Result<Vec<f64>>
where
    F: FnMut(isize, f64) -> Result<f64>,
{
    let n = grid.n_cells();
    let kv = k.face_values();
    let mut out = Vec::with_capacity(n + 1);
    for (i, &kf) in kv.iter().enumerate() {
        out.push(q(i as isize, kf)?);
    }
    if grid.bc() == BoundaryCondition::Periodic {
        out.push(out[0]);
    }
    Ok(out)
}

/// Discrete Kružkov entropy residual for the constant `c`:
///
/// ```text
/// r_j = D^t_+|u_j - c| + D_- K_{j+1/2} + sgn(u_j^{n+1} - c) D_- h_{j+1/2}(c, c)
/// K   = h(u∨c, v∨c) - h(u∧c, v∧c) - ν(|v - c| - |u - c|)
/// ```
///
/// where `h` is the interface flux including its coefficient, `(u, v)` are
/// the neighbouring states at time level `n`, and `ν` is the numerical
/// viscosity of the update (`β` for the regularized schemes, `0` for the
/// bare monotone scheme). Positive entries signal entropy production.
///
/// Cells with `mask[j]` set are reported as `0`.
#[allow(clippy::too_many_arguments)]
pub fn entropy_residual<M: FluxModel>(
    grid: &Grid1D,
    u_old: &Field,
    u_new: &Field,
    k: &CoefficientK,
    nf: &NumericalFlux<M>,
    c: f64,
    dt: f64,
    viscosity: f64,
    mask: Option<&[bool]>,
) -> Result<Vec<f64>> {
    let (u, w) = (u_old.values(), u_new.values());
    let entropy_flux = face_quantities(grid, k, |i, kf| {
        let (l, r) = (at(grid, u, i - 1), at(grid, u, i));
        let hi = nf.interface(kf, l.max(c), r.max(c))?;
        let lo = nf.interface(kf, l.min(c), r.min(c))?;
        Ok(hi - lo - viscosity * ((r - c).abs() - (l - c).abs()))
    })?;
    let constant_flux = face_quantities(grid, k, |_, kf| nf.interface(kf, c, c))?;
    let dx = grid.dx();
    Ok((0..u.len())
        .map(|j| {
            if mask.is_some_and(|m| m[j]) {
                return 0.0;
            }
            ((w[j] - c).abs() - (u[j] - c).abs()) / dt
                + (entropy_flux[j + 1] - entropy_flux[j]) / dx
                + sgn(w[j] - c) * (constant_flux[j + 1] - constant_flux[j]) / dx
        })
        .collect())
}

/// Largest entropy residual over all cells and all `constants`.
#[allow(clippy::too_many_arguments)]
pub fn entropy_residual_max<M: FluxModel>(
    grid: &Grid1D,
    u_old: &Field,
    u_new: &Field,
    k: &CoefficientK,
    nf: &NumericalFlux<M>,
    constants: &[f64],
    dt: f64,
    viscosity: f64,
    mask: Option<&[bool]>,
) -> Result<f64> {
    let mut m = f64::NEG_INFINITY;
    for &c in constants {
        let r = entropy_residual(grid, u_old, u_new, k, nf, c, dt, viscosity, mask)?;
        m = r.iter().copied().fold(m, f64::max);
    }
    Ok(m)
}

/// A run of nearly constant cells `start..end`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Plateau {
    pub value: f64,
    pub start: usize,
    pub end: usize,
}

impl Plateau {
    pub fn width(&self) -> usize {
        self.end - self.start
    }
}

/// 1% of the data range, with a floor for constant data.
pub fn default_tolerance(u: &[f64]) -> f64 {
    let (lo, hi) = u
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| {
            (a.min(v), b.max(v))
        });
    (0.01 * (hi - lo)).max(1e-12 * hi.abs().max(lo.abs()).max(1.0))
}

/// 5% of the cell count, at least one cell.
pub fn default_min_width(n_cells: usize) -> usize {
    (n_cells / 20).max(1)
}

/// Maximal runs of at least `min_width` cells deviating less than
/// `tolerance` from their mean, in spatial order. Neighbouring runs whose
/// means differ by less than `tolerance` are merged.
pub fn classify_structure(u: &[f64], tolerance: f64, min_width: usize) -> Vec<Plateau> {
    let n = u.len();
    let min_width = min_width.max(1);
    let mut runs: Vec<Plateau> = Vec::new();
    let mut start = 0;
    while start < n {
        let (mut lo, mut hi, mut sum) = (u[start], u[start], u[start]);
        let mut end = start + 1;
        while end < n {
            let v = u[end];
            let (nlo, nhi, nsum) = (lo.min(v), hi.max(v), sum + v);
            let mean = nsum / (end + 1 - start) as f64;
            if nhi - mean >= tolerance || mean - nlo >= tolerance {
                break;
            }
            (lo, hi, sum) = (nlo, nhi, nsum);
            end += 1;
        }
        if end - start >= min_width {
            runs.push(Plateau {
                value: sum / (end - start) as f64,
                start,
                end,
            });
            start = end;
        } else {
            start += 1;
        }
    }
    let mut merged: Vec<Plateau> = Vec::with_capacity(runs.len());
    for p in runs {
        match merged.last_mut() {
            Some(q) if (q.value - p.value).abs() < tolerance => {
                let (wq, wp) = (q.width() as f64, p.width() as f64);
                q.value = (q.value * wq + p.value * wp) / (wq + wp);
                q.end = p.end;
            }
            _ => merged.push(p),
        }
    }
    merged
}

/// A jump between two consecutive plateaus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transition {
    pub left_value: f64,
    pub right_value: f64,
    /// Face index `i` of the steepest jump, between cells `i-1` and `i`.
    pub face: usize,
    /// Position of that face.
    pub x: f64,
}

/// Locates the steepest jump between each pair of consecutive plateaus.
pub fn transitions(grid: &Grid1D, u: &[f64], plateaus: &[Plateau]) -> Vec<Transition> {
    plateaus
        .windows(2)
        .map(|w| {
            let (a, b) = (w[0], w[1]);
            let lo = (a.end - 1).max(1);
            let face = (lo..=b.start)
                .max_by(|&i, &j| (u[i] - u[i - 1]).abs().total_cmp(&(u[j] - u[j - 1]).abs()))
                .unwrap_or(b.start);
            Transition {
                left_value: a.value,
                right_value: b.value,
                face,
                x: grid.face(face as isize),
            }
        })
        .collect()
}

/// Block averages of `fine` over groups of `factor` cells.
pub fn restrict(fine: &[f64], factor: usize) -> Vec<f64> {
    assert!(factor > 0 && fine.len().is_multiple_of(factor));
    fine.chunks(factor)
        .map(|c| c.iter().sum::<f64>() / factor as f64)
        .collect()
}

/// `Δx Σ |a_j - b_j|`
pub fn l1_difference(grid: &Grid1D, a: &[f64], b: &[f64]) -> f64 {
    grid.dx() * a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<f64>()
}

/// One row of the per-step diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepDiagnostics {
    pub n: usize,
    pub t: f64,
    pub mass: f64,
    pub l1: f64,
    pub l2: f64,
    pub linf: f64,
    pub bv: f64,
    pub energy: f64,
    pub entropy_residual_max: f64,
}

impl StepDiagnostics {
    pub fn measure(
        grid: &Grid1D,
        params: &SchemeParams,
        kind: SchemeKind,
        n: usize,
        u: &Field,
        entropy_residual_max: f64,
    ) -> Self {
        let v = u.values();
        let nm = norms(grid, v);
        Self {
            n,
            t: u.time(),
            mass: mass(grid, v),
            l1: nm.l1,
            l2: nm.l2,
            linf: nm.linf,
            bv: nm.bv,
            energy: energy(grid, v, params, kind),
            entropy_residual_max,
        }
    }
}

/// Running space-time sums bounded uniformly in `Δx` by the energy
/// estimates of both schemes.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AprioriSums {
    /// `max_n Δx Σ_j (u_j^n)²`
    pub sup_l2: f64,
    /// `Δx²Δt Σ_n Σ_j (D_- u_j^n)²`
    pub gradient: f64,
    /// `Δx²Δt Σ_n Σ_j (D^t_+ u_j^n)²`
    pub time_derivative: f64,
    /// `ΔtΔx²μ Σ_n Σ_j (D^t_+ D_- u_j^n)²`
    pub mixed: f64,
    /// `ΔtΔx²μ Σ_n Σ_j (D_-² u_j^n)²`
    pub second_difference: f64,
}

impl AprioriSums {
    pub fn start(grid: &Grid1D, u0: &[f64]) -> Self {
        Self {
            sup_l2: grid.dx() * u0.iter().map(|v| v * v).sum::<f64>(),
            ..Self::default()
        }
    }

    /// Adds the contribution of the step `u_old → u_new`.
    pub fn accumulate(
        &mut self,
        grid: &Grid1D,
        params: &SchemeParams,
        u_old: &[f64],
        u_new: &[f64],
        dt: f64,
    ) {
        let dx = grid.dx();
        let mu = params.mu(dx);
        let (mut grad, mut time, mut mixed, mut second) = (0.0, 0.0, 0.0, 0.0);
        for j in 0..u_old.len() as isize {
            let (a0, a1, a2) = (
                at(grid, u_old, j),
                at(grid, u_old, j - 1),
                at(grid, u_old, j - 2),
            );
            let (b0, b1) = (at(grid, u_new, j), at(grid, u_new, j - 1));
            let dm = (a0 - a1) / dx;
            let dtu = (b0 - a0) / dt;
            let dtdm = ((b0 - b1) - (a0 - a1)) / (dx * dt);
            let dmm = (a0 - 2.0 * a1 + a2) / (dx * dx);
            grad += dm * dm;
            time += dtu * dtu;
            mixed += dtdm * dtdm;
            second += dmm * dmm;
        }
        let w = dx * dx * dt;
        self.gradient += w * grad;
        self.time_derivative += w * time;
        self.mixed += w * mu * mixed;
        self.second_difference += w * mu * second;
        self.sup_l2 = self
            .sup_l2
            .max(dx * u_new.iter().map(|v| v * v).sum::<f64>());
    }

    pub fn as_array(&self) -> [f64; 5] {
        [
            self.sup_l2,
            self.gradient,
            self.time_derivative,
            self.mixed,
            self.second_difference,
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Burgers;

    fn periodic(n: usize) -> Grid1D {
        Grid1D::new(0.0, 1.0, n, BoundaryCondition::Periodic).unwrap()
    }

    #[test]
    fn norm_examples() {
        let g = periodic(10);
        assert_eq!(
            norms(&g, &[0.0; 10]),
            Norms {
                l1: 0.0,
                l2: 0.0,
                linf: 0.0,
                bv: 0.0
            }
        );
        let n = norms(&g, &[-0.5; 10]);
        assert!((n.l1 - 0.5).abs() < 1e-15);
        assert!((n.l2 - 0.5).abs() < 1e-15);
        assert_eq!((n.linf, n.bv), (0.5, 0.0));
        let step: Vec<f64> = (0..10).map(|j| if j < 5 { 1.0 } else { 0.0 }).collect();
        assert_eq!(norms(&g, &step).bv, 2.0);
    }

    #[test]
    fn energy_examples() {
        let g = periodic(8);
        let p = SchemeParams::default();
        assert_eq!(energy(&g, &[0.0; 8], &p, SchemeKind::Capillarity), 0.0);
        assert!((energy(&g, &[0.3; 8], &p, SchemeKind::Capillarity) - 0.5 * 0.09).abs() < 1e-15);
        let saw: Vec<f64> = (0..8)
            .map(|j| if j % 2 == 0 { 1.0 } else { -1.0 })
            .collect();
        let dx = g.dx();
        let expected =
            0.5 + 0.5 * (p.dispersion(dx) + p.beta * dx * dx) * 8.0 * (2.0 / dx) * (2.0 / dx) * dx;
        let got = energy(&g, &saw, &p, SchemeKind::Capillarity);
        assert!((got - expected).abs() < 1e-12 * expected);
        assert!((energy(&g, &saw, &p, SchemeKind::Dispersive) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn constants_span_bounds() {
        let c = kruzkov_constants((-2.0, 4.0), 21);
        assert_eq!((c.len(), c[0], c[20]), (21, -2.0, 4.0));
        assert!((c[1] - c[0] - 0.3).abs() < 1e-15);
    }

    #[test]
    fn residual_vanishes_for_constant_state() {
        let g = periodic(12);
        let k = CoefficientK::uniform(&g, 1.0);
        let nf = NumericalFlux::engquist_osher(Burgers {
            bounds: (-1.0, 1.0),
        });
        let u = Field::new(vec![0.3; 12], 0.0).unwrap();
        let w = u.clone().with_time(0.01);
        for c in kruzkov_constants((-1.0, 1.0), 21) {
            let r = entropy_residual(&g, &u, &w, &k, &nf, c, 0.01, 6.0, None).unwrap();
            assert!(r.iter().all(|v| v.abs() < 1e-13));
        }
    }

    #[test]
    fn stationary_expansion_shock_is_flagged() {
        let g = Grid1D::new(-1.0, 1.0, 20, BoundaryCondition::Outflow).unwrap();
        let k = CoefficientK::uniform(&g, 1.0);
        let nf = NumericalFlux::engquist_osher(Burgers {
            bounds: (-1.0, 1.0),
        });
        let u: Vec<f64> = (0..20).map(|j| if j < 10 { -1.0 } else { 1.0 }).collect();
        let u = Field::new(u, 0.0).unwrap();
        // Held fixed in time, which the entropy condition forbids.
        let r = entropy_residual(&g, &u, &u, &k, &nf, 0.0, 0.01, 0.0, None).unwrap();
        let max = r.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        assert!(max > 0.0);
        // Cells 9 and 10 carry the production: D_-K = ±0.5/Δx.
        assert!((r[9] - 0.5 / g.dx()).abs() < 1e-12);
    }

    #[test]
    fn mask_zeroes_cells() {
        let g = periodic(6);
        let k = CoefficientK::uniform(&g, 1.0);
        let nf = NumericalFlux::engquist_osher(Burgers {
            bounds: (-1.0, 1.0),
        });
        let u = Field::new(vec![1.0, -1.0, 1.0, -1.0, 1.0, -1.0], 0.0).unwrap();
        let mask = [true; 6];
        let r = entropy_residual(&g, &u, &u, &k, &nf, 0.0, 0.1, 0.0, Some(&mask)).unwrap();
        assert!(r.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn classification_examples() {
        let p = classify_structure(&[0.7; 40], 1e-3, 2);
        assert_eq!((p.len(), p[0].start, p[0].end), (1, 0, 40));
        assert!((p[0].value - 0.7).abs() < 1e-14);
        let step: Vec<f64> = (0..40).map(|j| if j < 13 { 4.0 } else { -2.0 }).collect();
        let p = classify_structure(&step, default_tolerance(&step), default_min_width(40));
        assert_eq!(p.len(), 2);
        assert_eq!((p[0].end, p[1].start), (13, 13));
        let g = Grid1D::new(0.0, 4.0, 40, BoundaryCondition::Outflow).unwrap();
        let t = transitions(&g, &step, &p);
        assert_eq!(t[0].face, 13);
        assert!((t[0].x - 1.3).abs() < 1e-12);
    }

    #[test]
    fn narrow_runs_are_ignored_and_equal_neighbours_merge() {
        let mut u = vec![1.0; 30];
        u.extend([0.5, 0.5]);
        u.extend(vec![1.0; 30]);
        let p = classify_structure(&u, 0.01, 3);
        assert_eq!(p.len(), 1);
        assert_eq!((p[0].start, p[0].end), (0, 62));
    }

    #[test]
    fn restriction_and_difference() {
        assert_eq!(restrict(&[1.0, 3.0, 2.0, 2.0], 2), vec![2.0, 2.0]);
        let g = periodic(2);
        assert_eq!(l1_difference(&g, &[1.0, 2.0], &[1.0, 2.0]), 0.0);
        assert_eq!(l1_difference(&g, &[1.0, 2.0], &[0.0, 3.0]), 1.0);
    }
}
