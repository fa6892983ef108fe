//! Capillarity-regularized scheme
//!
//! ```text
//! D^t_+ u_j + D_- h_{j+1/2} = βΔx D_+D_- u_j + γμ(Δx) D^t_+ D_+D_- u_j
//! ```
//!
//! The mixed term makes each step a linear tridiagonal solve for the
//! increment `w = u^{n+1} - u^n`:
//!
//! ```text
//! (I - γμ D_+ a D_-) w = Δt (-D_- h + βΔx D_+ G D_- u^n)
//! ```
//!
//! with face weights `a = G = 1` for the basic scheme and
//! `a = k (h₁(u_j) + h₁(u_{j-1}))/2`, `G = k (g₁(u_j) + g₁(u_{j-1}))/2`
//! for the generalized two-phase form.

use alloc::vec;
use alloc::vec::Vec;

use crate::cfl::{cfl_dt, CflChoice, CflMode};
use crate::coefficient::CoefficientK;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::flux::{FluxScheme, NumericalFlux};
use crate::grid::{BoundaryCondition, Grid1D};
use crate::model::FluxModel;
use crate::ops::at;
use crate::params::SchemeParams;
use crate::tridiag::TridiagonalSolver;

pub struct CapillarityStepper<M> {
    grid: Grid1D,
    k: CoefficientK,
    nf: NumericalFlux<M>,
    params: SchemeParams,
    dt: f64,
    cfl: Option<CflChoice>,
    // Face arrays have n + 1 entries; entry i is the face left of cell i.
    flux: Vec<f64>,
    implicit_weight: Vec<f64>,
    diffusion_weight: Vec<f64>,
    lower: Vec<f64>,
    diag: Vec<f64>,
    upper: Vec<f64>,
    rhs: Vec<f64>,
    increment: Vec<f64>,
    solver: TridiagonalSolver,
}

pub(crate) fn check_coefficient(grid: &Grid1D, k: &CoefficientK) -> Result<()> {
    if k.face_values().len() != grid.n_interfaces() {
        return Err(Error::InvalidCoefficient("face count differs from grid"));
    }
    Ok(())
}

pub(crate) fn prepare_flux<M: FluxModel>(
    nf: NumericalFlux<M>,
    grid: &Grid1D,
    dt: f64,
) -> NumericalFlux<M> {
    if nf.scheme() == FluxScheme::GlobalLaxFriedrichs {
        nf.with_global_speed(grid.dx() / dt)
    } else {
        nf
    }
}

/// Fills `out[i]`, `i = 0..=n`, with `h_{i-1/2}`. On periodic grids
/// `out[n] = out[0]`.
pub(crate) fn interface_fluxes<M: FluxModel>(
    grid: &Grid1D,
    k: &CoefficientK,
    nf: &NumericalFlux<M>,
    u: &[f64],
    out: &mut [f64],
) -> Result<()> {
    let n = grid.n_cells();
    let faces = k.face_values();
    let last = match grid.bc() {
        BoundaryCondition::Periodic => n - 1,
        BoundaryCondition::Outflow => n,
    };
    for i in 0..=last {
        let l = at(grid, u, i as isize - 1);
        let r = at(grid, u, i as isize);
        out[i] = nf.interface(faces[i], l, r)?;
    }
    if grid.bc() == BoundaryCondition::Periodic {
        out[n] = out[0];
    }
    Ok(())
}

impl<M: FluxModel> CapillarityStepper<M> {
    /// Builds a stepper whose `Δt` follows the CFL policy `mode`.
    pub fn new(
        grid: Grid1D,
        k: CoefficientK,
        nf: NumericalFlux<M>,
        params: SchemeParams,
        mode: CflMode,
    ) -> Result<Self> {
        check_coefficient(&grid, &k)?;
        let choice = cfl_dt(&grid, &k, nf.model(), &params, mode)?;
        let mut s = Self::with_dt(grid, k, nf, params, choice.dt)?;
        s.cfl = Some(choice);
        Ok(s)
    }

    /// Builds a stepper with a caller-chosen `Δt`.
    pub fn with_dt(
        grid: Grid1D,
        k: CoefficientK,
        nf: NumericalFlux<M>,
        params: SchemeParams,
        dt: f64,
    ) -> Result<Self> {
        check_coefficient(&grid, &k)?;
        params.validate()?;
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::InvalidParams("time step must be positive"));
        }
        let n = grid.n_cells();
        let nf = prepare_flux(nf, &grid, dt);
        Ok(Self {
            grid,
            k,
            nf,
            params,
            dt,
            cfl: None,
            flux: vec![0.0; n + 1],
            implicit_weight: vec![1.0; n + 1],
            diffusion_weight: vec![1.0; n + 1],
            lower: vec![0.0; n],
            diag: vec![0.0; n],
            upper: vec![0.0; n],
            rhs: vec![0.0; n],
            increment: vec![0.0; n],
            solver: TridiagonalSolver::new(n),
        })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// The CFL decision, absent when `Δt` was supplied directly.
    pub fn cfl(&self) -> Option<&CflChoice> {
        self.cfl.as_ref()
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn coefficient(&self) -> &CoefficientK {
        &self.k
    }

    pub fn flux(&self) -> &NumericalFlux<M> {
        &self.nf
    }

    pub fn params(&self) -> &SchemeParams {
        &self.params
    }

    /// One step of the basic scheme.
    pub fn step(&mut self, u: &Field) -> Result<Field> {
        self.step_dt(u, self.dt)
    }

    /// One step of length `dt`, e.g. a truncated final step.
    pub fn step_dt(&mut self, u: &Field, dt: f64) -> Result<Field> {
        self.implicit_weight.iter_mut().for_each(|w| *w = 1.0);
        self.diffusion_weight.iter_mut().for_each(|w| *w = 1.0);
        self.advance(u, dt)
    }

    /// One step of the generalized scheme with `g₁`/`h₁` face weights.
    pub fn step_general(&mut self, u: &Field) -> Result<Field> {
        self.step_general_dt(u, self.dt)
    }

    pub fn step_general_dt(&mut self, u: &Field, dt: f64) -> Result<Field> {
        let model = self.nf.model();
        if !model.has_capillarity_weights() {
            return Err(Error::InvalidParams(
                "flux model has no capillarity weights",
            ));
        }
        let n = self.grid.n_cells();
        let faces = self.k.face_values();
        let values = u.values();
        for (i, &kf) in faces.iter().enumerate() {
            let (l, r) = (
                at(&self.grid, values, i as isize - 1),
                at(&self.grid, values, i as isize),
            );
            let a = kf * 0.5 * (model.h1(r).unwrap_or(0.0) + model.h1(l).unwrap_or(0.0));
            let g = kf * 0.5 * (model.g1(r).unwrap_or(0.0) + model.g1(l).unwrap_or(0.0));
            if !(a >= 0.0 && a.is_finite()) || !(g >= 0.0 && g.is_finite()) {
                return Err(Error::CoefficientDegeneracy { interface: i });
            }
            self.implicit_weight[i] = a;
            self.diffusion_weight[i] = g;
        }
        if self.grid.bc() == BoundaryCondition::Periodic {
            self.implicit_weight[n] = self.implicit_weight[0];
            self.diffusion_weight[n] = self.diffusion_weight[0];
        }
        self.advance(u, dt)
    }

    /// The generalized step when the model carries capillarity weights,
    /// the basic step otherwise.
    pub fn step_auto(&mut self, u: &Field, dt: f64) -> Result<Field> {
        if self.nf.model().has_capillarity_weights() {
            self.step_general_dt(u, dt)
        } else {
            self.step_dt(u, dt)
        }
    }

    fn advance(&mut self, u: &Field, dt: f64) -> Result<Field> {
        let grid = &self.grid;
        let n = grid.n_cells();
        if u.len() != n {
            return Err(Error::InvalidInitialData {
                cell: u.len().min(n),
                reason: "field length differs from grid",
            });
        }
        let values = u.values();
        let dx = grid.dx();
        interface_fluxes(grid, &self.k, &self.nf, values, &mut self.flux)?;

        let c = self.params.dispersion(dx) / (dx * dx);
        let visc = self.params.beta / dx;
        let outflow = grid.bc() == BoundaryCondition::Outflow;
        for j in 0..n {
            let ji = j as isize;
            // Outflow ghosts copy the end cells, so the boundary differences
            // vanish and their couplings drop out.
            let wl = if outflow && j == 0 {
                0.0
            } else {
                self.implicit_weight[j]
            };
            let wr = if outflow && j == n - 1 {
                0.0
            } else {
                self.implicit_weight[j + 1]
            };
            self.lower[j] = -c * wl;
            self.upper[j] = -c * wr;
            self.diag[j] = 1.0 + c * (wl + wr);

            let um = at(grid, values, ji - 1);
            let up = at(grid, values, ji + 1);
            let uj = values[j];
            let diffusion =
                self.diffusion_weight[j + 1] * (up - uj) - self.diffusion_weight[j] * (uj - um);
            self.rhs[j] = dt * (-(self.flux[j + 1] - self.flux[j]) / dx + visc * diffusion);
        }
        self.solver.solve(
            &self.lower,
            &self.diag,
            &self.upper,
            &self.rhs,
            grid.bc() == BoundaryCondition::Periodic,
            &mut self.increment,
        )?;
        let next: Vec<f64> = values
            .iter()
            .zip(&self.increment)
            .map(|(a, w)| a + w)
            .collect();
        Field::from_step(next, u.time() + dt)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Burgers, TwoPhase};

    fn periodic(n: usize) -> Grid1D {
        Grid1D::new(0.0, 1.0, n, BoundaryCondition::Periodic).unwrap()
    }

    #[test]
    fn constant_state_is_preserved() {
        for bc in [BoundaryCondition::Periodic, BoundaryCondition::Outflow] {
            let g = Grid1D::new(0.0, 1.0, 16, bc).unwrap();
            let k = CoefficientK::uniform(&g, 1.3);
            let nf = NumericalFlux::engquist_osher(Burgers {
                bounds: (-1.0, 1.0),
            });
            let mut s =
                CapillarityStepper::new(g, k, nf, SchemeParams::default(), CflMode::Practical)
                    .unwrap();
            let u = Field::new(vec![0.4; 16], 0.0).unwrap();
            let next = s.step(&u).unwrap();
            assert!(next.values().iter().all(|&v| (v - 0.4).abs() < 1e-15));
            assert_eq!(next.time(), s.dt());
        }
    }

    #[test]
    fn general_step_with_unit_weights_matches_basic() {
        struct Unit;
        impl FluxModel for Unit {
            fn flux(&self, k: f64, u: f64) -> f64 {
                0.5 * k * u * u
            }
            fn flux_derivative(&self, k: f64, u: f64) -> f64 {
                k * u
            }
            fn bounds(&self) -> (f64, f64) {
                (-1.0, 1.0)
            }
            fn g1(&self, _: f64) -> Option<f64> {
                Some(1.0)
            }
            fn h1(&self, _: f64) -> Option<f64> {
                Some(1.0)
            }
            fn has_capillarity_weights(&self) -> bool {
                true
            }
        }
        for bc in [BoundaryCondition::Periodic, BoundaryCondition::Outflow] {
            let g = Grid1D::new(0.0, 1.0, 12, bc).unwrap();
            let k = CoefficientK::uniform(&g, 1.0);
            let u = Field::new((0..12).map(|j| libm::sin(j as f64)).collect(), 0.0).unwrap();
            let mut s = CapillarityStepper::with_dt(
                g,
                k,
                NumericalFlux::engquist_osher(Unit),
                SchemeParams::default(),
                1e-3,
            )
            .unwrap();
            let a = s.step(&u).unwrap();
            let b = s.step_general(&u).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn two_phase_constant_state() {
        let g = Grid1D::new(0.0, 2.0, 20, BoundaryCondition::Outflow).unwrap();
        let k = CoefficientK::uniform(&g, 1.1);
        let nf = NumericalFlux::local_lax_friedrichs(TwoPhase::default());
        let mut s =
            CapillarityStepper::new(g, k, nf, SchemeParams::default(), CflMode::Practical).unwrap();
        let u = Field::new(vec![0.8; 20], 0.0).unwrap();
        let next = s.step_general(&u).unwrap();
        assert!(next.values().iter().all(|&v| (v - 0.8).abs() < 1e-14));
    }

    #[test]
    fn negative_weight_is_degenerate() {
        let g = periodic(6);
        let k = CoefficientK::from_face_values(&g, vec![1.0, 1.0, -1.0, 1.0, 1.0, 1.0]).unwrap();
        let nf = NumericalFlux::local_lax_friedrichs(TwoPhase::default());
        let mut s = CapillarityStepper::with_dt(g, k, nf, SchemeParams::default(), 1e-4).unwrap();
        let u = Field::new(vec![0.5; 6], 0.0).unwrap();
        assert_eq!(
            s.step_general(&u),
            Err(Error::CoefficientDegeneracy { interface: 2 })
        );
    }

    #[test]
    fn basic_step_rejects_models_without_weights_for_general() {
        let g = periodic(4);
        let k = CoefficientK::uniform(&g, 1.0);
        let nf = NumericalFlux::engquist_osher(Burgers {
            bounds: (-1.0, 1.0),
        });
        let mut s = CapillarityStepper::with_dt(g, k, nf, SchemeParams::default(), 1e-3).unwrap();
        let u = Field::new(vec![0.1; 4], 0.0).unwrap();
        assert!(s.step_general(&u).is_err());
    }
}
