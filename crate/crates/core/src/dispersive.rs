//! Diffusive-dispersive scheme, fully explicit:
//!
//! ```text
//! u_j^{n+1} = u_j - Δt D_- h_{j+1/2} + βΔxΔt D_+D_- u_j + γμ(Δx)Δt D_+D_-² u_j
//! ```

use alloc::vec;
use alloc::vec::Vec;

use crate::capillarity::{check_coefficient, interface_fluxes, prepare_flux};
use crate::cfl::{cfl_dt_a, CflChoice, CflMode};
use crate::coefficient::CoefficientK;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::flux::NumericalFlux;
use crate::grid::Grid1D;
use crate::model::FluxModel;
use crate::ops::at;
use crate::params::SchemeParams;

pub struct DispersiveStepper<M> {
    grid: Grid1D,
    k: CoefficientK,
    nf: NumericalFlux<M>,
    params: SchemeParams,
    dt: f64,
    cfl: Option<CflChoice>,
    flux: Vec<f64>,
}

impl<M: FluxModel> DispersiveStepper<M> {
    pub fn new(
        grid: Grid1D,
        k: CoefficientK,
        nf: NumericalFlux<M>,
        params: SchemeParams,
        mode: CflMode,
    ) -> Result<Self> {
        check_coefficient(&grid, &k)?;
        let choice = cfl_dt_a(&grid, &k, nf.model(), &params, mode)?;
        let mut s = Self::with_dt(grid, k, nf, params, choice.dt)?;
        s.cfl = Some(choice);
        Ok(s)
    }

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
        })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

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

    pub fn step(&mut self, u: &Field) -> Result<Field> {
        self.step_dt(u, self.dt)
    }

    pub fn step_dt(&mut self, u: &Field, dt: f64) -> Result<Field> {
        let grid = &self.grid;
        let n = grid.n_cells();
        if u.len() != n {
            return Err(Error::InvalidInitialData {
                cell: u.len().min(n),
                reason: "field length differs from grid",
            });
        }
        let values = u.values();
        interface_fluxes(grid, &self.k, &self.nf, values, &mut self.flux)?;
        let dx = grid.dx();
        let visc = self.params.beta * dx * dt / (dx * dx);
        let disp = self.params.dispersion(dx) * dt / (dx * dx * dx);
        let next: Vec<f64> = (0..n)
            .map(|j| {
                let ji = j as isize;
                let (um2, um, uj, up) = (
                    at(grid, values, ji - 2),
                    at(grid, values, ji - 1),
                    values[j],
                    at(grid, values, ji + 1),
                );
                uj - dt * (self.flux[j + 1] - self.flux[j]) / dx
                    + visc * ((up - uj) - (uj - um))
                    + disp * ((up - um2) - 3.0 * (uj - um))
            })
            .collect();
        Field::from_step(next, u.time() + dt)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::BoundaryCondition;
    use crate::model::Cubic;

    #[test]
    fn constant_state_is_preserved() {
        for bc in [BoundaryCondition::Periodic, BoundaryCondition::Outflow] {
            let g = Grid1D::new(-0.5, 0.5, 32, bc).unwrap();
            let k = CoefficientK::uniform(&g, 0.9);
            let nf = NumericalFlux::engquist_osher(Cubic {
                bounds: (-2.0, 4.0),
            });
            let p = SchemeParams {
                beta: 5.0,
                gamma: 20.0,
                ..SchemeParams::default()
            };
            let mut s = DispersiveStepper::new(g, k, nf, p, CflMode::Practical).unwrap();
            let u = Field::new(vec![-2.0; 32], 0.0).unwrap();
            let next = s.step(&u).unwrap();
            assert!(next.values().iter().all(|&v| v == -2.0));
        }
    }

    #[test]
    fn overflow_is_reported() {
        let g = Grid1D::new(0.0, 1.0, 8, BoundaryCondition::Periodic).unwrap();
        let k = CoefficientK::uniform(&g, 1.0);
        let nf = NumericalFlux::engquist_osher(Cubic {
            bounds: (-2.0, 4.0),
        });
        let mut s = DispersiveStepper::with_dt(g, k, nf, SchemeParams::default(), 1e308).unwrap();
        let u = Field::new(vec![0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0], 0.0).unwrap();
        assert!(matches!(s.step(&u), Err(Error::NonFiniteState { .. })));
    }
}
