//! The stepping loop and refinement studies.

use std::thread;
use std::time::{Duration, Instant};

use ddflux_core::diagnostics::{
    classify_structure, default_min_width, default_tolerance, entropy_residual_max,
    kruzkov_constants, l1_difference, restrict, transitions, AprioriSums, Plateau, StepDiagnostics,
    Transition,
};
use ddflux_core::{
    average_k, project_initial, CapillarityStepper, CflChoice, CoefficientK, DispersiveStepper,
    Field, FluxModel, Grid1D, NumericalFlux, SchemeKind,
};

use crate::error::RunError;
use crate::model::Model;
use crate::scenario::Scenario;

/// Number of Kružkov constants in the entropy sweep.
pub const ENTROPY_CONSTANTS: usize = 21;
/// Cells masked on each side of a coefficient jump in the entropy sweep.
pub const JUMP_MASK_WIDTH: usize = 3;

#[derive(Debug, Clone)]
pub struct RunReport {
    pub scenario: Scenario,
    pub grid: Grid1D,
    /// Row `n` describes the state after `n` steps.
    pub diagnostics: Vec<StepDiagnostics>,
    pub final_field: Field,
    pub plateaus: Vec<Plateau>,
    pub transitions: Vec<Transition>,
    pub apriori: AprioriSums,
    pub cfl: CflChoice,
    /// Nominal step; the last step may be shorter.
    pub dt: f64,
    pub steps: usize,
    pub wall_clock: Duration,
}

enum Stepper {
    Capillarity(Box<CapillarityStepper<Model>>),
    Dispersive(Box<DispersiveStepper<Model>>),
}

impl Stepper {
    fn step(&mut self, u: &Field, dt: f64) -> ddflux_core::Result<Field> {
        match self {
            Stepper::Capillarity(s) => s.step_auto(u, dt),
            Stepper::Dispersive(s) => s.step_dt(u, dt),
        }
    }
}

/// Step count and the time after each step, ending exactly on `t_final`.
fn schedule(t_final: f64, dt: f64) -> usize {
    let mut steps = (t_final / dt).ceil().max(1.0) as usize;
    while steps > 1 && (steps - 1) as f64 * dt >= t_final {
        steps -= 1;
    }
    steps
}

/// Runs `scenario` to its final time.
pub fn run(scenario: &Scenario) -> Result<RunReport, RunError> {
    let started = Instant::now();
    let solver = |source| RunError::Solver {
        scenario: scenario.name.clone(),
        source,
    };
    scenario
        .validate()
        .map_err(crate::error::ConfigError::Validation)?;

    let grid = Grid1D::new(
        scenario.domain.0,
        scenario.domain.1,
        scenario.n_cells,
        scenario.bc,
    )
    .map_err(solver)?;
    let mut u = project_initial(scenario.u0.function(), &grid).map_err(solver)?;
    let k = average_k(scenario.k.function(), &grid).map_err(solver)?;
    k.check_bounds(scenario.k_bounds.0, scenario.k_bounds.1)
        .map_err(solver)?;
    let nf = NumericalFlux::new(scenario.flux, scenario.model);
    let p = scenario.params;

    let (mut stepper, cfl) = match scenario.scheme {
        SchemeKind::Capillarity => {
            let s = CapillarityStepper::new(grid, k.clone(), nf.clone(), p, scenario.cfl_mode)
                .map_err(solver)?;
            let cfl = *s.cfl().expect("CFL-selected step");
            (Stepper::Capillarity(Box::new(s)), cfl)
        }
        SchemeKind::Dispersive => {
            let s = DispersiveStepper::new(grid, k.clone(), nf.clone(), p, scenario.cfl_mode)
                .map_err(solver)?;
            let cfl = *s.cfl().expect("CFL-selected step");
            (Stepper::Dispersive(Box::new(s)), cfl)
        }
    };
    // The stepper prepares its own copy; the sweep needs the same grid speed.
    let nf = match scenario.flux {
        ddflux_core::FluxScheme::GlobalLaxFriedrichs => nf.with_global_speed(grid.dx() / cfl.dt),
        _ => nf,
    };

    let dt = cfl.dt;
    let steps = schedule(scenario.t_final, dt);
    let sweep = EntropySweep::new(&grid, &k, &scenario.model, scenario.entropy_every);
    let mut diagnostics = Vec::with_capacity(steps + 1);
    diagnostics.push(StepDiagnostics::measure(
        &grid,
        &p,
        scenario.scheme,
        0,
        &u,
        f64::NAN,
    ));
    let mut apriori = AprioriSums::start(&grid, u.values());
    let mut entropy = f64::NAN;

    for n in 1..=steps {
        let (t_new, h) = if n == steps {
            (scenario.t_final, scenario.t_final - (steps - 1) as f64 * dt)
        } else {
            (n as f64 * dt, dt)
        };
        let next = stepper.step(&u, h).map_err(solver)?.with_time(t_new);
        apriori.accumulate(&grid, &p, u.values(), next.values(), h);
        if sweep.due(n, steps) {
            entropy = sweep
                .measure(&grid, &u, &next, &k, &nf, h, p.beta)
                .map_err(solver)?;
        }
        diagnostics.push(StepDiagnostics::measure(
            &grid,
            &p,
            scenario.scheme,
            n,
            &next,
            entropy,
        ));
        u = next;
    }

    let values = u.values();
    let plateaus = classify_structure(
        values,
        default_tolerance(values),
        default_min_width(values.len()),
    );
    let transitions = transitions(&grid, values, &plateaus);
    Ok(RunReport {
        scenario: scenario.clone(),
        grid,
        diagnostics,
        final_field: u,
        plateaus,
        transitions,
        apriori,
        cfl,
        dt,
        steps,
        wall_clock: started.elapsed(),
    })
}

struct EntropySweep {
    every: usize,
    constants: Vec<f64>,
    mask: Option<Vec<bool>>,
}

impl EntropySweep {
    fn new(grid: &Grid1D, k: &CoefficientK, model: &Model, every: usize) -> Self {
        let mask = (!k.is_uniform()).then(|| k.jump_mask(grid, JUMP_MASK_WIDTH));
        Self {
            every,
            constants: kruzkov_constants(model.bounds(), ENTROPY_CONSTANTS),
            mask,
        }
    }

    // Always measured on the final step so the last row is current.
    fn due(&self, n: usize, steps: usize) -> bool {
        self.every > 0 && (n.is_multiple_of(self.every) || n == steps)
    }

    #[allow(clippy::too_many_arguments)]
    fn measure(
        &self,
        grid: &Grid1D,
        u: &Field,
        next: &Field,
        k: &CoefficientK,
        nf: &NumericalFlux<Model>,
        dt: f64,
        viscosity: f64,
    ) -> ddflux_core::Result<f64> {
        entropy_residual_max(
            grid,
            u,
            next,
            k,
            nf,
            &self.constants,
            dt,
            viscosity,
            self.mask.as_deref(),
        )
    }
}

/// Runs of one scenario at several resolutions, with the L¹ distance
/// between consecutive solutions after restriction to the coarser grid.
#[derive(Debug, Clone)]
pub struct Refinement {
    pub reports: Vec<RunReport>,
    /// `(n_coarse, n_fine, ‖R u_fine - u_coarse‖₁)` for consecutive pairs.
    pub differences: Vec<(usize, usize, f64)>,
}

/// Runs `scenario` at each resolution concurrently.
///
/// The entropy sweep is switched off since only the profiles are compared.
/// Resolutions are sorted and each must divide the next.
pub fn refinement_study(
    scenario: &Scenario,
    resolutions: &[usize],
) -> Result<Refinement, RunError> {
    let mut ns = resolutions.to_vec();
    ns.sort_unstable();
    ns.dedup();
    if ns.is_empty() || ns[0] == 0 {
        return Err(
            crate::error::ConfigError::Validation("resolutions must be positive".into()).into(),
        );
    }
    if ns.windows(2).any(|w| w[1] % w[0] != 0) {
        return Err(crate::error::ConfigError::Validation(
            "each resolution must divide the next".into(),
        )
        .into());
    }
    let base = Scenario {
        entropy_every: 0,
        ..scenario.clone()
    };
    let reports = thread::scope(|scope| {
        let handles: Vec<_> = ns
            .iter()
            .map(|&n| {
                let s = base.with_cells(n);
                scope.spawn(move || run(&s))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("refinement worker panicked"))
            .collect::<Result<Vec<_>, _>>()
    })?;
    let differences = reports
        .windows(2)
        .map(|w| {
            let (c, f) = (&w[0], &w[1]);
            let factor = f.grid.n_cells() / c.grid.n_cells();
            let restricted = restrict(f.final_field.values(), factor);
            (
                c.grid.n_cells(),
                f.grid.n_cells(),
                l1_difference(&c.grid, &restricted, c.final_field.values()),
            )
        })
        .collect();
    Ok(Refinement {
        reports,
        differences,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedule_lands_on_final_time() {
        assert_eq!(schedule(1.0, 0.25), 4);
        assert_eq!(schedule(1.0, 0.3), 4);
        assert_eq!(schedule(0.1, 1.0), 1);
        for (t, dt) in [(0.6, 0.3 * 2.0 / 1024.0), (0.01, 1.2e-5), (0.5, 0.001)] {
            let n = schedule(t, dt);
            let last = t - (n - 1) as f64 * dt;
            assert!(last > 0.0 && last <= dt * (1.0 + 1e-12), "{t} {dt}: {last}");
        }
    }
}
