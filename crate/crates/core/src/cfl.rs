//! Time-step selection.
//!
//! Two policies are offered. [`CflMode::Practical`] uses a Courant number
//! on the largest wave speed. [`CflMode::Strict`] additionally enforces the
//! sufficient conditions under which the schemes satisfy their discrete
//! energy estimates, intersected with the practical step.

use crate::coefficient::CoefficientK;
use crate::error::{Error, Result};
use crate::grid::Grid1D;
use crate::model::FluxModel;
use crate::params::SchemeParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CflMode {
    #[default]
    Practical,
    Strict,
}

/// The constraint that fixed the time step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CflBound {
    /// `Δt = cfl_number · Δx / max|∂f/∂u|`
    Practical,
    /// Viscous and dispersive terms.
    Regularization,
    /// Convective term.
    Flux,
}

impl CflBound {
    pub fn as_str(self) -> &'static str {
        match self {
            CflBound::Practical => "practical",
            CflBound::Regularization => "regularization",
            CflBound::Flux => "flux",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CflChoice {
    pub dt: f64,
    /// `Δt / Δx`
    pub lambda: f64,
    pub active: CflBound,
    pub mode: CflMode,
    /// `max |∂f/∂u|` over faces and admissible states.
    pub max_speed: f64,
}

/// `max |∂f/∂u (k_{j+1/2}, s)|` over all faces and `s` in the model bounds.
pub fn max_speed<M: FluxModel + ?Sized>(model: &M, k: &CoefficientK) -> f64 {
    let (a, b) = model.bounds();
    if model.is_multiplicative() {
        return k.sup_abs() * model.max_abs_speed(1.0, a, b);
    }
    let mut m: f64 = 0.0;
    let mut last = f64::NAN;
    for &kf in k.face_values() {
        if kf != last {
            m = m.max(model.max_abs_speed(kf, a, b));
            last = kf;
        }
    }
    m
}

// Largest `sup_k · sup_u g₁, h₁`, sampled on the model bounds.
fn capillarity_weight_bound<M: FluxModel + ?Sized>(model: &M, k: &CoefficientK) -> f64 {
    if !model.has_capillarity_weights() {
        return 0.0;
    }
    let (a, b) = model.bounds();
    let mut m: f64 = 0.0;
    for i in 0..=256 {
        let s = a + (b - a) * i as f64 / 256.0;
        m = m
            .max(model.g1(s).unwrap_or(0.0))
            .max(model.h1(s).unwrap_or(0.0));
    }
    m * k.sup_abs()
}

fn slack(params: &SchemeParams) -> Result<f64> {
    let m = (1.0 - params.delta).min(params.beta - params.delta);
    if m > 0.0 {
        Ok(m)
    } else {
        Err(Error::CflInfeasible(
            "delta leaves no room below min(1, beta)",
        ))
    }
}

fn practical(grid: &Grid1D, params: &SchemeParams, speed: f64) -> f64 {
    if speed > 0.0 {
        params.cfl_number * grid.dx() / speed
    } else {
        f64::INFINITY
    }
}

// Explicit viscosity alone, used when γμ vanishes.
fn viscous_only(params: &SchemeParams, m: f64) -> f64 {
    if params.beta > 0.0 {
        m / (2.0 * params.beta)
    } else {
        f64::INFINITY
    }
}

fn pick(dx: f64, mode: CflMode, speed: f64, candidates: &[(f64, CflBound)]) -> Result<CflChoice> {
    let (lambda, active) =
        candidates
            .iter()
            .copied()
            .fold((f64::INFINITY, CflBound::Practical), |best, c| {
                if c.0 < best.0 {
                    c
                } else {
                    best
                }
            });
    if !(lambda > 0.0) {
        return Err(Error::CflInfeasible(
            "no positive time step satisfies the bound",
        ));
    }
    if !lambda.is_finite() {
        return Err(Error::CflInfeasible(
            "time step unbounded: zero flux and no regularization",
        ));
    }
    Ok(CflChoice {
        dt: lambda * dx,
        lambda,
        active,
        mode,
        max_speed: speed,
    })
}

/// Time step for the capillarity scheme.
///
/// Strict mode requires, with `m = min(1-δ, β-δ)` and `L = max|∂f/∂u|`,
///
/// ```text
/// (λ/2)(1 + βΔx²/(γμ)) ≤ m
/// λ/2 + L²/(β-δ)      ≤ 1-δ
/// ```
///
/// The second line is the flux condition with the Young constants chosen
/// optimally for piecewise constant `k`.
pub fn cfl_dt<M: FluxModel + ?Sized>(
    grid: &Grid1D,
    k: &CoefficientK,
    model: &M,
    params: &SchemeParams,
    mode: CflMode,
) -> Result<CflChoice> {
    params.validate()?;
    let dx = grid.dx();
    let speed = max_speed(model, k);
    let lambda_p = practical(grid, params, speed) / dx;
    if mode == CflMode::Practical {
        return pick(dx, mode, speed, &[(lambda_p, CflBound::Practical)]);
    }
    let m = slack(params)?;
    let gm = params.dispersion(dx);
    let lambda_reg = if gm > 0.0 {
        2.0 * m * gm / (gm + params.beta * dx * dx)
    } else {
        viscous_only(params, m)
    };
    let lip = speed.max(capillarity_weight_bound(model, k));
    let room = 1.0 - params.delta - lip * lip / (params.beta - params.delta);
    if room <= 0.0 {
        return Err(Error::CflInfeasible(
            "flux Lipschitz constant too large for beta and delta",
        ));
    }
    pick(
        dx,
        mode,
        speed,
        &[
            (lambda_p, CflBound::Practical),
            (lambda_reg, CflBound::Regularization),
            (2.0 * room, CflBound::Flux),
        ],
    )
}

/// Time step for the diffusive-dispersive scheme.
///
/// With `m = min(1-δ, β-δ)` the explicit scheme needs
///
/// ```text
/// 2λ(β²Δx²/(γμ) + 2γμ/Δx²) ≤ m
/// 8λ‖k‖²‖f'‖²             ≤ m
/// ```
///
/// The practical mode enforces the first condition as well, since without
/// it the explicit dispersive term is unstable whatever the flux. With
/// `β = γ = 0` it reduces to the Courant condition alone.
pub fn cfl_dt_a<M: FluxModel + ?Sized>(
    grid: &Grid1D,
    k: &CoefficientK,
    model: &M,
    params: &SchemeParams,
    mode: CflMode,
) -> Result<CflChoice> {
    params.validate()?;
    let dx = grid.dx();
    let speed = max_speed(model, k);
    let lambda_p = practical(grid, params, speed) / dx;
    let gm = params.dispersion(dx);
    if mode == CflMode::Practical && gm == 0.0 && params.beta == 0.0 {
        return pick(dx, mode, speed, &[(lambda_p, CflBound::Practical)]);
    }
    let m = slack(params)?;
    let lambda_reg = if gm > 0.0 {
        m / (2.0 * (params.beta * params.beta * dx * dx / gm + 2.0 * gm / (dx * dx)))
    } else {
        viscous_only(params, m)
    };
    let mut candidates = [
        (lambda_p, CflBound::Practical),
        (lambda_reg, CflBound::Regularization),
        (f64::INFINITY, CflBound::Flux),
    ];
    if mode == CflMode::Strict && speed > 0.0 {
        candidates[2].0 = m / (8.0 * speed * speed);
    }
    pick(dx, mode, speed, &candidates)
}
