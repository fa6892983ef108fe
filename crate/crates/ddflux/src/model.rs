//! Runtime choice among the built-in flux models.

use std::fmt;

use ddflux_core::{Burgers, Cubic, FluxModel, Linear, TwoPhase};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Model {
    Linear(Linear),
    Burgers(Burgers),
    Cubic(Cubic),
    TwoPhase(TwoPhase),
}

impl Model {
    /// Parses a model name; `bounds` applies to models with free bounds.
    pub fn from_name(name: &str, bounds: Option<(f64, f64)>) -> Option<Self> {
        let b = |default| bounds.unwrap_or(default);
        Some(match name {
            "linear" => Model::Linear(Linear {
                bounds: b((-1.0, 1.0)),
            }),
            "burgers" => Model::Burgers(Burgers {
                bounds: b((0.0, 1.0)),
            }),
            "cubic" => Model::Cubic(Cubic {
                bounds: b((-2.0, 4.0)),
            }),
            "two_phase" => Model::TwoPhase(TwoPhase::default()),
            _ => return None,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Model::Linear(_) => "linear",
            Model::Burgers(_) => "burgers",
            Model::Cubic(_) => "cubic",
            Model::TwoPhase(_) => "two_phase",
        }
    }

    /// Replaces the admissible range. The two-phase model is fixed to `[0, 1]`.
    pub fn with_bounds(self, bounds: (f64, f64)) -> Self {
        match self {
            Model::Linear(_) => Model::Linear(Linear { bounds }),
            Model::Burgers(_) => Model::Burgers(Burgers { bounds }),
            Model::Cubic(_) => Model::Cubic(Cubic { bounds }),
            Model::TwoPhase(m) => Model::TwoPhase(m),
        }
    }

    fn inner(&self) -> &dyn FluxModel {
        match self {
            Model::Linear(m) => m,
            Model::Burgers(m) => m,
            Model::Cubic(m) => m,
            Model::TwoPhase(m) => m,
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FluxModel for Model {
    #[inline]
    fn flux(&self, k: f64, u: f64) -> f64 {
        match self {
            Model::Linear(m) => m.flux(k, u),
            Model::Burgers(m) => m.flux(k, u),
            Model::Cubic(m) => m.flux(k, u),
            Model::TwoPhase(m) => m.flux(k, u),
        }
    }

    #[inline]
    fn flux_derivative(&self, k: f64, u: f64) -> f64 {
        match self {
            Model::Linear(m) => m.flux_derivative(k, u),
            Model::Burgers(m) => m.flux_derivative(k, u),
            Model::Cubic(m) => m.flux_derivative(k, u),
            Model::TwoPhase(m) => m.flux_derivative(k, u),
        }
    }

    fn bounds(&self) -> (f64, f64) {
        self.inner().bounds()
    }

    fn is_multiplicative(&self) -> bool {
        self.inner().is_multiplicative()
    }

    fn speed_zeros(&self, k: f64) -> Option<&[f64]> {
        match self {
            Model::Linear(m) => m.speed_zeros(k),
            Model::Burgers(m) => m.speed_zeros(k),
            Model::Cubic(m) => m.speed_zeros(k),
            Model::TwoPhase(m) => m.speed_zeros(k),
        }
    }

    fn max_abs_speed(&self, k: f64, lo: f64, hi: f64) -> f64 {
        match self {
            Model::Linear(m) => m.max_abs_speed(k, lo, hi),
            Model::Burgers(m) => m.max_abs_speed(k, lo, hi),
            Model::Cubic(m) => m.max_abs_speed(k, lo, hi),
            Model::TwoPhase(m) => m.max_abs_speed(k, lo, hi),
        }
    }

    fn g1(&self, u: f64) -> Option<f64> {
        self.inner().g1(u)
    }

    fn h1(&self, u: f64) -> Option<f64> {
        self.inner().h1(u)
    }

    fn has_capillarity_weights(&self) -> bool {
        self.inner().has_capillarity_weights()
    }
}
