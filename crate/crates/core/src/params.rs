//! Scheme constants.

use crate::error::{Error, Result};

/// Which regularization a run uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemeKind {
    /// `ε β u_xx + μ γ u_xxt`, implicit in the mixed term.
    Capillarity,
    /// `ε β u_xx + μ γ u_xxx`, fully explicit.
    Dispersive,
}

/// Constants of the regularized schemes.
///
/// The viscosity is `βΔx` and the dispersion coefficient is
/// `γ μ(Δx)` with `μ(Δx) = mu_constant · Δx^mu_exponent`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeParams {
    pub beta: f64,
    pub gamma: f64,
    pub mu_constant: f64,
    /// 2 gives the nonclassical regime, anything larger the entropy regime.
    pub mu_exponent: f64,
    /// Courant number of the practical time step.
    pub cfl_number: f64,
    /// Slack in the strict stability condition.
    pub delta: f64,
}

impl Default for SchemeParams {
    fn default() -> Self {
        Self {
            beta: 6.0,
            gamma: 36.0,
            mu_constant: 1.0,
            mu_exponent: 2.0,
            cfl_number: 0.3,
            delta: 0.1,
        }
    }
}

impl SchemeParams {
    /// `β = γ = 0` is accepted and switches the regularization off.
    pub fn validate(&self) -> Result<()> {
        let finite = [
            self.beta,
            self.gamma,
            self.mu_constant,
            self.mu_exponent,
            self.cfl_number,
            self.delta,
        ]
        .iter()
        .all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidParams("non-finite scheme parameter"));
        }
        if self.beta < 0.0 {
            return Err(Error::InvalidParams("beta must be non-negative"));
        }
        if self.gamma < 0.0 {
            return Err(Error::InvalidParams("gamma must be non-negative"));
        }
        if self.mu_constant <= 0.0 {
            return Err(Error::InvalidParams("mu_constant must be positive"));
        }
        if self.mu_exponent < 2.0 {
            return Err(Error::InvalidParams("mu_exponent must be at least 2"));
        }
        if !(self.cfl_number > 0.0 && self.cfl_number < 1.0) {
            return Err(Error::InvalidParams("cfl_number must lie in (0, 1)"));
        }
        if self.delta <= 0.0 {
            return Err(Error::InvalidParams("delta must be positive"));
        }
        Ok(())
    }

    /// `μ(Δx)`
    pub fn mu(&self, dx: f64) -> f64 {
        self.mu_constant * libm::pow(dx, self.mu_exponent)
    }

    /// `γ μ(Δx)`
    pub fn dispersion(&self, dx: f64) -> f64 {
        self.gamma * self.mu(dx)
    }

    /// True in the `μ = O(Δx²)` regime.
    pub fn is_nonclassical_regime(&self) -> bool {
        self.mu_exponent == 2.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(SchemeParams::default().validate().is_ok());
        let off = SchemeParams {
            beta: 0.0,
            gamma: 0.0,
            ..Default::default()
        };
        assert!(off.validate().is_ok());
        for bad in [
            SchemeParams {
                mu_exponent: 1.5,
                ..Default::default()
            },
            SchemeParams {
                cfl_number: 1.0,
                ..Default::default()
            },
            SchemeParams {
                beta: -1.0,
                ..Default::default()
            },
            SchemeParams {
                mu_constant: 0.0,
                ..Default::default()
            },
            SchemeParams {
                delta: f64::NAN,
                ..Default::default()
            },
        ] {
            assert!(bad.validate().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn mu_scaling() {
        let p = SchemeParams {
            mu_constant: 2.0,
            mu_exponent: 3.0,
            ..Default::default()
        };
        assert!((p.mu(0.1) - 2e-3).abs() < 1e-15);
        assert!((p.dispersion(0.1) - 36.0 * 2e-3).abs() < 1e-13);
    }
}
