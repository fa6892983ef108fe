//! Scenario definitions and the shipped presets.

use std::fmt;
use std::str::FromStr;

use ddflux_core::{
    BoundaryCondition, CflMode, FluxModel, FluxScheme, Piece, Piecewise, SchemeKind, SchemeParams,
};

use crate::model::Model;
use ddflux_core::{Burgers, Cubic, TwoPhase};

/// A piecewise function together with the text it was parsed from.
///
/// The syntax alternates pieces and break points, `v0 @x1 v1 @x2 v2`,
/// where each piece is a number or `lin(a,b)` for `a + b x`.
#[derive(Debug, Clone)]
pub struct Profile {
    text: String,
    function: Piecewise,
}

impl Profile {
    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn function(&self) -> &Piecewise {
        &self.function
    }
}

impl PartialEq for Profile {
    fn eq(&self, other: &Self) -> bool {
        self.text == other.text
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

fn parse_piece(token: &str) -> Result<Piece, String> {
    if let Some(inner) = token.strip_prefix("lin(").and_then(|t| t.strip_suffix(')')) {
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| format!("expected lin(a,b), got `{token}`"))?;
        let intercept = parse_number(a)?;
        let slope = parse_number(b)?;
        return Ok(Piece::Affine { intercept, slope });
    }
    parse_number(token).map(Piece::Constant)
}

pub(crate) fn parse_number(s: &str) -> Result<f64, String> {
    let s = s.trim();
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(format!("`{s}` is not a finite number")),
    }
}

impl FromStr for Profile {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut breaks = Vec::new();
        let mut pieces = Vec::new();
        for token in s.split_whitespace() {
            if let Some(at) = token.strip_prefix('@') {
                if pieces.len() != breaks.len() + 1 {
                    return Err(format!("break `{token}` must follow a piece"));
                }
                breaks.push(parse_number(at)?);
            } else {
                if pieces.len() != breaks.len() {
                    return Err(format!("piece `{token}` must follow a break point"));
                }
                pieces.push(parse_piece(token)?);
            }
        }
        if pieces.is_empty() {
            return Err("empty piecewise description".into());
        }
        let function = Piecewise::new(breaks, pieces).map_err(|e| e.to_string())?;
        Ok(Self {
            text: s.split_whitespace().collect::<Vec<_>>().join(" "),
            function,
        })
    }
}

/// Everything a run needs.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: String,
    pub domain: (f64, f64),
    pub n_cells: usize,
    pub bc: BoundaryCondition,
    pub t_final: f64,
    pub u0: Profile,
    pub k: Profile,
    /// Declared range `[α, β_k]` of the coefficient.
    pub k_bounds: (f64, f64),
    pub model: Model,
    pub flux: FluxScheme,
    pub scheme: SchemeKind,
    pub params: SchemeParams,
    pub cfl_mode: CflMode,
    /// Evaluate the entropy residual every this many steps, `0` to skip.
    pub entropy_every: usize,
}

impl Scenario {
    /// Checks the invariants not already enforced by the core types.
    pub fn validate(&self) -> Result<(), String> {
        let (a, b) = self.domain;
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err("domain must satisfy x_left < x_right".into());
        }
        if self.n_cells == 0 {
            return Err("n_cells must be positive".into());
        }
        if !(self.t_final > 0.0 && self.t_final.is_finite()) {
            return Err("t_final must be positive".into());
        }
        let (lo, hi) = self.model.bounds();
        if !(lo < hi) {
            return Err("u_bounds must satisfy lower < upper".into());
        }
        let (umin, umax) = self.u0.function().range_on(a, b);
        if umin < lo || umax > hi {
            return Err(format!(
                "u0 range [{umin}, {umax}] leaves u_bounds [{lo}, {hi}]"
            ));
        }
        let (kl, kh) = self.k_bounds;
        if !(kl <= kh) {
            return Err("k_bounds must satisfy lower <= upper".into());
        }
        let (kmin, kmax) = self.k.function().range_on(a, b);
        if kmin < kl || kmax > kh {
            return Err(format!(
                "k range [{kmin}, {kmax}] leaves k_bounds [{kl}, {kh}]"
            ));
        }
        self.params.validate().map_err(|e| e.to_string())?;
        Ok(())
    }

    /// Non-fatal findings about the scenario.
    ///
    /// The flux is sampled for intervals where `∂f/∂u` is constant, since the
    /// entropy theory needs `f_uu ≠ 0` almost everywhere.
    pub fn warnings(&self) -> Vec<String> {
        const SAMPLES: usize = 256;
        let (lo, hi) = self.model.bounds();
        let (kmin, kmax) = self.k.function().range_on(self.domain.0, self.domain.1);
        let mut out = Vec::new();
        for k in [kmin, kmax] {
            let d: Vec<f64> = (0..=SAMPLES)
                .map(|i| {
                    self.model
                        .flux_derivative(k, lo + (hi - lo) * i as f64 / SAMPLES as f64)
                })
                .collect();
            let scale = d.iter().fold(1.0f64, |m, v| m.max(v.abs()));
            let flat = d
                .windows(2)
                .filter(|w| (w[1] - w[0]).abs() <= 1e-12 * scale)
                .count();
            if flat * 10 >= SAMPLES {
                out.push(format!(
                    "flux is linear on {:.0}% of u_bounds at k={k}; entropy selection needs a genuinely nonlinear flux",
                    100.0 * flat as f64 / SAMPLES as f64
                ));
                break;
            }
        }
        out
    }

    pub fn with_cells(&self, n_cells: usize) -> Self {
        Self {
            n_cells,
            ..self.clone()
        }
    }

    pub fn with_mu_exponent(&self, exponent: f64) -> Self {
        let mut s = self.clone();
        s.params.mu_exponent = exponent;
        s
    }
}

pub const PRESETS: &[&str] = &[
    "cap_homogeneous",
    "cap_homogeneous_mu3",
    "cap_heterogeneous",
    "cap_heterogeneous_mu3",
    "dd_homogeneous",
    "dd_homogeneous_mu25",
    "dd_homogeneous_mu3",
    "dd_heterogeneous",
    "dd_heterogeneous_mu25",
    "dd_heterogeneous_mu3",
    "burgers_riemann",
];

fn profile(text: &str) -> Profile {
    text.parse().expect("preset profile")
}

fn capillarity(name: &str, k: &str, k_bounds: (f64, f64), mu_exponent: f64) -> Scenario {
    Scenario {
        name: name.into(),
        domain: (0.0, 2.0),
        n_cells: 1024,
        bc: BoundaryCondition::Outflow,
        t_final: 0.6,
        u0: profile("0.8 @0.25 0.2"),
        k: profile(k),
        k_bounds,
        model: Model::TwoPhase(TwoPhase::default()),
        flux: FluxScheme::LocalLaxFriedrichs,
        scheme: SchemeKind::Capillarity,
        params: SchemeParams {
            beta: 6.0,
            gamma: 36.0,
            mu_exponent,
            cfl_number: 0.3,
            ..SchemeParams::default()
        },
        cfl_mode: CflMode::Practical,
        entropy_every: 10,
    }
}

fn dispersive(name: &str, k: &str, k_bounds: (f64, f64), mu_exponent: f64) -> Scenario {
    Scenario {
        name: name.into(),
        domain: (-0.5, 0.5),
        n_cells: 1024,
        bc: BoundaryCondition::Outflow,
        t_final: 0.01,
        u0: profile("4 @0 -2"),
        k: profile(k),
        k_bounds,
        model: Model::Cubic(Cubic {
            bounds: (-3.5, 4.5),
        }),
        flux: FluxScheme::EngquistOsher,
        scheme: SchemeKind::Dispersive,
        params: SchemeParams {
            beta: 5.0,
            gamma: 20.0,
            mu_exponent,
            cfl_number: 0.3,
            ..SchemeParams::default()
        },
        cfl_mode: CflMode::Practical,
        entropy_every: 10,
    }
}

/// Looks up a shipped preset by name.
pub fn preset(name: &str) -> Option<Scenario> {
    const CAP_K: &str = "1.1 @0.6 1.4";
    const DD_K: &str = "1.1 @0.1 0.9";
    Some(match name {
        "cap_homogeneous" => capillarity(name, "1", (1.0, 1.0), 2.0),
        "cap_homogeneous_mu3" => capillarity(name, "1", (1.0, 1.0), 3.0),
        "cap_heterogeneous" => capillarity(name, CAP_K, (1.1, 1.4), 2.0),
        "cap_heterogeneous_mu3" => capillarity(name, CAP_K, (1.1, 1.4), 3.0),
        "dd_homogeneous" => dispersive(name, "1", (1.0, 1.0), 2.0),
        "dd_homogeneous_mu25" => dispersive(name, "1", (1.0, 1.0), 2.5),
        "dd_homogeneous_mu3" => dispersive(name, "1", (1.0, 1.0), 3.0),
        "dd_heterogeneous" => dispersive(name, DD_K, (0.9, 1.1), 2.0),
        "dd_heterogeneous_mu25" => dispersive(name, DD_K, (0.9, 1.1), 2.5),
        "dd_heterogeneous_mu3" => dispersive(name, DD_K, (0.9, 1.1), 3.0),
        "burgers_riemann" => Scenario {
            name: name.into(),
            domain: (-1.0, 1.0),
            n_cells: 1024,
            bc: BoundaryCondition::Outflow,
            t_final: 0.5,
            u0: profile("1 @0 0"),
            k: profile("1"),
            k_bounds: (1.0, 1.0),
            model: Model::Burgers(Burgers { bounds: (0.0, 1.0) }),
            flux: FluxScheme::EngquistOsher,
            scheme: SchemeKind::Capillarity,
            params: SchemeParams {
                mu_exponent: 3.0,
                ..SchemeParams::default()
            },
            cfl_mode: CflMode::Strict,
            entropy_every: 1,
        },
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_syntax() {
        let p: Profile = "0.8 @0.25 0.2".parse().unwrap();
        assert_eq!(p.function().eval(0.1), 0.8);
        assert_eq!(p.function().eval(0.25), 0.8);
        assert_eq!(p.function().eval(1.0), 0.2);
        let p: Profile = "lin(1,2) @0 3".parse().unwrap();
        assert_eq!(p.function().eval(-1.0), -1.0);
        assert_eq!(p.function().eval(0.5), 3.0);
        for bad in ["", "@1 2", "1 2", "1 @", "1 @x 2", "lin(1) @0 1", "nan"] {
            assert!(bad.parse::<Profile>().is_err(), "{bad}");
        }
    }

    #[test]
    fn presets_are_valid() {
        for name in PRESETS {
            let s = preset(name).unwrap();
            assert_eq!(s.name, *name);
            s.validate().unwrap();
        }
        assert!(preset("nope").is_none());
    }

    #[test]
    fn linear_flux_warns() {
        assert!(PRESETS
            .iter()
            .all(|n| preset(n).unwrap().warnings().is_empty()));
        let mut s = preset("burgers_riemann").unwrap();
        s.model = Model::from_name("linear", Some((0.0, 1.0))).unwrap();
        assert_eq!(s.warnings().len(), 1);
    }

    #[test]
    fn preset_constants() {
        let c = preset("cap_heterogeneous").unwrap();
        assert_eq!(
            (c.domain, c.t_final, c.params.beta, c.params.gamma),
            ((0.0, 2.0), 0.6, 6.0, 36.0)
        );
        assert_eq!(c.params.cfl_number, 0.3);
        assert_eq!(c.k.function().eval(0.5), 1.1);
        assert_eq!(c.k.function().eval(0.7), 1.4);
        let d = preset("dd_heterogeneous").unwrap();
        assert_eq!(
            (d.domain, d.t_final, d.params.beta, d.params.gamma),
            ((-0.5, 0.5), 0.01, 5.0, 20.0)
        );
        assert_eq!(d.k.function().eval(0.1), 1.1);
        assert_eq!(d.k.function().eval(0.2), 0.9);
        assert_eq!(d.u0.function().eval(-0.1), 4.0);
        assert_eq!(d.u0.function().eval(0.1), -2.0);
        assert_eq!(
            preset("dd_homogeneous_mu25").unwrap().params.mu_exponent,
            2.5
        );
    }
}
