//! Line-oriented `key=value` scenario files.
//!
//! ```text
//! # comments run to the end of the line
//! preset=dd_homogeneous
//! n_cells=2048
//! mu_exponent=2.5
//! ```
//!
//! A `preset` line may appear anywhere and supplies every key that the file
//! does not set. Without one, `u0`, `model` and `t_final` are required.

use std::collections::HashMap;

use ddflux_core::{BoundaryCondition, CflMode, FluxScheme, SchemeKind, SchemeParams};

use crate::error::ConfigError;
use crate::model::Model;
use crate::scenario::{parse_number, preset, Profile, Scenario};

const KEYS: &[&str] = &[
    "preset",
    "name",
    "x_left",
    "x_right",
    "n_cells",
    "bc",
    "t_final",
    "u0",
    "k",
    "k_bounds",
    "model",
    "u_bounds",
    "flux",
    "scheme",
    "beta",
    "gamma",
    "mu_constant",
    "mu_exponent",
    "cfl_number",
    "delta",
    "cfl_mode",
    "entropy_every",
];

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `lower,upper`, got `{s}`"))?;
    Ok((parse_number(a)?, parse_number(b)?))
}

fn parse_choice<T: Copy>(value: &str, options: &[(&str, T)]) -> Result<T, String> {
    options
        .iter()
        .find(|(name, _)| *name == value)
        .map(|(_, v)| *v)
        .ok_or_else(|| {
            let names: Vec<_> = options.iter().map(|(n, _)| *n).collect();
            format!("`{value}` is not one of {}", names.join(", "))
        })
}

/// Parses and validates a scenario file.
pub fn parse_config(text: &str) -> Result<Scenario, ConfigError> {
    let mut entries: HashMap<&str, (usize, &str)> = HashMap::new();
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| {
            ConfigError::parse(line, format!("expected key=value, got `{content}`"))
        })?;
        let (key, value) = (key.trim(), value.trim());
        if !KEYS.contains(&key) {
            return Err(ConfigError::parse(line, format!("unknown key `{key}`")));
        }
        if value.is_empty() {
            return Err(ConfigError::parse(line, format!("empty value for `{key}`")));
        }
        if let Some((first, _)) = entries.insert(key, (line, value)) {
            return Err(ConfigError::parse(
                line,
                format!("`{key}` already set on line {first}"),
            ));
        }
    }

    let base = match entries.get("preset") {
        Some(&(line, name)) => preset(name)
            .ok_or_else(|| ConfigError::parse(line, format!("unknown preset `{name}`")))?,
        None => {
            for required in ["u0", "model", "t_final"] {
                if !entries.contains_key(required) {
                    return Err(ConfigError::Validation(format!(
                        "`{required}` is required without a preset"
                    )));
                }
            }
            bare()
        }
    };
    let scenario = apply(base, &entries)?;
    scenario.validate().map_err(ConfigError::Validation)?;
    Ok(scenario)
}

fn bare() -> Scenario {
    Scenario {
        name: "custom".into(),
        domain: (0.0, 1.0),
        n_cells: 256,
        bc: BoundaryCondition::Outflow,
        t_final: 1.0,
        u0: "0".parse().expect("constant profile"),
        k: "1".parse().expect("constant profile"),
        k_bounds: (1.0, 1.0),
        model: Model::from_name("burgers", None).expect("built-in model"),
        flux: FluxScheme::EngquistOsher,
        scheme: SchemeKind::Capillarity,
        params: SchemeParams::default(),
        cfl_mode: CflMode::Practical,
        entropy_every: 1,
    }
}

fn apply(mut s: Scenario, entries: &HashMap<&str, (usize, &str)>) -> Result<Scenario, ConfigError> {
    // `model` before `u_bounds`, whatever the order in the file.
    let mut keys: Vec<_> = entries.iter().collect();
    keys.sort_by_key(|(k, (line, _))| (KEYS.iter().position(|x| x == *k), *line));
    for (&key, &(line, value)) in keys {
        let err = |m: String| ConfigError::parse(line, format!("{key}: {m}"));
        let num = || parse_number(value).map_err(err);
        match key {
            "preset" => {}
            "name" => s.name = value.to_string(),
            "x_left" => s.domain.0 = num()?,
            "x_right" => s.domain.1 = num()?,
            "n_cells" => {
                s.n_cells = value
                    .parse()
                    .map_err(|_| err(format!("`{value}` is not a cell count")))?
            }
            "bc" => {
                s.bc = parse_choice(
                    value,
                    &[
                        ("outflow", BoundaryCondition::Outflow),
                        ("periodic", BoundaryCondition::Periodic),
                    ],
                )
                .map_err(err)?
            }
            "t_final" => s.t_final = num()?,
            "u0" => s.u0 = value.parse().map_err(err)?,
            "k" => s.k = value.parse::<Profile>().map_err(err)?,
            "k_bounds" => s.k_bounds = parse_pair(value).map_err(err)?,
            "model" => {
                s.model = Model::from_name(value, None)
                    .ok_or_else(|| err(format!("unknown model `{value}`")))?
            }
            "u_bounds" => s.model = s.model.with_bounds(parse_pair(value).map_err(err)?),
            "flux" => {
                s.flux = parse_choice(
                    value,
                    &[
                        ("eo", FluxScheme::EngquistOsher),
                        ("llf", FluxScheme::LocalLaxFriedrichs),
                        ("glf", FluxScheme::GlobalLaxFriedrichs),
                    ],
                )
                .map_err(err)?
            }
            "scheme" => {
                s.scheme = parse_choice(
                    value,
                    &[
                        ("capillarity", SchemeKind::Capillarity),
                        ("dispersive", SchemeKind::Dispersive),
                    ],
                )
                .map_err(err)?
            }
            "beta" => s.params.beta = num()?,
            "gamma" => s.params.gamma = num()?,
            "mu_constant" => s.params.mu_constant = num()?,
            "mu_exponent" => s.params.mu_exponent = num()?,
            "cfl_number" => s.params.cfl_number = num()?,
            "delta" => s.params.delta = num()?,
            "cfl_mode" => {
                s.cfl_mode = parse_choice(
                    value,
                    &[
                        ("practical", CflMode::Practical),
                        ("strict", CflMode::Strict),
                    ],
                )
                .map_err(err)?
            }
            "entropy_every" => {
                s.entropy_every = value
                    .parse()
                    .map_err(|_| err(format!("`{value}` is not a step count")))?
            }
            _ => unreachable!("key list checked above"),
        }
    }
    Ok(s)
}

/// Renders a scenario in the format read by [`parse_config`].
pub fn render_config(s: &Scenario) -> String {
    let (lo, hi) = ddflux_core::FluxModel::bounds(&s.model);
    let flux = match s.flux {
        FluxScheme::EngquistOsher => "eo",
        FluxScheme::LocalLaxFriedrichs => "llf",
        FluxScheme::GlobalLaxFriedrichs => "glf",
    };
    let scheme = match s.scheme {
        SchemeKind::Capillarity => "capillarity",
        SchemeKind::Dispersive => "dispersive",
    };
    let bc = match s.bc {
        BoundaryCondition::Outflow => "outflow",
        BoundaryCondition::Periodic => "periodic",
    };
    let mode = match s.cfl_mode {
        CflMode::Practical => "practical",
        CflMode::Strict => "strict",
    };
    let p = &s.params;
    format!(
        "name={}\nx_left={}\nx_right={}\nn_cells={}\nbc={bc}\nt_final={}\nu0={}\nk={}\nk_bounds={},{}\n\
         model={}\nu_bounds={lo},{hi}\nflux={flux}\nscheme={scheme}\nbeta={}\ngamma={}\nmu_constant={}\n\
         mu_exponent={}\ncfl_number={}\ndelta={}\ncfl_mode={mode}\nentropy_every={}\n",
        s.name,
        s.domain.0,
        s.domain.1,
        s.n_cells,
        s.t_final,
        s.u0,
        s.k,
        s.k_bounds.0,
        s.k_bounds.1,
        s.model,
        p.beta,
        p.gamma,
        p.mu_constant,
        p.mu_exponent,
        p.cfl_number,
        p.delta,
        s.entropy_every,
    )
}
