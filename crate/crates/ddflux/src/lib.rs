//! Scenarios, presets, configuration files and CSV output for the
//! `ddflux-core` solvers.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
mod error;
pub mod io;
pub mod model;
pub mod run;
pub mod scenario;

pub use config::{parse_config, render_config};
pub use error::{ConfigError, RunError};
pub use model::Model;
pub use run::{refinement_study, run, Refinement, RunReport};
pub use scenario::{preset, Profile, Scenario, PRESETS};
