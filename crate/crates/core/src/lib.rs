//! Fully discrete finite-difference schemes for scalar conservation laws
//!
//! ```text
//! u_t + f(k(x), u)_x = R[u]
//! ```
//!
//! where the spatial coefficient `k` may jump and `R` is one of two
//! regularizations:
//!
//! * capillarity, `ε β u_xx + μ γ u_xxt`, advanced by [`capillarity`]
//!   (implicit in the mixed third-order term, one tridiagonal solve per step);
//! * diffusion-dispersion, `ε β u_xx + μ γ u_xxx`, advanced by the fully
//!   explicit [`dispersive`] scheme.
//!
//! With the dispersion scaled as `μ(Δx) = c·Δx²` the schemes converge to weak
//! solutions that may contain nonclassical (undercompressive) shocks; with
//! `μ(Δx) = o(Δx²)` they select the classical entropy solution.
//!
//! The crate is `no_std` and needs only `alloc`. File formats, scenario
//! presets and the command line live in the `ddflux` companion crate.

#![no_std]
// `!(x > 0.0)` also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod capillarity;
pub mod cfl;
pub mod coefficient;
pub mod diagnostics;
pub mod dispersive;
mod error;
pub mod field;
pub mod flux;
pub mod grid;
pub mod model;
pub mod ops;
pub mod params;
pub mod quadrature;
pub mod tridiag;

pub use capillarity::CapillarityStepper;
pub use cfl::{CflBound, CflChoice, CflMode};
pub use coefficient::{average_k, project_initial, CoefficientK, Piece, Piecewise};
pub use dispersive::DispersiveStepper;
pub use error::{Error, Result};
pub use field::Field;
pub use flux::{FluxScheme, NumericalFlux};
pub use grid::{BoundaryCondition, Grid1D};
pub use model::{Burgers, Cubic, FluxModel, Linear, TwoPhase};
pub use params::{SchemeKind, SchemeParams};
