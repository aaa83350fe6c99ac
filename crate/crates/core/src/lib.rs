//! Discontinuous Galerkin discretization of 1D conservation laws with
//! explicit forward Euler and two-step Adams–Bashforth time stepping.
//!
//! The crate is organised around three registries of interchangeable
//! strategies, each selectable by name at runtime:
//!
//! * [`flux::flux_registry`] — interface numerical fluxes,
//! * [`timestep::scheme_registry`] — time integrators,
//! * [`problems::problem_registry`] — manufactured-solution test problems.
//!
//! [`harness`] drives refinement studies over these and emits rate tables.

pub mod basis;
pub mod dg;
pub mod error;
pub mod field;
pub mod flux;
pub mod harness;
pub mod laws;
pub mod mesh;
pub mod problems;
pub mod quadrature;
pub mod registry;
pub mod timestep;

pub use dg::{cell_mean_total, dg_residual, BoundaryMode, DgOperator};
pub use error::{DomainError, Error, Result};
pub use field::{DGField, TraceValues};
pub use flux::{ConservationLaw, FluxResult, LocalLaxFriedrichs, NumericalFlux, ScalarLaw};
pub use mesh::Mesh;
pub use quadrature::QuadratureRule;
pub use timestep::{IntegratorState, SchemeKind, TimeScheme};
