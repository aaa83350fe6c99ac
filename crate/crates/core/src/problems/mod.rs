//! Manufactured-solution test problems.

mod bloodflow;
mod burgers;

pub use bloodflow::{
    bloodflow_eigenvalues, bloodflow_flux, bloodflow_mms, bloodflow_source, BloodFlow,
    BloodFlowMms, BloodFlowParams,
};
pub use burgers::{burgers_mms, BurgersMms};

use crate::dg::BoundaryMode;
use crate::flux::ConservationLaw;
use crate::registry::Registry;

/// A conservation law together with an exact solution and the forcing that
/// makes it exact.
pub trait ManufacturedProblem: Send + Sync {
    fn name(&self) -> &str;

    fn law(&self) -> &dyn ConservationLaw;

    /// Labels for each solution component, used in output tables.
    fn component_names(&self) -> Vec<String>;

    fn exact(&self, x: f64, t: f64, out: &mut [f64]);

    /// `u_t + f(u)_x − s(u)` evaluated at the exact solution.
    fn forcing(&self, x: f64, t: f64, out: &mut [f64]);

    fn domain_length(&self) -> f64 {
        1.0
    }

    fn boundary(&self) -> BoundaryMode {
        BoundaryMode::Periodic
    }
}

pub fn problem_registry() -> Registry<dyn ManufacturedProblem> {
    let mut r: Registry<dyn ManufacturedProblem> = Registry::new("problem");
    r.register(
        "burgers",
        "inviscid Burgers, u = sin(2πx + t) on [0, 1]",
        |_| Box::new(burgers_mms()),
    );
    r.register(
        "bloodflow",
        "1D blood flow (A, Q) with A = cos(2πx)cos t + 2, Q = sin(2πx)cos t",
        |_| Box::new(bloodflow_mms(BloodFlowParams::default()).expect("default parameters are admissible")),
    );
    r
}
