//! One-dimensional blood flow in an elastic vessel.
//!
//! ```text
//! A_t + Q_x = 0
//! Q_t + (α Q²/A + (A ψ − Ψ)/ρ)_x = −2πν α/(α−1) Q/A
//! ψ(A) = β (√A − √A₀),  Ψ = ∫_{A₀}^{A} ψ
//! ```
//!
//! With this pressure law `(A ψ − Ψ)/ρ = β/(3ρ) (A^{3/2} − A₀^{3/2})`.
//! Units are CGS.

use std::f64::consts::PI;

use crate::error::{DomainError, Error, Result};
use crate::flux::ConservationLaw;

use super::ManufacturedProblem;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BloodFlowParams {
    /// Reference pressure (dyn/cm²); does not enter the flux.
    pub p0: f64,
    /// Reference area (cm²).
    pub a0: f64,
    /// Coriolis (momentum-flux correction) coefficient.
    pub coriolis: f64,
    /// Density (g/cm³).
    pub rho: f64,
    /// Kinematic viscosity (cm²/s).
    pub nu: f64,
    /// Wall stiffness (dyn/cm³).
    pub beta: f64,
}

impl Default for BloodFlowParams {
    fn default() -> Self {
        Self {
            p0: 0.0,
            a0: 1.0,
            coriolis: 1.1,
            rho: 1.06,
            nu: 3.302e-2,
            beta: 1.0,
        }
    }
}

impl BloodFlowParams {
    pub fn validate(&self) -> Result<()> {
        let ok = self.rho > 0.0
            && self.a0 > 0.0
            && self.coriolis > 1.0
            && self.beta >= 0.0
            && self.nu >= 0.0;
        if ok {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "blood-flow parameters need rho > 0, A0 > 0, coriolis > 1, beta >= 0, nu >= 0: {self:?}"
            )))
        }
    }

    /// `α / (α − 1)` friction factor.
    fn friction(&self) -> f64 {
        self.coriolis / (self.coriolis - 1.0)
    }
}

fn check_area(a: f64) -> std::result::Result<(), DomainError> {
    if a > 0.0 && a.is_finite() {
        Ok(())
    } else {
        Err(DomainError(format!("non-positive vessel area A = {a}")))
    }
}

/// Physical flux `(Q, α Q²/A + β/(3ρ) (A^{3/2} − A₀^{3/2}))`.
pub fn bloodflow_flux(u: [f64; 2], p: &BloodFlowParams) -> std::result::Result<[f64; 2], DomainError> {
    let [a, q] = u;
    check_area(a)?;
    let pressure = p.beta / (3.0 * p.rho) * (a * a.sqrt() - p.a0 * p.a0.sqrt());
    Ok([q, p.coriolis * q * q / a + pressure])
}

/// Eigenvalues `λ₁ ≤ λ₂` of the flux Jacobian.
pub fn bloodflow_eigenvalues(
    u: [f64; 2],
    p: &BloodFlowParams,
) -> std::result::Result<(f64, f64), DomainError> {
    let [a, q] = u;
    check_area(a)?;
    let v = q / a;
    let disc = p.coriolis * (p.coriolis - 1.0) * v * v + p.beta * a.sqrt() / (2.0 * p.rho);
    if disc < 0.0 {
        return Err(DomainError(format!(
            "flux Jacobian has complex eigenvalues at A = {a}, Q = {q}"
        )));
    }
    let r = disc.sqrt();
    Ok((p.coriolis * v - r, p.coriolis * v + r))
}

/// Friction source `(0, −2πν α/(α−1) Q/A)`.
pub fn bloodflow_source(
    _x: f64,
    _t: f64,
    u: [f64; 2],
    p: &BloodFlowParams,
) -> std::result::Result<[f64; 2], DomainError> {
    let [a, q] = u;
    check_area(a)?;
    Ok([0.0, -2.0 * PI * p.nu * p.friction() * q / a])
}

/// The `(A, Q)` system as a [`ConservationLaw`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BloodFlow {
    pub params: BloodFlowParams,
}

impl BloodFlow {
    pub fn new(params: BloodFlowParams) -> Result<Self> {
        params.validate()?;
        Ok(Self { params })
    }

    /// Analytic Jacobian `∂F/∂U`, row-major.
    pub fn jacobian(&self, u: [f64; 2]) -> std::result::Result<[[f64; 2]; 2], DomainError> {
        let [a, q] = u;
        check_area(a)?;
        let p = &self.params;
        let v = q / a;
        Ok([
            [0.0, 1.0],
            [
                -p.coriolis * v * v + p.beta * a.sqrt() / (2.0 * p.rho),
                2.0 * p.coriolis * v,
            ],
        ])
    }
}

impl ConservationLaw for BloodFlow {
    fn name(&self) -> &str {
        "bloodflow"
    }

    fn num_components(&self) -> usize {
        2
    }

    fn flux(&self, u: &[f64], out: &mut [f64]) -> std::result::Result<(), DomainError> {
        out.copy_from_slice(&bloodflow_flux([u[0], u[1]], &self.params)?);
        Ok(())
    }

    fn source(
        &self,
        x: f64,
        t: f64,
        u: &[f64],
        out: &mut [f64],
    ) -> std::result::Result<(), DomainError> {
        out.copy_from_slice(&bloodflow_source(x, t, [u[0], u[1]], &self.params)?);
        Ok(())
    }

    fn max_wave_speed(
        &self,
        minus: &[f64],
        plus: &[f64],
    ) -> std::result::Result<f64, DomainError> {
        let (l1m, l2m) = bloodflow_eigenvalues([minus[0], minus[1]], &self.params)?;
        let (l1p, l2p) = bloodflow_eigenvalues([plus[0], plus[1]], &self.params)?;
        Ok(l1m.abs().max(l1p.abs()).max(l2m.abs()).max(l2p.abs()))
    }

    fn admissible(&self, u: &[f64]) -> bool {
        u[0] > 0.0 && u[0].is_finite()
    }
}

/// Blood flow with `A = cos(2πx) cos t + 2`, `Q = sin(2πx) cos t`.
#[derive(Debug, Clone, Copy)]
pub struct BloodFlowMms {
    law: BloodFlow,
}

pub fn bloodflow_mms(params: BloodFlowParams) -> Result<BloodFlowMms> {
    Ok(BloodFlowMms {
        law: BloodFlow::new(params)?,
    })
}

impl BloodFlowMms {
    pub fn params(&self) -> &BloodFlowParams {
        &self.law.params
    }

    pub fn blood_flow(&self) -> &BloodFlow {
        &self.law
    }
}

impl ManufacturedProblem for BloodFlowMms {
    fn name(&self) -> &str {
        "bloodflow"
    }

    fn law(&self) -> &dyn ConservationLaw {
        &self.law
    }

    fn component_names(&self) -> Vec<String> {
        vec!["A".into(), "Q".into()]
    }

    fn exact(&self, x: f64, t: f64, out: &mut [f64]) {
        let (s, c) = (2.0 * PI * x).sin_cos();
        out[0] = c * t.cos() + 2.0;
        out[1] = s * t.cos();
    }

    fn forcing(&self, x: f64, t: f64, out: &mut [f64]) {
        let p = &self.law.params;
        let k = 2.0 * PI;
        let (s, c) = (k * x).sin_cos();
        let (st, ct) = t.sin_cos();
        let a = c * ct + 2.0;
        let q = s * ct;
        let a_t = -c * st;
        let a_x = -k * s * ct;
        let q_t = -s * st;
        let q_x = k * c * ct;
        let momentum_x = p.coriolis * (2.0 * q * q_x / a - q * q * a_x / (a * a))
            + p.beta / (2.0 * p.rho) * a.sqrt() * a_x;
        out[0] = a_t + q_x;
        out[1] = q_t + momentum_x + 2.0 * PI * p.nu * p.friction() * q / a;
    }
}
