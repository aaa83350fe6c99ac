//! DG spatial operator.
//!
//! For each element `I_j` and basis function `φ`,
//!
//! ```text
//! H_j(u, φ) = ∫ f(u) φ' + ∫ s φ − f̂|_{x_{j+1}} φ⁻|_{x_{j+1}} + f̂|_{x_j} φ⁺|_{x_j}
//! ```
//!
//! and the returned residual is `M⁻¹ H`, i.e. `2/h` times the assembled vector
//! since the orthonormal basis has mass matrix `(h/2) I`.

use crate::basis::ReferenceElement;
use crate::error::{Error, Result};
use crate::field::{dot, volume_quad_points, DGField};
use crate::flux::{ConservationLaw, NumericalFlux};
use crate::mesh::Mesh;

/// Treatment of the two outer nodes `x_0` and `x_{N+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BoundaryMode {
    /// Outer flux terms are dropped, as in the boundary functionals `H_0`, `H_N`.
    Free,
    /// `x_0` and `x_{N+1}` are identified.
    #[default]
    Periodic,
}

impl BoundaryMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundaryMode::Free => "free",
            BoundaryMode::Periodic => "periodic",
        }
    }
}

impl std::str::FromStr for BoundaryMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "free" => Ok(BoundaryMode::Free),
            "periodic" => Ok(BoundaryMode::Periodic),
            other => Err(Error::invalid(format!(
                "unknown boundary mode '{other}' (expected free or periodic)"
            ))),
        }
    }
}

/// Manufactured forcing `g(x, t)` added to the physical source.
pub type Forcing<'a> = &'a (dyn Fn(f64, f64, &mut [f64]) + Send + Sync);

/// Mass-inverted DG residual; shares [`DGField`]'s shape.
pub type ResidualField = DGField;

/// Reusable DG operator for a fixed law, flux, mesh and degree.
pub struct DgOperator<'a> {
    law: &'a dyn ConservationLaw,
    flux: &'a dyn NumericalFlux,
    mesh: Mesh,
    bc: BoundaryMode,
    forcing: Option<Forcing<'a>>,
    reference: ReferenceElement,
}

impl<'a> DgOperator<'a> {
    pub fn new(
        law: &'a dyn ConservationLaw,
        flux: &'a dyn NumericalFlux,
        mesh: &Mesh,
        degree: usize,
        bc: BoundaryMode,
    ) -> Result<Self> {
        Ok(Self {
            law,
            flux,
            mesh: mesh.clone(),
            bc,
            forcing: None,
            reference: ReferenceElement::new(degree, volume_quad_points(degree))?,
        })
    }

    pub fn with_forcing(mut self, forcing: Forcing<'a>) -> Self {
        self.forcing = Some(forcing);
        self
    }

    pub fn degree(&self) -> usize {
        self.reference.degree()
    }

    pub fn mesh(&self) -> &Mesh {
        &self.mesh
    }

    pub fn law(&self) -> &dyn ConservationLaw {
        self.law
    }

    /// `R(u, t)` such that `∫_{I_j} R φ = H_j(u, φ)` for every basis function.
    pub fn residual(&self, field: &DGField, t: f64) -> Result<ResidualField> {
        let m = self.law.num_components();
        if field.mesh() != &self.mesh
            || field.degree() != self.degree()
            || field.num_components() != m
        {
            return Err(Error::invalid(
                "field shape does not match the DG operator (mesh, degree or components)",
            ));
        }
        let n_el = self.mesh.num_elements();
        let h = self.mesh.h();
        let nb = self.reference.num_basis();
        let quad = self.reference.quadrature();
        let left = self.reference.left();
        let right = self.reference.right();

        let mut out = DGField::zeros(&self.mesh, self.degree(), m)?;

        // traces at both ends of every element
        let mut trace_left = vec![0.0; n_el * m];
        let mut trace_right = vec![0.0; n_el * m];
        for j in 0..n_el {
            for c in 0..m {
                let coef = field.local(j, c);
                trace_left[j * m + c] = dot(coef, left);
                trace_right[j * m + c] = dot(coef, right);
            }
        }

        // interface fluxes at nodes 0..=N+1
        let mut fhat = vec![0.0; (n_el + 1) * m];
        let mut has_flux = vec![false; n_el + 1];
        for node in 1..n_el {
            let minus = &trace_right[(node - 1) * m..node * m];
            let plus = &trace_left[node * m..(node + 1) * m];
            self.flux
                .interface_flux(self.law, minus, plus, &mut fhat[node * m..(node + 1) * m])
                .map_err(|e| self.interface_error(node, e))?;
            has_flux[node] = true;
        }
        if self.bc == BoundaryMode::Periodic {
            let minus = &trace_right[(n_el - 1) * m..n_el * m];
            let plus = &trace_left[..m];
            let mut wrapped = vec![0.0; m];
            self.flux
                .interface_flux(self.law, minus, plus, &mut wrapped)
                .map_err(|e| self.interface_error(0, e))?;
            fhat[..m].copy_from_slice(&wrapped);
            fhat[n_el * m..].copy_from_slice(&wrapped);
            has_flux[0] = true;
            has_flux[n_el] = true;
        }

        let mut u = vec![0.0; m];
        let mut f = vec![0.0; m];
        let mut s = vec![0.0; m];
        let mut g = vec![0.0; m];
        let half_h = 0.5 * h;
        for j in 0..n_el {
            for (q, (&xi, &w)) in quad.points.iter().zip(&quad.weights).enumerate() {
                let phi = self.reference.values_at(q);
                let dphi = self.reference.derivatives_at(q);
                for (c, uc) in u.iter_mut().enumerate() {
                    *uc = dot(field.local(j, c), phi);
                }
                let x = self.mesh.map_to_physical(j, xi);
                let at = |e| Error::domain(format!("element {j} (x = {x:.6})"), e);
                self.law.flux(&u, &mut f).map_err(at)?;
                self.law.source(x, t, &u, &mut s).map_err(at)?;
                if let Some(forcing) = self.forcing {
                    forcing(x, t, &mut g);
                    for (sc, gc) in s.iter_mut().zip(&g) {
                        *sc += gc;
                    }
                }
                for c in 0..m {
                    // (2/h) dφ̂/dξ · (h/2) dξ cancels on the flux term
                    let (fw, sw) = (w * f[c], w * half_h * s[c]);
                    for ((r, &d), &p) in out.local_mut(j, c).iter_mut().zip(dphi).zip(phi) {
                        *r += fw * d + sw * p;
                    }
                }
            }
            for c in 0..m {
                let local = out.local_mut(j, c);
                if has_flux[j + 1] {
                    let fr = fhat[(j + 1) * m + c];
                    for i in 0..nb {
                        local[i] -= fr * right[i];
                    }
                }
                if has_flux[j] {
                    let fl = fhat[j * m + c];
                    for i in 0..nb {
                        local[i] += fl * left[i];
                    }
                }
            }
        }
        let inv_half_h = 1.0 / half_h;
        for r in out.coeffs_mut() {
            *r *= inv_half_h;
        }
        Ok(out)
    }

    fn interface_error(&self, node: usize, e: crate::error::DomainError) -> Error {
        Error::domain(
            format!("interface node {node} (x = {:.6})", self.mesh.node(node)),
            e,
        )
    }
}

/// One-shot residual evaluation; see [`DgOperator::residual`].
pub fn dg_residual(
    law: &dyn ConservationLaw,
    flux: &dyn NumericalFlux,
    field: &DGField,
    t: f64,
    bc: BoundaryMode,
    forcing: Option<Forcing<'_>>,
) -> Result<ResidualField> {
    let mut op = DgOperator::new(law, flux, field.mesh(), field.degree(), bc)?;
    if let Some(g) = forcing {
        op = op.with_forcing(g);
    }
    op.residual(field, t)
}

/// `∫_0^L u_h dx` per component.
pub fn cell_mean_total(field: &DGField) -> Vec<f64> {
    // ∫_{I_j} φ_0 dx = (h/2) · √2
    let w = 0.5 * field.mesh().h() * std::f64::consts::SQRT_2;
    (0..field.num_components())
        .map(|c| {
            (0..field.mesh().num_elements())
                .map(|j| w * field.local(j, c)[0])
                .sum()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{l2_error, l2_project_scalar};
    use crate::flux::LocalLaxFriedrichs;
    use crate::laws::{Burgers, LinearAdvection};
    use std::f64::consts::PI;

    #[test]
    fn constant_state_has_zero_residual() {
        let mesh = Mesh::new(1.0, 7).unwrap();
        for k in 0..4 {
            let u = l2_project_scalar(|_| 1.7, &mesh, k).unwrap();
            let r = dg_residual(&Burgers, &LocalLaxFriedrichs, &u, 0.0, BoundaryMode::Periodic, None)
                .unwrap();
            assert!(r.max_abs_coeff() < 1e-12, "k={k}");
        }
    }

    #[test]
    fn advection_residual_approximates_minus_derivative() {
        let law = LinearAdvection { speed: 1.0 };
        for k in 1..=3usize {
            let mut errs = Vec::new();
            for n in [16usize, 32, 64] {
                let mesh = Mesh::new(1.0, n).unwrap();
                let u = l2_project_scalar(|x| (2.0 * PI * x).sin(), &mesh, k).unwrap();
                let r = dg_residual(&law, &LocalLaxFriedrichs, &u, 0.0, BoundaryMode::Periodic, None)
                    .unwrap();
                let e = l2_error(&r, |x, o| o[0] = -2.0 * PI * (2.0 * PI * x).cos(), k + 4).unwrap();
                errs.push(e[0]);
            }
            for w in errs.windows(2) {
                let rate = (w[0] / w[1]).log2();
                assert!(rate >= k as f64 - 0.1, "k={k} rate={rate}");
            }
        }
    }

    #[test]
    fn cell_mean_examples() {
        let mesh = Mesh::new(1.0, 6).unwrap();
        assert_eq!(cell_mean_total(&DGField::zeros(&mesh, 2, 1).unwrap()), vec![0.0]);
        let two = l2_project_scalar(|_| 2.0, &mesh, 2).unwrap();
        assert!((cell_mean_total(&two)[0] - 2.0).abs() < 1e-13);
        let s = l2_project_scalar(|x| (2.0 * PI * x).sin(), &mesh, 3).unwrap();
        assert!(cell_mean_total(&s)[0].abs() < 1e-12);
    }

    #[test]
    fn free_mode_ignores_exterior() {
        // residual of element 0 must not change when we alter the last element
        // (which would feed x_0 only under periodic wrapping)
        let mesh = Mesh::new(1.0, 4).unwrap();
        let a = l2_project_scalar(|x| (2.0 * PI * x).sin() + 0.5, &mesh, 2).unwrap();
        let mut b = a.clone();
        for v in b.local_mut(3, 0) {
            *v += 0.8;
        }
        let ra = dg_residual(&Burgers, &LocalLaxFriedrichs, &a, 0.0, BoundaryMode::Free, None).unwrap();
        let rb = dg_residual(&Burgers, &LocalLaxFriedrichs, &b, 0.0, BoundaryMode::Free, None).unwrap();
        assert_eq!(ra.local(0, 0), rb.local(0, 0));
        let pa = dg_residual(&Burgers, &LocalLaxFriedrichs, &a, 0.0, BoundaryMode::Periodic, None).unwrap();
        let pb = dg_residual(&Burgers, &LocalLaxFriedrichs, &b, 0.0, BoundaryMode::Periodic, None).unwrap();
        assert_ne!(pa.local(0, 0), pb.local(0, 0));
    }

    #[test]
    fn shape_mismatch_rejected() {
        let mesh = Mesh::new(1.0, 4).unwrap();
        let op = DgOperator::new(&Burgers, &LocalLaxFriedrichs, &mesh, 2, BoundaryMode::Periodic).unwrap();
        let u = DGField::zeros(&mesh, 3, 1).unwrap();
        assert!(op.residual(&u, 0.0).is_err());
    }

    #[test]
    fn boundary_mode_parse() {
        assert_eq!("free".parse::<BoundaryMode>().unwrap(), BoundaryMode::Free);
        assert_eq!("periodic".parse::<BoundaryMode>().unwrap(), BoundaryMode::Periodic);
        assert!("inflow".parse::<BoundaryMode>().is_err());
    }
}
