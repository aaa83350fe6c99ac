//! Piecewise-polynomial fields on a [`Mesh`] in the orthonormal Legendre basis.

use crate::basis::{orthonormal_legendre, ReferenceElement};
use crate::error::{Error, Result};
use crate::mesh::Mesh;

/// Highest degree whose volume rule fits in the largest Gauss–Legendre table.
pub const MAX_DEGREE: usize = 15;

/// Quadrature size for volume, source and projection integrals; exact for
/// polynomial integrands up to degree `4k + 3`.
pub fn volume_quad_points(degree: usize) -> usize {
    (2 * degree + 2).max(10)
}

/// Quadrature size for L² error norms.
pub fn error_quad_points(degree: usize) -> usize {
    degree + 4
}

/// Coefficients of a (possibly vector-valued) broken polynomial field.
///
/// Storage is element-major: `coeffs[(element * m + component) * (k + 1) + mode]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DGField {
    mesh: Mesh,
    degree: usize,
    num_components: usize,
    coeffs: Vec<f64>,
}

/// One-sided limits at a node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceValues {
    pub minus: f64,
    pub plus: f64,
}

impl TraceValues {
    pub fn new(minus: f64, plus: f64) -> Self {
        Self { minus, plus }
    }

    /// `[v] = v⁻ − v⁺`
    pub fn jump(&self) -> f64 {
        self.minus - self.plus
    }

    /// `{v} = (v⁻ + v⁺) / 2`
    pub fn average(&self) -> f64 {
        0.5 * (self.minus + self.plus)
    }
}

impl DGField {
    pub fn zeros(mesh: &Mesh, degree: usize, num_components: usize) -> Result<Self> {
        if num_components == 0 {
            return Err(Error::invalid("a field needs at least one component"));
        }
        let len = mesh.num_elements() * num_components * (degree + 1);
        Ok(Self {
            mesh: mesh.clone(),
            degree,
            num_components,
            coeffs: vec![0.0; len],
        })
    }

    pub fn from_coeffs(
        mesh: &Mesh,
        degree: usize,
        num_components: usize,
        coeffs: Vec<f64>,
    ) -> Result<Self> {
        let field = Self::zeros(mesh, degree, num_components)?;
        if coeffs.len() != field.coeffs.len() {
            return Err(Error::invalid(format!(
                "expected {} coefficients, got {}",
                field.coeffs.len(),
                coeffs.len()
            )));
        }
        Ok(Self { coeffs, ..field })
    }

    pub fn mesh(&self) -> &Mesh {
        &self.mesh
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn num_components(&self) -> usize {
        self.num_components
    }

    pub fn num_basis(&self) -> usize {
        self.degree + 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [f64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    /// Modal coefficients of one component on one element.
    #[inline]
    pub fn local(&self, element: usize, component: usize) -> &[f64] {
        let nb = self.num_basis();
        let start = (element * self.num_components + component) * nb;
        &self.coeffs[start..start + nb]
    }

    #[inline]
    pub fn local_mut(&mut self, element: usize, component: usize) -> &mut [f64] {
        let nb = self.num_basis();
        let start = (element * self.num_components + component) * nb;
        &mut self.coeffs[start..start + nb]
    }

    pub fn same_shape(&self, other: &DGField) -> bool {
        self.degree == other.degree
            && self.num_components == other.num_components
            && self.mesh == other.mesh
    }

    /// `self += scale * other`
    pub fn axpy(&mut self, scale: f64, other: &DGField) -> Result<()> {
        if !self.same_shape(other) {
            return Err(Error::invalid("field shapes differ"));
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += scale * b;
        }
        Ok(())
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs
            .iter()
            .fold(0.0f64, |m, &c| if c.is_finite() { m.max(c.abs()) } else { f64::INFINITY })
    }

    /// Value(s) at reference point `xi` of `element`.
    pub fn eval(&self, element: usize, xi: f64) -> Result<Vec<f64>> {
        if element >= self.mesh.num_elements() {
            return Err(Error::invalid(format!(
                "element {element} out of range (mesh has {})",
                self.mesh.num_elements()
            )));
        }
        if !(-1.0..=1.0).contains(&xi) {
            return Err(Error::invalid(format!("reference point {xi} outside [-1, 1]")));
        }
        let phi = orthonormal_legendre(self.degree, xi);
        Ok((0..self.num_components)
            .map(|c| dot(self.local(element, c), &phi))
            .collect())
    }

    /// Value(s) at physical point `x`; interior nodes take the right element.
    pub fn eval_at(&self, x: f64) -> Result<Vec<f64>> {
        let h = self.mesh.h();
        let n = self.mesh.num_elements();
        let j = ((x / h).floor().max(0.0) as usize).min(n - 1);
        let xi = (2.0 * (x - self.mesh.node(j)) / h - 1.0).clamp(-1.0, 1.0);
        self.eval(j, xi)
    }

    /// `‖u_h‖²` per component from coefficients alone (orthonormal basis).
    pub fn norm_squared(&self) -> Vec<f64> {
        let half_h = 0.5 * self.mesh.h();
        let mut out = vec![0.0; self.num_components];
        for j in 0..self.mesh.num_elements() {
            for (c, o) in out.iter_mut().enumerate() {
                *o += half_h * self.local(j, c).iter().map(|v| v * v).sum::<f64>();
            }
        }
        out
    }
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// L² projection of a vector-valued function onto the broken polynomial space.
///
/// `func(x, out)` writes the `num_components` values at `x`.
pub fn l2_project<F>(func: F, mesh: &Mesh, degree: usize, num_components: usize) -> Result<DGField>
where
    F: Fn(f64, &mut [f64]),
{
    let mut field = DGField::zeros(mesh, degree, num_components)?;
    let reference = ReferenceElement::new(degree, volume_quad_points(degree))?;
    let quad = reference.quadrature();
    let mut vals = vec![0.0; num_components];
    for j in 0..mesh.num_elements() {
        for (q, (&xi, &w)) in quad.points.iter().zip(&quad.weights).enumerate() {
            func(mesh.map_to_physical(j, xi), &mut vals);
            let phi = reference.values_at(q);
            for (c, &v) in vals.iter().enumerate() {
                for (coef, &p) in field.local_mut(j, c).iter_mut().zip(phi) {
                    *coef += w * v * p;
                }
            }
        }
    }
    Ok(field)
}

/// Scalar shorthand for [`l2_project`].
pub fn l2_project_scalar<F>(func: F, mesh: &Mesh, degree: usize) -> Result<DGField>
where
    F: Fn(f64) -> f64,
{
    l2_project(|x, out| out[0] = func(x), mesh, degree, 1)
}

pub fn eval_field(field: &DGField, element: usize, xi: f64) -> Result<Vec<f64>> {
    field.eval(element, xi)
}

/// Traces at an interior node `1 ..= N` (one entry per component).
pub fn interior_traces(field: &DGField, node: usize) -> Result<Vec<TraceValues>> {
    let n = field.mesh().num_elements();
    if node == 0 || node >= n {
        return Err(Error::invalid(format!(
            "node {node} is not interior (interior nodes are 1..={})",
            n.saturating_sub(1)
        )));
    }
    let minus = field.eval(node - 1, 1.0)?;
    let plus = field.eval(node, -1.0)?;
    Ok(minus
        .into_iter()
        .zip(plus)
        .map(|(m, p)| TraceValues::new(m, p))
        .collect())
}

/// Right limit at `x_0` and left limit at `x_{N+1}`, per component.
pub fn boundary_traces(field: &DGField) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = field.mesh().num_elements();
    Ok((field.eval(0, -1.0)?, field.eval(n - 1, 1.0)?))
}

/// Per-component `‖u_h − u‖` over `[0, L]` by per-element Gauss quadrature.
pub fn l2_error<F>(field: &DGField, exact: F, quad_points: usize) -> Result<Vec<f64>>
where
    F: Fn(f64, &mut [f64]),
{
    if quad_points < field.degree() + 2 {
        return Err(Error::invalid(format!(
            "error quadrature needs at least degree + 2 = {} points",
            field.degree() + 2
        )));
    }
    let mesh = field.mesh();
    let m = field.num_components();
    let reference = ReferenceElement::new(field.degree(), quad_points)?;
    let quad = reference.quadrature();
    let half_h = 0.5 * mesh.h();
    let mut exact_vals = vec![0.0; m];
    let mut sums = vec![0.0; m];
    for j in 0..mesh.num_elements() {
        for (q, (&xi, &w)) in quad.points.iter().zip(&quad.weights).enumerate() {
            exact(mesh.map_to_physical(j, xi), &mut exact_vals);
            let phi = reference.values_at(q);
            for c in 0..m {
                let diff = dot(field.local(j, c), phi) - exact_vals[c];
                sums[c] += half_h * w * diff * diff;
            }
        }
    }
    Ok(sums.into_iter().map(f64::sqrt).collect())
}

/// Per-component sampled max-norm error, `samples_per_element` equispaced
/// points per element including both endpoints.
pub fn max_error<F>(field: &DGField, exact: F, samples_per_element: usize) -> Result<Vec<f64>>
where
    F: Fn(f64, &mut [f64]),
{
    if samples_per_element < 2 {
        return Err(Error::invalid("need at least two samples per element"));
    }
    let mesh = field.mesh();
    let m = field.num_components();
    let mut exact_vals = vec![0.0; m];
    let mut out = vec![0.0f64; m];
    for j in 0..mesh.num_elements() {
        for s in 0..samples_per_element {
            let xi = -1.0 + 2.0 * s as f64 / (samples_per_element - 1) as f64;
            exact(mesh.map_to_physical(j, xi), &mut exact_vals);
            let vals = field.eval(j, xi)?;
            for c in 0..m {
                out[c] = out[c].max((vals[c] - exact_vals[c]).abs());
            }
        }
    }
    Ok(out)
}
